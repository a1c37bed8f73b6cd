"""Deterministic small-step evaluation of operational CBPV programs.

Two interchangeable engines implement the same rules:

* :mod:`.reference` steps terms by substitution and is the executable
  statement of the semantics (``step``/``eval``);
* :mod:`.fast` is an environment machine used for bulk evaluation.

:func:`evaluate` picks one according to ``GTT_MACHINE`` (``fast`` by
default, ``reference`` to force substitution stepping everywhere).
"""

from __future__ import annotations

import os

from ..syntax import terms as T
from . import fast, reference
from .reference import decompose, plug, step
from .reference import eval as eval  # noqa: A004  (the operation is named eval)
from .results import (
    Error, Result, RetFalse, RetTrue, Stepped, StepOutcome, StuckError, Terminal, Timeout,
    format_result, result_leq,
)

DEFAULT_FUEL = 100_000


def backend() -> str:
    name = os.environ.get("GTT_MACHINE", "fast").strip().lower()
    if name not in ("fast", "reference"):
        raise ValueError(f"GTT_MACHINE must be 'fast' or 'reference', got {name!r}")
    return name


def evaluate(m: T.Term, fuel: int = DEFAULT_FUEL):
    """Run a closed program with the configured engine: ``(result, steps, cost1)``."""
    if backend() == "reference":
        return reference.eval(m, fuel)
    return fast.run(m, fuel)


def eval_cbpv_star(m: T.Term, fuel: int = DEFAULT_FUEL):
    """Evaluate a closed CBPV* program directly, complex values included.

    Differential-testing oracle for de-complexification only.
    """
    return fast.run(m, fuel)


__all__ = [
    "Result", "Timeout", "Error", "RetTrue", "RetFalse", "Stepped", "Terminal", "StepOutcome",
    "StuckError", "step", "eval", "evaluate", "eval_cbpv_star", "result_leq", "format_result",
    "decompose", "plug", "DEFAULT_FUEL", "backend",
]
