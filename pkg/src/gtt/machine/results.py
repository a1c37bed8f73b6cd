"""Observable results of whole programs and their error-approximation order."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Union

from ..syntax.terms import Term


class Result(enum.Enum):
    TIMEOUT = "timeout"
    ERROR = "error"
    TRUE = "true"
    FALSE = "false"

    def __str__(self):
        return self.value


Timeout, Error, RetTrue, RetFalse = Result.TIMEOUT, Result.ERROR, Result.TRUE, Result.FALSE


@dataclass(frozen=True)
class Stepped:
    next: Term
    cost: int


@dataclass(frozen=True)
class Terminal:
    result: Result


StepOutcome = Union[Stepped, Terminal]


class StuckError(RuntimeError):
    """A well-typed closed program can never get stuck; seeing this is a bug."""


def result_leq(r1: Result, r2: Result) -> bool:
    """Error approximation: the error is least, everything else is maximal.

    A timeout stands in for divergence and is related only to itself and to
    the error below it.
    """
    return r1 is Result.ERROR or r1 is r2


def format_result(result: Result, steps: int) -> str:
    if result is Result.TIMEOUT:
        return f"timeout({steps})"
    return result.value
