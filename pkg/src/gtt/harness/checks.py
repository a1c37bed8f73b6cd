"""Observational equivalence and approximation over generated contexts.

A :class:`Subject` is an operational CBPV computation together with the
CBPV types of its free variables.  Checking two subjects runs every
(closing, observer) pair on both sides and compares the whole-program
results, by equality or by error approximation.  A failure is a genuine
distinguishing context and is returned as a :class:`Counterexample`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Optional, Union

from ..decomplexify import Simplifier
from ..dyninterp import Interp, get_interp
from ..elaborate import elab_term
from ..machine import fast
from ..machine.results import Result, result_leq
from ..syntax import parse_term, show
from ..syntax import terms as T
from ..syntax.types import F, ComputationType, U, ValueType, alpha_eq_types
from ..typecheck import typecheck
from .enumerate import enumerate_values
from .observers import OBSERVER_WIDTH, Observer, observer_stacks

HOLE_VAR = "z"
CLOSING_WIDTH = 12
HARNESS_FUEL = 100_000
LOOP_CHECK_AFTER = 200


@dataclass(frozen=True)
class Subject:
    term: T.Term
    ctx: tuple          # ((name, CBPV value type), ...) sorted by name
    ty: ComputationType

    def show(self) -> str:
        return show(self.term)


@dataclass(frozen=True)
class Counterexample:
    observer: Observer
    lhs_result: Result
    rhs_result: Result

    def describe(self) -> str:
        return f"{self.observer.describe()}: {self.lhs_result} vs {self.rhs_result}"

    def as_json(self) -> dict:
        return {"observer": self.observer.describe(), "lhs_result": str(self.lhs_result),
                "rhs_result": str(self.rhs_result)}


@dataclass
class CheckResult:
    passed: bool
    runs: int = 0
    counterexample: Optional[Counterexample] = None
    depth: int = 0

    def __bool__(self):
        return self.passed


@dataclass(frozen=True)
class Settings:
    depth: int = 3
    fuel: int = HARNESS_FUEL
    observer_width: int = OBSERVER_WIDTH
    closing_width: int = CLOSING_WIDTH


DEFAULT = Settings()


# -- compiling subjects --------------------------------------------------

def _ctx(interp: Interp, env: dict) -> tuple:
    return tuple(sorted((x, interp.translate(t)) for x, t in env.items()))


def compile_gtt(e: Union[str, T.Term], interp: Union[str, Interp] = "natural", env: Optional[dict] = None,
                stoup=None) -> Subject:
    """Typecheck, elaborate and de-complexify a GTT term into a :class:`Subject`.

    ``env`` gives GTT types of free variables.  A term with a stoup is a
    stack; its hole becomes the thunk variable ``z`` of type ``U ⟦stoup⟧``.
    Value terms are compiled to computations returning them.
    """
    interp = get_interp(interp) if isinstance(interp, str) else interp
    if isinstance(e, str):
        e = parse_term(e)
    env = dict(env or {})
    ascribed, ty = typecheck(e, env, stoup)
    cbpv = elab_term(ascribed, interp)
    op = Simplifier(hole_var=HOLE_VAR).simp(cbpv)
    ctx = dict(_ctx(interp, env))
    if stoup is not None:
        if HOLE_VAR in ctx:
            raise ValueError(f"'{HOLE_VAR}' is reserved for the hole of a stack")
        ctx[HOLE_VAR] = U(interp.translate(stoup))
    cty = interp.translate(ty)
    if isinstance(cty, ValueType):
        cty = F(cty)
    return Subject(op, tuple(sorted(ctx.items())), cty)


def compile_cbpv_star(e: T.Term, ctx: dict, ty, *, hole=None) -> Subject:
    """De-complexify an already elaborated CBPV* term (value, computation or stack)."""
    op = Simplifier(hole_var=HOLE_VAR).simp(e)
    ctx = dict(ctx)
    if hole is not None:
        ctx[HOLE_VAR] = U(hole)
    return Subject(op, tuple(sorted(ctx.items())), F(ty) if isinstance(ty, ValueType) else ty)


# -- closings ------------------------------------------------------------

def ordered_product(lists: list, limit: int) -> list:
    """Tuples from the product of ``lists`` ordered by their largest index."""
    if not lists:
        return [()]
    if any(not xs for xs in lists):
        return []
    idx = itertools.product(*(range(min(len(xs), limit)) for xs in lists))
    chosen = sorted(idx, key=lambda ix: (max(ix), ix))[:limit]
    return [tuple(xs[i] for xs, i in zip(lists, ix)) for ix in chosen]


def closings(ctx: tuple, settings: Settings = DEFAULT) -> list:
    """Closing substitutions ``((name, value), ...)`` for a typed context."""
    names = [x for x, _ in ctx]
    lists = [list(enumerate_values(t, settings.depth, settings.closing_width)) for _, t in ctx]
    return [tuple(zip(names, vs)) for vs in ordered_product(lists, settings.closing_width)]


# -- running -------------------------------------------------------------

def run_closed(m: T.Term, closing: tuple = (), fuel: int = HARNESS_FUEL) -> Result:
    env = {x: fast.eval_value(v, {}) for x, v in closing}
    return fast.run(m, fuel, env, loop_check_after=LOOP_CHECK_AFTER)[0]


def _compare(lhs: Subject, rhs: Subject, rel: Callable[[Result, Result], bool],
             settings: Settings) -> CheckResult:
    if not alpha_eq_types(lhs.ty, rhs.ty):
        raise ValueError(f"subjects have different types: {lhs.ty!r} vs {rhs.ty!r}")
    ctx = dict(lhs.ctx)
    for x, t in rhs.ctx:
        if x in ctx and not alpha_eq_types(ctx[x], t):
            raise ValueError(f"variable {x} has different types on the two sides")
        ctx[x] = t
    stacks = observer_stacks(lhs.ty, settings.depth, settings.observer_width)
    runs = 0
    for closing in closings(tuple(sorted(ctx.items())), settings):
        env = {x: fast.eval_value(v, {}) for x, v in closing}
        for s in stacks:
            r1 = fast.run(T.plug_stack(s, lhs.term), settings.fuel, env, loop_check_after=LOOP_CHECK_AFTER)[0]
            r2 = fast.run(T.plug_stack(s, rhs.term), settings.fuel, env, loop_check_after=LOOP_CHECK_AFTER)[0]
            runs += 1
            if not rel(r1, r2):
                return CheckResult(False, runs, Counterexample(Observer(s, closing), r1, r2), settings.depth)
    return CheckResult(True, runs, None, settings.depth)


def _eq(r1: Result, r2: Result) -> bool:
    return r1 is r2


def _as_subject(m, interp, env, stoup) -> Subject:
    if isinstance(m, Subject):
        return m
    return compile_gtt(m, interp, env, stoup)


def check_obs_eq(m1, m2, depth: int = 3, *, interp="natural", env=None, stoup=None,
                 settings: Optional[Settings] = None) -> CheckResult:
    """``result(C[m1]) = result(C[m2])`` for every generated closing and observer.

    ``m1``/``m2`` are :class:`Subject` values or GTT terms (source text or
    ASTs) typed under ``env`` and ``stoup``.
    """
    settings = settings or Settings(depth=depth)
    return _compare(_as_subject(m1, interp, env, stoup), _as_subject(m2, interp, env, stoup), _eq, settings)


def check_obs_leq(m1, m2, depth: int = 3, *, interp="natural", env=None, stoup=None,
                  settings: Optional[Settings] = None) -> CheckResult:
    """As :func:`check_obs_eq` with error approximation in place of equality."""
    settings = settings or Settings(depth=depth)
    return _compare(_as_subject(m1, interp, env, stoup), _as_subject(m2, interp, env, stoup),
                    result_leq, settings)


@dataclass
class Comparison:
    """One schematic law instance: two subjects and the relation expected."""

    lhs: Subject
    rhs: Subject
    relation: str = "eq"           # "eq", "leq" or "geq"
    label: str = ""
    meta: dict = field(default_factory=dict)

    def check(self, settings: Settings = DEFAULT) -> CheckResult:
        if self.relation == "eq":
            return _compare(self.lhs, self.rhs, _eq, settings)
        if self.relation == "leq":
            return _compare(self.lhs, self.rhs, result_leq, settings)
        if self.relation == "geq":
            return _compare(self.rhs, self.lhs, result_leq, settings)
        raise ValueError(self.relation)
