"""Random well-typed GTT programs, casts included.

Generation is type-directed: every request names the type wanted and the
generator only builds terms of that type, so the output typechecks by
construction (the test suites still run the typechecker on it).  Casts are
introduced by picking a less dynamic type for a subterm and casting up, or
a more dynamic type and casting down.
"""

from __future__ import annotations

import random
from typing import Optional

from .. import dynamism as D
from ..syntax import terms as T
from ..syntax.types import (
    BOOL, CODYN, DYN, F_BOOL, UNIT, Arrow, ComputationType, F, Prod, Sum, Top, U, Unit,
    ValueType, With,
)

_SMALL_VALUES = (UNIT, BOOL, DYN, Prod(BOOL, BOOL), Sum(UNIT, BOOL), U(F_BOOL), Prod(DYN, BOOL))
_SMALL_COMPS = (F_BOOL, F(DYN), Arrow(BOOL, F_BOOL), CODYN, With(F_BOOL, F_BOOL), Arrow(DYN, CODYN))


class ProgramGenerator:
    def __init__(self, seed: int = 0, max_depth: int = 5, cast_rate: float = 0.3):
        self.rng = random.Random(seed)
        self.max_depth = max_depth
        self.cast_rate = cast_rate
        self.names = T.NameSupply("")

    # -- types -----------------------------------------------------------

    def value_type(self, depth: int = 2) -> ValueType:
        r = self.rng
        if depth <= 0:
            return r.choice((UNIT, BOOL, DYN))
        k = r.randrange(7)
        if k == 0:
            return Prod(self.value_type(depth - 1), self.value_type(depth - 1))
        if k == 1:
            return Sum(self.value_type(depth - 1), self.value_type(depth - 1))
        if k == 2:
            return U(self.comp_type(depth - 1))
        return r.choice(_SMALL_VALUES)

    def comp_type(self, depth: int = 2) -> ComputationType:
        r = self.rng
        if depth <= 0:
            return r.choice((F_BOOL, F(DYN), CODYN))
        k = r.randrange(6)
        if k == 0:
            return Arrow(self.value_type(depth - 1), self.comp_type(depth - 1))
        if k == 1:
            return With(self.comp_type(depth - 1), self.comp_type(depth - 1))
        if k == 2:
            return F(self.value_type(depth - 1))
        return r.choice(_SMALL_COMPS)

    def less_dynamic(self, t, depth: int = 2):
        """A random type below ``t`` in the dynamism order."""
        r = self.rng
        match t:
            case _ if t == DYN:
                if depth <= 0 or r.random() < 0.3:
                    return DYN
                return r.choice((
                    UNIT, BOOL, Prod(DYN, DYN), Sum(DYN, DYN), U(CODYN),
                    Prod(self.less_dynamic(DYN, depth - 1), BOOL), U(F_BOOL),
                ))
            case _ if t == CODYN:
                if depth <= 0 or r.random() < 0.3:
                    return CODYN
                return r.choice((F(DYN), F_BOOL, Arrow(DYN, CODYN), Arrow(BOOL, F_BOOL),
                                 With(CODYN, CODYN), With(F_BOOL, F(DYN))))
            case Sum(a, b):
                return Sum(self.less_dynamic(a, depth - 1), self.less_dynamic(b, depth - 1))
            case Prod(a, b):
                return Prod(self.less_dynamic(a, depth - 1), self.less_dynamic(b, depth - 1))
            case U(b):
                return U(self.less_dynamic(b, depth - 1))
            case F(a):
                return F(self.less_dynamic(a, depth - 1))
            case With(a, b):
                return With(self.less_dynamic(a, depth - 1), self.less_dynamic(b, depth - 1))
            case Arrow(a, b):
                return Arrow(self.less_dynamic(a, depth - 1), self.less_dynamic(b, depth - 1))
        return t

    def more_dynamic(self, t, depth: int = 2):
        """A random type above ``t`` in the dynamism order."""
        r = self.rng
        if isinstance(t, ValueType):
            if r.random() < 0.35 and D.derive_v(t, DYN) is not None:
                return DYN
        elif r.random() < 0.35 and D.derive_c(t, CODYN) is not None:
            return CODYN
        if depth <= 0:
            return t
        match t:
            case Sum(a, b):
                return Sum(self.more_dynamic(a, depth - 1), self.more_dynamic(b, depth - 1))
            case Prod(a, b):
                return Prod(self.more_dynamic(a, depth - 1), self.more_dynamic(b, depth - 1))
            case U(b):
                return U(self.more_dynamic(b, depth - 1))
            case F(a):
                return F(self.more_dynamic(a, depth - 1))
            case With(a, b):
                return With(self.more_dynamic(a, depth - 1), self.more_dynamic(b, depth - 1))
            case Arrow(a, b):
                return Arrow(self.more_dynamic(a, depth - 1), self.more_dynamic(b, depth - 1))
        return t

    # -- terms -----------------------------------------------------------

    def fresh(self, hint: str = "x") -> str:
        return self.names.fresh(hint)

    def value(self, a: ValueType, env: dict, depth: int) -> T.Term:
        r = self.rng
        candidates = [x for x, t in env.items() if t == a]
        if candidates and r.random() < 0.4:
            return T.Var(r.choice(candidates))
        if depth > 0 and r.random() < self.cast_rate:
            lo = self.less_dynamic(a)
            if lo != a and D.derive_v(lo, a) is not None:
                return T.UpCast(lo, a, self.value(lo, env, depth - 1))
        match a:
            case Unit():
                return T.UNIT_V
            case Sum(l, rt):
                if r.random() < 0.5:
                    return T.Inl(self.value(l, env, depth - 1), a)
                return T.Inr(self.value(rt, env, depth - 1), a)
            case Prod(l, rt):
                return T.PairV(self.value(l, env, depth - 1), self.value(rt, env, depth - 1))
            case U(b):
                return T.Thunk(self.comp(b, env, depth - 1))
        if a == DYN:
            lo = self.less_dynamic(DYN, 1)
            if lo == DYN:
                lo = r.choice((UNIT, BOOL))
            return T.UpCast(lo, DYN, self.value(lo, env, depth - 1))
        raise TypeError(f"cannot generate a value of {a!r}")

    def comp(self, b: ComputationType, env: dict, depth: int) -> T.Term:
        r = self.rng
        if depth <= 0:
            return self._leaf(b, env)
        k = r.random()
        if k < 0.04:
            return T.Err(b)
        if k < 0.12 and D.derive_c(b, b) is not None:
            hi = self.more_dynamic(b)
            if hi != b and D.derive_c(b, hi) is not None:
                return T.DnCast(b, hi, self.comp(hi, env, depth - 1))
        if k < 0.27:
            a = self.value_type(1)
            x = self.fresh("x")
            return T.Bind(self.comp(F(a), env, depth - 1), x, self.comp(b, {**env, x: a}, depth - 1))
        if k < 0.37:
            a = self.value_type(1)
            return T.App(self.comp(Arrow(a, b), env, depth - 1), self.value(a, env, depth - 1))
        if k < 0.45:
            return T.Force(self.value(U(b), env, depth - 1))
        if k < 0.55:
            scrut_ty = self._sum_in(env) or BOOL
            x1, x2 = self.fresh("a"), self.fresh("b")
            return T.Case(self.value(scrut_ty, env, depth - 1),
                          x1, self.comp(b, {**env, x1: scrut_ty.left}, depth - 1),
                          x2, self.comp(b, {**env, x2: scrut_ty.right}, depth - 1))
        if k < 0.6:
            pt = self._prod_in(env) or Prod(BOOL, self.value_type(0))
            x, y = self.fresh("p"), self.fresh("q")
            return T.Split(self.value(pt, env, depth - 1), x, y,
                           self.comp(b, {**env, x: pt.left, y: pt.right}, depth - 1))
        if k < 0.66:
            other = self.comp_type(0)
            if r.random() < 0.5:
                return T.Fst(self.comp(With(b, other), env, depth - 1))
            return T.Snd(self.comp(With(other, b), env, depth - 1))
        return self._intro(b, env, depth)

    def _intro(self, b: ComputationType, env: dict, depth: int) -> T.Term:
        match b:
            case F(a):
                return T.RetV(self.value(a, env, depth - 1))
            case Arrow(a, c):
                x = self.fresh("x")
                return T.Lam(x, a, self.comp(c, {**env, x: a}, depth - 1))
            case With(l, r):
                return T.WithPair(self.comp(l, env, depth - 1), self.comp(r, env, depth - 1))
            case Top():
                return T.EMPTY_PAIR
        if b == CODYN:
            lo = self.less_dynamic(CODYN, 1)
            if lo == CODYN:
                lo = F(DYN)
            return T.Force(T.UpCast(U(lo), U(CODYN), T.Thunk(self.comp(lo, env, depth - 1))))
        raise TypeError(f"cannot generate a computation of {b!r}")

    def _leaf(self, b: ComputationType, env: dict) -> T.Term:
        if self.rng.random() < 0.1:
            return T.Err(b)
        return self._intro(b, env, 1) if not isinstance(b, F) else T.RetV(self.value(b.value, env, 0))

    def _sum_in(self, env: dict) -> Optional[Sum]:
        sums = [t for t in env.values() if isinstance(t, Sum)]
        return self.rng.choice(sums) if sums else None

    def _prod_in(self, env: dict) -> Optional[Prod]:
        prods = [t for t in env.values() if isinstance(t, Prod)]
        return self.rng.choice(prods) if prods else None

    def program(self) -> T.Term:
        """A closed program of type ``F(1+1)``."""
        return self.comp(F_BOOL, {}, self.max_depth)


def random_programs(count: int, seed: int = 0, max_depth: int = 5) -> list:
    gen = ProgramGenerator(seed, max_depth)
    return [gen.program() for _ in range(count)]
