"""Observation contexts for closed CBPV types.

An observer for a computation type ``B`` is a closed operational stack
``• : B ⊢ S : F(1+1)``: elimination forms (application to enumerated
arguments, projections, ν-unrolling) ending, at ``F A``, in a total boolean
discriminator on the returned value.

For a value type ``A`` an observer is a *value context*: a closed
computation of type ``F(1+1)`` with the hole standing for a value of type
``A``.  ``as_stack`` turns it into an ``F A`` stack by binding the hole.

Depth is consumed by the same layers as in value enumeration (μ, ν and
thunk forcing), so every list is finite.  Widths cap each list after a
constructor-fair ordering.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from ..syntax import terms as T
from ..syntax.types import (
    BOOL, F_BOOL, Arrow, ComputationType, F, Mu, Nu, Prod, Sum, Top, U, Unit, ValueType, With, Zero,
    unfold,
)
from .enumerate import DEFAULT_WIDTH, diagonal, enumerate_values, interleave

TRUE = T.Inl(T.UNIT_V, BOOL)
FALSE = T.Inr(T.UNIT_V, BOOL)

OBSERVER_WIDTH = 16


@dataclass(frozen=True)
class Observer:
    """A closing context: a stack with one hole plus values for free variables."""

    stack: T.Term
    closing: tuple = field(default=())

    def plug(self, m: T.Term) -> T.Term:
        return T.plug_stack(self.stack, m)

    def describe(self) -> str:
        from ..syntax import show
        text = show(self.stack)
        if self.closing:
            text += "  with " + ", ".join(f"{x} := {show(v)}" for x, v in self.closing)
        return text


def _discriminators(a: ValueType, depth: int, width: int, names: T.NameSupply) -> list:
    """Value contexts on ``a``, each a pair ``(var, body : F(1+1))``."""
    x = names.fresh("o")
    v = T.Var(x)
    found = [T.RetV(TRUE)]  # observes only termination of the producer
    match a:
        case Zero():
            found = [T.Abort(v, F_BOOL)]
        case Unit():
            pass
        case Sum(l, r):
            if a == BOOL:
                found.insert(0, T.RetV(v))
            y, w = names.fresh("o"), names.fresh("o")
            found.append(T.Case(v, y, T.RetV(TRUE), w, T.RetV(FALSE)))
            left = [T.Case(v, y2, b, names.fresh("o"), T.RetV(FALSE))
                    for y2, b in _nontrivial(_discriminators(l, depth, width, names))]
            right = [T.Case(v, names.fresh("o"), T.RetV(FALSE), y2, b)
                     for y2, b in _nontrivial(_discriminators(r, depth, width, names))]
            found.extend(interleave(left, right))
        case Prod(l, r):
            left = _nontrivial(_discriminators(l, depth, width, names))
            right = _nontrivial(_discriminators(r, depth, width, names))
            found.extend(interleave(
                [T.Split(v, y2, names.fresh("o"), b) for y2, b in left],
                [T.Split(v, names.fresh("o"), y2, b) for y2, b in right],
            ))
        case Mu():
            if depth > 0:
                found.extend(T.UnrollMu(v, y2, b) for y2, b in _nontrivial(_discriminators(unfold(a), depth - 1, width, names)))
        case U(b):
            if depth > 0:
                found.extend(T.plug_stack(s, T.Force(v)) for s in observer_stacks(b, depth - 1, width))
        case _:
            raise TypeError(f"cannot observe values of {a!r}")
    return [(x, body) for body in _dedupe_terms(found)[:width]]


def _nontrivial(discs: list) -> list:
    return [(y, b) for y, b in discs if b != _CONST]


_CONST = T.RetV(TRUE)


def _dedupe_terms(items):
    seen, out = set(), []
    for it in items:
        if it not in seen:
            seen.add(it)
            out.append(it)
    return out


@lru_cache(maxsize=None)
def value_contexts(a: ValueType, depth: int, width: int = OBSERVER_WIDTH) -> tuple:
    """Closed ``F(1+1)`` computations with a value-position hole of type ``a``."""
    names = T.NameSupply("o")
    return tuple(T.subst_value(body, x, T.HOLE, closed=True)
                 for x, body in _discriminators(a, depth, width, names))


@lru_cache(maxsize=None)
def observer_stacks(b: ComputationType, depth: int, width: int = OBSERVER_WIDTH) -> tuple:
    """Closed stacks ``• : b ⊢ S : F(1+1)``."""
    match b:
        case F(a):
            if a == BOOL:
                return (T.HOLE,)
            names = T.NameSupply("o")
            return tuple(T.Bind(T.HOLE, x, body) for x, body in _discriminators(a, depth, width, names))
        case Arrow(a, c):
            args = list(enumerate_values(a, depth, DEFAULT_WIDTH))
            rest = list(observer_stacks(c, depth, width))
            return tuple(T.plug_stack(s, T.App(T.HOLE, arg)) for arg, s in diagonal(args, rest, width))
        case With(l, r):
            left = [T.plug_stack(s, T.Fst(T.HOLE)) for s in observer_stacks(l, depth, width)]
            right = [T.plug_stack(s, T.Snd(T.HOLE)) for s in observer_stacks(r, depth, width)]
            return tuple(interleave(left, right)[:width])
        case Top():
            return ()
        case Nu():
            if depth <= 0:
                return ()
            return tuple(T.plug_stack(s, T.UnrollNu(T.HOLE)) for s in observer_stacks(unfold(b), depth - 1, width))
    raise TypeError(f"cannot observe computations of {b!r}")


def as_stack(ctx: T.Term, names: T.NameSupply = None) -> T.Term:
    """Turn a value context into an ``F A`` stack by binding the hole."""
    x = (names or T.NameSupply("o")).fresh("v")
    return T.Bind(T.HOLE, x, T.plug_stack(ctx, T.Var(x)))


def observers_for(t, depth: int = 3, width: int = OBSERVER_WIDTH) -> list:
    """Observers of a closed CBPV type (value contexts for value types)."""
    if isinstance(t, ValueType):
        return [Observer(c) for c in value_contexts(t, depth, width)]
    return [Observer(s) for s in observer_stacks(t, depth, width)]
