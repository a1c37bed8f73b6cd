"""Bounded enumeration of closed operational values and computation schemas.

Depth counts only the layers that can recurse, namely μ-rolls and thunks;
first-order structure (units, sums, products) between them is enumerated
in full.  Lists are built constructor-fair (round-robin across alternatives,
diagonal across product components) and then cut to ``width`` entries, so
a small width still sees every constructor first.

Thunks come from a fixed schema: the error, a divergent loop, and
return-constant computations (which ignore their arguments).
"""

from __future__ import annotations

from functools import lru_cache
from itertools import islice, zip_longest

from ..syntax import terms as T
from ..syntax.types import (
    Arrow, ComputationType, F, Mu, Nu, Prod, Sum, Top, U, Unit, ValueType, VVar, With, Zero, unfold,
)

DEFAULT_WIDTH = 12


def interleave(*lists) -> list:
    out = []
    for group in zip_longest(*lists):
        out.extend(x for x in group if x is not None)
    return out


def diagonal(xs: list, ys: list, limit: int) -> list:
    """Pairs ordered by the larger index, so short prefixes mix both sides."""
    out = []
    for k in range(max(len(xs), len(ys))):
        if k < len(xs):
            out.extend((xs[k], ys[j]) for j in range(min(k + 1, len(ys))))
        if k < len(ys):
            out.extend((xs[i], ys[k]) for i in range(min(k, len(xs))))
        if len(out) >= limit:
            break
    return out[:limit]


def _dedupe(items: list, width: int) -> list:
    seen, out = set(), []
    for it in items:
        if it not in seen:
            seen.add(it)
            out.append(it)
            if len(out) >= width:
                break
    return out


@lru_cache(maxsize=None)
def omega(b: ComputationType) -> T.Term:
    """A closed divergent computation of type ``b``.

    With ``A = μX. U(X → b)`` and ``f = thunk(λx:A. pmroll x (y) ((force y) x))``,
    ``(force f) (roll f)`` unrolls forever.
    """
    a = Mu("Xw", U(Arrow(VVar("Xw"), b)))
    lam = T.Lam("x#w1", a, T.UnrollMu(T.Var("x#w1"), "y#w2", T.App(T.Force(T.Var("y#w2")), T.Var("x#w1"))))
    f = T.Thunk(lam)
    return T.App(T.Force(f), T.RollMu(a, f))


@lru_cache(maxsize=None)
def enumerate_values(a: ValueType, depth: int, width: int = DEFAULT_WIDTH) -> tuple:
    """Closed operational values of the closed CBPV* type ``a``."""
    match a:
        case Unit():
            return (T.UNIT_V,)
        case Zero():
            return ()
        case Sum(l, r):
            left = [T.Inl(v, a) for v in enumerate_values(l, depth, width)]
            right = [T.Inr(v, a) for v in enumerate_values(r, depth, width)]
            return tuple(_dedupe(interleave(left, right), width))
        case Prod(l, r):
            pairs = diagonal(list(enumerate_values(l, depth, width)), list(enumerate_values(r, depth, width)), width)
            return tuple(T.PairV(x, y) for x, y in pairs)
        case Mu():
            if depth <= 0:
                return ()
            return tuple(T.RollMu(a, v) for v in enumerate_values(unfold(a), depth - 1, width))
        case U(b):
            if depth <= 0:
                return ()
            return tuple(T.Thunk(m) for m in enumerate_computations(b, depth - 1, width))
    raise TypeError(f"cannot enumerate values of {a!r}")


@lru_cache(maxsize=None)
def enumerate_computations(b: ComputationType, depth: int, width: int = DEFAULT_WIDTH) -> tuple:
    """Closed computations of type ``b``: error, loop, then return-constants."""
    base = [T.Err(b), omega(b)]
    return tuple(_dedupe(base + list(constants(b, depth, width)), width))


@lru_cache(maxsize=None)
def constants(b: ComputationType, depth: int, width: int) -> tuple:
    match b:
        case F(a):
            return tuple(T.RetV(v) for v in enumerate_values(a, depth, width))
        case Arrow(a, c):
            x = "x#k"
            return tuple(T.Lam(x, a, m) for m in constants(c, depth, width))
        case With(l, r):
            pairs = diagonal(list(enumerate_computations(l, depth, width)),
                             list(enumerate_computations(r, depth, width)), width)
            # Pairs made only of errors/loops add nothing over the base schema.
            return tuple(T.WithPair(x, y) for x, y in pairs)
        case Top():
            return (T.EMPTY_PAIR,)
        case Nu():
            if depth <= 0:
                return ()
            return tuple(T.RollNu(b, m) for m in enumerate_computations(unfold(b), depth - 1, width))
    raise TypeError(f"cannot enumerate computations of {b!r}")


def take(xs, n: int) -> list:
    return list(islice(xs, n))
