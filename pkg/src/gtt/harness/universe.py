"""The finite universe of GTT types the law suites quantify over.

Every type of depth at most two is included (over the atoms ``?``, ``1``,
``0`` and ``¿``, ``⊤``), plus a fixed list of deeper types chosen to exercise
each connective at least once above the ground level (only from depth
three on; the list itself is not cut by depth, since booleans alone already
count two layers), plus whatever types
the caller supplies (normally those mentioned in the corpus).  The result
is closed under subterms.  A full depth-three enumeration has tens of
thousands of members, far beyond what observational checking can cover.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

from .. import dynamism as D
from ..syntax import parse_type
from ..syntax.types import (
    CODYN, DYN, TOP, UNIT, ZERO, Arrow, ComputationType, F, Prod, Sum, Type, U, ValueType, With,
    free_type_vars, has_recursion, type_children,
)

_DEEPER = (
    "(U (-> 1 (F bool)))",
    "(U (-> ? (F ?)))",
    "(U (-> bool (F bool)))",
    "(U (F bool))",
    "(U (F ?))",
    "(U (-> ? dyncomp))",
    "(* bool ?)",
    "(+ 1 bool)",
    "(* (U dyncomp) ?)",
    "(-> bool (F bool))",
    "(-> ? (F bool))",
    "(-> (* ? ?) dyncomp)",
    "(& (F bool) (F bool))",
    "(& (F ?) (-> ? dyncomp))",
    "(F bool)",
    "(F (+ ? ?))",
    "(F (* ? ?))",
    "(F (U dyncomp))",
    "(-> 1 (-> 1 (F bool)))",
)

# Recursive types only take part in the β/η rows: no cast reaches them.
_RECURSIVE = (
    "(mu X (+ 1 X))",
    "(nu Y (& (F bool) Y))",
)


def type_depth(t: Type) -> int:
    kids = type_children(t)
    return 1 + max((type_depth(k) for k in kids), default=0)


def _shallow(depth: int) -> tuple[list, list]:
    vals: list = [DYN, UNIT, ZERO]
    comps: list = [CODYN, TOP]
    for _ in range(depth - 1):
        v_next = [DYN, UNIT, ZERO]
        v_next += [Sum(a, b) for a in vals for b in vals]
        v_next += [Prod(a, b) for a in vals for b in vals]
        v_next += [U(b) for b in comps]
        c_next = [CODYN, TOP]
        c_next += [F(a) for a in vals]
        c_next += [With(a, b) for a in comps for b in comps]
        c_next += [Arrow(a, b) for a in vals for b in comps]
        vals, comps = _uniq(v_next), _uniq(c_next)
    return vals, comps


def _uniq(xs: Iterable) -> list:
    return list(dict.fromkeys(xs))


def _close(types: Iterable[Type]) -> list:
    out: dict = {}
    stack = list(types)
    while stack:
        t = stack.pop()
        if t in out or free_type_vars(t):
            continue
        out[t] = None
        stack.extend(type_children(t))
    return list(out)


@dataclass(frozen=True)
class TypeUniverse:
    depth: int
    values: tuple
    computations: tuple

    def __iter__(self):
        yield from self.values
        yield from self.computations

    def __len__(self):
        return len(self.values) + len(self.computations)

    def __contains__(self, t):
        return t in self.values or t in self.computations

    @property
    def cast_values(self) -> tuple:
        return tuple(t for t in self.values if not has_recursion(t))

    @property
    def cast_computations(self) -> tuple:
        return tuple(t for t in self.computations if not has_recursion(t))

    def dynamism_pairs(self) -> list:
        """Every derivable ``(T, T′, derivation)`` with both sides in the universe."""
        out = []
        for group in (self.cast_values, self.cast_computations):
            for a in group:
                for b in group:
                    d = D.derive(a, b)
                    if d is not None:
                        out.append((a, b, d))
        return out

    def floor_chains(self) -> list:
        """``(T, ⌊T⌋)`` for every non-dynamic, non-bottom type that has a floor."""
        out = []
        for a in self.cast_values:
            try:
                out.append((a, D.floor_v(a)))
            except D.FloorError:
                pass
        for b in self.cast_computations:
            try:
                out.append((b, D.floor_c(b)))
            except D.FloorError:
                pass
        return out


def _key(t: Type):
    from ..syntax import print_type
    return (type_depth(t), len(print_type(t)), print_type(t))


@lru_cache(maxsize=None)
def build_universe(depth: int = 3, extra: tuple = ()) -> TypeUniverse:
    """The universe at ``depth`` together with the ``extra`` types and their subterms."""
    vals, comps = _shallow(min(depth, 2))
    chosen = list(vals) + list(comps)
    if depth >= 3:
        chosen.extend(parse_type(src) for src in _DEEPER + _RECURSIVE)
    chosen.extend(extra)
    chosen = _close(chosen)
    values = sorted((t for t in chosen if isinstance(t, ValueType)), key=_key)
    computations = sorted((t for t in chosen if isinstance(t, ComputationType)), key=_key)
    return TypeUniverse(depth, tuple(values), tuple(computations))


__all__ = ["TypeUniverse", "build_universe", "type_depth", "DYN", "CODYN", "UNIT", "ZERO", "TOP"]
