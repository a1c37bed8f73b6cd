"""Value and computation types shared by GTT, CBPV* and operational CBPV.

One grammar covers every stage.  GTT types use ``Dyn``/``CoDyn`` and never
mention ``Mu``/``Nu``; CBPV* types are the reverse.  The stage validators in
:mod:`gtt.syntax.stages` enforce the split.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Union


class ValueType:
    __slots__ = ()


class ComputationType:
    __slots__ = ()


@dataclass(frozen=True, slots=True)
class Dyn(ValueType):
    pass


@dataclass(frozen=True, slots=True)
class U(ValueType):
    comp: ComputationType


@dataclass(frozen=True, slots=True)
class Zero(ValueType):
    pass


@dataclass(frozen=True, slots=True)
class Sum(ValueType):
    left: ValueType
    right: ValueType


@dataclass(frozen=True, slots=True)
class Unit(ValueType):
    pass


@dataclass(frozen=True, slots=True)
class Prod(ValueType):
    left: ValueType
    right: ValueType


@dataclass(frozen=True, slots=True)
class Mu(ValueType):
    var: str
    body: ValueType


@dataclass(frozen=True, slots=True)
class VVar(ValueType):
    name: str


@dataclass(frozen=True, slots=True)
class CoDyn(ComputationType):
    pass


@dataclass(frozen=True, slots=True)
class F(ComputationType):
    value: ValueType


@dataclass(frozen=True, slots=True)
class Top(ComputationType):
    pass


@dataclass(frozen=True, slots=True)
class With(ComputationType):
    left: ComputationType
    right: ComputationType


@dataclass(frozen=True, slots=True)
class Arrow(ComputationType):
    dom: ValueType
    cod: ComputationType


@dataclass(frozen=True, slots=True)
class Nu(ComputationType):
    var: str
    body: ComputationType


@dataclass(frozen=True, slots=True)
class CVar(ComputationType):
    name: str


Type = Union[ValueType, ComputationType]

DYN = Dyn()
CODYN = CoDyn()
ZERO = Zero()
UNIT = Unit()
TOP = Top()
BOOL = Sum(UNIT, UNIT)
F_BOOL = F(BOOL)


def is_value_type(t: Type) -> bool:
    return isinstance(t, ValueType)


def type_children(t: Type) -> tuple:
    match t:
        case U(c):
            return (c,)
        case Sum(a, b) | Prod(a, b):
            return (a, b)
        case Mu(_, body) | Nu(_, body):
            return (body,)
        case F(a):
            return (a,)
        case With(b1, b2):
            return (b1, b2)
        case Arrow(a, b):
            return (a, b)
    return ()


def free_type_vars(t: Type) -> frozenset:
    match t:
        case VVar(n) | CVar(n):
            return frozenset([n])
        case Mu(x, body) | Nu(x, body):
            return free_type_vars(body) - {x}
    out = frozenset()
    for c in type_children(t):
        out |= free_type_vars(c)
    return out


def subst_type(t: Type, name: str, repl: Type) -> Type:
    """Replace the free type variable ``name`` by ``repl``.

    Only closed replacements are ever substituted (unfolding of closed
    recursive types), so binder capture cannot occur.
    """
    match t:
        case VVar(n) | CVar(n):
            return repl if n == name else t
        case Mu(x, body):
            return t if x == name else Mu(x, subst_type(body, name, repl))
        case Nu(x, body):
            return t if x == name else Nu(x, subst_type(body, name, repl))
        case U(c):
            return U(subst_type(c, name, repl))
        case Sum(a, b):
            return Sum(subst_type(a, name, repl), subst_type(b, name, repl))
        case Prod(a, b):
            return Prod(subst_type(a, name, repl), subst_type(b, name, repl))
        case F(a):
            return F(subst_type(a, name, repl))
        case With(a, b):
            return With(subst_type(a, name, repl), subst_type(b, name, repl))
        case Arrow(a, b):
            return Arrow(subst_type(a, name, repl), subst_type(b, name, repl))
    return t


@lru_cache(maxsize=4096)
def unfold(t: Type) -> Type:
    """One-step unrolling of ``mu X. A`` or ``nu Y. B``."""
    match t:
        case Mu(x, body) | Nu(x, body):
            return subst_type(body, x, t)
    raise TypeError(f"unfold expects a recursive type, got {t!r}")


def alpha_eq_types(a: Type, b: Type) -> bool:
    """Type equality up to renaming of mu/nu binders."""
    if a == b:
        return True
    return _alpha(a, b, {}, {}, 0)


def _alpha(a: Type, b: Type, left: dict, right: dict, depth: int) -> bool:
    if type(a) is not type(b):
        return False
    match a, b:
        case (VVar(n), VVar(m)) | (CVar(n), CVar(m)):
            la, rb = left.get(n), right.get(m)
            if la is None and rb is None:
                return n == m
            return la == rb
        case (Mu(x, body), Mu(y, body2)) | (Nu(x, body), Nu(y, body2)):
            return _alpha(body, body2, {**left, x: depth}, {**right, y: depth}, depth + 1)
    return all(
        _alpha(c1, c2, left, right, depth)
        for c1, c2 in zip(type_children(a), type_children(b))
    )


def type_size(t: Type) -> int:
    return 1 + sum(type_size(c) for c in type_children(t))


def has_dynamic(t: Type) -> bool:
    if isinstance(t, (Dyn, CoDyn)):
        return True
    return any(has_dynamic(c) for c in type_children(t))


def has_recursion(t: Type) -> bool:
    if isinstance(t, (Mu, Nu, VVar, CVar)):
        return True
    return any(has_recursion(c) for c in type_children(t))
