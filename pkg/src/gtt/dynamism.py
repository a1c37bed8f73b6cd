"""Type dynamism via the normalized, syntax-directed rule system.

Every derivable ``A ⊑ A'`` has exactly one normalized derivation, which
drives cast elaboration.  Reflexivity and transitivity are admissible rather
than primitive: the dynamic type is reached only by factoring through the
ground "floor" of the smaller type.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from .syntax.concrete import print_type
from .syntax.types import (
    CODYN, DYN, TOP, ZERO, Arrow, CoDyn, ComputationType, Dyn, F, Prod, Sum, Top, U, Unit,
    ValueType, With, Zero,
)

GROUND_V = {
    "1": Unit(),
    "prod": Prod(DYN, DYN),
    "sum": Sum(DYN, DYN),
    "thunk": U(CODYN),
}
GROUND_C = {
    "arrow": Arrow(DYN, CODYN),
    "with": With(CODYN, CODYN),
    "ret": F(DYN),
}


class FloorError(ValueError):
    pass


def floor_v(a: ValueType) -> ValueType:
    match a:
        case Unit():
            return GROUND_V["1"]
        case Prod():
            return GROUND_V["prod"]
        case Sum():
            return GROUND_V["sum"]
        case U():
            return GROUND_V["thunk"]
    raise FloorError(f"no ground floor for {print_type(a)}")


def floor_c(b: ComputationType) -> ComputationType:
    match b:
        case F():
            return GROUND_C["ret"]
        case With():
            return GROUND_C["with"]
        case Arrow():
            return GROUND_C["arrow"]
    raise FloorError(f"no ground floor for {print_type(b)}")


# -- derivations ----------------------------------------------------------

@dataclass(frozen=True)
class VRefl:
    """``? ⊑ ?`` or ``1 ⊑ 1``."""
    base: ValueType

    @property
    def lhs(self):
        return self.base

    @property
    def rhs(self):
        return self.base


@dataclass(frozen=True)
class ZeroBot:
    """``0 ⊑ A`` for ``A`` in {?, 0}."""
    target: ValueType

    @property
    def lhs(self):
        return ZERO

    @property
    def rhs(self):
        return self.target


@dataclass(frozen=True)
class ToDyn:
    """``A ⊑ ?`` by way of ``A ⊑ ⌊A⌋``."""
    inner: "ValueDeriv"

    @property
    def lhs(self):
        return self.inner.lhs

    @property
    def rhs(self):
        return DYN


@dataclass(frozen=True)
class UMon:
    comp: "CompDeriv"

    @property
    def lhs(self):
        return U(self.comp.lhs)

    @property
    def rhs(self):
        return U(self.comp.rhs)


@dataclass(frozen=True)
class SumMon:
    left: "ValueDeriv"
    right: "ValueDeriv"

    @property
    def lhs(self):
        return Sum(self.left.lhs, self.right.lhs)

    @property
    def rhs(self):
        return Sum(self.left.rhs, self.right.rhs)


@dataclass(frozen=True)
class ProdMon:
    left: "ValueDeriv"
    right: "ValueDeriv"

    @property
    def lhs(self):
        return Prod(self.left.lhs, self.right.lhs)

    @property
    def rhs(self):
        return Prod(self.left.rhs, self.right.rhs)


@dataclass(frozen=True)
class CoDynRefl:
    @property
    def lhs(self):
        return CODYN

    @property
    def rhs(self):
        return CODYN


@dataclass(frozen=True)
class TopBot:
    """``⊤ ⊑ B`` for ``B`` in {¿, ⊤}."""
    target: ComputationType

    @property
    def lhs(self):
        return TOP

    @property
    def rhs(self):
        return self.target


@dataclass(frozen=True)
class CToDyn:
    inner: "CompDeriv"

    @property
    def lhs(self):
        return self.inner.lhs

    @property
    def rhs(self):
        return CODYN


@dataclass(frozen=True)
class FMon:
    value: "ValueDeriv"

    @property
    def lhs(self):
        return F(self.value.lhs)

    @property
    def rhs(self):
        return F(self.value.rhs)


@dataclass(frozen=True)
class WithMon:
    left: "CompDeriv"
    right: "CompDeriv"

    @property
    def lhs(self):
        return With(self.left.lhs, self.right.lhs)

    @property
    def rhs(self):
        return With(self.left.rhs, self.right.rhs)


@dataclass(frozen=True)
class ArrowMon:
    # Both premises are covariant: A ⊑ A' and B ⊑ B' give A → B ⊑ A' → B'.
    dom: "ValueDeriv"
    cod: "CompDeriv"

    @property
    def lhs(self):
        return Arrow(self.dom.lhs, self.cod.lhs)

    @property
    def rhs(self):
        return Arrow(self.dom.rhs, self.cod.rhs)


ValueDeriv = Union[VRefl, ZeroBot, ToDyn, UMon, SumMon, ProdMon]
CompDeriv = Union[CoDynRefl, TopBot, CToDyn, FMon, WithMon, ArrowMon]
DynDeriv = Union[ValueDeriv, CompDeriv]


def derive_v(a: ValueType, a2: ValueType) -> Optional[ValueDeriv]:
    if isinstance(a2, Dyn):
        if isinstance(a, Dyn):
            return VRefl(DYN)
        if isinstance(a, Zero):
            return ZeroBot(DYN)
        inner = derive_v(a, floor_v(a))
        return ToDyn(inner) if inner is not None else None
    match a, a2:
        case Zero(), Zero():
            return ZeroBot(ZERO)
        case Unit(), Unit():
            return VRefl(a)
        case Sum(l, r), Sum(l2, r2):
            dl, dr = derive_v(l, l2), derive_v(r, r2)
            return SumMon(dl, dr) if dl and dr else None
        case Prod(l, r), Prod(l2, r2):
            dl, dr = derive_v(l, l2), derive_v(r, r2)
            return ProdMon(dl, dr) if dl and dr else None
        case U(b), U(b2):
            d = derive_c(b, b2)
            return UMon(d) if d else None
    return None


def derive_c(b: ComputationType, b2: ComputationType) -> Optional[CompDeriv]:
    if isinstance(b2, CoDyn):
        if isinstance(b, CoDyn):
            return CoDynRefl()
        if isinstance(b, Top):
            return TopBot(CODYN)
        inner = derive_c(b, floor_c(b))
        return CToDyn(inner) if inner is not None else None
    match b, b2:
        case Top(), Top():
            return TopBot(TOP)
        case F(a), F(a2):
            d = derive_v(a, a2)
            return FMon(d) if d else None
        case With(l, r), With(l2, r2):
            dl, dr = derive_c(l, l2), derive_c(r, r2)
            return WithMon(dl, dr) if dl and dr else None
        case Arrow(a, c), Arrow(a2, c2):
            da, dc = derive_v(a, a2), derive_c(c, c2)
            return ArrowMon(da, dc) if da and dc else None
    return None


def derive(a, a2) -> Optional[DynDeriv]:
    if isinstance(a, ValueType) and isinstance(a2, ValueType):
        return derive_v(a, a2)
    if isinstance(a, ComputationType) and isinstance(a2, ComputationType):
        return derive_c(a, a2)
    return None


def is_value_deriv(d) -> bool:
    return isinstance(d, (VRefl, ZeroBot, ToDyn, UMon, SumMon, ProdMon))


def premises(d) -> tuple:
    match d:
        case ToDyn(i) | CToDyn(i):
            return (i,)
        case UMon(c):
            return (c,)
        case FMon(v):
            return (v,)
        case SumMon(l, r) | ProdMon(l, r) | WithMon(l, r):
            return (l, r)
        case ArrowMon(a, c):
            return (a, c)
    return ()


def render(d, indent: int = 0) -> str:
    """One line per rule application, premises indented below."""
    line = f"{'  ' * indent}{type(d).__name__}: {print_type(d.lhs)} ⊑ {print_type(d.rhs)}"
    return "\n".join([line] + [render(p, indent + 1) for p in premises(d)])
