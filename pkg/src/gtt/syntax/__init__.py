"""Abstract and concrete syntax shared by every pipeline stage."""

from .concrete import (
    parse, parse_comp_type, parse_term, parse_type, parse_value_type, print_term, print_type, show,
)
from .sexpr import SyntaxErr
from .stages import Stage, Violation, stage_check
from .terms import (
    Abort, App, Bind, Case, DnCast, EmptyPair, Err, Force, Fst, Hole, Inl, Inr, Lam, NameSupply,
    PairV, RetV, RollMu, RollNu, Snd, Split, Term, Thunk, UnitSplit, UnitV, UnrollMu, UnrollNu,
    UpCast, Var, WithPair, alpha_eq, free_vars, has_hole, plug_stack, subst_value,
)
from .types import (
    BOOL, CODYN, DYN, F_BOOL, TOP, UNIT, ZERO, Arrow, CoDyn, ComputationType, CVar, Dyn, F, Mu, Nu,
    Prod, Sum, Top, U, Unit, ValueType, VVar, With, Zero, alpha_eq_types, unfold,
)

__all__ = [name for name in dir() if not name.startswith("_")]
