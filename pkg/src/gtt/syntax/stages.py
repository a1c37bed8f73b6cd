"""Stage validators carving GTT, CBPV* and operational CBPV out of one grammar."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterator, Optional

from . import terms as T
from .types import ComputationType, Type, ValueType, has_dynamic, has_recursion


class Stage(enum.Enum):
    GTT = "gtt"
    CBPV_STAR = "cbpvstar"
    CBPV_OP = "cbpvop"


@dataclass(frozen=True)
class Violation:
    term: T.Term
    reason: str

    @property
    def pos(self):
        return self.term.pos


def _annotations(e: T.Term) -> Iterator[Type]:
    for name in ("ty", "src", "tgt"):
        t = getattr(e, name, None)
        if isinstance(t, (ValueType, ComputationType)):
            yield t


def stage_check(e: T.Term, stage: Stage, *, as_value: Optional[bool] = None) -> Optional[Violation]:
    """Return the first (pre-order) offending subterm, or ``None`` on pass.

    ``as_value`` states the sort of the position ``e`` occupies; by default
    it is read off the term itself.
    """
    if stage is Stage.CBPV_OP:
        if as_value is None:
            as_value = T.syntactic_sort(e) == "value"
        return _check_op(e, as_value)
    for sub in T.subterms(e):
        bad = _check_node(sub, stage)
        if bad:
            return Violation(sub, bad)
    return None


def _check_node(e: T.Term, stage: Stage) -> Optional[str]:
    if stage is Stage.GTT:
        if isinstance(e, (T.RollMu, T.UnrollMu, T.RollNu, T.UnrollNu)):
            return "recursive-type roll/unroll is not part of GTT"
        for t in _annotations(e):
            if has_recursion(t):
                return "GTT types cannot mention mu/nu or type variables"
        return None
    if isinstance(e, (T.UpCast, T.DnCast)):
        return "casts are not part of CBPV*"
    for t in _annotations(e):
        if has_dynamic(t):
            return "CBPV* types cannot mention the dynamic types"
    return None


def _check_op(e: T.Term, as_value: bool) -> Optional[Violation]:
    bad = _check_node(e, Stage.CBPV_STAR)
    if bad:
        return Violation(e, bad)
    if as_value:
        if not isinstance(e, T.VALUE_INTROS):
            return Violation(e, "operational values contain only introduction forms")
        if isinstance(e, T.Thunk):
            return _check_op_comp(e.body, hole_ok=False)
        for child, _ in T.children(e):
            v = _check_op(child, True)
            if v:
                return v
        return None
    return _check_op_comp(e, hole_ok=True)


def _check_op_comp(e: T.Term, hole_ok: bool) -> Optional[Violation]:
    """Computations; a hole may only sit in head position of simple frames."""
    bad = _check_node(e, Stage.CBPV_STAR)
    if bad:
        return Violation(e, bad)
    match e:
        case T.Hole():
            return None if hole_ok else Violation(e, "operational stacks use the hole only in head position")
        case T.Err() | T.EmptyPair():
            return None
        case T.Force(v) | T.RetV(v) | T.Abort(v):
            return _check_op(v, True)
        case T.Bind(m, _, n):
            return _check_op_comp(m, hole_ok) or _check_op_comp(n, False)
        case T.App(m, v):
            return _check_op_comp(m, hole_ok) or _check_op(v, True)
        case T.Fst(m) | T.Snd(m) | T.UnrollNu(m):
            return _check_op_comp(m, hole_ok)
        case T.Lam(_, _, m) | T.RollNu(_, m):
            return _check_op_comp(m, False)
        case T.WithPair(a, b):
            return _check_op_comp(a, False) or _check_op_comp(b, False)
        case T.Case(s, _, b1, _, b2):
            return _check_op(s, True) or _check_op_comp(b1, False) or _check_op_comp(b2, False)
        case T.UnitSplit(s, b) | T.Split(s, _, _, b) | T.UnrollMu(s, _, b):
            return _check_op(s, True) or _check_op_comp(b, False)
    return Violation(e, "expected an operational computation")
