"""Three-sorted terms: values, computations, and stacks (computations with a hole).

Every stage shares these constructors.  Binders are plain strings; the parser
freshens them so that bound names are distinct, and code that generates terms
draws names from a :class:`NameSupply`.
"""

from __future__ import annotations

import dataclasses
import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterator, Optional

from .types import ComputationType, Type, ValueType, alpha_eq_types


@dataclass(frozen=True)
class Term:
    # Source position (line, col) for diagnostics; never part of equality.
    pos: Optional[tuple] = field(default=None, compare=False, repr=False, kw_only=True)


@dataclass(frozen=True)
class Var(Term):
    name: str


@dataclass(frozen=True)
class Hole(Term):
    pass


@dataclass(frozen=True)
class Err(Term):
    ty: ComputationType


@dataclass(frozen=True)
class Abort(Term):
    arg: Term
    ty: Optional[Type] = None


@dataclass(frozen=True)
class Inl(Term):
    arg: Term
    ty: Optional[ValueType] = None


@dataclass(frozen=True)
class Inr(Term):
    arg: Term
    ty: Optional[ValueType] = None


@dataclass(frozen=True)
class Case(Term):
    scrut: Term
    x1: str
    branch1: Term
    x2: str
    branch2: Term


@dataclass(frozen=True)
class UnitV(Term):
    pass


@dataclass(frozen=True)
class UnitSplit(Term):
    scrut: Term
    body: Term


@dataclass(frozen=True)
class PairV(Term):
    left: Term
    right: Term


@dataclass(frozen=True)
class Split(Term):
    scrut: Term
    x: str
    y: str
    body: Term


@dataclass(frozen=True)
class RollMu(Term):
    ty: ValueType
    arg: Term


@dataclass(frozen=True)
class UnrollMu(Term):
    scrut: Term
    x: str
    body: Term


@dataclass(frozen=True)
class Thunk(Term):
    body: Term


@dataclass(frozen=True)
class Force(Term):
    arg: Term


@dataclass(frozen=True)
class RetV(Term):
    arg: Term


@dataclass(frozen=True)
class Bind(Term):
    head: Term
    x: str
    body: Term


@dataclass(frozen=True)
class Lam(Term):
    x: str
    ty: ValueType
    body: Term


@dataclass(frozen=True)
class App(Term):
    fn: Term
    arg: Term


@dataclass(frozen=True)
class EmptyPair(Term):
    pass


@dataclass(frozen=True)
class WithPair(Term):
    left: Term
    right: Term


@dataclass(frozen=True)
class Fst(Term):
    arg: Term


@dataclass(frozen=True)
class Snd(Term):
    arg: Term


@dataclass(frozen=True)
class RollNu(Term):
    ty: ComputationType
    arg: Term


@dataclass(frozen=True)
class UnrollNu(Term):
    arg: Term


@dataclass(frozen=True)
class UpCast(Term):
    src: ValueType
    tgt: ValueType
    arg: Term


@dataclass(frozen=True)
class DnCast(Term):
    src: ComputationType
    tgt: ComputationType
    arg: Term


HOLE = Hole()
UNIT_V = UnitV()
EMPTY_PAIR = EmptyPair()

# For each constructor: (term-field, names-of-binder-fields scoping over it).
_CHILDREN: dict = {
    Var: (),
    Hole: (),
    Err: (),
    UnitV: (),
    EmptyPair: (),
    Abort: (("arg", ()),),
    Inl: (("arg", ()),),
    Inr: (("arg", ()),),
    Case: (("scrut", ()), ("branch1", ("x1",)), ("branch2", ("x2",))),
    UnitSplit: (("scrut", ()), ("body", ())),
    PairV: (("left", ()), ("right", ())),
    Split: (("scrut", ()), ("body", ("x", "y"))),
    RollMu: (("arg", ()),),
    UnrollMu: (("scrut", ()), ("body", ("x",))),
    Thunk: (("body", ()),),
    Force: (("arg", ()),),
    RetV: (("arg", ()),),
    Bind: (("head", ()), ("body", ("x",))),
    Lam: (("body", ("x",)),),
    App: (("fn", ()), ("arg", ())),
    WithPair: (("left", ()), ("right", ())),
    Fst: (("arg", ()),),
    Snd: (("arg", ()),),
    RollNu: (("arg", ()),),
    UnrollNu: (("arg", ()),),
    UpCast: (("arg", ()),),
    DnCast: (("arg", ()),),
}

VALUE_INTROS = (Var, Inl, Inr, UnitV, PairV, RollMu, Thunk)
PATTERN_MATCHES = (Case, UnitSplit, Split, UnrollMu)


def children(t: Term) -> Iterator[tuple]:
    """Yield ``(child, bound_names)`` for every immediate subterm."""
    for fname, binders in _CHILDREN[type(t)]:
        yield getattr(t, fname), tuple(getattr(t, b) for b in binders)


def map_children(t: Term, fn: Callable[[Term, tuple], Term]) -> Term:
    spec = _CHILDREN[type(t)]
    if not spec:
        return t
    changes = {}
    for fname, binders in spec:
        old = getattr(t, fname)
        new = fn(old, tuple(getattr(t, b) for b in binders))
        if new is not old:
            changes[fname] = new
    return dataclasses.replace(t, **changes) if changes else t


def syntactic_sort(t: Term) -> Optional[str]:
    """'value', 'comp', or None when the term alone does not decide it."""
    if isinstance(t, (Var, Inl, Inr, UnitV, PairV, RollMu, Thunk, UpCast)):
        return "value"
    if isinstance(t, Abort):
        if t.ty is None:
            return None
        return "value" if isinstance(t.ty, ValueType) else "comp"
    if isinstance(t, Case):
        return syntactic_sort(t.branch1) or syntactic_sort(t.branch2)
    if isinstance(t, (UnitSplit, Split, UnrollMu)):
        return syntactic_sort(t.body)
    return "comp"


def free_vars(t: Term) -> frozenset:
    if isinstance(t, Var):
        return frozenset([t.name])
    out = set()
    for child, bound in children(t):
        fv = free_vars(child)
        out |= fv.difference(bound) if bound else fv
    return frozenset(out)


def has_hole(t: Term) -> bool:
    if isinstance(t, Hole):
        return True
    return any(has_hole(c) for c, _ in children(t))


def term_size(t: Term) -> int:
    return 1 + sum(term_size(c) for c, _ in children(t))


def base_name(name: str) -> str:
    return name.split("#", 1)[0]


class NameSupply:
    """Deterministic fresh names of the form ``base#<tag><n>``.

    The parser uses an empty tag and generated code uses its own tag, so the
    two families never collide.
    """

    def __init__(self, tag: str = "g"):
        self.tag = tag
        self._counter = itertools.count(1)

    def fresh(self, hint: str = "x") -> str:
        return f"{base_name(hint)}#{self.tag}{next(self._counter)}"


_RENAMER = NameSupply("r")


def rename_bound(t: Term, old: str, new: str) -> Term:
    """Rename free occurrences of ``old`` to ``new`` (``new`` must be fresh)."""
    return subst_value(t, old, Var(new))


def subst_value(body: Term, x: str, v: Term, *, closed: bool = False) -> Term:
    """Capture-avoiding substitution ``body[v/x]``.

    ``closed=True`` promises that ``v`` has no free variables, which lets
    the hot path skip the capture check.
    """
    fv = frozenset() if closed else free_vars(v)
    return _subst(body, x, v, fv)


def _subst(t: Term, x: str, v: Term, fv: frozenset) -> Term:
    if isinstance(t, Var):
        return v if t.name == x else t
    spec = _CHILDREN[type(t)]
    if not spec:
        return t
    changes = {}
    renames = {}
    for fname, binders in spec:
        child = getattr(t, fname)
        names = [getattr(t, b) for b in binders]
        if x in names:
            continue
        for bname, name in zip(binders, names):
            if name in fv:
                new = renames.get(bname) or _RENAMER.fresh(name)
                renames[bname] = new
                child = _subst(child, name, Var(new), frozenset())
        new_child = _subst(child, x, v, fv)
        if new_child is not getattr(t, fname):
            changes[fname] = new_child
    changes.update(renames)
    return dataclasses.replace(t, **changes) if changes else t


def subst_many(body: Term, mapping: dict) -> Term:
    """Simultaneous substitution of closed values."""
    for name, val in mapping.items():
        body = subst_value(body, name, val, closed=True)
    return body


def plug_stack(stack: Term, m: Term) -> Term:
    """Replace every hole in ``stack`` by ``m``.

    Holes never sit under binders that could capture ``m``'s free variables
    in code we generate; callers plugging open terms into foreign stacks
    must keep names apart.
    """
    if isinstance(stack, Hole):
        return m
    return map_children(stack, lambda c, _b: plug_stack(c, m) if has_hole(c) else c)


def alpha_eq(a: Term, b: Term) -> bool:
    """Term equality up to consistent renaming of bound variables."""
    return _alpha(a, b, {}, {}, itertools.count())


def _alpha(a: Term, b: Term, left: dict, right: dict, counter) -> bool:
    if type(a) is not type(b):
        return False
    if isinstance(a, Var):
        la, rb = left.get(a.name), right.get(b.name)
        if la is None and rb is None:
            return a.name == b.name
        return la == rb
    for f in dataclasses.fields(a):
        if f.name == "pos":
            continue
        va, vb = getattr(a, f.name), getattr(b, f.name)
        if isinstance(va, (ValueType, ComputationType)) or isinstance(vb, (ValueType, ComputationType)):
            if va is None or vb is None or not alpha_eq_types(va, vb):
                return False
        elif va is None or vb is None:
            if va is not vb:
                return False
    for (ca, ba), (cb, bb) in zip(children(a), children(b)):
        if ba:
            nl, nr = dict(left), dict(right)
            for na, nb in zip(ba, bb):
                k = next(counter)
                nl[na] = k
                nr[nb] = k
        else:
            nl, nr = left, right
        if not _alpha(ca, cb, nl, nr, counter):
            return False
    return True


def subterms(t: Term) -> Iterator[Term]:
    yield t
    for c, _ in children(t):
        yield from subterms(c)
