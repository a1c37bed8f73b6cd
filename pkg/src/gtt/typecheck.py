"""Bidirectional typechecking for GTT and CBPV* with the stoup discipline.

Judgments are ``Γ ⊢ V : A`` for values and ``Γ | Δ ⊢ M : B`` for
computations, where the stoup ``Δ`` is empty or a single hole ``• : B``.
Inference is syntax-directed; checking mode exists only so that injections
and ``abort`` may omit their ascription when the expected type is known.
Both modes return the term with every injection/abort ascribed, which is the
form elaboration consumes.
"""

from __future__ import annotations

from typing import Mapping, Optional

from . import dynamism
from .syntax import terms as T
from .syntax.concrete import print_type
from .syntax.types import (
    BOOL, F_BOOL, UNIT, ZERO, Arrow, ComputationType, F, Mu, Nu, Prod, Sum, Top, Type, U,
    ValueType, With, alpha_eq_types, unfold,
)


class TypeErr(Exception):
    def __init__(self, code: str, message: str, pos=None):
        super().__init__(message)
        self.code = code
        self.message = message
        self.pos = pos

    def format(self) -> str:
        line, col = self.pos or (0, 0)
        return f"ERR {line}:{col} {self.code} {self.message}"


class _NeedsAnnotation(TypeErr):
    pass


Env = Mapping[str, ValueType]


def _fail(code: str, e: T.Term, message: str):
    raise TypeErr(code, message, e.pos)


def _same(a: Type, b: Type) -> bool:
    return alpha_eq_types(a, b)


def _want_value_type(t: Type, e: T.Term) -> ValueType:
    if not isinstance(t, ValueType):
        _fail("E-SORT", e, f"expected a value, found a computation of type {print_type(t)}")
    return t


def _want_comp_type(t: Type, e: T.Term) -> ComputationType:
    if not isinstance(t, ComputationType):
        _fail("E-SORT", e, f"expected a computation, found a value of type {print_type(t)}")
    return t


def _no_stoup(stoup, e: T.Term, what: str):
    if stoup is not None:
        _fail("E-STOUP", e, f"{what} requires an empty stoup but the hole is still available")


def infer(env: Env, stoup: Optional[ComputationType], e: T.Term):
    """Return ``(ascribed_term, type)``."""
    match e:
        case T.Var(name):
            if name not in env:
                _fail("E-UNBOUND", e, f"unbound variable {name}")
            return e, env[name]
        case T.Hole():
            if stoup is None:
                _fail("E-STOUP", e, "hole used where the stoup is empty")
            return e, stoup
        case T.Err(ty):
            _no_stoup(stoup, e, "err")
            return e, ty
        case T.Abort(arg, ty):
            if ty is None:
                raise _NeedsAnnotation("E-ANNOT", "abort needs a type ascription here", e.pos)
            return T.Abort(check(env, None, arg, ZERO), ty, pos=e.pos), ty
        case T.Inl(_, ty) | T.Inr(_, ty):
            if ty is None:
                raise _NeedsAnnotation("E-ANNOT", "sum injection needs a type ascription here", e.pos)
            return check(env, stoup, e, ty), ty
        case T.UnitV():
            return e, UNIT
        case T.PairV(a, b):
            a2, ta = infer(env, None, a)
            b2, tb = infer(env, None, b)
            return T.PairV(a2, b2, pos=e.pos), Prod(_want_value_type(ta, a), _want_value_type(tb, b))
        case T.RollMu(ty, arg):
            if not isinstance(ty, Mu):
                _fail("E-TYPE", e, f"rollmu expects a mu type, got {print_type(ty)}")
            return T.RollMu(ty, check(env, None, arg, unfold(ty)), pos=e.pos), ty
        case T.Thunk(body):
            b2, tb = infer(env, None, body)
            return T.Thunk(b2, pos=e.pos), U(_want_comp_type(tb, body))
        case T.UpCast(src, tgt, arg):
            a2 = check(env, None, arg, src)
            if dynamism.derive_v(src, tgt) is None:
                _fail("E-CAST", e, f"{print_type(src)} ⊑ {print_type(tgt)} is not derivable")
            return T.UpCast(src, tgt, a2, pos=e.pos), tgt
        case T.Force(arg):
            _no_stoup(stoup, e, "force")
            a2, ta = infer(env, None, arg)
            if not isinstance(ta, U):
                _fail("E-TYPE", e, f"force expects a thunk, got {print_type(ta)}")
            return T.Force(a2, pos=e.pos), ta.comp
        case T.RetV(arg):
            _no_stoup(stoup, e, "ret")
            a2, ta = infer(env, None, arg)
            return T.RetV(a2, pos=e.pos), F(_want_value_type(ta, arg))
        case T.Bind(head, x, body):
            h2, th = infer(env, stoup, head)
            if not isinstance(th, F):
                _fail("E-TYPE", head, f"bind expects a returner F A, got {print_type(th)}")
            b2, tb = infer({**env, x: th.value}, None, body)
            return T.Bind(h2, x, b2, pos=e.pos), _want_comp_type(tb, body)
        case T.Lam(x, ty, body):
            b2, tb = infer({**env, x: ty}, stoup, body)
            return T.Lam(x, ty, b2, pos=e.pos), Arrow(ty, _want_comp_type(tb, body))
        case T.App(fn, arg):
            f2, tf = infer(env, stoup, fn)
            if not isinstance(tf, Arrow):
                _fail("E-TYPE", fn, f"application expects a function, got {print_type(tf)}")
            return T.App(f2, check(env, None, arg, tf.dom), pos=e.pos), tf.cod
        case T.EmptyPair():
            return e, Top()
        case T.WithPair(a, b):
            a2, ta = infer(env, stoup, a)
            b2, tb = infer(env, stoup, b)
            return T.WithPair(a2, b2, pos=e.pos), With(_want_comp_type(ta, a), _want_comp_type(tb, b))
        case T.Fst(arg) | T.Snd(arg):
            a2, ta = infer(env, stoup, arg)
            if not isinstance(ta, With):
                _fail("E-TYPE", arg, f"projection expects a lazy pair, got {print_type(ta)}")
            if isinstance(e, T.Fst):
                return T.Fst(a2, pos=e.pos), ta.left
            return T.Snd(a2, pos=e.pos), ta.right
        case T.RollNu(ty, arg):
            if not isinstance(ty, Nu):
                _fail("E-TYPE", e, f"rollnu expects a nu type, got {print_type(ty)}")
            return T.RollNu(ty, check(env, stoup, arg, unfold(ty)), pos=e.pos), ty
        case T.UnrollNu(arg):
            a2, ta = infer(env, stoup, arg)
            if not isinstance(ta, Nu):
                _fail("E-TYPE", arg, f"unrollnu expects a nu type, got {print_type(ta)}")
            return T.UnrollNu(a2, pos=e.pos), unfold(ta)
        case T.DnCast(src, tgt, arg):
            a2 = check(env, stoup, arg, tgt)
            if dynamism.derive_c(src, tgt) is None:
                _fail("E-CAST", e, f"{print_type(src)} ⊑ {print_type(tgt)} is not derivable")
            return T.DnCast(src, tgt, a2, pos=e.pos), src
        case T.Case() | T.UnitSplit() | T.Split() | T.UnrollMu():
            return _elim(env, stoup, e, None)
    raise TypeErr("E-SYNTAX", f"unexpected term {type(e).__name__}", e.pos)


def check(env: Env, stoup: Optional[ComputationType], e: T.Term, expected: Type) -> T.Term:
    match e:
        case T.Inl(arg, ty) | T.Inr(arg, ty):
            target = ty if ty is not None else expected
            if not isinstance(target, Sum):
                _fail("E-TYPE", e, f"injection into non-sum type {print_type(target)}")
            if ty is not None and not _same(ty, expected):
                _mismatch(e, expected, ty)
            side = target.left if isinstance(e, T.Inl) else target.right
            ctor = type(e)
            return ctor(check(env, None, arg, side), target, pos=e.pos)
        case T.Abort(arg, None):
            return T.Abort(check(env, None, arg, ZERO), expected, pos=e.pos)
        case T.Case() | T.UnitSplit() | T.Split() | T.UnrollMu():
            out, _ = _elim(env, stoup, e, expected)
            return out
        case T.Bind(head, x, body):
            h2, th = infer(env, stoup, head)
            if not isinstance(th, F):
                _fail("E-TYPE", head, f"bind expects a returner F A, got {print_type(th)}")
            return T.Bind(h2, x, check({**env, x: th.value}, None, body, expected), pos=e.pos)
        case T.Lam(x, ty, body) if isinstance(expected, Arrow):
            if not _same(ty, expected.dom):
                _mismatch(e, expected, Arrow(ty, expected.cod))
            return T.Lam(x, ty, check({**env, x: ty}, stoup, body, expected.cod), pos=e.pos)
        case T.WithPair(a, b) if isinstance(expected, With):
            return T.WithPair(check(env, stoup, a, expected.left), check(env, stoup, b, expected.right), pos=e.pos)
        case T.PairV(a, b) if isinstance(expected, Prod):
            return T.PairV(check(env, None, a, expected.left), check(env, None, b, expected.right), pos=e.pos)
        case T.RetV(arg) if isinstance(expected, F):
            _no_stoup(stoup, e, "ret")
            return T.RetV(check(env, None, arg, expected.value), pos=e.pos)
        case T.Thunk(body) if isinstance(expected, U):
            return T.Thunk(check(env, None, body, expected.comp), pos=e.pos)
    out, actual = infer(env, stoup, e)
    if not _same(actual, expected):
        _mismatch(e, expected, actual)
    return out


def _mismatch(e: T.Term, expected: Type, actual: Type):
    _fail("E-TYPE", e, f"expected {print_type(expected)} but found {print_type(actual)}")


def _elim(env: Env, stoup, e: T.Term, expected: Optional[Type]):
    """Pattern matching; branches share the stoup, the scrutinee never sees it."""
    match e:
        case T.Case(scrut, x1, b1, x2, b2):
            s2, ts = infer(env, None, scrut)
            if not isinstance(ts, Sum):
                _fail("E-TYPE", scrut, f"case expects a sum, got {print_type(ts)}")
            (n1, n2), t = _branches(
                [({**env, x1: ts.left}, b1), ({**env, x2: ts.right}, b2)], stoup, expected, e)
            return T.Case(s2, x1, n1, x2, n2, pos=e.pos), t
        case T.UnitSplit(scrut, body):
            s2 = check(env, None, scrut, UNIT)
            (n,), t = _branches([(env, body)], stoup, expected, e)
            return T.UnitSplit(s2, n, pos=e.pos), t
        case T.Split(scrut, x, y, body):
            s2, ts = infer(env, None, scrut)
            if not isinstance(ts, Prod):
                _fail("E-TYPE", scrut, f"split expects a product, got {print_type(ts)}")
            (n,), t = _branches([({**env, x: ts.left, y: ts.right}, body)], stoup, expected, e)
            return T.Split(s2, x, y, n, pos=e.pos), t
        case T.UnrollMu(scrut, x, body):
            s2, ts = infer(env, None, scrut)
            if not isinstance(ts, Mu):
                _fail("E-TYPE", scrut, f"pmroll expects a mu type, got {print_type(ts)}")
            (n,), t = _branches([({**env, x: unfold(ts)}, body)], stoup, expected, e)
            return T.UnrollMu(s2, x, n, pos=e.pos), t
    raise AssertionError(e)


def _branches(cases: list, stoup, expected, whole: T.Term):
    if expected is not None:
        return [check(en, stoup, b, expected) for en, b in cases], expected
    # Infer from the first branch that does not need an ascription.
    for k, (en, b) in enumerate(cases):
        try:
            first, t = infer(en, stoup, b)
        except _NeedsAnnotation:
            continue
        out = [check(en2, stoup, b2, t) if j != k else first for j, (en2, b2) in enumerate(cases)]
        return out, t
    raise _NeedsAnnotation("E-ANNOT", "cannot infer the type of this pattern match; add an ascription", whole.pos)


# -- public entry points ----------------------------------------------------

def typecheck(e: T.Term, env: Optional[Env] = None, stoup: Optional[ComputationType] = None,
              expected: Optional[Type] = None):
    """Ascribe and type ``e``; returns ``(ascribed_term, type)``."""
    env = dict(env or {})
    if expected is not None:
        return check(env, stoup, e, expected), expected
    return infer(env, stoup, e)


def infer_value(env: Env, v: T.Term) -> ValueType:
    _, t = infer(dict(env), None, v)
    return _want_value_type(t, v)


def infer_comp(env: Env, m: T.Term, stoup: Optional[ComputationType] = None) -> ComputationType:
    _, t = infer(dict(env), stoup, m)
    return _want_comp_type(t, m)


def check_program(m: T.Term) -> T.Term:
    """A whole program is closed, hole-free, and has type F(1+1)."""
    try:
        out, t = infer({}, None, m)
    except _NeedsAnnotation:
        return check({}, None, m, F_BOOL)
    if not _same(t, F_BOOL):
        raise TypeErr("E-PROGRAM", f"a program must have type {print_type(F_BOOL)}, found {print_type(t)}", m.pos)
    return out


__all__ = ["TypeErr", "typecheck", "infer_value", "infer_comp", "check_program", "check", "infer", "BOOL"]
