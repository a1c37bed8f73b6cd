"""Cast-to-contract translation from GTT into CBPV*.

Each cast is compiled by structural recursion on its normalized dynamism
derivation.  Upcasts become complex values, downcasts become complex
stacks; everything else is translated homomorphically with ``?``/``¿``
replaced by the interpretation's recursive types.

Generated binders come from a per-elaboration :class:`NameSupply`, so the
printed output of one elaboration is byte-stable.
"""

from __future__ import annotations

from typing import Optional

from . import dynamism as D
from .dyninterp import Interp, ground_key
from .syntax import terms as T
from .syntax.types import ZERO, F


class Elaborator:
    def __init__(self, interp: Interp, names: Optional[T.NameSupply] = None):
        self.interp = interp
        self.names = names or T.NameSupply("e")

    def ty(self, t):
        return self.interp.translate(t)

    def fresh(self, hint: str) -> str:
        return self.names.fresh(hint)

    # -- upcasts: complex values -------------------------------------------

    def up(self, d, v: T.Term) -> T.Term:
        """The upcast along value derivation ``d`` applied to value ``v``."""
        match d:
            case D.VRefl():
                return v
            case D.ZeroBot(target):
                return T.Abort(v, self.ty(target))
            case D.ToDyn(inner):
                return self.interp.embed_v(ground_key(D.floor_v(inner.lhs)), self.up(inner, v), self.names)
            case D.SumMon(dl, dr):
                a, b = self.fresh("x"), self.fresh("x")
                target = self.ty(d.rhs)
                return T.Case(v, a, T.Inl(self.up(dl, T.Var(a)), target), b, T.Inr(self.up(dr, T.Var(b)), target))
            case D.ProdMon(dl, dr):
                a, b = self.fresh("x"), self.fresh("x")
                return T.Split(v, a, b, T.PairV(self.up(dl, T.Var(a)), self.up(dr, T.Var(b))))
            case D.UMon(dc):
                return self.up_thunk(dc, v)
        raise TypeError(f"not a value derivation: {d!r}")

    def up_thunk(self, d, z: T.Term) -> T.Term:
        """The upcast ``U B ⊑ U B'`` along computation derivation ``d``."""
        match d:
            case D.CoDynRefl():
                return z
            case D.TopBot(target):
                return T.Thunk(T.Err(self.ty(target)))
            case D.CToDyn(inner):
                return self.interp.embed_c(ground_key(D.floor_c(inner.lhs)), self.up_thunk(inner, z), self.names)
            case D.FMon(dv):
                y = self.fresh("y")
                return T.Thunk(T.Bind(T.Force(z), y, T.RetV(self.up(dv, T.Var(y)))))
            case D.WithMon(dl, dr):
                left = self.up_thunk(dl, T.Thunk(T.Fst(T.Force(z))))
                right = self.up_thunk(dr, T.Thunk(T.Snd(T.Force(z))))
                return T.Thunk(T.WithPair(T.Force(left), T.Force(right)))
            case D.ArrowMon(dv, dc):
                xp, x = self.fresh("x"), self.fresh("x")
                arg = T.plug_stack(self.dn_ret(dv), T.RetV(T.Var(xp)))
                result = self.up_thunk(dc, T.Thunk(T.App(T.Force(z), T.Var(x))))
                return T.Thunk(T.Lam(xp, self.ty(dv.rhs), T.Bind(arg, x, T.Force(result))))
        raise TypeError(f"not a computation derivation: {d!r}")

    # -- downcasts: complex stacks -----------------------------------------

    def dn(self, d) -> T.Term:
        """The downcast stack ``• : ⟦B'⟧ ⊢ ⟦B⟧`` along computation derivation ``d``."""
        match d:
            case D.CoDynRefl():
                return T.HOLE
            case D.TopBot():
                return T.EMPTY_PAIR
            case D.CToDyn(inner):
                proj = self.interp.project_c(ground_key(D.floor_c(inner.lhs)), self.names)
                return T.plug_stack(self.dn(inner), proj)
            case D.FMon(dv):
                return self.dn_ret(dv)
            case D.WithMon(dl, dr):
                return T.WithPair(T.plug_stack(self.dn(dl), T.Fst(T.HOLE)), T.plug_stack(self.dn(dr), T.Snd(T.HOLE)))
            case D.ArrowMon(dv, dc):
                x = self.fresh("x")
                return T.Lam(x, self.ty(dv.lhs), T.plug_stack(self.dn(dc), T.App(T.HOLE, self.up(dv, T.Var(x)))))
        raise TypeError(f"not a computation derivation: {d!r}")

    def dn_ret(self, d) -> T.Term:
        """The downcast stack ``• : F⟦A'⟧ ⊢ F⟦A⟧`` along value derivation ``d``."""
        match d:
            case D.VRefl():
                return T.HOLE
            case D.ZeroBot():
                return T.Bind(T.HOLE, self.fresh("x"), T.Err(F(ZERO)))
            case D.ToDyn(inner):
                proj = self.interp.project_v(ground_key(D.floor_v(inner.lhs)), self.names)
                return T.plug_stack(self.dn_ret(inner), proj)
            case D.SumMon(dl, dr):
                target = self.ty(d.lhs)
                xp, a1, a2, b1, b2 = (self.fresh(h) for h in ("x", "a", "a", "b", "b"))
                left = T.Bind(T.plug_stack(self.dn_ret(dl), T.RetV(T.Var(a1))), a2, T.RetV(T.Inl(T.Var(a2), target)))
                right = T.Bind(T.plug_stack(self.dn_ret(dr), T.RetV(T.Var(b1))), b2, T.RetV(T.Inr(T.Var(b2), target)))
                return T.Bind(T.HOLE, xp, T.Case(T.Var(xp), a1, left, b1, right))
            case D.ProdMon(dl, dr):
                p, x1p, x2p, x1, x2 = (self.fresh(h) for h in ("p", "x", "x", "x", "x"))
                body = T.Bind(
                    T.plug_stack(self.dn_ret(dl), T.RetV(T.Var(x1p))), x1,
                    T.Bind(T.plug_stack(self.dn_ret(dr), T.RetV(T.Var(x2p))), x2,
                           T.RetV(T.PairV(T.Var(x1), T.Var(x2)))))
                return T.Bind(T.HOLE, p, T.Split(T.Var(p), x1p, x2p, body))
            case D.UMon(dc):
                xp = self.fresh("x")
                return T.Bind(T.HOLE, xp, T.RetV(T.Thunk(T.plug_stack(self.dn(dc), T.Force(T.Var(xp))))))
        raise TypeError(f"not a value derivation: {d!r}")

    # -- whole terms -------------------------------------------------------

    def term(self, e: T.Term) -> T.Term:
        match e:
            case T.UpCast(src, tgt, arg):
                d = D.derive_v(src, tgt)
                return self.up(d, self.term(arg))
            case T.DnCast(src, tgt, arg):
                d = D.derive_c(src, tgt)
                return T.plug_stack(self.dn(d), self.term(arg))
            case T.Err(ty):
                return T.Err(self.ty(ty), pos=e.pos)
            case T.Abort(arg, ty) | T.Inl(arg, ty) | T.Inr(arg, ty):
                return type(e)(self.term(arg), None if ty is None else self.ty(ty), pos=e.pos)
            case T.Lam(x, ty, body):
                return T.Lam(x, self.ty(ty), self.term(body), pos=e.pos)
            case T.RollMu(ty, arg) | T.RollNu(ty, arg):
                return type(e)(self.ty(ty), self.term(arg), pos=e.pos)
        return T.map_children(e, lambda c, _b: self.term(c))


def elab_upcast(d, interp: Interp, var: str = "x") -> T.Term:
    """The complex value ``x : ⟦A⟧ ⊢ ⟦⟨A' ↢ A⟩⟧ : ⟦A'⟧`` (free variable ``var``)."""
    el = Elaborator(interp)
    if D.is_value_deriv(d):
        return el.up(d, T.Var(var))
    return el.up_thunk(d, T.Var(var))


def elab_dncast(d, interp: Interp) -> T.Term:
    """The complex stack ``• : ⟦B'⟧ ⊢ ⟦⟨B ↞ B'⟩⟧ : ⟦B⟧``.

    A value derivation ``A ⊑ A'`` is read as ``F A ⊑ F A'``.
    """
    el = Elaborator(interp)
    if D.is_value_deriv(d):
        return el.dn_ret(d)
    return el.dn(d)


def elab_term(e: T.Term, interp: Interp) -> T.Term:
    """Elaborate an ascribed (typechecked) GTT term."""
    return Elaborator(interp).term(e)
