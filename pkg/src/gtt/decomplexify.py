"""De-complexification: CBPV* into operational CBPV.

A complex value ``V : A`` becomes a computation of type ``F A``; a complex
stack becomes a computation over a thunk variable standing for the hole.
The translation is the plain clause-by-clause one, administrative
``bind``/``ret`` redexes included; nothing is optimized away.
"""

from __future__ import annotations

from typing import Optional

from .syntax import terms as T

HOLE_VAR = "z"


class Simplifier:
    def __init__(self, names: Optional[T.NameSupply] = None, hole_var: str = HOLE_VAR):
        self.names = names or T.NameSupply("s")
        self.hole_var = hole_var

    def fresh(self, hint: str = "x") -> str:
        return self.names.fresh(hint)

    def _bind_value(self, v: T.Term, hint: str, k) -> T.Term:
        x = self.fresh(hint)
        return T.Bind(self.simp(v), x, k(T.Var(x)))

    def simp(self, e: T.Term) -> T.Term:
        match e:
            case T.Hole():
                return T.Force(T.Var(self.hole_var))
            case T.Var():
                return T.RetV(e)
            case T.UnitV():
                return T.RetV(T.UNIT_V)
            case T.Inl(v, ty) | T.Inr(v, ty):
                ctor = type(e)
                return self._bind_value(v, "x", lambda x: T.RetV(ctor(x, ty)))
            case T.RollMu(ty, v):
                return self._bind_value(v, "x", lambda x: T.RetV(T.RollMu(ty, x)))
            case T.PairV(a, b):
                return self._bind_value(a, "x", lambda x1: self._bind_value(
                    b, "x", lambda x2: T.RetV(T.PairV(x1, x2))))
            case T.Thunk(m):
                return T.RetV(T.Thunk(self.simp(m)))
            case T.RetV(v):
                return self._bind_value(v, "x", T.RetV)
            case T.Force(v):
                return self._bind_value(v, "x", T.Force)
            case T.App(m, v):
                fn = self.simp(m)
                return self._bind_value(v, "x", lambda x: T.App(fn, x))
            case T.Abort(v, ty):
                return self._bind_value(v, "x", lambda x: T.Abort(x, ty))
            case T.Case(v, x1, b1, x2, b2):
                return self._bind_value(v, "x", lambda x: T.Case(x, x1, self.simp(b1), x2, self.simp(b2)))
            case T.UnitSplit(v, body):
                return self._bind_value(v, "w", lambda x: T.UnitSplit(x, self.simp(body)))
            case T.Split(v, x, y, body):
                return self._bind_value(v, "w", lambda w: T.Split(w, x, y, self.simp(body)))
            case T.UnrollMu(v, x, body):
                return self._bind_value(v, "w", lambda w: T.UnrollMu(w, x, self.simp(body)))
            case T.UpCast() | T.DnCast():
                raise ValueError("de-complexification expects cast-free CBPV*; elaborate first")
        # Err, emptypair, bind, lam, pairs, projections, rollnu/unrollnu: congruence.
        return T.map_children(e, lambda c, _b: self.simp(c))


def simp_value(v: T.Term, names: Optional[T.NameSupply] = None) -> T.Term:
    return Simplifier(names).simp(v)


def simp_comp(m: T.Term, names: Optional[T.NameSupply] = None) -> T.Term:
    return Simplifier(names).simp(m)


def simp_stack(s: T.Term, hole_var: str = HOLE_VAR, names: Optional[T.NameSupply] = None) -> T.Term:
    """Simplify a stack; the hole becomes ``force hole_var``."""
    return Simplifier(names, hole_var).simp(s)
