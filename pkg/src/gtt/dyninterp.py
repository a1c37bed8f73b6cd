"""Dynamic-type interpretations: closed recursive types for ? and ¿ plus ep pairs.

Ground keys are ``"1"``, ``"prod"``, ``"sum"``, ``"thunk"`` for value grounds
(1, ?×?, ?+?, U¿) and ``"with"``, ``"arrow"``, ``"ret"`` for computation
grounds (¿&¿, ?→¿, F?).

Both interpretations build ¿ by substituting the closed ? into a ν-type, so
``unfold`` of either type produces the other one syntactically and the two
recursive types stay in lockstep under iso-recursive rolling.

Embeddings take the value being embedded as a term and return a value term.
Projections are stacks whose hole is :data:`terms.HOLE`.
"""

from __future__ import annotations

from functools import lru_cache

from .dynamism import GROUND_C, GROUND_V, floor_c, floor_v
from .syntax import terms as T
from .syntax.types import (
    BOOL, UNIT, Arrow, CoDyn, CVar, Dyn, F, Mu, Nu, Prod, Sum, Type, U, Unit,
    ValueType, VVar, With, Zero, Top, subst_type, unfold,
)

VALUE_GROUNDS = ("1", "prod", "sum", "thunk")
COMP_GROUNDS = ("with", "arrow", "ret")

_X, _Y = VVar("X"), CVar("Y")


def ground_key(g: Type) -> str:
    for key, ty in {**GROUND_V, **GROUND_C}.items():
        if ty == g:
            return key
    raise KeyError(f"not a ground type: {g!r}")


class Interp:
    name: str
    val_dyn: Mu
    comp_dyn: Nu

    def translate(self, t: Type) -> Type:
        return _translate(self, t)

    def ground_type(self, key: str) -> Type:
        return self.translate({**GROUND_V, **GROUND_C}[key])

    # The four per-ground operations every interpretation supplies.
    def embed_v(self, key: str, v: T.Term, names: T.NameSupply) -> T.Term:
        raise NotImplementedError

    def project_v(self, key: str, names: T.NameSupply) -> T.Term:
        raise NotImplementedError

    def embed_c(self, key: str, z: T.Term, names: T.NameSupply) -> T.Term:
        raise NotImplementedError

    def project_c(self, key: str, names: T.NameSupply) -> T.Term:
        raise NotImplementedError

    def __repr__(self):
        return f"<Interp {self.name}>"


def interp_type(interp: Interp, t: Type) -> Type:
    return interp.translate(t)


@lru_cache(maxsize=None)
def _translate(interp: Interp, t: Type) -> Type:
    match t:
        case Dyn():
            return interp.val_dyn
        case CoDyn():
            return interp.comp_dyn
        case Zero() | Unit() | Top() | VVar() | CVar():
            return t
        case U(b):
            return U(_translate(interp, b))
        case Sum(a, b):
            return Sum(_translate(interp, a), _translate(interp, b))
        case Prod(a, b):
            return Prod(_translate(interp, a), _translate(interp, b))
        case F(a):
            return F(_translate(interp, a))
        case With(a, b):
            return With(_translate(interp, a), _translate(interp, b))
        case Arrow(a, b):
            return Arrow(_translate(interp, a), _translate(interp, b))
        case Mu(x, a):
            return Mu(x, _translate(interp, a))
        case Nu(x, b):
            return Nu(x, _translate(interp, b))
    raise TypeError(t)


def _inject(index: int, count: int, v: T.Term, sums: list) -> T.Term:
    """The ``index``-th injection into a right-nested sum of ``count`` summands.

    ``sums`` lists the nested sum types from the outside in.
    """
    last = index == count - 1
    out = v if last else T.Inl(v, sums[index])
    for k in range((count - 2) if last else (index - 1), -1, -1):
        out = T.Inr(out, sums[k])
    return out


def _right_spine(t: ValueType, count: int) -> list:
    sums = []
    for _ in range(count - 1):
        sums.append(t)
        t = t.right
    return sums


def _case_chain(scrut: T.Term, count: int, index: int, hit, miss, names: T.NameSupply) -> T.Term:
    """Peel a right-nested sum: ``hit(var)`` at ``index``, ``miss()`` elsewhere."""
    if count == 1:
        return hit(scrut)
    a, b = names.fresh("a"), names.fresh("b")
    left = hit(T.Var(a)) if index == 0 else miss()
    right = _case_chain(T.Var(b), count - 1, index - 1, hit, miss, names) if index > 0 else miss()
    return T.Case(scrut, a, left, b, right)


class NaturalInterp(Interp):
    """? ≅ 1 + (?×?) + (?+?) + U¿ and ¿ ≅ (¿&¿) & (?→¿) & F?.

    Injection order inside ? is [1, ×, +, U]; the lazy product inside ¿ is
    ⟨¿&¿, ⟨?→¿, F?⟩⟩.
    """

    name = "natural"
    _V_INDEX = {"1": 0, "prod": 1, "sum": 2, "thunk": 3}

    def __init__(self):
        codyn_open = Nu("Y", With(With(_Y, _Y), With(Arrow(_X, _Y), F(_X))))
        self.val_dyn = Mu("X", Sum(Unit(), Sum(Prod(_X, _X), Sum(Sum(_X, _X), U(codyn_open)))))
        self.comp_dyn = subst_type(codyn_open, "X", self.val_dyn)
        self._spine = _right_spine(unfold(self.val_dyn), 4)

    def embed_v(self, key, v, names):
        return T.RollMu(self.val_dyn, _inject(self._V_INDEX[key], 4, v, self._spine))

    def project_v(self, key, names):
        y, w = names.fresh("y"), names.fresh("w")
        target = F(self.ground_type(key))
        body = _case_chain(T.Var(w), 4, self._V_INDEX[key], lambda a: T.RetV(a), lambda: T.Err(target), names)
        return T.Bind(T.HOLE, y, T.UnrollMu(T.Var(y), w, body))

    def _slots(self):
        c = self.comp_dyn
        d = self.val_dyn
        return {"with": With(c, c), "arrow": Arrow(d, c), "ret": F(d)}

    def embed_c(self, key, z, names):
        slots = {k: (T.Force(z) if k == key else T.Err(ty)) for k, ty in self._slots().items()}
        body = T.WithPair(slots["with"], T.WithPair(slots["arrow"], slots["ret"]))
        return T.Thunk(T.RollNu(self.comp_dyn, body))

    def project_c(self, key, names):
        unrolled = T.UnrollNu(T.HOLE)
        if key == "with":
            return T.Fst(unrolled)
        if key == "arrow":
            return T.Fst(T.Snd(unrolled))
        return T.Snd(T.Snd(unrolled))


class SchemeInterp(Interp):
    """? ≅ (1+1) + U¿ + (?×?) and ¿ ≅ (? → ¿) & F?.

    The other grounds are encoded: () is the boolean true, a sum is a
    (boolean tag, payload) pair, and a lazy pair is a function of a boolean.
    Injection order inside ? is [𝔹, U, ×].
    """

    name = "scheme"

    def __init__(self):
        codyn_open = Nu("Y", With(Arrow(_X, _Y), F(_X)))
        self.val_dyn = Mu("X", Sum(BOOL, Sum(U(codyn_open), Prod(_X, _X))))
        self.comp_dyn = subst_type(codyn_open, "X", self.val_dyn)
        self._spine = _right_spine(unfold(self.val_dyn), 3)

    # -- direct tags -----------------------------------------------------
    def _roll(self, index: int, v: T.Term) -> T.Term:
        return T.RollMu(self.val_dyn, _inject(index, 3, v, self._spine))

    def _project_tag(self, index: int, target: ValueType, names) -> T.Term:
        y, w = names.fresh("y"), names.fresh("w")
        body = _case_chain(T.Var(w), 3, index, lambda a: T.RetV(a), lambda: T.Err(F(target)), names)
        return T.Bind(T.HOLE, y, T.UnrollMu(T.Var(y), w, body))

    def embed_bool(self, b: T.Term) -> T.Term:
        return self._roll(0, b)

    def true_(self) -> T.Term:
        return self.embed_bool(T.Inl(T.UNIT_V, BOOL))

    def false_(self) -> T.Term:
        return self.embed_bool(T.Inr(T.UNIT_V, BOOL))

    def project_bool(self, names) -> T.Term:
        return self._project_tag(0, BOOL, names)

    # -- grounds ---------------------------------------------------------
    def embed_v(self, key, v, names):
        if key == "1":
            return self.embed_bool(T.Inl(v, BOOL))
        if key == "thunk":
            return self._roll(1, v)
        if key == "prod":
            return self._roll(2, v)
        a1, a2 = names.fresh("a"), names.fresh("a")
        return T.Case(
            v,
            a1, self._roll(2, T.PairV(self.true_(), T.Var(a1))),
            a2, self._roll(2, T.PairV(self.false_(), T.Var(a2))),
        )

    def project_v(self, key, names):
        d = self.val_dyn
        if key == "thunk":
            return self._project_tag(1, U(self.comp_dyn), names)
        if key == "prod":
            return self._project_tag(2, Prod(d, d), names)
        if key == "1":
            b, u, n = names.fresh("b"), names.fresh("u"), names.fresh("n")
            return T.Bind(
                self.project_bool(names), b,
                T.Case(T.Var(b), u, T.RetV(T.Var(u)), n, T.Err(F(UNIT))),
            )
        y, t, a, b, u1, u2 = (names.fresh(h) for h in ("y", "t", "a", "b", "u", "u"))
        dd = Sum(d, d)
        tag = T.plug_stack(self.project_bool(names), T.RetV(T.Var(t)))
        return T.Bind(
            self._project_tag(2, Prod(d, d), names), y,
            T.Split(T.Var(y), t, a, T.Bind(
                tag, b,
                T.Case(T.Var(b),
                       u1, T.RetV(T.Inl(T.Var(a), dd)),
                       u2, T.RetV(T.Inr(T.Var(a), dd))))),
        )

    def embed_c(self, key, z, names):
        c, d = self.comp_dyn, self.val_dyn
        if key == "arrow":
            return T.Thunk(T.RollNu(c, T.WithPair(T.Force(z), T.Err(F(d)))))
        if key == "ret":
            return T.Thunk(T.RollNu(c, T.WithPair(T.Err(Arrow(d, c)), T.Force(z))))
        x, b, u1, u2 = names.fresh("x"), names.fresh("b"), names.fresh("u"), names.fresh("u")
        tag = T.plug_stack(self.project_bool(names), T.RetV(T.Var(x)))
        fn = T.Lam(x, d, T.Bind(tag, b, T.Case(
            T.Var(b), u1, T.Fst(T.Force(z)), u2, T.Snd(T.Force(z)))))
        return T.Thunk(T.RollNu(c, T.WithPair(fn, T.Err(F(d)))))

    def project_c(self, key, names):
        if key == "arrow":
            return T.Fst(T.UnrollNu(T.HOLE))
        if key == "ret":
            return T.Snd(T.UnrollNu(T.HOLE))
        return T.WithPair(
            T.App(T.Fst(T.UnrollNu(T.HOLE)), self.true_()),
            T.App(T.Fst(T.UnrollNu(T.HOLE)), self.false_()),
        )


NATURAL = NaturalInterp()
SCHEME = SchemeInterp()
INTERPS = {"natural": NATURAL, "scheme": SCHEME}


def natural_interp() -> Interp:
    return NATURAL


def scheme_interp() -> Interp:
    return SCHEME


def get_interp(name: str) -> Interp:
    try:
        return INTERPS[name]
    except KeyError:
        raise ValueError(f"unknown interpretation '{name}' (choose natural or scheme)") from None


__all__ = [
    "Interp", "NATURAL", "SCHEME", "INTERPS", "natural_interp", "scheme_interp", "get_interp",
    "interp_type", "ground_key", "VALUE_GROUNDS", "COMP_GROUNDS", "floor_v", "floor_c",
]
