"""Concrete s-expression syntax for types and terms: parsing and printing.

Parsing alpha-freshens every binder to ``name#k`` with a per-parse counter,
so bound names are pairwise distinct and golden printouts are stable.
``(let x V E)`` is sugar, expanded by substitution while parsing.  The atoms
``true``/``false`` and the type ``bool`` abbreviate the two boolean
injections and ``(+ 1 1)``.
"""

from __future__ import annotations

from typing import Optional

from . import terms as T
from .sexpr import Atom, SList, SyntaxErr, layout, read_one
from .types import (
    BOOL, CODYN, DYN, TOP, UNIT, ZERO, Arrow, CoDyn, ComputationType, CVar, Dyn, F,
    Mu, Nu, Prod, Sum, Top, Type, U, Unit, ValueType, VVar, With, Zero,
)

TYPE_ATOMS = {"?": DYN, "dyncomp": CODYN, "0": ZERO, "1": UNIT, "top": TOP, "bool": BOOL}
TYPE_HEADS = {"+", "*", "U", "F", "&", "->", "mu", "nu"}
TERM_HEADS = {
    "err", "abort", "inl", "inr", "case", "usplit", "pair", "split", "rollmu",
    "pmroll", "thunk", "force", "ret", "bind", "lam", "app", "wpair", "fst",
    "snd", "rollnu", "unrollnu", "up", "dn", "let",
}
RESERVED = set(TYPE_ATOMS) | TYPE_HEADS | TERM_HEADS | {
    "unit", "hole", "emptypair", "true", "false", ":",
}


class Parser:
    """Stateful only in its fresh-name counter; one instance per source text."""

    def __init__(self):
        self._supply = T.NameSupply(tag="")

    # -- types ---------------------------------------------------------

    def type_(self, sx, vscope: frozenset = frozenset(), cscope: frozenset = frozenset()) -> Type:
        if isinstance(sx, Atom):
            if sx.text in TYPE_ATOMS:
                return TYPE_ATOMS[sx.text]
            if sx.text in vscope:
                return VVar(sx.text)
            if sx.text in cscope:
                return CVar(sx.text)
            raise SyntaxErr(f"unknown type '{sx.text}'", sx.pos, "E-TYPE-SYNTAX")
        head, args = self._head(sx)
        arity = {"+": 2, "*": 2, "U": 1, "F": 1, "&": 2, "->": 2, "mu": 2, "nu": 2}
        if head not in arity:
            raise SyntaxErr(f"unknown type former '{head}'", sx.pos, "E-TYPE-SYNTAX")
        self._arity(sx, args, arity[head])
        if head in ("mu", "nu"):
            var = self._name(args[0])
            if head == "mu":
                body = self.type_(args[1], vscope | {var}, cscope - {var})
                return Mu(var, self._want_value(body, args[1]))
            body = self.type_(args[1], vscope - {var}, cscope | {var})
            return Nu(var, self._want_comp(body, args[1]))
        parts = [self.type_(a, vscope, cscope) for a in args]
        match head:
            case "+":
                return Sum(self._want_value(parts[0], args[0]), self._want_value(parts[1], args[1]))
            case "*":
                return Prod(self._want_value(parts[0], args[0]), self._want_value(parts[1], args[1]))
            case "U":
                return U(self._want_comp(parts[0], args[0]))
            case "F":
                return F(self._want_value(parts[0], args[0]))
            case "&":
                return With(self._want_comp(parts[0], args[0]), self._want_comp(parts[1], args[1]))
            case "->":
                return Arrow(self._want_value(parts[0], args[0]), self._want_comp(parts[1], args[1]))

    def value_type(self, sx) -> ValueType:
        return self._want_value(self.type_(sx), sx)

    def comp_type(self, sx) -> ComputationType:
        return self._want_comp(self.type_(sx), sx)

    @staticmethod
    def _want_value(t, sx):
        if not isinstance(t, ValueType):
            raise SyntaxErr("expected a value type", sx.pos, "E-TYPE-SYNTAX")
        return t

    @staticmethod
    def _want_comp(t, sx):
        if not isinstance(t, ComputationType):
            raise SyntaxErr("expected a computation type", sx.pos, "E-TYPE-SYNTAX")
        return t

    # -- terms ---------------------------------------------------------

    def term(self, sx, scope: Optional[dict] = None) -> T.Term:
        scope = scope or {}
        pos = sx.pos
        if isinstance(sx, Atom):
            text = sx.text
            if text == "unit":
                return T.UnitV(pos=pos)
            if text == "hole":
                return T.Hole(pos=pos)
            if text == "emptypair":
                return T.EmptyPair(pos=pos)
            if text == "true":
                return T.Inl(T.UnitV(pos=pos), BOOL, pos=pos)
            if text == "false":
                return T.Inr(T.UnitV(pos=pos), BOOL, pos=pos)
            if text in RESERVED:
                raise SyntaxErr(f"'{text}' cannot be used as a variable", pos)
            return T.Var(scope.get(text, text), pos=pos)
        head, args = self._head(sx)
        sub = lambda a, sc=scope: self.term(a, sc)  # noqa: E731
        match head:
            case "err":
                self._arity(sx, args, 1)
                return T.Err(self.comp_type(args[0]), pos=pos)
            case "abort" | "inl" | "inr":
                ann = None
                if len(args) == 3 and isinstance(args[1], Atom) and args[1].text == ":":
                    ann = self.type_(args[2])
                    args = args[:1]
                self._arity(sx, args, 1)
                arg = sub(args[0])
                if head == "abort":
                    return T.Abort(arg, ann, pos=pos)
                if ann is not None and not isinstance(ann, ValueType):
                    raise SyntaxErr("injection ascription must be a value type", sx.pos, "E-TYPE-SYNTAX")
                return (T.Inl if head == "inl" else T.Inr)(arg, ann, pos=pos)
            case "case":
                self._arity(sx, args, 3)
                scrut = sub(args[0])
                x1, b1 = self._branch(args[1], "inl", scope)
                x2, b2 = self._branch(args[2], "inr", scope)
                return T.Case(scrut, x1, b1, x2, b2, pos=pos)
            case "usplit":
                self._arity(sx, args, 2)
                return T.UnitSplit(sub(args[0]), sub(args[1]), pos=pos)
            case "pair":
                self._arity(sx, args, 2)
                return T.PairV(sub(args[0]), sub(args[1]), pos=pos)
            case "split":
                self._arity(sx, args, 3)
                names = self._binder_list(args[1], 2)
                fx, fy = self._fresh(names[0]), self._fresh(names[1])
                body = self.term(args[2], {**scope, names[0]: fx, names[1]: fy})
                return T.Split(sub(args[0]), fx, fy, body, pos=pos)
            case "rollmu":
                self._arity(sx, args, 2)
                return T.RollMu(self.value_type(args[0]), sub(args[1]), pos=pos)
            case "pmroll":
                self._arity(sx, args, 3)
                (name,) = self._binder_list(args[1], 1)
                fx = self._fresh(name)
                return T.UnrollMu(sub(args[0]), fx, self.term(args[2], {**scope, name: fx}), pos=pos)
            case "thunk":
                self._arity(sx, args, 1)
                return T.Thunk(sub(args[0]), pos=pos)
            case "force":
                self._arity(sx, args, 1)
                return T.Force(sub(args[0]), pos=pos)
            case "ret":
                self._arity(sx, args, 1)
                return T.RetV(sub(args[0]), pos=pos)
            case "bind":
                self._arity(sx, args, 3)
                name = self._name(args[0])
                fx = self._fresh(name)
                return T.Bind(sub(args[1]), fx, self.term(args[2], {**scope, name: fx}), pos=pos)
            case "lam":
                self._arity(sx, args, 2)
                if not isinstance(args[0], SList) or len(args[0].items) != 2:
                    raise SyntaxErr("lam expects a binder '(x A)'", args[0].pos)
                name = self._name(args[0].items[0])
                ty = self.value_type(args[0].items[1])
                fx = self._fresh(name)
                return T.Lam(fx, ty, self.term(args[1], {**scope, name: fx}), pos=pos)
            case "app":
                if len(args) < 2:
                    self._arity(sx, args, 2)
                out = sub(args[0])
                for a in args[1:]:
                    out = T.App(out, sub(a), pos=pos)
                return out
            case "wpair":
                self._arity(sx, args, 2)
                return T.WithPair(sub(args[0]), sub(args[1]), pos=pos)
            case "fst":
                self._arity(sx, args, 1)
                return T.Fst(sub(args[0]), pos=pos)
            case "snd":
                self._arity(sx, args, 1)
                return T.Snd(sub(args[0]), pos=pos)
            case "rollnu":
                self._arity(sx, args, 2)
                return T.RollNu(self.comp_type(args[0]), sub(args[1]), pos=pos)
            case "unrollnu":
                self._arity(sx, args, 1)
                return T.UnrollNu(sub(args[0]), pos=pos)
            case "up":
                self._arity(sx, args, 3)
                return T.UpCast(self.value_type(args[0]), self.value_type(args[1]), sub(args[2]), pos=pos)
            case "dn":
                self._arity(sx, args, 3)
                return T.DnCast(self.comp_type(args[0]), self.comp_type(args[1]), sub(args[2]), pos=pos)
            case "let":
                self._arity(sx, args, 3)
                name = self._name(args[0])
                fx = self._fresh(name)
                bound = sub(args[1])
                body = self.term(args[2], {**scope, name: fx})
                return T.subst_value(body, fx, bound)
        raise SyntaxErr(f"unknown term former '{head}'", sx.pos)

    def _branch(self, sx, tag: str, scope: dict):
        if not (isinstance(sx, SList) and len(sx.items) == 3 and isinstance(sx.items[0], Atom)
                and sx.items[0].text == tag):
            raise SyntaxErr(f"expected branch '({tag} x E)'", sx.pos)
        name = self._name(sx.items[1])
        fx = self._fresh(name)
        return fx, self.term(sx.items[2], {**scope, name: fx})

    def _binder_list(self, sx, n: int) -> list:
        if not isinstance(sx, SList) or len(sx.items) != n:
            raise SyntaxErr(f"expected a list of {n} binder(s)", sx.pos)
        return [self._name(a) for a in sx.items]

    def _fresh(self, name: str) -> str:
        return self._supply.fresh(name)

    @staticmethod
    def _name(sx) -> str:
        if not isinstance(sx, Atom) or sx.text in RESERVED:
            raise SyntaxErr("expected a variable name", sx.pos)
        return sx.text

    @staticmethod
    def _head(sx):
        if not sx.items or not isinstance(sx.items[0], Atom):
            raise SyntaxErr("expected a form with a symbol head", sx.pos)
        return sx.items[0].text, sx.items[1:]

    @staticmethod
    def _arity(sx, args, n: int):
        if len(args) != n:
            raise SyntaxErr(f"'{sx.items[0].text}' expects {n} argument(s), got {len(args)}", sx.pos, "E-ARITY")


def is_type_form(sx) -> bool:
    if isinstance(sx, Atom):
        return sx.text in TYPE_ATOMS
    return bool(sx.items) and isinstance(sx.items[0], Atom) and sx.items[0].text in TYPE_HEADS


def parse(text: str):
    """Parse one type or term; type formers win on the shared atoms."""
    sx = read_one(text)
    parser = Parser()
    return parser.type_(sx) if is_type_form(sx) else parser.term(sx)


def parse_term(text: str) -> T.Term:
    return Parser().term(read_one(text))


def parse_type(text: str) -> Type:
    return Parser().type_(read_one(text))


def parse_value_type(text: str) -> ValueType:
    return Parser().value_type(read_one(text))


def parse_comp_type(text: str) -> ComputationType:
    return Parser().comp_type(read_one(text))


# -- printing ----------------------------------------------------------

def type_tree(t: Type):
    match t:
        case Dyn():
            return "?"
        case CoDyn():
            return "dyncomp"
        case Zero():
            return "0"
        case Unit():
            return "1"
        case Top():
            return "top"
        case VVar(n) | CVar(n):
            return n
        case Sum(a, b):
            return ["+", type_tree(a), type_tree(b)]
        case Prod(a, b):
            return ["*", type_tree(a), type_tree(b)]
        case U(b):
            return ["U", type_tree(b)]
        case F(a):
            return ["F", type_tree(a)]
        case With(a, b):
            return ["&", type_tree(a), type_tree(b)]
        case Arrow(a, b):
            return ["->", type_tree(a), type_tree(b)]
        case Mu(x, body):
            return ["mu", x, type_tree(body)]
        case Nu(x, body):
            return ["nu", x, type_tree(body)]
    raise TypeError(f"not a type: {t!r}")


def term_tree(e: T.Term):
    match e:
        case T.Var(n):
            return n
        case T.Hole():
            return "hole"
        case T.UnitV():
            return "unit"
        case T.EmptyPair():
            return "emptypair"
        case T.Err(ty):
            return ["err", type_tree(ty)]
        case T.Abort(a, ty) | T.Inl(a, ty) | T.Inr(a, ty):
            head = {T.Abort: "abort", T.Inl: "inl", T.Inr: "inr"}[type(e)]
            if ty is None:
                return [head, term_tree(a)]
            return [head, term_tree(a), ":", type_tree(ty)]
        case T.Case(s, x1, b1, x2, b2):
            return ["case", term_tree(s), ["inl", x1, term_tree(b1)], ["inr", x2, term_tree(b2)]]
        case T.UnitSplit(s, b):
            return ["usplit", term_tree(s), term_tree(b)]
        case T.PairV(a, b):
            return ["pair", term_tree(a), term_tree(b)]
        case T.Split(s, x, y, b):
            return ["split", term_tree(s), [x, y], term_tree(b)]
        case T.RollMu(ty, a):
            return ["rollmu", type_tree(ty), term_tree(a)]
        case T.UnrollMu(s, x, b):
            return ["pmroll", term_tree(s), [x], term_tree(b)]
        case T.Thunk(m):
            return ["thunk", term_tree(m)]
        case T.Force(v):
            return ["force", term_tree(v)]
        case T.RetV(v):
            return ["ret", term_tree(v)]
        case T.Bind(m, x, n):
            return ["bind", x, term_tree(m), term_tree(n)]
        case T.Lam(x, ty, m):
            return ["lam", [x, type_tree(ty)], term_tree(m)]
        case T.App(m, v):
            return ["app", term_tree(m), term_tree(v)]
        case T.WithPair(a, b):
            return ["wpair", term_tree(a), term_tree(b)]
        case T.Fst(m):
            return ["fst", term_tree(m)]
        case T.Snd(m):
            return ["snd", term_tree(m)]
        case T.RollNu(ty, m):
            return ["rollnu", type_tree(ty), term_tree(m)]
        case T.UnrollNu(m):
            return ["unrollnu", term_tree(m)]
        case T.UpCast(a, b, v):
            return ["up", type_tree(a), type_tree(b), term_tree(v)]
        case T.DnCast(a, b, m):
            return ["dn", type_tree(a), type_tree(b), term_tree(m)]
    raise TypeError(f"not a term: {e!r}")


def print_type(t: Type) -> str:
    return layout(type_tree(t), width=10**9)


def print_term(e: T.Term, width: int = 100) -> str:
    return layout(term_tree(e), width=width)


def show(x) -> str:
    """Single-line rendering of a term or a type, for messages and reports."""
    if isinstance(x, (ValueType, ComputationType)):
        return print_type(x)
    return print_term(x, width=10**9)
