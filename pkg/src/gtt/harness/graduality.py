"""Graduality pairs: a program and a more dynamic version of it.

A pair file holds one form

    (graduality [(env (x A A') ...)] M M')

where each ``x`` has type ``A`` on the left and the more dynamic ``A'`` on
the right.  The check assembles both sides in the standard way:
the right-hand term gets every free variable upcast from ``A`` to ``A'``
and its result downcast to the left-hand type, and then the left side must
error-approximate the right under every generated context.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Optional, Union

from .. import dynamism as D
from ..syntax import terms as T
from ..syntax.concrete import Parser
from ..syntax.sexpr import Atom, SList, SyntaxErr, read_one
from ..syntax.types import F, ValueType
from ..typecheck import TypeErr, typecheck
from .checks import CheckResult, Settings, compile_gtt, _compare
from ..machine.results import result_leq

CORPUS = Path(__file__).resolve().parent.parent / "corpus"


@dataclass(frozen=True)
class GradualityPair:
    name: str
    lhs: T.Term
    rhs: T.Term
    env: tuple = ()      # ((name, less dynamic type, more dynamic type), ...)

    def left_env(self) -> dict:
        return {x: a for x, a, _ in self.env}

    def right_env(self) -> dict:
        return {x: a2 for x, _, a2 in self.env}


def parse_pair(text: str, name: str = "<pair>") -> GradualityPair:
    sx = read_one(text)
    if not (isinstance(sx, SList) and sx.items and isinstance(sx.items[0], Atom)
            and sx.items[0].text == "graduality"):
        raise SyntaxErr("expected '(graduality [env] M M')'", sx.pos)
    args = sx.items[1:]
    env = ()
    parser = Parser()
    if args and isinstance(args[0], SList) and args[0].items and isinstance(args[0].items[0], Atom) \
            and args[0].items[0].text == "env":
        entries = []
        for item in args[0].items[1:]:
            if not (isinstance(item, SList) and len(item.items) == 3 and isinstance(item.items[0], Atom)):
                raise SyntaxErr("env entries look like '(x A A')'", item.pos)
            entries.append((item.items[0].text, parser.value_type(item.items[1]),
                            parser.value_type(item.items[2])))
        env = tuple(entries)
        args = args[1:]
    if len(args) != 2:
        raise SyntaxErr("graduality expects exactly two terms", sx.pos, "E-ARITY")
    return GradualityPair(name, Parser().term(args[0]), Parser().term(args[1]), env)


def load_pair(path: Union[str, Path]) -> GradualityPair:
    path = Path(path)
    return parse_pair(path.read_text(encoding="utf-8"), path.stem)


def pair_files() -> list:
    return sorted((CORPUS / "graduality").glob("*.gtt"))


def program_files() -> list:
    return sorted((CORPUS / "programs").glob("*.gtt"))


@lru_cache(maxsize=None)
def corpus_pairs() -> tuple:
    return tuple(load_pair(p) for p in pair_files())


def assemble(pair: GradualityPair, interp):
    """The two subjects compared by :func:`check_graduality`."""
    lhs_env, rhs_env = pair.left_env(), pair.right_env()
    _, b = typecheck(pair.lhs, lhs_env)
    _, b2 = typecheck(pair.rhs, rhs_env)
    for x, a, a2 in pair.env:
        if D.derive(a, a2) is None:
            raise TypeErr("E-CAST", f"{x}: the right-hand type is not more dynamic")
    rhs = pair.rhs
    for x, a, a2 in pair.env:
        rhs = T.subst_value(rhs, x, T.UpCast(a, a2, T.Var(x)))
    lhs = pair.lhs
    if isinstance(b, ValueType):
        lhs, rhs, b, b2 = T.RetV(lhs), T.RetV(rhs), F(b), F(b2)
    if D.derive(b, b2) is None:
        raise TypeErr("E-CAST", "the right-hand result type is not more dynamic than the left")
    rhs = T.DnCast(b, b2, rhs)
    return compile_gtt(lhs, interp, lhs_env), compile_gtt(rhs, interp, lhs_env)


def check_graduality(pair: GradualityPair, interp="natural", depth: int = 3,
                     settings: Optional[Settings] = None) -> CheckResult:
    """The left program error-approximates the cast-wrapped right one."""
    settings = settings or Settings(depth=depth)
    lhs, rhs = assemble(pair, interp)
    return _compare(lhs, rhs, result_leq, settings)


def _types_in(e: T.Term):
    match e:
        case T.Lam(_, ty, _) | T.Err(ty) | T.RollMu(ty, _) | T.RollNu(ty, _):
            yield ty
        case T.Abort(_, ty) | T.Inl(_, ty) | T.Inr(_, ty):
            if ty is not None:
                yield ty
        case T.UpCast(a, b, _) | T.DnCast(a, b, _):
            yield a
            yield b
    for child, _ in T.children(e):
        yield from _types_in(child)


@lru_cache(maxsize=None)
def corpus_types() -> tuple:
    """Every type written in a corpus program or pair, in file order."""
    from ..syntax import parse_term
    found: dict = {}
    for path in program_files():
        for t in _types_in(parse_term(path.read_text(encoding="utf-8"))):
            found[t] = None
    for pair in corpus_pairs():
        for _, a, a2 in pair.env:
            found[a] = found[a2] = None
        for side in (pair.lhs, pair.rhs):
            for t in _types_in(side):
                found[t] = None
    return tuple(found)
