from gtt.decomplexify import simp_comp, simp_stack, simp_value
from gtt.dyninterp import NATURAL
from gtt.elaborate import elab_term
from gtt.syntax import (
    Bind, Force, Fst, RetV, Split, Thunk, UnitV, Var, parse_term, print_term, stage_check,
)
from gtt.syntax.stages import Stage
from gtt.syntax.terms import HOLE
from gtt.typecheck import check_program


def test_variable_and_unit():
    assert simp_value(Var("x")) == RetV(Var("x"))
    assert simp_value(UnitV()) == RetV(UnitV())


def test_split_value_goes_through_bind():
    v = Split(Var("p"), "x", "y", parse_term("(pair y x)"))
    m = simp_value(v)
    assert isinstance(m, Bind) and m.head == RetV(Var("p"))
    assert isinstance(m.body, Split) and m.body.scrut == Var(m.x)
    assert stage_check(m, Stage.CBPV_OP) is None


def test_force_thunk_keeps_administrative_binds():
    m = simp_comp(Force(Thunk(RetV(UnitV()))))
    assert isinstance(m, Bind)
    assert isinstance(m.head, RetV) and isinstance(m.head.arg, Thunk)
    assert m.body == Force(Var(m.x))


def test_stacks():
    assert simp_stack(HOLE) == Force(Var("z"))
    assert simp_stack(Fst(HOLE)) == Fst(Force(Var("z")))
    s = simp_stack(Bind(HOLE, "x", RetV(Var("x"))))
    assert isinstance(s, Bind) and s.head == Force(Var("z"))


def test_elaborated_program_becomes_operational():
    e = check_program(parse_term("(dn (F bool) (F ?) (ret (up bool ? true)))"))
    out = simp_comp(elab_term(e, NATURAL))
    assert stage_check(out, Stage.CBPV_OP) is None, print_term(out)
