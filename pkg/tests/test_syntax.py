import pytest
from hypothesis import given, settings, strategies as st

from gtt.syntax import (
    BOOL, CODYN, DYN, TOP, UNIT, ZERO, Arrow, Bind, Err, F, Fst, Inl, Lam, PairV, Prod,
    RetV, Split, Sum, SyntaxErr, U, UnitV, UpCast, Var, With, WithPair, alpha_eq, free_vars,
    parse_term, parse_type, plug_stack, print_term, print_type, stage_check, subst_value,
)
from gtt.syntax.stages import Stage
from gtt.syntax.terms import HOLE, UNIT_V


def test_parse_ret_inl():
    assert parse_term("(ret (inl unit))") == RetV(Inl(UnitV()))


def test_parse_upcast():
    assert parse_term("(up 1 ? x)") == UpCast(UNIT, DYN, Var("x"))


def test_parse_bind_freshens_binder():
    e = parse_term("(bind x (ret unit) (ret x))")
    assert isinstance(e, Bind) and e.head == RetV(UnitV())
    assert e.body == RetV(Var(e.x))
    assert alpha_eq(e, Bind(RetV(UnitV()), "y", RetV(Var("y"))))


def test_binders_are_distinct_after_parsing():
    e = parse_term("(bind x (ret unit) (bind x (ret x) (ret x)))")
    assert e.x != e.body.x


@pytest.mark.parametrize("src", ["(ret", "(bind x)", "(frob 1)", ")"])
def test_parse_errors_carry_a_location(src):
    with pytest.raises(SyntaxErr) as info:
        parse_term(src)
    assert info.value.format().startswith("ERR ")


def test_subst_replaces_free_occurrence():
    assert subst_value(RetV(Var("x")), "x", UNIT_V) == RetV(UNIT_V)


def test_subst_respects_shadowing():
    lam = Lam("x", UNIT, Var("x"))
    assert subst_value(lam, "x", UNIT_V) == lam


def test_subst_in_pair():
    got = subst_value(PairV(Var("x"), Var("y")), "x", Inl(UNIT_V))
    assert got == PairV(Inl(UNIT_V), Var("y"))


def test_subst_avoids_capture():
    body = Lam("y", UNIT, PairV(Var("x"), Var("y")))
    got = subst_value(body, "x", Var("y"))
    assert "y" in free_vars(got)
    assert got.x != "y"


def test_plug_stack():
    assert plug_stack(Bind(HOLE, "x", RetV(Var("x"))), RetV(UNIT_V)) == Bind(RetV(UNIT_V), "x", RetV(Var("x")))
    assert plug_stack(HOLE, Err(F(UNIT))) == Err(F(UNIT))
    pair = WithPair(Err(F(UNIT)), RetV(UNIT_V))
    assert plug_stack(Fst(HOLE), pair) == Fst(pair)


def test_stage_check():
    assert stage_check(UpCast(UNIT, DYN, Var("x")), Stage.CBPV_STAR) is not None
    split = Split(Var("p"), "x", "y", PairV(Var("y"), Var("x")))
    assert stage_check(split, Stage.CBPV_OP, as_value=True) is not None
    assert stage_check(RetV(Inl(UNIT_V)), Stage.CBPV_OP) is None


def test_type_sugar():
    assert parse_type("bool") == BOOL
    assert parse_type("(+ 1 1)") == Sum(UNIT, UNIT)
    assert parse_type("dyncomp") == CODYN
    assert parse_type("(-> ? (F ?))") == Arrow(DYN, F(DYN))


# -- printing round trip -------------------------------------------------

value_types = st.recursive(
    st.sampled_from([DYN, UNIT, ZERO]),
    lambda inner: st.one_of(
        st.builds(Sum, inner, inner), st.builds(Prod, inner, inner),
    ),
    max_leaves=6,
)
comp_types = st.recursive(
    st.one_of(st.just(CODYN), st.just(TOP), st.builds(F, value_types)),
    lambda inner: st.one_of(st.builds(With, inner, inner), st.builds(Arrow, value_types, inner)),
    max_leaves=5,
)


@settings(max_examples=150, deadline=None)
@given(st.one_of(value_types, comp_types, st.builds(U, comp_types)))
def test_type_print_parse_roundtrip(t):
    assert parse_type(print_type(t)) == t


SAMPLE_TERMS = [
    "(ret (inl unit : bool))",
    "(lam (x bool) (case x (inl a (ret false)) (inr b (ret true))))",
    "(bind p (ret (pair true unit)) (split p (a b) (ret a)))",
    "(wpair (ret true) (err (F bool)))",
    "(dn (F bool) (F ?) (ret (up bool ? true)))",
    "(app (force (thunk (lam (y 1) (ret true)))) unit)",
    "(unrollnu (rollnu (nu Y (F bool)) (ret false)))",
]


@pytest.mark.parametrize("src", SAMPLE_TERMS)
def test_term_print_parse_roundtrip(src):
    e = parse_term(src)
    assert alpha_eq(parse_term(print_term(e)), e)


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=0, max_value=10_000))
def test_random_program_roundtrip(seed):
    from gtt.harness.randgen import ProgramGenerator
    e = ProgramGenerator(seed, max_depth=4).program()
    assert alpha_eq(parse_term(print_term(e)), e)
