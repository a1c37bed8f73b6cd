import pytest

from gtt import dynamism as D
from gtt.syntax import BOOL, CODYN, DYN, TOP, UNIT, ZERO, Arrow, F, Prod, Sum, U, parse_type


def test_floor_values():
    assert D.floor_v(BOOL) == Sum(DYN, DYN)
    assert D.floor_v(U(Arrow(UNIT, F(UNIT)))) == U(CODYN)
    assert D.floor_v(Prod(UNIT, BOOL)) == Prod(DYN, DYN)
    assert D.floor_v(UNIT) == UNIT


def test_floor_computations():
    assert D.floor_c(F(Prod(UNIT, UNIT))) == F(DYN)
    assert D.floor_c(Arrow(DYN, F(DYN))) == Arrow(DYN, CODYN)


@pytest.mark.parametrize("t", [DYN, ZERO])
def test_floor_v_undefined(t):
    with pytest.raises(D.FloorError):
        D.floor_v(t)


@pytest.mark.parametrize("t", [TOP, CODYN])
def test_floor_c_undefined(t):
    with pytest.raises(D.FloorError):
        D.floor_c(t)


def test_zero_is_bottom():
    assert isinstance(D.derive_v(ZERO, DYN), D.ZeroBot)


def test_thunk_chain():
    d = D.derive_v(U(F(UNIT)), U(F(DYN)))
    assert d == D.UMon(D.FMon(D.ToDyn(D.VRefl(UNIT))))


def test_dyn_is_greatest():
    assert D.derive_v(DYN, UNIT) is None
    assert D.derive_c(F(DYN), F(UNIT)) is None


def test_top_is_bottom():
    assert isinstance(D.derive_c(TOP, CODYN), D.TopBot)


def test_arrow_monotone():
    d = D.derive_c(Arrow(UNIT, F(UNIT)), Arrow(DYN, F(DYN)))
    assert isinstance(d, D.ArrowMon)
    assert isinstance(d.dom, D.ToDyn)
    assert d.cod == D.FMon(D.ToDyn(D.VRefl(UNIT)))


@pytest.mark.parametrize("lo,hi", [
    ("1", "?"), ("bool", "?"), ("(* 1 bool)", "(* ? ?)"), ("(U (F bool))", "?"),
    ("(-> bool (F bool))", "dyncomp"), ("(& (F 1) (F 1))", "(& dyncomp (F ?))"),
])
def test_derivable(lo, hi):
    d = D.derive(parse_type(lo), parse_type(hi))
    assert d is not None


@pytest.mark.parametrize("lo,hi", [
    ("?", "bool"), ("(+ 1 1)", "(* ? ?)"), ("(F ?)", "(-> ? dyncomp)"), ("1", "0"),
    # the normalized system only puts 0 and top directly below themselves and the dynamic types
    ("0", "(+ 1 1)"), ("top", "(-> 1 (F 1))"),
])
def test_not_derivable(lo, hi):
    assert D.derive(parse_type(lo), parse_type(hi)) is None


def test_render_names_rules():
    text = D.render(D.derive(parse_type("(U (F 1))"), parse_type("(U (F ?))")))
    assert [line.split(":")[0].strip() for line in text.splitlines()] == ["UMon", "FMon", "ToDyn", "VRefl"]


def test_derivation_is_unique_and_reflexive():
    for src in ["1", "?", "(+ bool ?)", "(U dyncomp)"]:
        t = parse_type(src)
        assert D.derive(t, t) == D.derive(t, t)
        assert D.derive(t, t) is not None
