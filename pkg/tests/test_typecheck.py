import pytest

from gtt.syntax import BOOL, DYN, UNIT, F, parse_term, parse_type
from gtt.typecheck import TypeErr, check_program, infer_comp, infer_value, typecheck


def test_sum_injection_needs_annotation():
    with pytest.raises(TypeErr):
        infer_value({}, parse_term("(inl unit)"))
    assert infer_value({}, parse_term("(inl unit : (+ 1 1))")) == BOOL


def test_upcast_infers_target():
    assert infer_value({"x": UNIT}, parse_term("(up 1 ? x)")) == DYN


def test_upcast_rejects_wrong_direction():
    with pytest.raises(TypeErr) as info:
        infer_value({"x": DYN}, parse_term("(up ? 1 x)"))
    assert info.value.code == "E-CAST"


def test_stoup_bind_head():
    assert infer_comp({}, parse_term("(bind x hole (ret x))"), stoup=F(UNIT)) == F(UNIT)


def test_stoup_hole_in_continuation_is_rejected():
    with pytest.raises(TypeErr):
        infer_comp({}, parse_term("(bind x (ret unit) hole)"), stoup=F(UNIT))


def test_hole_without_stoup_is_rejected():
    with pytest.raises(TypeErr):
        infer_comp({}, parse_term("(bind x hole (ret x))"))


def test_error_has_its_annotation():
    assert infer_comp({}, parse_term("(err (F 1))")) == F(UNIT)


@pytest.mark.parametrize("src", ["(ret (inl unit : (+ 1 1)))", "(err (F (+ 1 1)))", "(ret true)"])
def test_programs_ok(src):
    check_program(parse_term(src))


def test_program_must_return_bool():
    with pytest.raises(TypeErr) as info:
        check_program(parse_term("(ret unit)"))
    assert "F 1" in str(info.value) or "(F 1)" in info.value.format()


def test_unbound_variable():
    with pytest.raises(TypeErr):
        typecheck(parse_term("(ret x)"))


def test_error_location_points_into_source():
    src = "(bind x (ret unit)\n  (app x unit))"
    with pytest.raises(TypeErr) as info:
        check_program(parse_term(src))
    line = info.value.format().split()[1]
    assert line.startswith("2:")


def test_case_branches_must_agree():
    src = "(case true (inl a (ret true)) (inr b (ret unit)))"
    with pytest.raises(TypeErr):
        typecheck(parse_term(src))


def test_downcast_types():
    e = parse_term("(dn (F bool) (F ?) (ret (up bool ? true)))")
    _, ty = typecheck(e)
    assert ty == parse_type("(F bool)")


def test_recursive_roll():
    e = parse_term("(ret (rollmu (mu X (+ 1 X)) (inl unit : (+ 1 (mu X (+ 1 X))))))")
    _, ty = typecheck(e)
    assert ty == F(parse_type("(mu X (+ 1 X))"))
