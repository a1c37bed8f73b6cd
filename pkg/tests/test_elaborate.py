import pytest

from gtt import dynamism as D
from gtt.dyninterp import NATURAL, SCHEME, get_interp
from gtt.elaborate import elab_dncast, elab_term, elab_upcast
from gtt.machine import Result
from gtt.syntax import (
    CODYN, DYN, UNIT, ZERO, Abort, Bind, Err, F, Hole, PairV, Prod, Split, Var, parse_term,
    parse_type, stage_check,
)
from gtt.syntax.stages import Stage
from gtt.typecheck import check_program, typecheck

from helpers import run


def test_identity_upcast_is_variable():
    assert elab_upcast(D.derive(UNIT, UNIT), NATURAL) == Var("x")


def test_product_upcast_splits():
    d = D.derive(Prod(UNIT, UNIT), Prod(DYN, DYN))
    v = elab_upcast(d, NATURAL)
    assert isinstance(v, Split) and v.scrut == Var("x") and isinstance(v.body, PairV)


def test_empty_upcast_is_abort():
    assert isinstance(elab_upcast(D.derive(ZERO, DYN), NATURAL), Abort)


def test_identity_downcast_is_hole():
    assert elab_dncast(D.derive(CODYN, CODYN), NATURAL) == Hole()


def test_empty_downcast_errors_after_bind():
    s = elab_dncast(D.derive(F(ZERO), F(DYN)), NATURAL)
    assert isinstance(s, Bind) and s.head == Hole() and isinstance(s.body, Err)


def test_product_downcast_shape():
    d = D.derive(F(Prod(UNIT, UNIT)), F(Prod(DYN, DYN)))
    s = elab_dncast(d, NATURAL)
    assert isinstance(s, Bind) and s.head == Hole()
    assert isinstance(s.body, Split)


@pytest.mark.parametrize("interp", [NATURAL, SCHEME])
def test_output_is_cast_free(interp):
    e = check_program(parse_term("(dn (F bool) (F ?) (ret (up bool ? true)))"))
    out = elab_term(e, interp)
    assert stage_check(out, Stage.CBPV_STAR) is None


def test_cast_free_term_keeps_its_shape():
    e = check_program(parse_term("(bind x (ret true) (ret x))"))
    out = elab_term(e, NATURAL)
    assert isinstance(out, Bind) and out.body == e.body


@pytest.mark.parametrize("interp", ["natural", "scheme"])
def test_retract_pipeline(interp):
    assert run("(bind u (dn (F 1) (F ?) (ret (up 1 ? unit))) (ret true))", interp) is Result.TRUE


@pytest.mark.parametrize("interp", ["natural", "scheme"])
@pytest.mark.parametrize("lo,hi", [
    ("bool", "?"), ("(* bool 1)", "(* ? ?)"), ("(U (F bool))", "(U dyncomp)"),
    ("(+ 1 bool)", "(+ ? bool)"), ("(U (-> bool (F bool)))", "?"),
])
def test_elaborated_casts_typecheck(interp, lo, hi):
    ip = get_interp(interp)
    a, a2 = parse_type(lo), parse_type(hi)
    d = D.derive(a, a2)
    up = elab_upcast(d, ip)
    _, ty = typecheck(up, {"x": ip.translate(a)})
    assert ty == ip.translate(a2)
    dn = elab_dncast(D.derive(F(a), F(a2)), ip)
    _, ty = typecheck(dn, {}, stoup=ip.translate(F(a2)))
    assert ty == ip.translate(F(a))
