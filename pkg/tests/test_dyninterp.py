import pytest

from gtt.dyninterp import NATURAL, SCHEME, get_interp, interp_type
from gtt.machine import Result
from gtt.syntax import CODYN, DYN, UNIT, F, Inl, RollMu, U, UnitV, parse_type
from gtt.syntax.terms import NameSupply, UNIT_V

from helpers import run

BOTH = ["natural", "scheme"]


def test_natural_types():
    assert interp_type(NATURAL, U(F(DYN))) == U(F(NATURAL.val_dyn))
    assert interp_type(NATURAL, UNIT) == UNIT


def test_scheme_codyn():
    assert interp_type(SCHEME, CODYN) == SCHEME.comp_dyn


def test_translation_removes_dynamic_types():
    from gtt.syntax.types import has_dynamic
    t = parse_type("(U (-> (* ? bool) (& dyncomp (F ?))))")
    for interp in (NATURAL, SCHEME):
        assert not has_dynamic(interp_type(interp, t))


def test_unknown_interp():
    with pytest.raises(ValueError):
        get_interp("typed-racket")


@pytest.mark.parametrize("interp", BOTH)
def test_unit_round_trip(interp):
    src = "(bind u (dn (F 1) (F ?) (ret (up 1 ? unit))) (ret true))"
    assert run(src, interp) is Result.TRUE


@pytest.mark.parametrize("interp", BOTH)
def test_bool_round_trip_keeps_value(interp):
    assert run("(dn (F bool) (F ?) (ret (up bool ? false)))", interp) is Result.FALSE


@pytest.mark.parametrize("interp", BOTH)
def test_project_unit_from_pair_fails(interp):
    src = "(bind u (dn (F 1) (F ?) (ret (up (* ? ?) ? (pair (up 1 ? unit) (up 1 ? unit))))) (ret true))"
    assert run(src, interp) is Result.ERROR


@pytest.mark.parametrize("interp", BOTH)
def test_returner_as_function_fails_when_applied(interp):
    src = """
    (app (dn (-> ? dyncomp) dyncomp
             (force (up (U (F ?)) (U dyncomp) (thunk (ret (up 1 ? unit))))))
         (up 1 ? unit))
    """
    prog = f"(bind r (dn (F ?) dyncomp {src}) (ret true))"
    assert run(prog, interp) is Result.ERROR


def test_natural_unit_embedding_is_first_injection():
    v = NATURAL.embed_v("1", UNIT_V, NameSupply("t"))
    assert isinstance(v, RollMu) and v.arg == Inl(UnitV(), v.arg.ty)


def test_scheme_unit_is_true_leaf():
    v = SCHEME.embed_v("1", UNIT_V, NameSupply("t"))
    assert isinstance(v, RollMu)
    assert isinstance(v.arg, Inl) and isinstance(v.arg.arg, Inl) and v.arg.arg.arg == UnitV()


def test_sum_vs_product_differs_between_interps():
    # Sums are tagged pairs under the scheme encoding, so a sum can be read back as a pair.
    src = "(bind p (dn (F (* ? ?)) (F ?) (ret (up bool ? true))) (ret true))"
    assert run(src, "natural") is Result.ERROR
    assert run(src, "scheme") is Result.TRUE
