import pytest

from gtt import dynamism as D
from gtt.dyninterp import NATURAL
from gtt.harness.checks import check_obs_eq, check_obs_leq, ordered_product
from gtt.harness.enumerate import diagonal, enumerate_values
from gtt.harness.graduality import check_graduality, corpus_pairs, parse_pair
from gtt.harness.laws import LAWS, check_ep_pair, run_law_suite
from gtt.harness.observers import observers_for
from gtt.harness.universe import build_universe
from gtt.syntax import (
    BOOL, ZERO, Bind, Inl, Inr, RetV, RollMu, Split, UnitV, Var, parse_type,
)
from gtt.machine import Result
from gtt.syntax.terms import HOLE


def test_bool_values():
    vs = enumerate_values(BOOL, 1)
    assert set(vs) == {Inl(UnitV(), BOOL), Inr(UnitV(), BOOL)}


def test_empty_type_has_no_values():
    assert enumerate_values(ZERO, 3) == ()


def test_natural_dyn_values():
    vs = enumerate_values(NATURAL.val_dyn, 2)
    unit_leaf = [v for v in vs if isinstance(v.arg, Inl) and v.arg.arg == UnitV()]
    assert unit_leaf and all(isinstance(v, RollMu) for v in vs)
    # third injection: a left-tagged sum holding the unit leaf
    nested = [v for v in vs if isinstance(v.arg, Inr) and isinstance(v.arg.arg, Inr)
              and isinstance(v.arg.arg.arg, Inl) and isinstance(v.arg.arg.arg.arg, Inl)]
    assert nested and nested[0].arg.arg.arg.arg.arg == unit_leaf[0]


def test_diagonal_is_fair():
    got = diagonal([1, 2, 3], ["a", "b", "c"], 5)
    assert got[0] == (1, "a") and len(got) == 5
    assert {p for p in got} >= {(1, "b"), (2, "a")}


def test_ordered_product_limits():
    assert len(ordered_product([[1, 2], [3, 4]], 3)) == 3
    assert set(ordered_product([[1, 2], [3, 4]], 10)) == {(1, 3), (1, 4), (2, 3), (2, 4)}
    assert ordered_product([], 5) == [()]


def test_observers_returner():
    assert any(o.describe() == "hole" for o in observers_for(parse_type("(F bool)")))


def test_observers_function_thunk():
    descs = [o.describe() for o in observers_for(parse_type("(U (-> 1 (F bool)))"))]
    assert "(app (force hole) unit)" in descs


def test_observers_product():
    def second_projection(s):
        return (isinstance(s, Bind) and s.head == HOLE and isinstance(s.body, Split)
                and s.body.scrut == Var(s.x) and s.body.body == RetV(Var(s.body.y)))
    assert any(second_projection(o.stack) for o in observers_for(parse_type("(F (* 1 bool))")))


def test_consistency():
    res = check_obs_eq("(ret true)", "(ret false)")
    assert not res and res.counterexample.observer.stack == HOLE
    assert (res.counterexample.lhs_result, res.counterexample.rhs_result) == (Result.TRUE, Result.FALSE)


def test_trivial_equality():
    assert check_obs_eq("(ret true)", "(ret true)")


def test_lambda_eta():
    env = {"f": parse_type("(U (-> 1 (F bool)))")}
    assert check_obs_eq("(force f)", "(lam (x 1) (app (force f) x))", env=env)


def test_error_is_least():
    assert check_obs_leq("(err (F bool))", "(ret false)")
    assert check_obs_leq("(err (F bool))", "(err (F bool))")
    res = check_obs_leq("(ret true)", "(err (F bool))")
    assert not res and res.counterexample.observer.stack == HOLE


def test_strict_stacks():
    env = {"k": parse_type("(U (-> bool (F bool)))")}
    assert check_obs_eq("(bind x (err (F bool)) (app (force k) x))", "(err (F bool))", env=env)


@pytest.mark.parametrize("interp", ["natural", "scheme"])
@pytest.mark.parametrize("lo,hi", [("1", "?"), ("bool", "?"), ("(F bool)", "dyncomp"), ("?", "?")])
def test_ep_pair(interp, lo, hi):
    d = D.derive(parse_type(lo), parse_type(hi))
    assert check_ep_pair(d, interp, depth=2)


def test_projection_is_only_an_inequality():
    env = {"d": parse_type("?")}
    up_dn = "(bind y (dn (F 1) (F ?) (ret d)) (ret (up 1 ? y)))"
    assert check_obs_leq(up_dn, "(ret d)", env=env, depth=2)
    assert not check_obs_eq(up_dn, "(ret d)", env=env, depth=2)


def test_graduality_pair_identity_function():
    pair = parse_pair("(graduality (lam (x bool) (ret x)) (lam (x ?) (ret x)))")
    for interp in ("natural", "scheme"):
        assert check_graduality(pair, interp)


def test_graduality_error_left():
    pair = parse_pair("(graduality (err (F bool)) (ret true))")
    assert check_graduality(pair)


def test_graduality_catches_behaviour_change():
    pair = parse_pair("(graduality (ret true) (ret false))")
    assert not check_graduality(pair)


def test_corpus_has_enough_pairs():
    assert len(corpus_pairs()) >= 20


def test_universe():
    u = build_universe(3)
    assert parse_type("(U (-> 1 (F bool)))") in u
    assert parse_type("(mu X (+ 1 X))") in u.values
    assert all(D.derive(a, b) is not None for a, b, _ in u.dynamism_pairs())
    assert len(build_universe(2)) < len(u)


def test_laws_are_named():
    assert set(LAWS) == {"identity", "decomposition", "ep-retraction", "ep-projection",
                         "retract-axiom", "beta", "eta", "err-bot", "stk-strict", "thunkable-linear"}


def test_small_suite_report():
    report = run_law_suite("natural", 2, laws=["identity", "beta"])
    assert report.passed
    rows = report.as_json()
    assert rows and set(rows[0]) == {"law", "type", "interp", "depth", "instances", "runs", "failures"}
    assert "PASS identity" in report.summary()


def test_unknown_law():
    with pytest.raises(KeyError):
        run_law_suite("natural", 2, laws=["associativity"])
