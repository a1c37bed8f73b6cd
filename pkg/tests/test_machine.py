import pytest

from gtt.decomplexify import simp_comp
from gtt.dyninterp import get_interp
from gtt.elaborate import elab_term
from gtt.harness.graduality import program_files
from gtt.harness.randgen import random_programs
from gtt.machine import (
    Result, Stepped, Terminal, backend, evaluate, fast, reference, result_leq, step,
)
from gtt.syntax import parse_term
from gtt.typecheck import check_program

LOOP_TYPE = "(mu X (U (-> X (F bool))))"
LOOP_FN = f"(thunk (lam (x {LOOP_TYPE}) (pmroll x (y) (app (force y) x))))"
LOOP = f"(app (force {LOOP_FN}) (rollmu {LOOP_TYPE} {LOOP_FN}))"


def test_bind_ret_steps_for_free():
    out = step(parse_term("(bind x (ret (inl unit : (+ 1 1))) (ret x))"))
    assert out == Stepped(parse_term("(ret (inl unit : (+ 1 1)))"), 0)


def test_error_is_terminal():
    assert step(parse_term("(err (F bool))")) == Terminal(Result.ERROR)


def test_unroll_roll_costs_one():
    out = step(parse_term("(unrollnu (rollnu (nu Y (F bool)) (ret true)))"))
    assert isinstance(out, Stepped) and out.cost == 1
    assert out.next == parse_term("(ret true)")


def test_error_under_frames_aborts():
    out = step(parse_term("(bind x (err (F bool)) (ret x))"))
    assert isinstance(out, Stepped) and out.cost == 0
    assert step(out.next) == Terminal(Result.ERROR)


def test_eval_ret():
    assert reference.eval(parse_term("(ret true)"), 10) == (Result.TRUE, 1, 0)


def test_eval_error():
    res, steps, cost = reference.eval(parse_term("(bind x (err (F bool)) (ret x))"), 10)
    assert res is Result.ERROR and steps <= 2 and cost == 0


@pytest.mark.parametrize("engine", [reference.eval, fast.run])
def test_loop_times_out(engine):
    res, steps, cost = engine(parse_term(LOOP), 1000)
    assert res is Result.TIMEOUT and steps == 1000
    # three steps per iteration (force, application, unroll) and only the unroll costs
    assert cost == 333


def test_fast_machine_detects_loops_early_but_reports_full_fuel():
    res, steps, _ = fast.run(parse_term(LOOP), 100_000, loop_check_after=50)
    assert res is Result.TIMEOUT and steps == 100_000


def test_result_order():
    assert result_leq(Result.ERROR, Result.TRUE)
    assert not result_leq(Result.TRUE, Result.FALSE)
    assert result_leq(Result.ERROR, Result.ERROR)
    assert not result_leq(Result.TIMEOUT, Result.ERROR)
    assert result_leq(Result.TIMEOUT, Result.TIMEOUT)


def test_backend_selection(monkeypatch):
    monkeypatch.setenv("GTT_MACHINE", "reference")
    assert backend() == "reference"
    assert evaluate(parse_term("(ret false)"))[0] is Result.FALSE
    monkeypatch.setenv("GTT_MACHINE", "numba")
    with pytest.raises(ValueError):
        backend()
    monkeypatch.delenv("GTT_MACHINE")
    assert backend() == "fast"


def _compiled(e, interp):
    return simp_comp(elab_term(check_program(e), get_interp(interp)))


@pytest.mark.parametrize("interp", ["natural", "scheme"])
def test_engines_agree_on_corpus(interp):
    for path in program_files():
        m = _compiled(parse_term(path.read_text()), interp)
        r1, s1, c1 = reference.eval(m, 5000)
        r2, s2, c2 = fast.run(m, 5000)
        assert (r1, s1, c1) == (r2, s2, c2), path.name


@pytest.mark.parametrize("interp", ["natural", "scheme"])
def test_engines_agree_on_random_programs(interp):
    for e in random_programs(150, seed=7):
        m = _compiled(e, interp)
        assert reference.eval(m, 20_000) == fast.run(m, 20_000)


def test_types_are_preserved_by_steps():
    for e in random_programs(25, seed=11, max_depth=4):
        m = _compiled(e, "natural")
        reference.eval(m, 2000, check_types=True)
