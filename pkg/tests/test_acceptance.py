"""Acceptance criteria 1 to 10, one pass/fail line each.

Every test records a line in ``LINES``; ``conftest.py`` prints them at the
end of the session, and running this file directly prints them as well.
The law suite itself is run once per interpretation and shared.
"""

from __future__ import annotations

import sys
import time
from functools import lru_cache

import pytest

from gtt.decomplexify import simp_comp
from gtt.dyninterp import get_interp
from gtt.elaborate import elab_term
from gtt.harness.checks import check_obs_leq
from gtt.harness.graduality import check_graduality, corpus_pairs, program_files
from gtt.harness.laws import run_law_suite
from gtt.harness.randgen import ProgramGenerator, random_programs
from gtt.machine import StuckError, eval_cbpv_star, evaluate, fast, reference
from gtt.syntax import parse_term
from gtt.syntax.terms import HOLE
from gtt.typecheck import check_program

INTERPS = ("natural", "scheme")
DEPTH = 3
FUEL = 100_000
RANDOM_PROGRAMS = 500
STEP_SEQUENCES = 10_000

LINES: dict = {}


def record(n: int, ok: bool, detail: str) -> None:
    LINES[n] = f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}  {detail}"


@lru_cache(maxsize=None)
def suite(interp: str):
    return run_law_suite(interp, DEPTH)


def law_counts(laws) -> tuple:
    instances = failures = 0
    for interp in INTERPS:
        for cell in suite(interp).cells:
            if cell.law in laws:
                instances += cell.instances
                failures += len(cell.failures)
    return instances, failures


def law_criterion(n: int, laws: tuple, label: str):
    instances, failures = law_counts(laws)
    ok = failures == 0 and instances > 0
    record(n, ok, f"{label}: {instances} instances over both interps, {failures} counterexamples")
    assert ok


def compiled(e, interp):
    return elab_term(check_program(e), get_interp(interp))


def test_1_consistency():
    t0 = time.perf_counter()
    res = check_obs_leq("(ret true)", "(ret false)", DEPTH)
    dt = time.perf_counter() - t0
    ok = (not res.passed and res.counterexample.observer.stack == HOLE and dt < 1.0)
    record(1, ok, f"ret true vs ret false refuted by observer {res.counterexample.observer.describe()} in {dt:.3f}s")
    assert ok


def test_2_identity():
    law_criterion(2, ("identity",), "identity casts")


def test_3_decomposition():
    law_criterion(3, ("decomposition",), "floor-chain decomposition")


def test_4_ep_pairs():
    law_criterion(4, ("ep-retraction", "ep-projection", "retract-axiom"), "ep-pair laws and retract axiom")


def test_5_beta_eta():
    law_criterion(5, ("beta", "eta"), "beta and eta rows")


def test_6_error_axioms():
    law_criterion(6, ("err-bot", "stk-strict"), "error is least and stacks are strict")


def test_7_graduality():
    pairs = corpus_pairs()
    failed = [(p.name, i) for i in INTERPS for p in pairs if not check_graduality(p, i, DEPTH)]
    ok = len(pairs) >= 20 and not failed
    record(7, ok, f"{len(pairs)} pairs x {len(INTERPS)} interps, failures: {failed or 'none'}")
    assert ok


def test_8_decomplexification():
    programs = [parse_term(p.read_text()) for p in program_files()]
    programs += random_programs(RANDOM_PROGRAMS, seed=2024)
    mismatches = []
    for interp in INTERPS:
        for k, e in enumerate(programs):
            star = compiled(e, interp)
            oracle = eval_cbpv_star(star, FUEL)[0]
            got = evaluate(simp_comp(star), FUEL)[0]
            if got is not oracle:
                mismatches.append((interp, k, got, oracle))
    ok = not mismatches
    record(8, ok, f"{len(programs)} programs x {len(INTERPS)} interps, mismatches: {len(mismatches)}")
    assert ok, mismatches[:5]


def test_9_thunkable_linear():
    law_criterion(9, ("thunkable-linear",), "thunkability and linearity of sampled casts")


def test_10_determinism_progress():
    differing = []
    for interp in INTERPS:
        for path in program_files():
            m = simp_comp(compiled(parse_term(path.read_text()), interp))
            runs = {reference.eval(m, FUEL), reference.eval(m, FUEL), fast.run(m, FUEL), fast.run(m, FUEL)}
            if len(runs) != 1:
                differing.append((interp, path.name))
    stuck = 0
    gen = ProgramGenerator(seed=99)
    for k in range(STEP_SEQUENCES):
        m = simp_comp(compiled(gen.program(), INTERPS[k % 2]))
        try:
            reference.eval(m, FUEL)
        except StuckError:
            stuck += 1
    ok = not differing and stuck == 0
    record(10, ok, f"corpus double evaluation differs on {len(differing)} programs; "
                   f"{stuck} stuck states in {STEP_SEQUENCES} random step sequences")
    assert ok


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-s"]))
