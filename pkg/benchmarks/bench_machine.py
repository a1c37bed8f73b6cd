"""Compare the two evaluation engines on the corpus and on random programs.

    python3 benchmarks/bench_machine.py [--programs 300] [--fuel 100000]

Both engines must agree on every run; the script exits non-zero otherwise.
The engine used everywhere else is picked with GTT_MACHINE=fast|reference.
"""

from __future__ import annotations

import argparse
import statistics
import sys
import time

from gtt.decomplexify import simp_comp
from gtt.dyninterp import get_interp
from gtt.elaborate import elab_term
from gtt.harness.graduality import program_files
from gtt.harness.randgen import random_programs
from gtt.machine import fast, reference
from gtt.syntax import parse_term
from gtt.typecheck import check_program


def workload(count: int, interp: str) -> list:
    ip = get_interp(interp)
    terms = [parse_term(p.read_text()) for p in program_files()] + random_programs(count, seed=5)
    return [simp_comp(elab_term(check_program(e), ip)) for e in terms]


def timed(engine, programs, fuel):
    per = []
    out = []
    for m in programs:
        t0 = time.perf_counter()
        out.append(engine(m, fuel))
        per.append(time.perf_counter() - t0)
    return out, per


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--programs", type=int, default=300)
    ap.add_argument("--fuel", type=int, default=100_000)
    ap.add_argument("--interp", default="natural", choices=("natural", "scheme"))
    args = ap.parse_args(argv)

    programs = workload(args.programs, args.interp)
    print(f"{len(programs)} programs, interp={args.interp}, fuel={args.fuel}")
    results = {}
    for name, engine in (("reference", reference.eval), ("fast", fast.run)):
        out, per = timed(engine, programs, args.fuel)
        results[name] = out
        steps = sum(s for _, s, _ in out)
        print(f"{name:>9}: total {sum(per):7.3f}s  median {statistics.median(per) * 1e3:7.3f}ms  "
              f"max {max(per) * 1e3:8.2f}ms  steps {steps}  ({steps / sum(per):,.0f} steps/s)")
    if results["reference"] != results["fast"]:
        bad = sum(a != b for a, b in zip(results["reference"], results["fast"]))
        print(f"engines disagree on {bad} programs", file=sys.stderr)
        return 1
    print("engines agree on every program")
    return 0


if __name__ == "__main__":
    sys.exit(main())
