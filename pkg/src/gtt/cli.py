"""Command-line driver: ``gtt check | dyn | elab | simplify | run | test``.

Exit status is 0 on success, 1 when a program fails to parse or typecheck
or a law check fails, and 2 on usage errors (argparse's own convention).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional

from . import dynamism as D
from .decomplexify import simp_comp
from .dyninterp import INTERPS, get_interp
from .elaborate import elab_term
from .machine import DEFAULT_FUEL, evaluate, format_result
from .machine.results import StuckError
from .syntax import SyntaxErr, parse_term, parse_type, print_term, print_type
from .typecheck import TypeErr, check_program, typecheck

CORPUS_PROGRAMS = Path(__file__).resolve().parent / "corpus" / "programs"


def resolve_program(path: str) -> Path:
    """The file at ``path``, or the packaged corpus program with that name."""
    p = Path(path)
    if p.exists():
        return p
    bundled = CORPUS_PROGRAMS / p.name
    if bundled.exists():
        return bundled
    raise FileNotFoundError(path)


def _read(path: str) -> str:
    return resolve_program(path).read_text(encoding="utf-8")


def _load_program(path: str):
    return check_program(parse_term(_read(path)))


def cmd_check(args) -> int:
    term = parse_term(_read(args.file))
    if args.program:
        check_program(term)
        print("OK: (F (+ 1 1))")
        return 0
    _, ty = typecheck(term)
    print(f"OK: {print_type(ty)}")
    return 0


def cmd_dyn(args) -> int:
    d = D.derive(parse_type(args.lhs), parse_type(args.rhs))
    if d is None:
        print("NOT DERIVABLE")
        return 1
    print(D.render(d))
    return 0


def cmd_elab(args) -> int:
    e = elab_term(_load_program(args.file), get_interp(args.interp))
    if args.emit == "cbpv":
        e = simp_comp(e)
    print(print_term(e))
    return 0


def cmd_simplify(args) -> int:
    e = elab_term(_load_program(args.file), get_interp(args.interp))
    print(print_term(simp_comp(e)))
    return 0


def cmd_run(args) -> int:
    e = elab_term(_load_program(args.file), get_interp(args.interp))
    result, steps, _cost = evaluate(simp_comp(e), args.fuel)
    print(f"RESULT: {format_result(result, steps)}")
    return 0


def cmd_test_laws(args) -> int:
    from .harness.checks import Settings
    from .harness.laws import run_law_suite
    settings = Settings(depth=args.depth, fuel=args.fuel)
    laws = args.law or None
    report = run_law_suite(args.interp, args.depth, laws=laws, settings=settings, jobs=args.jobs)
    if args.json:
        print(json.dumps(report.as_json(), indent=2, sort_keys=True))
    else:
        print(report.summary())
        for cell in report.failures():
            for f in cell.failures:
                print(f"  {cell.law} at {cell.type}: {f['observer']} gave {f['lhs_result']} vs {f['rhs_result']}")
    return 0 if report.passed else 1


def cmd_test_graduality(args) -> int:
    from .harness.checks import Settings
    from .harness.graduality import check_graduality, corpus_pairs, load_pair
    pairs = [load_pair(p) for p in args.files] if args.files else list(corpus_pairs())
    settings = Settings(depth=args.depth, fuel=args.fuel)
    failed = 0
    out = []
    for pair in pairs:
        res = check_graduality(pair, args.interp, settings=settings)
        failed += not res.passed
        row = {"pair": pair.name, "interp": args.interp, "depth": args.depth, "runs": res.runs,
               "passed": res.passed,
               "failures": [] if res.passed else [res.counterexample.as_json()]}
        out.append(row)
    if args.json:
        print(json.dumps(out, indent=2, sort_keys=True))
    else:
        for row in out:
            status = "PASS" if row["passed"] else "FAIL"
            print(f"{status} {row['pair']} interp={args.interp} depth={args.depth} runs={row['runs']}")
            for f in row["failures"]:
                print(f"  {f['observer']} gave {f['lhs_result']} vs {f['rhs_result']}")
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gtt", description="Gradual type theory pipeline.")
    sub = parser.add_subparsers(dest="verb", metavar="VERB")
    sub.required = True

    def interp_flag(p):
        p.add_argument("--interp", choices=sorted(INTERPS), default="natural",
                       help="dynamic type interpretation (default: natural)")

    p = sub.add_parser("check", help="parse and typecheck a file")
    p.add_argument("file")
    p.add_argument("--program", action="store_true", help="also require a closed F(1+1) program")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("dyn", help="derive a type dynamism judgement")
    p.add_argument("lhs")
    p.add_argument("rhs")
    p.set_defaults(func=cmd_dyn)

    p = sub.add_parser("elab", help="elaborate casts into CBPV*")
    p.add_argument("file")
    interp_flag(p)
    p.add_argument("--emit", choices=("cbpvstar", "cbpv"), default="cbpvstar",
                   help="cbpvstar (default) or the de-complexified cbpv")
    p.set_defaults(func=cmd_elab)

    p = sub.add_parser("simplify", help="elaborate and de-complexify")
    p.add_argument("file")
    interp_flag(p)
    p.set_defaults(func=cmd_simplify)

    p = sub.add_parser("run", help="run a program and print its result")
    p.add_argument("file")
    interp_flag(p)
    p.add_argument("--fuel", type=int, default=DEFAULT_FUEL)
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("test", help="observational test suites")
    tsub = p.add_subparsers(dest="suite", metavar="SUITE")
    tsub.required = True
    for name, func in (("laws", cmd_test_laws), ("graduality", cmd_test_graduality)):
        t = tsub.add_parser(name, help=f"run the {name} suite")
        interp_flag(t)
        t.add_argument("--depth", type=int, default=3)
        t.add_argument("--fuel", type=int, default=DEFAULT_FUEL)
        t.add_argument("--json", action="store_true", help="machine-readable report")
        if name == "laws":
            t.add_argument("--law", action="append", help="restrict to one law (repeatable)")
            t.add_argument("--jobs", type=int, default=1, help="worker processes")
        else:
            t.add_argument("files", nargs="*", help="pair files (default: the bundled corpus)")
        t.set_defaults(func=func)
    return parser


def main(argv: Optional[list] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (SyntaxErr, TypeErr) as err:
        print(err.format())
        return 1
    except FileNotFoundError as err:
        print(f"ERR 0:0 E-IO cannot read {err}")
        return 1
    except KeyError as err:
        print(f"ERR 0:0 E-USAGE {err.args[0]}", file=sys.stderr)
        return 2
    except StuckError as err:  # a bug in the pipeline, never expected
        print(f"ERR 0:0 E-STUCK {err}")
        return 1


if __name__ == "__main__":
    sys.exit(main())
