"""The law suite: cast identities, decomposition, ep pairs, β/η and error laws.

Each law produces, per type of the universe, a list of schematic instances.
An instance is a pair of GTT terms (or ready-made subjects) with free
variables; the checker closes them with enumerated values and observes
them with generated contexts.  A report cell is one (law, type) pair.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterator, Optional

from .. import dynamism as D
from ..decomplexify import Simplifier
from ..dyninterp import Interp, get_interp
from ..elaborate import elab_dncast, elab_upcast
from ..machine import fast
from ..machine.results import Result
from ..syntax import print_type
from ..syntax import terms as T
from ..syntax.types import (
    CODYN, DYN, F_BOOL, TOP, UNIT, ZERO, Arrow, F, Mu, Nu, Prod, Sum, U, With, subst_type,
)
from .checks import (
    LOOP_CHECK_AFTER, CheckResult, Comparison, Counterexample, Settings, Subject, compile_gtt,
)
from .observers import Observer, observer_stacks
from .universe import TypeUniverse, build_universe

P = print_type


@dataclass(frozen=True)
class Instance:
    """One schematic instance: GTT sources with typed free variables."""

    lhs: object
    rhs: object
    relation: str = "eq"
    env: tuple = ()
    stoup: object = None

    def comparison(self, interp: Interp) -> Comparison:
        env = dict(self.env)
        lhs = self.lhs if isinstance(self.lhs, Subject) else compile_gtt(self.lhs, interp, env, self.stoup)
        rhs = self.rhs if isinstance(self.rhs, Subject) else compile_gtt(self.rhs, interp, env, self.stoup)
        return Comparison(lhs, rhs, self.relation)


@dataclass(frozen=True)
class StrictnessProbe:
    """``S[℧] ⊒⊑ ℧`` for every generated observer ``S`` at a computation type."""

    ty: object
    relation: str = "eq"

    def check(self, interp: Interp, settings: Settings) -> CheckResult:
        b = interp.translate(self.ty)
        runs = 0
        for s in observer_stacks(b, settings.depth, settings.observer_width):
            r = fast.run(T.plug_stack(s, T.Err(b)), settings.fuel, loop_check_after=LOOP_CHECK_AFTER)[0]
            runs += 1
            if r is not Result.ERROR:
                return CheckResult(False, runs, Counterexample(Observer(s), r, Result.ERROR), settings.depth)
        return CheckResult(True, runs, None, settings.depth)


# -- cast laws -----------------------------------------------------------

def _identity(u: TypeUniverse, interp: Interp):
    for a in u.cast_values:
        yield a, Instance(f"(up {P(a)} {P(a)} x)", "x", env=(("x", a),))
        yield a, Instance(f"(dn (F {P(a)}) (F {P(a)}) hole)", "hole", stoup=F(a))
    for b in u.cast_computations:
        yield b, Instance(f"(dn {P(b)} {P(b)} hole)", "hole", stoup=b)
        yield b, Instance(f"(up (U {P(b)}) (U {P(b)}) x)", "x", env=(("x", U(b)),))


def _decomposition(u: TypeUniverse, interp: Interp):
    for t, g in u.floor_chains():
        if t in (g, DYN, CODYN):
            continue
        if _is_value(t):
            a, ga = P(t), P(g)
            yield t, Instance(f"(up {a} ? x)", f"(up {ga} ? (up {a} {ga} x))", env=(("x", t),))
            yield t, Instance(f"(dn (F {a}) (F ?) hole)", f"(dn (F {a}) (F {ga}) (dn (F {ga}) (F ?) hole))",
                              stoup=F(DYN))
        else:
            b, gb = P(t), P(g)
            yield t, Instance(f"(dn {b} dyncomp hole)", f"(dn {b} {gb} (dn {gb} dyncomp hole))", stoup=CODYN)
            yield t, Instance(f"(up (U {b}) (U dyncomp) x)", f"(up (U {gb}) (U dyncomp) (up (U {b}) (U {gb}) x))",
                              env=(("x", U(t)),))


def _is_value(t) -> bool:
    from ..syntax.types import ValueType
    return isinstance(t, ValueType)


def retraction_instance(lo, hi) -> Instance:
    """``dn(up x) ⊒⊑ x`` at ``lo ⊑ hi``."""
    a, a2 = P(lo), P(hi)
    if _is_value(lo):
        return Instance(f"(dn (F {a}) (F {a2}) (ret (up {a} {a2} x)))", "(ret x)", env=(("x", lo),))
    return Instance(f"(dn {a} {a2} (force (up (U {a}) (U {a2}) x)))", "(force x)", env=(("x", U(lo)),))


def projection_instance(lo, hi) -> Instance:
    """``up(dn x) ⊑ x`` at ``lo ⊑ hi``."""
    a, a2 = P(lo), P(hi)
    if _is_value(lo):
        return Instance(f"(bind y (dn (F {a}) (F {a2}) (ret x)) (ret (up {a} {a2} y)))", "(ret x)",
                        "leq", env=(("x", hi),))
    return Instance(f"(force (up (U {a}) (U {a2}) (thunk (dn {a} {a2} (force x)))))", "(force x)",
                    "leq", env=(("x", U(hi)),))


def _retraction(u: TypeUniverse, interp: Interp):
    for lo, hi, _d in u.dynamism_pairs():
        yield (lo, hi), retraction_instance(lo, hi)


def _projection(u: TypeUniverse, interp: Interp):
    for lo, hi, _d in u.dynamism_pairs():
        yield (lo, hi), projection_instance(lo, hi)


def check_ep_pair(d, interp="natural", depth: int = 3, settings: Optional[Settings] = None) -> CheckResult:
    """Retraction (exact) and projection (error approximation) for the casts of ``d``."""
    interp = get_interp(interp) if isinstance(interp, str) else interp
    settings = settings or Settings(depth=depth)
    runs = 0
    for inst in (retraction_instance(d.lhs, d.rhs), projection_instance(d.lhs, d.rhs)):
        res = inst.comparison(interp).check(settings)
        runs += res.runs
        if not res.passed:
            return CheckResult(False, runs, res.counterexample, settings.depth)
    return CheckResult(True, runs, None, settings.depth)


def _retract_axiom(u: TypeUniverse, interp: Interp):
    for lo in u.cast_values:
        if D.derive(lo, DYN) is None:
            continue
        a = P(lo)
        for rel in ("leq", "geq"):
            yield lo, Instance(f"(dn (F {a}) (F ?) (ret (up {a} ? x)))", "(ret x)", rel, env=(("x", lo),))


# -- β/η rows ------------------------------------------------------------

def _beta_eta(u: TypeUniverse, interp: Interp, kind: str):
    for t in u:
        yield from ((t, inst) for inst in _rows(t, kind))


def _rows(t, kind: str):
    beta = kind == "beta"
    match t:
        case Sum(a1, a2):
            s = P(t)
            if beta:
                yield Instance(f"(case (inl v : {s}) (inl a (ret (inl a : {s}))) (inr b (force k)))",
                               f"(ret (inl v : {s}))", env=(("v", a1), ("k", U(F(t)))))
                yield Instance(f"(case (inr v : {s}) (inl a (force k)) (inr b (ret (inr b : {s}))))",
                               f"(ret (inr v : {s}))", env=(("v", a2), ("k", U(F(t)))))
            else:
                yield Instance("(ret s)", f"(case s (inl a (ret (inl a : {s}))) (inr b (ret (inr b : {s}))))",
                               env=(("s", t),))
                yield Instance("(app (force f) s)",
                               f"(case s (inl a (app (force f) (inl a : {s}))) (inr b (app (force f) (inr b : {s}))))",
                               env=(("s", t), ("f", U(Arrow(t, F_BOOL)))))
        case Prod(a1, a2):
            if beta:
                yield Instance("(split (pair v1 v2) (a b) (ret (pair b a)))", "(ret (pair v2 v1))",
                               env=(("v1", a1), ("v2", a2)))
            else:
                yield Instance("(ret p)", "(split p (a b) (ret (pair a b)))", env=(("p", t),))
        case _ if t == UNIT:
            if beta:
                yield Instance("(usplit unit (force k))", "(force k)", env=(("k", U(F_BOOL)),))
            else:
                yield Instance("(ret u)", "(usplit u (ret unit))", env=(("u", UNIT),))
        case _ if t == ZERO:
            if not beta:
                yield Instance("(force k)", "(abort v : (F bool))", env=(("v", ZERO), ("k", U(F_BOOL))))
        case U():
            if beta:
                yield Instance("(force (thunk (force k)))", "(force k)", env=(("k", t),))
            else:
                yield Instance("(ret k)", "(ret (thunk (force k)))", env=(("k", t),))
        case F(a):
            if beta:
                yield Instance("(bind x (ret v) (ret x))", "(ret v)", env=(("v", a),))
                yield Instance("(bind x (ret v) (force k))", "(force k)", env=(("v", a), ("k", U(F_BOOL))))
            else:
                yield Instance("(bind x hole (ret x))", "hole", stoup=t)
        case Arrow(a, _):
            if beta:
                yield Instance(f"(app (lam (x {P(a)}) (app (force f) x)) v)", "(app (force f) v)",
                               env=(("v", a), ("f", U(t))))
                yield Instance(f"(app (lam (x {P(a)}) (ret x)) v)", "(ret v)", env=(("v", a),))
            else:
                yield Instance("hole", f"(lam (x {P(a)}) (app hole x))", stoup=t)
        case With(b1, b2):
            if beta:
                yield Instance("(fst (wpair (force k1) (force k2)))", "(force k1)", env=(("k1", U(b1)), ("k2", U(b2))))
                yield Instance("(snd (wpair (force k1) (force k2)))", "(force k2)", env=(("k1", U(b1)), ("k2", U(b2))))
            else:
                yield Instance("hole", "(wpair (fst hole) (snd hole))", stoup=t)
        case _ if t == TOP:
            if not beta:
                yield Instance("hole", "emptypair", stoup=t)
        case Mu(x, body):
            if beta:
                yield Instance(f"(pmroll (rollmu {P(t)} v) (y) (ret y))", "(ret v)",
                               env=(("v", subst_type(body, x, t)),))
            else:
                yield Instance("(ret r)", f"(pmroll r (y) (ret (rollmu {P(t)} y)))", env=(("r", t),))
        case Nu(y, body):
            if beta:
                yield Instance(f"(unrollnu (rollnu {P(t)} (force k)))", "(force k)",
                               env=(("k", U(subst_type(body, y, t))),))
            else:
                yield Instance("hole", f"(rollnu {P(t)} (unrollnu hole))", stoup=t)


def _beta(u, interp):
    return _beta_eta(u, interp, "beta")


def _eta(u, interp):
    return _beta_eta(u, interp, "eta")


# -- error laws ----------------------------------------------------------

def _computation_types(u: TypeUniverse):
    yield from u.computations
    for a in u.values:
        yield F(a)


def _err_bot(u: TypeUniverse, interp: Interp):
    for b in _computation_types(u):
        yield b, Instance(f"(err {P(b)})", "(force k)", "leq", env=(("k", U(b)),))


def _sample_stacks(b):
    """GTT stacks ``hole : b ⊢ S`` drawn from the elimination forms and casts."""
    match b:
        case F(a):
            yield "(bind x hole (force k))", (("k", U(F_BOOL)),)
            if a == DYN:
                for lo in ("1", "(* ? ?)", "bool", "(U dyncomp)"):
                    yield f"(dn (F {lo}) (F ?) hole)", ()
        case Arrow(a, _):
            yield "(app hole v)", (("v", a),)
        case With():
            yield "(fst hole)", ()
            yield "(snd hole)", ()
        case Nu():
            yield "(unrollnu hole)", ()
    if b == CODYN:
        for g in ("(F ?)", "(-> ? dyncomp)", "(& dyncomp dyncomp)"):
            yield f"(dn {g} dyncomp hole)", ()


def _stk_strict(u: TypeUniverse, interp: Interp):
    for b in _computation_types(u):
        yield b, StrictnessProbe(b)
        for src, env in _sample_stacks(b):
            # S[℧] against ℧ at the stack's result type, in both directions.
            from ..typecheck import typecheck
            from ..syntax import parse_term
            _, out = typecheck(parse_term(src), dict(env), b)
            filled = src.replace("hole", f"(err {P(b)})")
            yield b, Instance(filled, f"(err {P(out)})", "eq", env=env)


# -- thunkability and linearity -----------------------------------------

def complex_samples(u: TypeUniverse, interp: Interp, count: int = 100, seed: int = 0) -> list:
    """Deterministic sample of cast translations: half complex values, half stacks.

    Each entry is ``(label, kind, term, ctx, type)`` at the CBPV* level.
    """
    pairs = u.dynamism_pairs()
    rng = random.Random(seed)
    chosen = pairs if len(pairs) <= count // 2 else rng.sample(pairs, count // 2)
    out = []
    for lo, hi, d in chosen:
        label = f"{P(lo)} <= {P(hi)}"
        if _is_value(lo):
            out.append((label, "value", elab_upcast(d, interp), {"x": interp.translate(lo)}, interp.translate(hi)))
            out.append((label, "stack", elab_dncast(d, interp), F(interp.translate(hi)), F(interp.translate(lo))))
        else:
            out.append((label, "value", elab_upcast(d, interp), {"x": U(interp.translate(lo))},
                        U(interp.translate(hi))))
            out.append((label, "stack", elab_dncast(d, interp), interp.translate(hi), interp.translate(lo)))
    return out


LIN_X, LIN_Z = "x#lin", "z#lin"


def thunkability_instance(v: T.Term, ctx: dict, a) -> Instance:
    """``ret (thunk M) ⊒⊑ bind y ← M; ret (thunk (ret y))`` with ``M = simp V``."""
    m = Simplifier().simp(v)
    y = "y#thk"
    ty = F(U(F(a)))
    lhs = Subject(T.RetV(T.Thunk(m)), tuple(sorted(ctx.items())), ty)
    rhs = Subject(T.Bind(m, y, T.RetV(T.Thunk(T.RetV(T.Var(y))))), tuple(sorted(ctx.items())), ty)
    return Instance(lhs, rhs)


def linearity_instance(s: T.Term, hole_ty, out_ty) -> Instance:
    """``bind x ← force z; M ⊒⊑ M[thunk(bind x ← force z; force x)/x]`` for ``M = simp S``."""
    m = Simplifier(hole_var=LIN_X).simp(s)
    ctx = ((LIN_Z, U(F(U(hole_ty)))),)
    lhs = T.Bind(T.Force(T.Var(LIN_Z)), LIN_X, m)
    delayed = T.Thunk(T.Bind(T.Force(T.Var(LIN_Z)), LIN_X, T.Force(T.Var(LIN_X))))
    rhs = T.subst_value(m, LIN_X, delayed)
    return Instance(Subject(lhs, ctx, out_ty), Subject(rhs, ctx, out_ty))


def _thunkable_linear(u: TypeUniverse, interp: Interp):
    for label, kind, term, ctx, ty in complex_samples(u, interp):
        if kind == "value":
            yield label, thunkability_instance(term, ctx, ty)
        else:
            yield label, linearity_instance(term, ctx, ty)


# -- the suite -----------------------------------------------------------

LAWS: dict[str, Callable] = {
    "identity": _identity,
    "decomposition": _decomposition,
    "ep-retraction": _retraction,
    "ep-projection": _projection,
    "retract-axiom": _retract_axiom,
    "beta": _beta,
    "eta": _eta,
    "err-bot": _err_bot,
    "stk-strict": _stk_strict,
    "thunkable-linear": _thunkable_linear,
}


def _type_label(key) -> str:
    if isinstance(key, str):
        return key
    if isinstance(key, tuple):
        return " <= ".join(P(t) for t in key)
    return P(key)


@dataclass
class Cell:
    law: str
    type: str
    instances: int = 0
    runs: int = 0
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def as_json(self, interp: str, depth: int) -> dict:
        return {"law": self.law, "type": self.type, "interp": interp, "depth": depth,
                "instances": self.instances, "runs": self.runs, "failures": self.failures}


@dataclass
class Report:
    interp: str
    depth: int
    cells: list

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.cells)

    def failures(self) -> list:
        return [c for c in self.cells if not c.passed]

    def as_json(self) -> list:
        return [c.as_json(self.interp, self.depth) for c in self.cells]

    def summary(self) -> str:
        lines = []
        by_law: dict = {}
        for c in self.cells:
            tot = by_law.setdefault(c.law, [0, 0, 0])
            tot[0] += c.instances
            tot[1] += len(c.failures)
            tot[2] += c.runs
        for law, (n, bad, runs) in by_law.items():
            status = "PASS" if bad == 0 else "FAIL"
            lines.append(f"{status} {law:<17} interp={self.interp} depth={self.depth} "
                         f"instances={n} runs={runs} failures={bad}")
        return "\n".join(lines)


def _check_instance(inst, interp: Interp, settings: Settings) -> CheckResult:
    if isinstance(inst, StrictnessProbe):
        return inst.check(interp, settings)
    return inst.comparison(interp).check(settings)


def law_instances(law: str, interp: Interp, universe: TypeUniverse) -> Iterator[tuple]:
    return LAWS[law](universe, interp)


def _run_cell(args) -> Cell:
    law, label, insts, interp_name, settings = args
    interp = get_interp(interp_name)
    cell = Cell(law, label)
    for inst in insts:
        res = _check_instance(inst, interp, settings)
        cell.instances += 1
        cell.runs += res.runs
        if not res.passed:
            cell.failures.append(res.counterexample.as_json())
    return cell


def run_law_suite(interp="natural", depth: int = 3, *, laws: Optional[list] = None,
                  settings: Optional[Settings] = None, universe: Optional[TypeUniverse] = None,
                  jobs: int = 1) -> Report:
    """Check every law over the universe; cells come back sorted by (law, type)."""
    interp = get_interp(interp) if isinstance(interp, str) else interp
    settings = settings or Settings(depth=depth)
    universe = universe or default_universe(depth)
    names = laws or list(LAWS)
    unknown = [n for n in names if n not in LAWS]
    if unknown:
        raise KeyError(f"unknown law(s): {', '.join(unknown)}")
    grouped: dict = {}
    for law in names:
        for key, inst in law_instances(law, interp, universe):
            grouped.setdefault((law, _type_label(key)), []).append(inst)
    tasks = [(law, label, insts, interp.name, settings) for (law, label), insts in sorted(grouped.items())]
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as pool:
            cells = list(pool.map(_run_cell, tasks))
    else:
        cells = [_run_cell(t) for t in tasks]
    return Report(interp.name, settings.depth, cells)


def default_universe(depth: int = 3) -> TypeUniverse:
    from .graduality import corpus_types
    return build_universe(depth, tuple(corpus_types()))
