"""Environment machine: the same reduction rules as :mod:`.reference`, without substitution.

Values are evaluated against an environment into small tuples:

    ('u',)                unit
    ('l', v) / ('r', v)   injections
    ('p', v1, v2)         pairs
    ('m', v)              mu-roll
    ('t', term, env)      thunk closure

Each contraction the reference machine performs counts as one step here
too, so step and cost counts agree exactly on operational programs.  Value
evaluation also understands complex values (pattern matching in value
position), which makes the machine a direct evaluator for CBPV*; that mode
is only used as a differential oracle for de-complexification.

A program that revisits a machine state is in a cycle and will exhaust its
fuel.  After ``loop_check_after`` steps the machine fingerprints the state at
every cost-1 step; on a repeat it fast-forwards to fuel exhaustion and
reports exactly the counts plain stepping would have reached.
"""

from __future__ import annotations

from typing import Optional

from ..syntax import terms as T
from .results import Result, StuckError

UNIT_RV = ("u",)
TRUE_RV = ("l", UNIT_RV)
FALSE_RV = ("r", UNIT_RV)

_Var, _Inl, _Inr, _UnitV, _PairV, _RollMu, _Thunk = T.Var, T.Inl, T.Inr, T.UnitV, T.PairV, T.RollMu, T.Thunk


def eval_value(v: T.Term, env: dict):
    tv = type(v)
    if tv is _Var:
        try:
            return env[v.name]
        except KeyError:
            raise StuckError(f"unbound variable {v.name} at run time") from None
    if tv is _Thunk:
        return ("t", v.body, env)
    if tv is _Inl:
        return ("l", eval_value(v.arg, env))
    if tv is _Inr:
        return ("r", eval_value(v.arg, env))
    if tv is _UnitV:
        return UNIT_RV
    if tv is _PairV:
        return ("p", eval_value(v.left, env), eval_value(v.right, env))
    if tv is _RollMu:
        return ("m", eval_value(v.arg, env))
    # Complex values (CBPV* only).
    if tv is T.Case:
        s = eval_value(v.scrut, env)
        if s[0] == "l":
            return eval_value(v.branch1, {**env, v.x1: s[1]})
        return eval_value(v.branch2, {**env, v.x2: s[1]})
    if tv is T.Split:
        s = eval_value(v.scrut, env)
        return eval_value(v.body, {**env, v.x: s[1], v.y: s[2]})
    if tv is T.UnitSplit:
        eval_value(v.scrut, env)
        return eval_value(v.body, env)
    if tv is T.UnrollMu:
        s = eval_value(v.scrut, env)
        return eval_value(v.body, {**env, v.x: s[1]})
    raise StuckError(f"cannot evaluate {tv.__name__} as a value")


def readback(rv) -> T.Term:
    """Turn a first-order runtime value back into a term (thunks become opaque)."""
    tag = rv[0]
    if tag == "u":
        return T.UNIT_V
    if tag == "l":
        return T.Inl(readback(rv[1]))
    if tag == "r":
        return T.Inr(readback(rv[1]))
    if tag == "p":
        return T.PairV(readback(rv[1]), readback(rv[2]))
    if tag == "m":
        return T.RollMu(None, readback(rv[1]))
    return T.Thunk(rv[1])


def _vkey(v, memo: dict):
    tag = v[0]
    if tag == "t":
        return ("t", id(v[1]), _envkey(v[2], memo))
    if tag == "u":
        return v
    if tag == "p":
        return ("p", _vkey(v[1], memo), _vkey(v[2], memo))
    return (tag, _vkey(v[1], memo))


def _envkey(env: dict, memo: dict):
    k = memo.get(id(env))
    if k is None:
        k = tuple((name, _vkey(val, memo)) for name, val in env.items())
        memo[id(env)] = k
    return k


def _state_key(term, env, frames):
    memo: dict = {}
    fk = []
    for f in frames:
        tag = f[0]
        if tag == "bind":
            fk.append(("bind", f[1], id(f[2]), _envkey(f[3], memo)))
        elif tag == "app":
            fk.append(("app", _vkey(f[1], memo)))
        else:
            fk.append(f)
    return (id(term), _envkey(env, memo), tuple(fk))


_FST, _SND, _UNROLL = ("fst",), ("snd",), ("unroll",)


def run(m: T.Term, fuel: int = 100_000, env: Optional[dict] = None, *,
        loop_check_after: int = 5_000):
    """Evaluate ``m`` (closed under ``env``): ``(result, steps, cost1_steps)``."""
    env = {} if env is None else env
    frames: list = []
    steps = cost = 0
    seen: Optional[dict] = None
    cost_marks: list = []
    term = m
    Bind, App, Fst, Snd, UnrollNu = T.Bind, T.App, T.Fst, T.Snd, T.UnrollNu
    RetV, Force, Lam, WithPair, RollNu, Err = T.RetV, T.Force, T.Lam, T.WithPair, T.RollNu, T.Err
    Case, Split, UnitSplit, UnrollMu = T.Case, T.Split, T.UnitSplit, T.UnrollMu
    while True:
        tt = type(term)
        # Decomposition moves are free.
        if tt is Bind:
            frames.append(("bind", term.x, term.body, env))
            term = term.head
            continue
        if tt is App:
            frames.append(("app", eval_value(term.arg, env)))
            term = term.fn
            continue
        if tt is Fst:
            frames.append(_FST)
            term = term.arg
            continue
        if tt is Snd:
            frames.append(_SND)
            term = term.arg
            continue
        if tt is UnrollNu:
            frames.append(_UNROLL)
            term = term.arg
            continue
        if steps >= fuel:
            return Result.TIMEOUT, steps, cost
        steps += 1
        if tt is RetV:
            v = eval_value(term.arg, env)
            if not frames:
                if v == TRUE_RV:
                    return Result.TRUE, steps, cost
                if v == FALSE_RV:
                    return Result.FALSE, steps, cost
                raise StuckError("program returned a non-boolean value")
            f = frames.pop()
            if f[0] != "bind":
                raise StuckError(f"ret met a {f[0]} frame")
            env = dict(f[3])
            env[f[1]] = v
            term = f[2]
        elif tt is Force:
            th = eval_value(term.arg, env)
            if th[0] != "t":
                raise StuckError("force of a non-thunk")
            term, env = th[1], th[2]
        elif tt is Lam:
            if not frames or frames[-1][0] != "app":
                raise StuckError("lambda without an argument frame")
            env = dict(env)
            env[term.x] = frames.pop()[1]
            term = term.body
        elif tt is Case:
            s = eval_value(term.scrut, env)
            env = dict(env)
            if s[0] == "l":
                env[term.x1] = s[1]
                term = term.branch1
            elif s[0] == "r":
                env[term.x2] = s[1]
                term = term.branch2
            else:
                raise StuckError("case on a non-injection")
        elif tt is Split:
            s = eval_value(term.scrut, env)
            if s[0] != "p":
                raise StuckError("split on a non-pair")
            env = dict(env)
            env[term.x] = s[1]
            env[term.y] = s[2]
            term = term.body
        elif tt is UnitSplit:
            eval_value(term.scrut, env)
            term = term.body
        elif tt is WithPair:
            f = frames.pop() if frames else None
            if f is _FST:
                term = term.left
            elif f is _SND:
                term = term.right
            else:
                raise StuckError("lazy pair without a projection frame")
        elif tt is UnrollMu or tt is RollNu:
            if tt is UnrollMu:
                s = eval_value(term.scrut, env)
                if s[0] != "m":
                    raise StuckError("pmroll on a non-roll")
                env = dict(env)
                env[term.x] = s[1]
                term = term.body
            else:
                if not frames or frames.pop() is not _UNROLL:
                    raise StuckError("rollnu without an unroll frame")
                term = term.arg
            cost += 1
            if steps > loop_check_after:
                if seen is None:
                    seen = {}
                cost_marks.append(steps)
                key = _state_key(term, env, frames)
                prev = seen.get(key)
                if prev is not None:
                    return _fast_forward(prev, steps, cost, fuel, cost_marks)
                seen[key] = (steps, cost, len(cost_marks) - 1)
        elif tt is Err:
            if not frames:
                return Result.ERROR, steps, cost
            frames.clear()
        else:
            raise StuckError(f"no reduction for {tt.__name__}")


def _fast_forward(prev, steps: int, cost: int, fuel: int, cost_marks: list):
    """The state after step ``steps`` equals the one after ``prev[0]``: the
    run is periodic from there on, so extrapolate to fuel exhaustion."""
    s0, c0, i0 = prev
    period = steps - s0
    per_cost = cost - c0
    remaining = fuel - steps
    full, partial = divmod(remaining, period)
    total_cost = cost + full * per_cost
    # Cost-1 steps within the first ``partial`` steps of the cycle.
    cycle = cost_marks[i0 + 1:]
    total_cost += sum(1 for s in cycle if s - s0 <= partial)
    return Result.TIMEOUT, fuel, total_cost
