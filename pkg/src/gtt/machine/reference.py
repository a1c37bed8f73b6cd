"""Reference small-step machine over terms, by substitution.

The redex is found by peeling evaluation frames (``bind``, application,
projections, ``unrollnu``) off the head of the term onto an explicit frame
stack.  :func:`step` re-plugs after every contraction; :func:`eval` keeps
the decomposed state between steps, which is observationally the same and
avoids the repeated walk.
"""

from __future__ import annotations

from ..syntax import terms as T
from ..syntax.types import F_BOOL, alpha_eq_types
from .results import Result, Stepped, StuckError, Terminal

_FRAME_TYPES = (T.Bind, T.App, T.Fst, T.Snd, T.UnrollNu)


def decompose(m: T.Term):
    frames = []
    while isinstance(m, _FRAME_TYPES):
        frames.append(m)
        m = m.head if isinstance(m, T.Bind) else (m.fn if isinstance(m, T.App) else m.arg)
    return m, frames


def plug(focus: T.Term, frames: list) -> T.Term:
    for f in reversed(frames):
        if isinstance(f, T.Bind):
            focus = T.Bind(focus, f.x, f.body)
        elif isinstance(f, T.App):
            focus = T.App(focus, f.arg)
        else:
            focus = type(f)(focus)
    return focus


def _bool_result(v: T.Term) -> Result:
    if isinstance(v, T.Inl) and isinstance(v.arg, T.UnitV):
        return Result.TRUE
    if isinstance(v, T.Inr) and isinstance(v.arg, T.UnitV):
        return Result.FALSE
    raise StuckError(f"program returned a non-boolean value {v!r}")


def contract(focus: T.Term, frames: list):
    """One reduction on a decomposed state.

    Returns ``(focus, frames, cost)`` or a :class:`Terminal`.  ``frames`` is
    mutated in place (the innermost frame is last).
    """
    sub = T.subst_value
    if isinstance(focus, T.Err):
        if not frames:
            return Terminal(Result.ERROR)
        frames.clear()
        return focus, frames, 0
    if isinstance(focus, T.RetV):
        if not frames:
            return Terminal(_bool_result(focus.arg))
        f = frames.pop()
        if not isinstance(f, T.Bind):
            raise StuckError(f"ret met a {type(f).__name__} frame")
        return sub(f.body, f.x, focus.arg, closed=True), frames, 0
    if isinstance(focus, T.Force):
        if not isinstance(focus.arg, T.Thunk):
            raise StuckError("force of a non-thunk")
        return focus.arg.body, frames, 0
    if isinstance(focus, T.Lam):
        f = frames.pop() if frames else None
        if not isinstance(f, T.App):
            raise StuckError("lambda without an argument frame")
        return sub(focus.body, focus.x, f.arg, closed=True), frames, 0
    if isinstance(focus, T.WithPair):
        f = frames.pop() if frames else None
        if isinstance(f, T.Fst):
            return focus.left, frames, 0
        if isinstance(f, T.Snd):
            return focus.right, frames, 0
        raise StuckError("lazy pair without a projection frame")
    if isinstance(focus, T.RollNu):
        f = frames.pop() if frames else None
        if not isinstance(f, T.UnrollNu):
            raise StuckError("rollnu without an unroll frame")
        return focus.arg, frames, 1
    if isinstance(focus, T.Case):
        s = focus.scrut
        if isinstance(s, T.Inl):
            return sub(focus.branch1, focus.x1, s.arg, closed=True), frames, 0
        if isinstance(s, T.Inr):
            return sub(focus.branch2, focus.x2, s.arg, closed=True), frames, 0
        raise StuckError("case on a non-injection")
    if isinstance(focus, T.Split):
        s = focus.scrut
        if not isinstance(s, T.PairV):
            raise StuckError("split on a non-pair")
        body = sub(focus.body, focus.x, s.left, closed=True)
        return sub(body, focus.y, s.right, closed=True), frames, 0
    if isinstance(focus, T.UnitSplit):
        if not isinstance(focus.scrut, T.UnitV):
            raise StuckError("unit split on a non-unit")
        return focus.body, frames, 0
    if isinstance(focus, T.UnrollMu):
        s = focus.scrut
        if not isinstance(s, T.RollMu):
            raise StuckError("pmroll on a non-roll")
        return sub(focus.body, focus.x, s.arg, closed=True), frames, 1
    raise StuckError(f"no reduction for {type(focus).__name__}")


def step(m: T.Term):
    """One step of a closed operational program: :class:`Stepped` or :class:`Terminal`."""
    focus, frames = decompose(m)
    had_frames = bool(frames)
    out = contract(focus, frames)
    if isinstance(out, Terminal):
        return out
    nfocus, nframes, cost = out
    if isinstance(focus, T.Err) and had_frames:
        # S[℧] steps to ℧ at the type of the whole program.
        from ..typecheck import infer_comp
        try:
            ty = infer_comp({}, m)
        except Exception:
            ty = F_BOOL
        return Stepped(T.Err(ty), 0)
    return Stepped(plug(nfocus, nframes), cost)


def eval(m: T.Term, fuel: int = 100_000, *, check_types: bool = False):  # noqa: A001
    """Run to a result: ``(result, steps, cost1_steps)``.

    Every step counts toward ``fuel``, including the final classification.
    With ``check_types`` the type of the whole program is re-inferred after
    each step and must not change.
    """
    focus, frames = decompose(m)
    steps = cost = 0
    if check_types:
        from ..typecheck import infer_comp
        ty0 = infer_comp({}, m)
    while True:
        if steps >= fuel:
            return Result.TIMEOUT, steps, cost
        out = contract(focus, frames)
        steps += 1
        if isinstance(out, Terminal):
            return out.result, steps, cost
        focus, frames, c = out
        cost += c
        f2, more = decompose(focus)
        if more:
            frames.extend(more)
            focus = f2
        if check_types and not isinstance(focus, T.Err):
            ty = infer_comp({}, plug(focus, frames))
            if not alpha_eq_types(ty, ty0):
                raise AssertionError(f"subject reduction failed: {ty0!r} became {ty!r}")


def run_trace(m: T.Term, fuel: int = 1000):
    """Step with :func:`step` itself, yielding every intermediate term."""
    for _ in range(fuel):
        out = step(m)
        yield out
        if isinstance(out, Terminal):
            return
        m = out.next
