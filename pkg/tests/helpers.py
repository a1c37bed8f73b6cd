"""Small shared helpers for the test modules."""

from gtt.dyninterp import get_interp
from gtt.elaborate import elab_term
from gtt.decomplexify import simp_comp
from gtt.machine import evaluate
from gtt.syntax import parse_term
from gtt.typecheck import check_program


def run(src: str, interp: str = "natural", fuel: int = 100_000):
    """Typecheck, elaborate, de-complexify and run a program; return the result."""
    e = elab_term(check_program(parse_term(src)), get_interp(interp))
    return evaluate(simp_comp(e), fuel)[0]
