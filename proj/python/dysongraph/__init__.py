"""Connes-Kreimer trees, Dyson-Schwinger solutions, BPHZ renormalization,
graphons and graph polynomials.

Values cross the boundary as JSON documents; rationals come back as
fractions.Fraction.
"""

import json
from fractions import Fraction

from . import _core
from ._core import (
    DomainError,
    Error,
    InternalError,
    MismatchError,
    ParseError,
    RefinementError,
    SizeError,
    TruncationError,
    UnsupportedError,
    ValidationError,
)

__version__ = _core.__version__


def _dump(doc):
    return doc if isinstance(doc, str) else json.dumps(doc)


def _poly(terms):
    return {tuple(sorted(t["exps"].items())): Fraction(t["coef"]) for t in terms}


def solve(spec):
    """Solution document of a DSESpec (dict or JSON text)."""
    return json.loads(_core.solve(_dump(spec)))


def renormalize(solution, rules=None, m=1):
    return json.loads(_core.renormalize(_dump(solution), _dump(rules or {}), m))


def tutte(graph):
    """{((var, power), ...): coefficient}"""
    return _poly(json.loads(_core.tutte(_dump(graph))))


def symanzik_psi(graph):
    return _poly(json.loads(_core.symanzik_psi(_dump(graph))))


def spanning_tree_count(graph):
    return int(_core.spanning_tree_count(_dump(graph)))


def cut_norm(graphon, mode="exact", seed=0):
    out = json.loads(_core.cut_norm(_dump(graphon), mode, seed))
    return Fraction(out["value"]), out["exact"]


def cut_distance(w, u, mode="heuristic", seed=0):
    out = json.loads(_core.cut_distance(_dump(w), _dump(u), mode, seed))
    out["value"] = Fraction(out["value"])
    out["lower_bound"] = Fraction(out["lower_bound"])
    return out


def hom_density(graph6, graphon):
    return Fraction(_core.hom_density(graph6, _dump(graphon)))


def ball_measure(r, depth=24, samples=100000, seed=0, threads=1):
    return _core.ball_measure(str(Fraction(r)), depth, samples, seed, threads)


def haar_distance(x, y, depth, g=1, eps=1):
    return Fraction(_core.haar_distance(list(x), list(y), depth, str(Fraction(g)), str(Fraction(eps))))


def run(config, threads=1):
    """Runs a CLI configuration; returns (exit code, rendered output)."""
    return _core.run(_dump(config), threads)
