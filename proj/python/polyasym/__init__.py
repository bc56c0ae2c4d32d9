"""Exact growth exponents of polynomial sublevel sets via Newton polytopes.

Maps are given as text, components separated by ';', variables x1..xn, e.g.
``analyze("x1^2+x2^2", 2)``.  Reports come back as plain dicts; exact
rationals appear as ``[numerator, denominator]`` pairs.
"""

import json
from fractions import Fraction

from . import _core

__version__ = _core.version()


def rational(pair):
    """Turn a [numerator, denominator] report entry into a Fraction."""
    num, den = pair
    return Fraction(int(num), int(den))


def analyze(text, n, seed=0):
    """Newton polytopes, finiteness, exact exponents, and the LP cross-check."""
    return json.loads(_core.analyze_json(text, n, seed))


def check_mg(text, n, seed=0, starts=0, iterations=0, threads=1):
    """Per-face common-zero search verdicts (worst face first)."""
    return json.loads(_core.check_mg_json(text, n, seed, starts, iterations, threads))


def count_lattice(text, n, r, max_box=4000000):
    """Exact number of integer points with nonzero coordinates, max|f_i| <= r."""
    return _core.count_lattice(text, n, r, max_box)


def estimate_volume(text, n, r, method="grid", work=512, seed=0):
    """(estimate, stderr) for the volume of {max|f_i| <= r}."""
    return _core.estimate_volume(text, n, r, method, work, seed)
