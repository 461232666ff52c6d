"""Exact A_alpha spectral moments of uniform hypergraphs."""

import json
from fractions import Fraction

from . import _core
from ._core import (
    BudgetExceeded,
    Hypergraph,
    MethodMismatch,
    ParameterError,
    PreconditionError,
    UnsupportedClosedForm,
)

__all__ = [
    "BudgetExceeded",
    "Hypergraph",
    "MethodMismatch",
    "ParameterError",
    "PreconditionError",
    "UnsupportedClosedForm",
    "family",
    "trace",
    "compare",
    "compare_symbolic",
    "enumerate_family",
    "sort_family",
    "verify",
    "theorems",
]


def _alpha(alpha):
    if isinstance(alpha, float):
        raise ParameterError("alpha must be exact; pass a Fraction or a 'p/q' string")
    return str(Fraction(alpha)) if not isinstance(alpha, str) else alpha


def family(name, k, m=0, g=0, extra=()):
    """Build a named family member; returns (hypergraph, label)."""
    return _core.build_family(name, k, m, g, list(extra))


def trace(h, d, method="auto", threads=1):
    """Tr_d as a list of Fractions, lowest power of alpha first."""
    return [Fraction(int(n), int(q)) for n, q in _core.trace(h, d, method, threads)]


def compare(a, b, alpha="1/2", d_max=None):
    return _core.compare(a, b, _alpha(alpha), d_max)


def compare_symbolic(a, b, d_max=None):
    return json.loads(_core.compare_symbolic(a, b, d_max))


def enumerate_family(cls, k, m, girth=None, diameter=None, max_degree_two=False):
    return _core.enumerate(cls, k, m, girth, diameter, max_degree_two)


def sort_family(members, alpha="1/2", d_max=None, threads=1):
    """Returns (order, tie_class); order[i] indexes into members."""
    return _core.sort_family(list(members), _alpha(alpha), d_max, threads)


def verify(theorem, k, m, alpha="1/2", d_max=None, threads=1):
    return json.loads(_core.verify(theorem, k, m, _alpha(alpha), d_max, threads))


def theorems():
    return _core.theorems()
