"""Exact evaluation of queries over tuple-independent bag databases.

Tables and queries are passed as text in the same syntax the command-line
tool reads. Probabilities and moments come back as fractions.Fraction.
"""

from fractions import Fraction

from . import _bagpdb
from ._bagpdb import BagpdbError, IntractableError, normalize_query, normalize_table, run_cli

__all__ = [
    "BagpdbError",
    "IntractableError",
    "chebyshev",
    "classify",
    "count_distribution",
    "expectation",
    "inflate",
    "moment",
    "normalize_query",
    "normalize_table",
    "pqe",
    "run_cli",
    "solve_component",
    "variance",
]


def classify(query):
    """List of {"self_join_free", "hierarchical"} dicts, one per disjunct."""
    return [{"self_join_free": s, "hierarchical": h} for s, h in _bagpdb.classify(query)]


def expectation(table, query):
    return Fraction(_bagpdb.expectation(table, query))


def variance(table, query):
    return Fraction(_bagpdb.variance(table, query))


def moment(table, query, order, central=False):
    return Fraction(_bagpdb.moment(table, query, order, central))


def chebyshev(table, query, k):
    lo, hi = _bagpdb.chebyshev(table, query, k)
    return Fraction(lo), Fraction(hi)


def pqe(table, query, k, mode="at_most", fallback=False):
    return Fraction(_bagpdb.pqe(table, query, k, mode, fallback))


def count_distribution(table, query):
    """{count: probability} by exhaustive world enumeration."""
    return {c: Fraction(p) for c, p in _bagpdb.count_distribution(table, query)}


def inflate(table, query, copies):
    """Table text of each copy."""
    return _bagpdb.inflate(table, query, copies)


def solve_component(table, query, component, k):
    """Pr(component count = 0) recovered from k-threshold calls to the exhaustive oracle."""
    return Fraction(_bagpdb.solve_component(table, query, component, k))
