"""Double coset classification engine for products of reductive groups.

Thin wrapper over the C++ core: exact root-system and Weyl-group
combinatorics plus a brute-force finite-field oracle that verifies the
classification, the stabilizer structure, the dimension bookkeeping and
the induced Yang-Baxter maps on small matrix groups.
"""

import json as _json

from ._core import (
    classify_json,
    isometries_json,
    report_tsv,
    roots_json,
    run_json,
    weyl_json,
)

__all__ = [
    "roots",
    "weyl",
    "isometries",
    "classify",
    "run",
    "report_tsv",
]


def roots(type):
    """Root system summary, e.g. roots("B2")."""
    return _json.loads(roots_json(type))


def weyl(type, A="", C=""):
    """Weyl group order and the minimal (W_A, W_C) double-coset representatives."""
    return _json.loads(weyl_json(type, A, C))


def isometries(type1, type2=""):
    """All partial isometries between two Dynkin diagrams."""
    return _json.loads(isometries_json(type1, type2))


def classify(type1, type2="", a="empty", c="empty"):
    """Combinatorial coset parameters (v1, v2) with their stable subsets."""
    return _json.loads(classify_json(type1, type2, a, c))


def run(g1, g2="", q1=3, q2=0, a="empty", c="empty", K="graph", L="graph",
        verify="all", section=0):
    """Run the finite-field verification suites and return the report dict."""
    return _json.loads(
        run_json(g1, g2, q1, q2, a, c, K, L, verify, section)
    )
