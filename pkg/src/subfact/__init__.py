"""Exact checks of factoriality conditions for subrings of polynomial rings.

Two carriers: sparse rational polynomials (:mod:`subfact.exactpoly`,
:mod:`subfact.jacobian`) and monomial subrings modelled as affine semigroups
with units (:mod:`subfact.monolattice`, :mod:`subfact.conditions`).
"""

from .verdict import SearchBound, Verdict
from .exactpoly import MultiPoly, parse_poly, gcd_multi, squarefree_in_A, det_fraction_free
from .monolattice import AmbientLattice, MonomialSubring, make_subring, load_instance
from .conditions import evaluate, violates, catalog_ids, hypothesis_report
from .jacobian import PolyMap, minor_report, bridge_check

__all__ = [
    "SearchBound", "Verdict", "MultiPoly", "parse_poly", "gcd_multi", "squarefree_in_A",
    "det_fraction_free", "AmbientLattice", "MonomialSubring", "make_subring", "load_instance",
    "evaluate", "violates", "catalog_ids", "hypothesis_report", "PolyMap", "minor_report", "bridge_check",
]
__version__ = "0.1.0"
