"""
knotwork: exact invariants of knots, links and spatial theta-curves.

A workbench for computing with Morse-slice link diagrams: C_k-move link
models and band sums, canonical disk/band surfaces of theta-curves with
their Seifert pairings, low-order Vassiliev invariants with independent
brute-force oracles, and exact colored quantum sl(N) invariants via
R-matrix transfer contraction with Hecke-algebra cabling projectors.
"""

from .polynomials import (
    LaurentPoly, RationalFunction, SparseOperator, ExactDivisionError,
    exact_divide, vanish_order_at_1, mutant_product_polynomial,
)
from .diagrams import (
    SliceWord, LinkDiagram, ThetaTangle, BraidWord, DiagramError,
    pretzel, braid_closure, slice_to_pd, connected_sum, mirror, vertex_sum,
    theta_cycles, trivial_theta, theta_from_braid, unknot, unknot_with_curl,
    hopf_link, parse_braid, reverse_component,
)

__version__ = "0.1.0"
