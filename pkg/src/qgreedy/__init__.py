"""Exact computations in rank 2 quantum cluster algebras A_v(b, c).

The package computes quantum greedy elements, cluster variables and
monomials, standard monomials, and triangular basis elements over
Z[v, v^-1], and ships a scan harness for desk-scale verification of
their expected properties.
"""

from .errors import (
    ClusterAlgebraError,
    InternalInconsistency,
    NonTermination,
    NotDivisible,
    NotLaurent,
    NotPointed,
    OrderViolation,
    P1Violation,
    P2Violation,
)
from .laurent import (
    LaurentV,
    V,
    quantum_binomial,
    quantum_factorial,
    quantum_integer,
    symmetrize_from_nonpositive,
)
from .qtorus import TorusElement, exact_divide, exact_divide_left, expand_in_cluster
from .greedy import (
    ClassicalElement,
    PointedElement,
    check_divisibility_axiom,
    check_support_axiom,
    classical_greedy,
    greedy_region_contains,
    is_imaginary_root,
    quantum_greedy,
    to_pointed,
)
from .clusters import (
    ClusterCache,
    ClusterPair,
    cluster_pair,
    cluster_variable,
    cluster_variable_pointing,
    find_cluster_monomial,
    quantum_cluster_monomial,
    standard_monomial,
)
from .bases import (
    SCAN_CHECKS,
    BasisExpansion,
    ScanReport,
    ScanResult,
    TriangularSupportVerdict,
    check_triangular_support_conjecture,
    expand_in_standard_basis,
    greedy_to_standard_q,
    scan,
    triangular_element,
    triangular_r_coeffs,
)

__version__ = "0.1.0"
