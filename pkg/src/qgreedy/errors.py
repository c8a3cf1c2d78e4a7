"""Exception types shared across the package.

Everything derives from ClusterAlgebraError so callers (notably the CLI)
can distinguish domain failures from programming errors.  The *Violation
and InternalInconsistency types are correctness traps: they fire when a
computation contradicts an identity that is known to hold, which means
the implementation (or its input data) is broken, not the mathematics.
"""


class ClusterAlgebraError(Exception):
    """Base class for all domain errors raised by this package."""


class NotDivisible(ClusterAlgebraError):
    """Exact division in the quantum torus has no quotient."""


class NotLaurent(ClusterAlgebraError):
    """An element failed to re-expand as a Laurent polynomial in a cluster."""


class NotPointed(ClusterAlgebraError):
    """A torus element is not pointed at any vector."""


class InternalInconsistency(ClusterAlgebraError):
    """Two computations that must agree produced different results."""


class OrderViolation(ClusterAlgebraError):
    """A basis expansion has support outside the strict componentwise order."""


class NonTermination(ClusterAlgebraError):
    """An iterative expansion exceeded its iteration guard."""


class P1Violation(ClusterAlgebraError):
    """A triangular basis element is not bar-invariant."""


class P2Violation(ClusterAlgebraError):
    """A triangular basis element is not congruent to its standard monomial
    modulo the v-positive lattice."""
