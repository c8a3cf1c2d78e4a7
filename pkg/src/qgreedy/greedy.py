"""Greedy elements of rank 2 (quantum) cluster algebras.

A pointed element with pointing vector (a1, a2) is

    X = sum_(p,q >= 0)  e(p,q) X^(b p - a1, c q - a2),

written on bar-invariant monomials X^(s,t) = v^(s t) X1^s X2^t, with
e(0,0) = 1.  The (quantum) greedy element is the pointed element whose
coefficient grid satisfies the two-branch recurrence

    e(p,q) = sum_k (-1)^(k-1) e(p-k, q) [[a2 - c q]_+ + k - 1 "over" k]_(v^b)
                                                     when c a1 q <= b a2 p,
    e(p,q) = sum_l (-1)^(l-1) e(p, q-l) [[a1 - b p]_+ + l - 1 "over" l]_(v^c)
                                                     when c a1 q >= b a2 p.

Both formulas apply on the tie line c a1 q = b a2 p and must agree there;
this module always evaluates both and treats disagreement as an internal
error.  The commutative recurrence (ordinary binomial coefficients,
integer grid) is implemented separately and serves as an independent
oracle for the v = 1 specialization.

For pointing vectors that are positive imaginary roots, the support of
the grid is the greedy region: the polygon with corners (0,0), (a2,0),
(a1/b, a2/c), (0,a1) including the two closed axis segments but not the
rest of the boundary.  The support and divisibility axioms characterizing
greedy elements are provided as checkers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Mapping

from .errors import InternalInconsistency, NotPointed
from .laurent import LaurentV, quantum_binomial
from .qtorus import TorusElement

GridKey = tuple[int, int]


def is_imaginary_root(b: int, c: int, a1: int, a2: int) -> bool:
    """True when (a1, a2) is a positive imaginary root for A_v(b, c),
    i.e. both entries are positive and c a1^2 - b c a1 a2 + b a2^2 <= 0."""
    _require_bc(b, c)
    return a1 > 0 and a2 > 0 and c * a1 * a1 - b * c * a1 * a2 + b * a2 * a2 <= 0


def greedy_region_contains(b: int, c: int, a1: int, a2: int, p: int, q: int) -> bool:
    """Membership of the lattice point (p, q) in the greedy support region.

    Only defined for imaginary pointing vectors.  The two defining
    inequalities are strict; the boundary points (0, a1) and (a2, 0) are
    included explicitly.  All arithmetic is integral (the rational
    inequalities are cross-multiplied by c a1 > 0 and b a2 > 0).
    """
    if not is_imaginary_root(b, c, a1, a2):
        raise ValueError(f"({a1}, {a2}) is not a positive imaginary root")
    if p < 0 or q < 0:
        return False
    if (p, q) in ((0, a1), (a2, 0)):
        return True
    below_first = c * a1 * q + b * (c * a1 - a2) * p < c * a1 * a1
    below_second = b * a2 * p + c * (b * a2 - a1) * q < b * a2 * a2
    return below_first or below_second


class PointedElement:
    """A pointed element given by its pointing vector and coefficient grid.

    Only nonzero grid entries are stored; e(0,0) = 1 is required.  The
    optional bound_doublings counter records how often the support bound
    had to be enlarged while running the recurrence (informational only,
    ignored by equality).
    """

    __slots__ = ("b", "c", "a1", "a2", "_grid", "bound_doublings")

    def __init__(
        self,
        b: int,
        c: int,
        a1: int,
        a2: int,
        grid: Mapping[GridKey, LaurentV | int],
        bound_doublings: int = 0,
    ):
        _require_bc(b, c)
        cleaned: dict[GridKey, LaurentV] = {}
        for (p, q), coeff in grid.items():
            coeff = LaurentV.coerce(coeff)
            if p < 0 or q < 0:
                raise ValueError("grid keys must be nonnegative")
            if coeff:
                cleaned[(p, q)] = coeff
        if cleaned.get((0, 0)) != LaurentV.one():
            raise ValueError("a pointed element needs e(0,0) = 1")
        self.b, self.c, self.a1, self.a2 = b, c, a1, a2
        self._grid = cleaned
        self.bound_doublings = bound_doublings

    @property
    def pointing(self) -> GridKey:
        return (self.a1, self.a2)

    def coefficient(self, p: int, q: int) -> LaurentV:
        return self._grid.get((p, q), LaurentV.zero())

    def grid(self) -> dict[GridKey, LaurentV]:
        return dict(self._grid)

    def support(self) -> set[GridKey]:
        return set(self._grid)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PointedElement):
            return NotImplemented
        return (self.b, self.c, self.a1, self.a2, self._grid) == (
            other.b, other.c, other.a1, other.a2, other._grid)

    def to_torus(self) -> TorusElement:
        """The torus realization sum e(p,q) X^(b p - a1, c q - a2)."""
        total = TorusElement.zero()
        for (p, q), coeff in self._grid.items():
            total = total + TorusElement.pointed_monomial(
                self.b * p - self.a1, self.c * q - self.a2) * coeff
        return total

    def at_one(self) -> dict[GridKey, int]:
        """The grid specialized at v = 1, zero entries dropped."""
        out = {}
        for key, coeff in self._grid.items():
            n = coeff.at_one()
            if n:
                out[key] = n
        return out

    def is_positive(self) -> tuple[bool, tuple[int, int, LaurentV] | None]:
        """Whether all grid coefficients lie in Z>=0[v, v^-1]; on failure
        also the lexicographically first offending (p, q, coefficient)."""
        for (p, q), coeff in sorted(self._grid.items()):
            if not coeff.is_nonnegative():
                return False, (p, q, coeff)
        return True, None

    def to_json(self) -> dict:
        return {
            "b": self.b,
            "c": self.c,
            "a": [self.a1, self.a2],
            "grid": [[p, q, coeff.to_json()] for (p, q), coeff in sorted(self._grid.items())],
        }

    @classmethod
    def from_json(cls, data: dict) -> PointedElement:
        grid = {(int(p), int(q)): LaurentV.from_json(c) for p, q, c in data["grid"]}
        return cls(int(data["b"]), int(data["c"]), int(data["a"][0]), int(data["a"][1]), grid)

    def __str__(self) -> str:
        entries = ", ".join(f"e({p},{q}) = {coeff}" for (p, q), coeff in sorted(self._grid.items()))
        return f"pointed at ({self.a1}, {self.a2}) [b={self.b}, c={self.c}]: {entries}"

    def __repr__(self) -> str:
        return (f"PointedElement(b={self.b}, c={self.c}, "
                f"a=({self.a1}, {self.a2}), {len(self._grid)} terms)")


def to_pointed(f: TorusElement, b: int, c: int) -> PointedElement:
    """Recognize a torus element as a pointed element.

    The pointing vector is read off the componentwise-minimal exponents;
    every exponent must lie on the shifted lattice (b p - a1, c q - a2)
    with p, q >= 0 and the corner coefficient must be exactly the pointed
    monomial's power of v.  Raises NotPointed otherwise.
    """
    _require_bc(b, c)
    if f.is_zero():
        raise NotPointed("the zero element is not pointed")
    a1 = -min(i for i, _ in f.support())
    a2 = -min(j for _, j in f.support())
    corner = f.coefficient(-a1, -a2)
    if corner.is_zero():
        raise NotPointed(f"no corner monomial at ({-a1}, {-a2})")
    if corner != LaurentV.monomial(a1 * a2):
        raise NotPointed(f"corner coefficient {corner} is not 1 after normalization")
    grid: dict[GridKey, LaurentV] = {}
    for (i, j), coeff in f.terms():
        if (i + a1) % b or (j + a2) % c:
            raise NotPointed(f"exponent ({i}, {j}) is off the pointed lattice")
        grid[((i + a1) // b, (j + a2) // c)] = coeff.shift(-i * j)
    return PointedElement(b, c, a1, a2, grid)


def quantum_greedy(b: int, c: int, a1: int, a2: int) -> PointedElement:
    """The quantum greedy element pointed at (a1, a2), from the recurrence."""
    grid, doublings = _run_recurrence(b, c, a1, a2, quantum=True)
    return PointedElement(b, c, a1, a2, grid, bound_doublings=doublings)


@dataclass(frozen=True)
class ClassicalElement:
    """A commutative pointed element: integer coefficient grid."""

    b: int
    c: int
    a1: int
    a2: int
    grid: dict[GridKey, int] = field(compare=True)

    @property
    def pointing(self) -> GridKey:
        return (self.a1, self.a2)

    def coefficient(self, p: int, q: int) -> int:
        return self.grid.get((p, q), 0)

    def to_json(self) -> dict:
        return {
            "b": self.b,
            "c": self.c,
            "a": [self.a1, self.a2],
            "grid": [[p, q, n] for (p, q), n in sorted(self.grid.items())],
        }


def classical_greedy(b: int, c: int, a1: int, a2: int) -> ClassicalElement:
    """The commutative greedy element pointed at (a1, a2).

    Runs the same two-branch recurrence with ordinary binomial
    coefficients over the integers.  Implemented independently of the
    quantum path so it can act as an oracle for the v = 1 specialization.
    """
    grid, _ = _run_recurrence(b, c, a1, a2, quantum=False)
    return ClassicalElement(b, c, a1, a2, {k: n for k, n in grid.items()})


def _run_recurrence(b, c, a1, a2, quantum):
    _require_bc(b, c)
    bound_p, bound_q = max(a2, 0), max(a1, 0)
    imaginary = is_imaginary_root(b, c, a1, a2)
    doublings = 0
    while True:
        margin = 0 if imaginary else 1
        grid = _recurrence_rectangle(b, c, a1, a2, bound_p + margin, bound_q + margin, quantum)
        if imaginary:
            break
        clean = all(
            not grid[(p, q)]
            for (p, q) in grid
            if p > bound_p or q > bound_q
        )
        if clean:
            break
        # support escaped the default bound; enlarge and recompute
        bound_p, bound_q = max(2 * bound_p, 1), max(2 * bound_q, 1)
        doublings += 1
        if doublings > 10:
            raise InternalInconsistency(
                f"greedy support for ({a1}, {a2}) did not stabilize")
    zero = LaurentV.zero() if quantum else 0
    final = {k: val for k, val in grid.items()
             if val != zero and k[0] <= bound_p and k[1] <= bound_q}
    return final, doublings


def _recurrence_rectangle(b, c, a1, a2, pmax, qmax, quantum):
    if quantum:
        one, zero = LaurentV.one(), LaurentV.zero()
        binomial = lambda n, k, d: quantum_binomial(n, k, d)
    else:
        one, zero = 1, 0
        binomial = lambda n, k, d: comb(n, k)
    e = {(0, 0): one}
    for total in range(1, pmax + qmax + 1):
        for p in range(max(0, total - qmax), min(pmax, total) + 1):
            q = total - p
            lhs, rhs = c * a1 * q, b * a2 * p
            value = None
            if lhs <= rhs:
                top = max(a2 - c * q, 0)
                value = zero
                for k in range(1, p + 1):
                    term = e[(p - k, q)] * binomial(top + k - 1, k, b)
                    value = value + term if k % 2 else value - term
            if lhs >= rhs:
                top = max(a1 - b * p, 0)
                other = zero
                for l in range(1, q + 1):
                    term = e[(p, q - l)] * binomial(top + l - 1, l, c)
                    other = other + term if l % 2 else other - term
                if value is not None and value != other:
                    raise InternalInconsistency(
                        f"recurrence branches disagree at (p, q) = ({p}, {q}) "
                        f"for pointing ({a1}, {a2}), (b, c) = ({b}, {c})")
                if value is None:
                    value = other
            e[(p, q)] = value
    return e


def check_support_axiom(x: PointedElement) -> tuple[bool, GridKey | None]:
    """Verify that every nonzero grid entry lies in the greedy region.

    Returns (True, None) or (False, offending (p, q)).  Only defined for
    imaginary pointing vectors.
    """
    if not is_imaginary_root(x.b, x.c, x.a1, x.a2):
        raise ValueError(f"({x.a1}, {x.a2}) is not a positive imaginary root")
    for (p, q) in sorted(x.support()):
        if not greedy_region_contains(x.b, x.c, x.a1, x.a2, p, q):
            return False, (p, q)
    return True, None


def check_divisibility_axiom(x: PointedElement) -> tuple[bool, tuple[str, int] | None]:
    """Verify the divisibility axiom on rows and columns of the grid.

    For each row q with a2 - c q > 0 the polynomial sum_i e(i, q) t^i in a
    central variable t must be divisible by
    prod_(j=1..a2-cq) (1 + v^(b (a2 - cq + 1 - 2j)) t), and symmetrically
    for columns p with a1 - b p > 0 (with the roles of b, c swapped).
    Division is performed exactly in t over the Laurent coefficients; the
    divisor factors need not be distinct.
    """
    if not is_imaginary_root(x.b, x.c, x.a1, x.a2):
        raise ValueError(f"({x.a1}, {x.a2}) is not a positive imaginary root")
    pmax = max([x.a2] + [p for p, _ in x.support()])
    qmax = max([x.a1] + [q for _, q in x.support()])
    for q in range(0, (x.a2 - 1) // x.c + 1):
        n = x.a2 - x.c * q
        row = [x.coefficient(p, q) for p in range(0, pmax + 1)]
        if not _divides_product(row, n, x.b):
            return False, ("row", q)
    for p in range(0, (x.a1 - 1) // x.b + 1):
        n = x.a1 - x.b * p
        column = [x.coefficient(p, q) for q in range(0, qmax + 1)]
        if not _divides_product(column, n, x.c):
            return False, ("column", p)
    return True, None


def _divides_product(coeffs: list[LaurentV], n: int, d: int) -> bool:
    """Exact divisibility of sum coeffs[i] t^i by prod_(j=1..n)(1 + v^(d(n+1-2j)) t)."""
    while coeffs and coeffs[-1].is_zero():
        coeffs.pop()
    if not coeffs:
        return True
    divisor = [LaurentV.one()]
    for j in range(1, n + 1):
        factor = LaurentV.monomial(d * (n + 1 - 2 * j))
        # multiply divisor by (1 + factor * t)
        shifted = [LaurentV.zero()] + [u * factor for u in divisor]
        divisor = [a + b for a, b in
                   zip(divisor + [LaurentV.zero()], shifted)]
    if len(coeffs) < len(divisor):
        return False
    # long division; the divisor is monic so every step is exact
    rem = list(coeffs)
    lead = divisor[-1]
    assert lead.is_one()
    for i in range(len(rem) - len(divisor), -1, -1):
        q = rem[i + len(divisor) - 1]
        if q.is_zero():
            continue
        for j, dj in enumerate(divisor):
            rem[i + j] = rem[i + j] - q * dj
    return all(r.is_zero() for r in rem)


def _require_bc(b: int, c: int) -> None:
    if b < 1 or c < 1:
        raise ValueError("b and c must be positive integers")
