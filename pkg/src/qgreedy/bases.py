"""Basis conversions and conjecture-evidence scans.

Three bases of A_v(b, c) meet here.  Greedy elements expand unitriangularly
in standard monomials,

    X[a1, a2] = M[a1, a2] + sum_(a' < a)  q^a_a' M[a'],

where a' < a means strictly smaller in both coordinates.  The triangular
basis element C[a1, a2] is the unique bar-invariant element congruent to
M[a1, a2] modulo the lattice L = (+) v Z[v] M[.]; its expansion

    C[a1, a2] = X[a1, a2] + sum_(a' < a)  r^a_a' X[a']

has bar-invariant coefficients r, so each r is determined by its
nonpositive part, which satisfies the recursion

    [r^a_a'']_<=0 = - sum_(a' > a'')  [r^a_a' q^a'_a'']_<=0

with the diagonal convention r^a_a = 1 seeding the sum.  The recursion
consumes the q-table of every index reachable through iterated standard
expansions; this module computes that whole closure.

The scan harness runs selected per-vector checks (positivity of greedy
grids, the support and divisibility axioms, tie-line branch consistency,
positivity of r-coefficients, the triangular support conjecture) over a
square grid of pointing vectors and collects witnesses into a report.
Failures of the conjectural properties are data, not errors.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .clusters import ClusterCache, standard_monomial
from .errors import NonTermination, NotLaurent, OrderViolation, P1Violation, P2Violation
from .errors import InternalInconsistency
from .greedy import (
    PointedElement,
    check_divisibility_axiom,
    check_support_axiom,
    is_imaginary_root,
    quantum_greedy,
    to_pointed,
)
from .laurent import LaurentV, symmetrize_from_nonpositive
from .qtorus import TorusElement, expand_in_cluster

Index = tuple[int, int]

SCAN_CHECKS = (
    "greedy-positivity",
    "divisibility",
    "support",
    "tie-consistency",
    "r-positivity",
    "triangular-support",
)


@dataclass
class BasisExpansion:
    """A finite expansion of a pointed element in a basis.

    target names the basis ("standard" for M[.], "greedy" for X[.]); the
    leading coefficient at the pointing vector is 1 and every other index
    is strictly smaller in both coordinates.
    """

    target: str
    pointing: Index
    coeffs: dict[Index, LaurentV]

    def validate(self) -> BasisExpansion:
        lead = self.coeffs.get(self.pointing)
        if lead != LaurentV.one():
            raise OrderViolation(
                f"{self.target} expansion of {self.pointing} has leading coefficient {lead}")
        for (i, j) in self.coeffs:
            if (i, j) != self.pointing and not (i < self.pointing[0] and j < self.pointing[1]):
                raise OrderViolation(
                    f"{self.target} expansion of {self.pointing} has index ({i}, {j}) "
                    f"outside the strict componentwise order")
        return self

    def coefficient(self, a1: int, a2: int) -> LaurentV:
        return self.coeffs.get((a1, a2), LaurentV.zero())

    def to_json(self) -> dict:
        return {
            "target": self.target,
            "pointing": list(self.pointing),
            "coeffs": [[i, j, coeff.to_json()] for (i, j), coeff in sorted(self.coeffs.items())],
        }

    @classmethod
    def from_json(cls, data: dict) -> BasisExpansion:
        coeffs = {(int(i), int(j)): LaurentV.from_json(c) for i, j, c in data["coeffs"]}
        return cls(data["target"], tuple(data["pointing"]), coeffs)


def expand_in_standard_basis(f: TorusElement, b: int, c: int,
                             cache: ClusterCache | None = None) -> dict[Index, LaurentV]:
    """Expansion coefficients of f in the standard monomial basis.

    Peels the exponent that is minimal under (i + j, then i): that term is
    the corner of exactly one standard monomial, whose multiple is
    subtracted, strictly raising the minimal key.  The iteration cap
    guards against inputs outside the span (raising NonTermination).
    """
    coeffs: dict[Index, LaurentV] = {}
    remainder = f
    limit = 4 * max(1, f.term_count())
    steps = 0
    while not remainder.is_zero():
        steps += 1
        if steps > limit:
            raise NonTermination(
                f"standard expansion did not terminate within {limit} steps")
        d1, d2 = min(remainder.support(), key=lambda t: (t[0] + t[1], t[0]))
        kappa = remainder.coefficient(d1, d2).shift(-d1 * d2)
        coeffs[(-d1, -d2)] = kappa
        remainder = remainder - standard_monomial(b, c, -d1, -d2, cache) * kappa
    return coeffs


_q_memo: dict[tuple[int, int, int, int], BasisExpansion] = {}


def greedy_to_standard_q(b: int, c: int, a1: int, a2: int,
                         cache: ClusterCache | None = None) -> BasisExpansion:
    """The q-table: expansion of the greedy element X[a1, a2] in standard
    monomials, validated to be unitriangular."""
    key = (b, c, a1, a2)
    hit = _q_memo.get(key)
    if hit is not None:
        return hit
    element = quantum_greedy(b, c, a1, a2).to_torus()
    coeffs = expand_in_standard_basis(element, b, c, cache)
    expansion = BasisExpansion("standard", (a1, a2), coeffs).validate()
    _q_memo[key] = expansion
    return expansion


def _q_closure(b: int, c: int, a1: int, a2: int,
               cache: ClusterCache | None) -> dict[Index, BasisExpansion]:
    """q-tables for (a1, a2) and every index reachable through iterated
    standard expansions."""
    tables: dict[Index, BasisExpansion] = {}
    pending = [(a1, a2)]
    while pending:
        index = pending.pop()
        if index in tables:
            continue
        tables[index] = greedy_to_standard_q(b, c, index[0], index[1], cache)
        for lower in tables[index].coeffs:
            if lower != index and lower not in tables:
                pending.append(lower)
    return tables


def triangular_r_coeffs(b: int, c: int, a1: int, a2: int,
                        cache: ClusterCache | None = None) -> BasisExpansion:
    """The r-table: expansion coefficients of the triangular basis element
    C[a1, a2] over the greedy basis.

    Indices below the pointing vector are processed in decreasing order of
    coordinate sum (ties by decreasing first coordinate); for each, the
    nonpositive part of r is accumulated from all already-known strictly
    larger indices and the full bar-invariant r is recovered from it.
    """
    target = (a1, a2)
    tables = _q_closure(b, c, a1, a2, cache)
    known: dict[Index, LaurentV] = {target: LaurentV.one()}
    candidates = sorted(
        (index for index in tables if index != target),
        key=lambda t: (-(t[0] + t[1]), -t[0]),
    )
    for index in candidates:
        acc = LaurentV.zero()
        for upper, r in known.items():
            if upper[0] > index[0] and upper[1] > index[1]:
                q_coeff = tables[upper].coeffs.get(index)
                if q_coeff is not None:
                    acc = acc + (r * q_coeff).nonpositive_part()
        r = symmetrize_from_nonpositive(-acc)
        if r:
            known[index] = r
    return BasisExpansion("greedy", target, known).validate()


def triangular_element(b: int, c: int, a1: int, a2: int,
                       cache: ClusterCache | None = None) -> TorusElement:
    """The triangular basis element C[a1, a2] in the initial torus.

    The defining properties are re-verified on the result: bar-invariance,
    and congruence to the standard monomial modulo the v-positive lattice.
    Violations are raised as hard errors.
    """
    expansion = triangular_r_coeffs(b, c, a1, a2, cache)
    total = TorusElement.zero()
    for index, r in expansion.coeffs.items():
        total = total + quantum_greedy(b, c, index[0], index[1]).to_torus() * r
    if not total.is_bar_invariant():
        raise P1Violation(f"C[{a1}, {a2}] is not bar-invariant")
    standard = expand_in_standard_basis(total, b, c, cache)
    for index, coeff in standard.items():
        if index == (a1, a2):
            if coeff != LaurentV.one():
                raise P2Violation(
                    f"C[{a1}, {a2}] has leading standard coefficient {coeff}")
        elif coeff and coeff.valuation() < 1:
            raise P2Violation(
                f"C[{a1}, {a2}] - M[{a1}, {a2}] has coefficient {coeff} at "
                f"{index} outside vZ[v]")
    return total


@dataclass
class TriangularSupportVerdict:
    """Outcome of comparing the support of C[a1, a2] with the conjectured
    region b p^2 + b c p q + c q^2 <= c a1 q + b a2 p."""

    a: Index
    agreements: int
    missing: list[Index]   # inequality holds but the coefficient vanishes
    extra: list[Index]     # coefficient nonzero but the inequality fails

    @property
    def holds(self) -> bool:
        return not self.missing and not self.extra


def check_triangular_support_conjecture(b: int, c: int, a1: int, a2: int,
                                        cache: ClusterCache | None = None
                                        ) -> TriangularSupportVerdict:
    """Compare the actual support of C[a1, a2] against the conjectured
    inequality on the rectangle 0 <= p <= a2, 0 <= q <= a1."""
    if not is_imaginary_root(b, c, a1, a2):
        raise ValueError(f"({a1}, {a2}) is not a positive imaginary root")
    pointed = to_pointed(triangular_element(b, c, a1, a2, cache), b, c)
    agreements = 0
    missing: list[Index] = []
    extra: list[Index] = []
    for p in range(0, a2 + 1):
        for q in range(0, a1 + 1):
            predicted = (b * p * p + b * c * p * q + c * q * q
                         <= c * a1 * q + b * a2 * p)
            actual = bool(pointed.coefficient(p, q))
            if predicted == actual:
                agreements += 1
            elif predicted:
                missing.append((p, q))
            else:
                extra.append((p, q))
    for (p, q) in sorted(pointed.support()):
        if p > a2 or q > a1:
            extra.append((p, q))
    return TriangularSupportVerdict((a1, a2), agreements, missing, extra)


@dataclass
class ScanResult:
    a: Index
    check: str
    passed: bool
    witness: dict | None = None

    def to_json(self) -> dict:
        return {"a": list(self.a), "check": self.check,
                "pass": self.passed, "witness": self.witness}

    @classmethod
    def from_json(cls, data: dict) -> ScanResult:
        return cls(tuple(data["a"]), data["check"], data["pass"], data["witness"])


@dataclass
class ScanReport:
    b: int
    c: int
    bound: int
    checks: list[str]
    results: list[ScanResult]
    clusters_covered: list[int]

    def failures(self) -> list[ScanResult]:
        return [r for r in self.results if not r.passed]

    def failing_vectors(self, check: str) -> set[Index]:
        return {r.a for r in self.results if r.check == check and not r.passed}

    def to_json(self) -> dict:
        return {
            "b": self.b,
            "c": self.c,
            "bound": self.bound,
            "checks": list(self.checks),
            "results": [r.to_json() for r in self.results],
            "clusters_covered": list(self.clusters_covered),
        }

    @classmethod
    def from_json(cls, data: dict) -> ScanReport:
        return cls(
            int(data["b"]), int(data["c"]), int(data["bound"]),
            list(data["checks"]),
            [ScanResult.from_json(r) for r in data["results"]],
            list(data["clusters_covered"]),
        )


def _positivity_results(b, c, a1, a2, cluster_range, cache) -> list[ScanResult]:
    element = quantum_greedy(b, c, a1, a2)
    ok, bad = element.is_positive()
    results = []
    if ok:
        note = {"bound_doublings": element.bound_doublings} if element.bound_doublings else None
        results.append(ScanResult((a1, a2), "greedy-positivity", True, note))
    else:
        p, q, coeff = bad
        results.append(ScanResult((a1, a2), "greedy-positivity", False,
                                  {"p": p, "q": q, "coefficient": coeff.to_json()}))
    if cluster_range > 0:
        torus = element.to_torus()
        for m in range(-cluster_range, cluster_range + 1):
            if m == 1:
                continue
            try:
                other = expand_in_cluster(torus, m, b, c)
            except NotLaurent:
                results.append(ScanResult((a1, a2), "greedy-positivity", False,
                                          {"cluster": m, "error": "not Laurent"}))
                continue
            offending = next(
                ((key, coeff) for key, coeff in other.terms() if not coeff.is_nonnegative()),
                None)
            if offending is not None:
                (i, j), coeff = offending
                results.append(ScanResult((a1, a2), "greedy-positivity", False,
                                          {"cluster": m, "exponents": [i, j],
                                           "coefficient": coeff.to_json()}))
    return results


def _cell_results(b, c, a1, a2, checks, cluster_range, cache) -> list[ScanResult]:
    results: list[ScanResult] = []
    imaginary = is_imaginary_root(b, c, a1, a2)
    for check in checks:
        if check == "tie-consistency":
            try:
                element = quantum_greedy(b, c, a1, a2)
            except InternalInconsistency as exc:
                results.append(ScanResult((a1, a2), check, False, {"error": str(exc)}))
            else:
                note = ({"bound_doublings": element.bound_doublings}
                        if element.bound_doublings else None)
                results.append(ScanResult((a1, a2), check, True, note))
        elif check == "greedy-positivity":
            results.extend(_positivity_results(b, c, a1, a2, cluster_range, cache))
        elif check == "support" and imaginary:
            ok, witness = check_support_axiom(quantum_greedy(b, c, a1, a2))
            results.append(ScanResult(
                (a1, a2), check, ok,
                None if ok else {"p": witness[0], "q": witness[1]}))
        elif check == "divisibility" and imaginary:
            ok, witness = check_divisibility_axiom(quantum_greedy(b, c, a1, a2))
            results.append(ScanResult(
                (a1, a2), check, ok,
                None if ok else {"axis": witness[0], "index": witness[1]}))
        elif check == "r-positivity":
            expansion = triangular_r_coeffs(b, c, a1, a2, cache)
            offending = next(
                ((index, coeff) for index, coeff in sorted(expansion.coeffs.items())
                 if not coeff.is_nonnegative()),
                None)
            if offending is None:
                results.append(ScanResult((a1, a2), check, True))
            else:
                index, coeff = offending
                results.append(ScanResult((a1, a2), check, False,
                                          {"index": list(index),
                                           "coefficient": coeff.to_json()}))
        elif check == "triangular-support" and imaginary:
            verdict = check_triangular_support_conjecture(b, c, a1, a2, cache)
            results.append(ScanResult(
                (a1, a2), check, verdict.holds,
                None if verdict.holds else
                {"missing": [list(t) for t in verdict.missing],
                 "extra": [list(t) for t in verdict.extra]}))
    return results


def _scan_cell(args) -> list[ScanResult]:
    b, c, a1, a2, checks, cluster_range, cache_dir = args
    cache = ClusterCache(cache_dir)
    return _cell_results(b, c, a1, a2, checks, cluster_range, cache)


def scan(b: int, c: int, bound: int, checks, cluster_range: int = 0,
         jobs: int = 1, cache_dir: str | None = None) -> ScanReport:
    """Run the selected checks on all pointing vectors 0 <= a1, a2 <= bound.

    Cells are independent; with jobs > 1 they are distributed over a
    process pool (sharing only the on-disk cluster cache, when a directory
    is given).  The report is sorted by (a1, a2) regardless of worker
    scheduling.  Individual check failures become report rows, never
    exceptions.
    """
    if bound < 0:
        raise ValueError("bound must be nonnegative")
    checks = list(dict.fromkeys(checks))
    unknown = [ch for ch in checks if ch not in SCAN_CHECKS]
    if unknown:
        raise ValueError(f"unknown checks: {', '.join(unknown)}")
    cells = [(a1, a2) for a1 in range(bound + 1) for a2 in range(bound + 1)]
    if jobs == 1:
        cache = ClusterCache(cache_dir)
        rows = [row for (a1, a2) in cells
                for row in _cell_results(b, c, a1, a2, checks, cluster_range, cache)]
    else:
        args = [(b, c, a1, a2, tuple(checks), cluster_range, cache_dir)
                for (a1, a2) in cells]
        with ProcessPoolExecutor(max_workers=jobs or os.cpu_count()) as pool:
            rows = [row for sub in pool.map(_scan_cell, args) for row in sub]
    rows.sort(key=lambda r: (r.a, r.check))
    covered = [1] if cluster_range == 0 else sorted(
        set(range(-cluster_range, cluster_range + 1)) | {1})
    return ScanReport(b, c, bound, checks, rows, covered)
