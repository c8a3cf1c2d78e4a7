"""Quantum cluster variables and monomials via exchange-relation mutation.

The cluster variables X_m are defined recursively by

    X_(m+1) X_(m-1) = v^b X_m^b + 1   (m odd),
    X_(m+1) X_(m-1) = v^c X_m^c + 1   (m even),

starting from the initial pair (X_1, X_2).  Each X_m is computed here as
a normal-form element of the initial quantum torus by stepping the
relation upward for m >= 3 and downward for m <= 0, dividing exactly at
every step; a failed division would contradict the Laurent phenomenon
and is escalated as an internal error.

Standard monomials combine the four variables X_0 .. X_3:

    M[a1, a2] = v^(a1 a2) X_3^[a1]_+ X_1^[-a1]_+ X_2^[-a2]_+ X_0^[a2]_+ .

Computed variables are cached in memory keyed by (b, c, m), and
optionally on disk as one JSON document per key (written atomically, so
a cache directory can be shared by concurrent scan workers).
"""

from __future__ import annotations

import json
import os
import tempfile
from dataclasses import dataclass
from pathlib import Path

from .errors import InternalInconsistency, NotDivisible
from .greedy import to_pointed
from .laurent import LaurentV
from .qtorus import TorusElement, exact_divide, exact_divide_left


class ClusterCache:
    """Cache of cluster-variable expansions keyed by (b, c, m).

    Always caches in memory; when a directory is given, every entry is
    mirrored there as b{b}_c{c}_m{m}.json via write-temp-then-rename, and
    lookups fall back to the directory before recomputing.
    """

    def __init__(self, directory: str | os.PathLike | None = None):
        self._mem: dict[tuple[int, int, int], TorusElement] = {}
        self.directory = Path(directory) if directory is not None else None
        if self.directory is not None:
            self.directory.mkdir(parents=True, exist_ok=True)

    def _path(self, b: int, c: int, m: int) -> Path:
        return self.directory / f"b{b}_c{c}_m{m}.json"

    def get(self, b: int, c: int, m: int) -> TorusElement | None:
        hit = self._mem.get((b, c, m))
        if hit is not None:
            return hit
        if self.directory is not None:
            path = self._path(b, c, m)
            if path.exists():
                value = TorusElement.from_json(json.loads(path.read_text()))
                self._mem[(b, c, m)] = value
                return value
        return None

    def put(self, b: int, c: int, m: int, value: TorusElement) -> None:
        self._mem[(b, c, m)] = value
        if self.directory is not None:
            fd, tmp = tempfile.mkstemp(dir=self.directory, suffix=".tmp")
            try:
                with os.fdopen(fd, "w") as handle:
                    json.dump(value.to_json(), handle)
                os.replace(tmp, self._path(b, c, m))
            except BaseException:
                if os.path.exists(tmp):
                    os.unlink(tmp)
                raise

    def entry_count(self) -> int:
        if self.directory is not None:
            return len(list(self.directory.glob("b*_c*_m*.json")))
        return len(self._mem)

    def clear(self) -> int:
        """Drop all entries; returns how many were removed."""
        removed = self.entry_count()
        self._mem.clear()
        if self.directory is not None:
            for path in self.directory.glob("b*_c*_m*.json"):
                path.unlink()
        return removed

    def stats(self) -> dict:
        return {
            "entries": self.entry_count(),
            "directory": str(self.directory) if self.directory is not None else None,
        }


_shared_cache = ClusterCache()


def _exchange_exponent(pivot: int, b: int, c: int) -> int:
    return b if pivot % 2 else c


def cluster_variable(b: int, c: int, m: int,
                     cache: ClusterCache | None = None) -> TorusElement:
    """The initial-torus Laurent expansion of the cluster variable X_m."""
    if b < 1 or c < 1:
        raise ValueError("b and c must be positive integers")
    cache = cache if cache is not None else _shared_cache
    hit = cache.get(b, c, m)
    if hit is not None:
        return hit
    if m in (1, 2):
        value = TorusElement.monomial(1, 0) if m == 1 else TorusElement.monomial(0, 1)
        cache.put(b, c, m, value)
        return value
    if m >= 3:
        prev, anchor = cluster_variable(b, c, m - 1, cache), cluster_variable(b, c, m - 2, cache)
        e = _exchange_exponent(m - 1, b, c)
        numerator = prev ** e * LaurentV.monomial(e) + TorusElement.one()
        try:
            value = exact_divide(numerator, anchor)
        except NotDivisible as exc:
            raise InternalInconsistency(
                f"mutation to X_{m} failed to divide; this contradicts "
                f"the Laurent phenomenon") from exc
    else:
        nxt, anchor = cluster_variable(b, c, m + 1, cache), cluster_variable(b, c, m + 2, cache)
        e = _exchange_exponent(m + 1, b, c)
        numerator = nxt ** e * LaurentV.monomial(e) + TorusElement.one()
        try:
            value = exact_divide_left(numerator, anchor)
        except NotDivisible as exc:
            raise InternalInconsistency(
                f"mutation to X_{m} failed to divide; this contradicts "
                f"the Laurent phenomenon") from exc
    cache.put(b, c, m, value)
    return value


@dataclass(frozen=True)
class ClusterPair:
    """A cluster {X_m, X_(m+1)} with both variables in initial coordinates."""

    m: int
    first: TorusElement
    second: TorusElement


def cluster_pair(b: int, c: int, m: int, cache: ClusterCache | None = None) -> ClusterPair:
    """The cluster at index m, validated to quasi-commute:
    X_(m+1) X_m = v^2 X_m X_(m+1)."""
    first = cluster_variable(b, c, m, cache)
    second = cluster_variable(b, c, m + 1, cache)
    if second * first != first * second * LaurentV.monomial(2):
        raise InternalInconsistency(f"cluster ({m}, {m + 1}) does not quasi-commute")
    return ClusterPair(m, first, second)


def quantum_cluster_monomial(b: int, c: int, m: int, a1: int, a2: int,
                             cache: ClusterCache | None = None) -> TorusElement:
    """The bar-invariant cluster monomial v^(a1 a2) X_m^a1 X_(m+1)^a2
    expanded in the initial torus."""
    if a1 < 0 or a2 < 0:
        raise ValueError("cluster monomial exponents must be nonnegative")
    first = cluster_variable(b, c, m, cache)
    second = cluster_variable(b, c, m + 1, cache)
    return first ** a1 * second ** a2 * LaurentV.monomial(a1 * a2)


def standard_monomial(b: int, c: int, a1: int, a2: int,
                      cache: ClusterCache | None = None) -> TorusElement:
    """The standard monomial M[a1, a2], multiplied in the written order."""
    result = TorusElement.monomial(0, 0, LaurentV.monomial(a1 * a2))
    if a1 > 0:
        result = result * cluster_variable(b, c, 3, cache) ** a1
    elif a1 < 0:
        result = result * TorusElement.monomial(-a1, 0)
    if a2 < 0:
        result = result * TorusElement.monomial(0, -a2)
    elif a2 > 0:
        result = result * cluster_variable(b, c, 0, cache) ** a2
    return result


def cluster_variable_pointing(b: int, c: int, m: int,
                              cache: ClusterCache | None = None) -> tuple[int, int]:
    """The pointing vector of X_m (its denominator vector in the initial
    cluster)."""
    return to_pointed(cluster_variable(b, c, m, cache), b, c).pointing


def find_cluster_monomial(b: int, c: int, a1: int, a2: int,
                          m_range: range = range(-6, 7),
                          cache: ClusterCache | None = None
                          ) -> tuple[int, int, int] | None:
    """Locate (m, s, t) with the cluster monomial X_m^s X_(m+1)^t pointed
    at (a1, a2), s, t >= 0, searching the given cluster indices.

    Pointing vectors add under products, so the search solves the 2x2
    integer system s d_m + t d_(m+1) = (a1, a2) for each candidate m.
    Returns None when no cluster in range covers the vector.
    """
    for m in m_range:
        d1 = cluster_variable_pointing(b, c, m, cache)
        d2 = cluster_variable_pointing(b, c, m + 1, cache)
        det = d1[0] * d2[1] - d1[1] * d2[0]
        if det == 0:
            continue
        s_num = a1 * d2[1] - a2 * d2[0]
        t_num = d1[0] * a2 - d1[1] * a1
        if s_num % det or t_num % det:
            continue
        s, t = s_num // det, t_num // det
        if s >= 0 and t >= 0:
            return m, s, t
    return None
