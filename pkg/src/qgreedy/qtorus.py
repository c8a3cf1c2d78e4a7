"""The rank 2 quantum torus: noncommutative Laurent polynomials in X1, X2.

Elements are kept in the normal form  sum c_ij(v) X1^i X2^j  with all X1
powers to the left, using the commutation rule X2 X1 = v^2 X1 X2, i.e.

    (X1^a X2^b) (X1^c X2^d) = v^(2bc) X1^(a+c) X2^(b+d).

The same data type also represents elements written in any other cluster
{X_m, X_(m+1)}: every neighboring pair quasi-commutes with the same factor
v^2, so only the interpretation of the two variables changes.  The
expand_in_cluster routine moves an element between clusters one step at a
time by substituting the exchange-relation expansion of the departing
variable and dividing out the power used to clear its negative exponents.
"""

from __future__ import annotations

import heapq
from typing import Iterable, Mapping

from .errors import NotDivisible, NotLaurent
from .laurent import LaurentV

ExponentPair = tuple[int, int]


def _order_key(exponents: ExponentPair) -> tuple[int, int]:
    # total monomial order used for division: X2-degree dominant, then X1
    return (exponents[1], exponents[0])


class TorusElement:
    """An element of the quantum torus in normal form.

    Immutable; equality is equality of the normal-form term maps.

    >>> X1, X2 = TorusElement.monomial(1, 0), TorusElement.monomial(0, 1)
    >>> X2 * X1
    TorusElement('(v^2) X1 X2')
    """

    __slots__ = ("_t",)

    def __init__(
        self,
        terms: Mapping[ExponentPair, LaurentV | int]
        | Iterable[tuple[ExponentPair, LaurentV | int]] = (),
    ):
        t: dict[ExponentPair, LaurentV] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for key, c in items:
            c = LaurentV.coerce(c)
            if key in t:
                c = t[key] + c
            if c:
                t[tuple(key)] = c
            elif tuple(key) in t:
                del t[tuple(key)]
        self._t = t

    @classmethod
    def zero(cls) -> TorusElement:
        return cls()

    @classmethod
    def one(cls) -> TorusElement:
        return cls({(0, 0): 1})

    @classmethod
    def monomial(cls, i: int, j: int, coefficient: LaurentV | int = 1) -> TorusElement:
        return cls({(i, j): coefficient})

    @classmethod
    def pointed_monomial(cls, a1: int, a2: int) -> TorusElement:
        """The bar-invariant monomial v^(a1 a2) X1^a1 X2^a2."""
        return cls({(a1, a2): LaurentV.monomial(a1 * a2)})

    # -- structure -----------------------------------------------------------

    def terms(self) -> list[tuple[ExponentPair, LaurentV]]:
        """((i, j), coefficient) pairs sorted lexicographically by (i, j)."""
        return sorted(self._t.items())

    def support(self) -> set[ExponentPair]:
        return set(self._t)

    def coefficient(self, i: int, j: int) -> LaurentV:
        return self._t.get((i, j), LaurentV.zero())

    def is_zero(self) -> bool:
        return not self._t

    def term_count(self) -> int:
        return len(self._t)

    def __bool__(self) -> bool:
        return bool(self._t)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TorusElement):
            return NotImplemented
        return self._t == other._t

    def __hash__(self) -> int:
        return hash(frozenset(self._t.items()))

    # -- additive structure ----------------------------------------------------

    def __add__(self, other: TorusElement) -> TorusElement:
        if not isinstance(other, TorusElement):
            return NotImplemented
        t = dict(self._t)
        for key, c in other._t.items():
            s = t.get(key, LaurentV.zero()) + c
            if s:
                t[key] = s
            elif key in t:
                del t[key]
        out = TorusElement.__new__(TorusElement)
        out._t = t
        return out

    def __neg__(self) -> TorusElement:
        out = TorusElement.__new__(TorusElement)
        out._t = {key: -c for key, c in self._t.items()}
        return out

    def __sub__(self, other: TorusElement) -> TorusElement:
        return self + (-other)

    # -- multiplicative structure ------------------------------------------------

    def __mul__(self, other: TorusElement | LaurentV | int) -> TorusElement:
        if isinstance(other, (LaurentV, int)):
            c0 = LaurentV.coerce(other)
            if not c0:
                return TorusElement.zero()
            out = TorusElement.__new__(TorusElement)
            out._t = {key: c * c0 for key, c in self._t.items()}
            return out
        if not isinstance(other, TorusElement):
            return NotImplemented
        t: dict[ExponentPair, LaurentV] = {}
        for (i1, j1), c1 in self._t.items():
            for (i2, j2), c2 in other._t.items():
                key = (i1 + i2, j1 + j2)
                c = c1._mul_shifted(c2, 2 * j1 * i2)
                if key in t:
                    c = t[key] + c
                if c:
                    t[key] = c
                elif key in t:
                    del t[key]
        out = TorusElement.__new__(TorusElement)
        out._t = t
        return out

    def __rmul__(self, other: LaurentV | int) -> TorusElement:
        # scalars are central, so left and right multiplication agree
        if isinstance(other, (LaurentV, int)):
            return self * other
        return NotImplemented

    def __pow__(self, n: int) -> TorusElement:
        if n < 0:
            if len(self._t) != 1:
                raise ValueError("only monomials are invertible in the torus")
            ((i, j), c) = next(iter(self._t.items()))
            if not c.is_unit_monomial():
                raise ValueError("monomial coefficient is not a unit")
            # inverse of c X1^i X2^j is c^-1 v^(2ij) X1^-i X2^-j
            inv = TorusElement.monomial(-i, -j, (c ** -1).shift(2 * i * j))
            return inv ** (-n)
        result = TorusElement.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- bar-involution --------------------------------------------------------

    def bar(self) -> TorusElement:
        """The bar-involution: v -> v^-1 extended as an anti-automorphism.

        On a normal-form term this reads  bar(f X1^i X2^j) = bar(f) v^(2ij)
        X1^i X2^j.
        """
        out = TorusElement.__new__(TorusElement)
        out._t = {(i, j): c.bar().shift(2 * i * j) for (i, j), c in self._t.items()}
        return out

    def is_bar_invariant(self) -> bool:
        return self.bar() == self

    # -- serialization ------------------------------------------------------------

    def to_json(self) -> dict:
        """{"terms": [[i, j, <LaurentV JSON>], ...]} sorted by (i, j)."""
        return {"terms": [[i, j, c.to_json()] for (i, j), c in self.terms()]}

    @classmethod
    def from_json(cls, data: dict) -> TorusElement:
        return cls({(int(i), int(j)): LaurentV.from_json(c) for i, j, c in data["terms"]})

    # -- formatting ------------------------------------------------------------

    @staticmethod
    def _format_term(i: int, j: int, c: LaurentV) -> str:
        mono = " ".join(
            (name if e == 1 else f"{name}^{e}")
            for name, e in (("X1", i), ("X2", j))
            if e
        )
        coeff = str(c)
        if not mono:
            return f"({coeff})" if ("+" in coeff or " - " in coeff) else coeff
        if c.is_one():
            return mono
        return f"({coeff}) {mono}"

    def __str__(self) -> str:
        if not self._t:
            return "0"
        return " + ".join(self._format_term(i, j, c) for (i, j), c in self.terms())

    def latex(self, names: tuple[str, str] = ("X_1", "X_2")) -> str:
        if not self._t:
            return "0"
        parts = []
        for (i, j), c in self.terms():
            mono = "".join(
                (name if e == 1 else f"{name}^{{{e}}}")
                for name, e in zip(names, (i, j))
                if e
            )
            if not mono:
                parts.append(c.latex() if len(c.terms()) == 1 else f"({c.latex()})")
            elif c.is_one():
                parts.append(mono)
            else:
                parts.append(f"({c.latex()}){mono}")
        return "+".join(parts)

    def __repr__(self) -> str:
        return f"TorusElement('{self}')"


def exact_divide(f: TorusElement, g: TorusElement) -> TorusElement:
    """The right quotient q with q * g == f, when it exists in the torus.

    Cancels against the term of g that is extremal in the (X2-degree, then
    X1-degree) order; each step needs the Laurent coefficient division to
    be exact.  Raises NotDivisible when no torus quotient exists.

    The remainder is kept as plain nested dicts (monomial -> v-exponent ->
    integer) and the extremal monomial is tracked with a lazy heap; far
    cluster expansions make both the term counts and the coefficient
    supports large enough for this to matter.
    """
    if g.is_zero():
        raise ZeroDivisionError("division by zero in the quantum torus")
    if f.is_zero():
        return TorusElement.zero()
    g_terms = [(key, coeff._c) for key, coeff in g._t.items()]
    g_lead = max(g._t, key=_order_key)
    g_lead_single = (len(g._t[g_lead]._c) == 1)
    g_min = min(g._t, key=_order_key)
    f_min = min(f._t, key=_order_key)
    # in an exact quotient every emitted exponent is >= min(f) - min(g)
    floor_key = _order_key((f_min[0] - g_min[0], f_min[1] - g_min[1]))
    remainder: dict[ExponentPair, dict[int, int]] = {
        key: dict(coeff._c) for key, coeff in f._t.items()}
    heap = [(-j, -i) for (i, j) in remainder]
    heapq.heapify(heap)
    quotient: dict[ExponentPair, dict[int, int]] = {}
    while remainder:
        nj, ni = heapq.heappop(heap)
        r_lead = (-ni, -nj)
        if r_lead not in remainder:
            continue
        mu = (r_lead[0] - g_lead[0], r_lead[1] - g_lead[1])
        if _order_key(mu) < floor_key:
            raise NotDivisible(f"remainder fell below the quotient range at {r_lead}")
        head = remainder[r_lead]
        shift = 2 * mu[1] * g_lead[0]
        if g_lead_single:
            ((k0, a0),) = g._t[g_lead]._c.items()
            k0 += shift
            q_coeff: dict[int, int] = {}
            for k, a in head.items():
                if a % a0:
                    raise NotDivisible(f"coefficient division failed at {r_lead}")
                q_coeff[k - k0] = a // a0
        else:
            divided = LaurentV(head).divide_exact(g._t[g_lead].shift(shift))
            if divided is None:
                raise NotDivisible(f"coefficient division failed at {r_lead}")
            q_coeff = dict(divided._c)
        quotient[mu] = q_coeff
        for (gi, gj), g_coeff in g_terms:
            key = (mu[0] + gi, mu[1] + gj)
            target = remainder.get(key)
            if target is None:
                target = remainder[key] = {}
                heapq.heappush(heap, (-key[1], -key[0]))
            twist = 2 * mu[1] * gi
            fetch = target.get
            for gk, ga in g_coeff.items():
                gk += twist
                for k, a in q_coeff.items():
                    kk = k + gk
                    s = fetch(kk, 0) - a * ga
                    if s:
                        target[kk] = s
                    else:
                        del target[kk]
            if not target:
                del remainder[key]
    out = TorusElement.__new__(TorusElement)
    out._t = {key: LaurentV(coeff) for key, coeff in quotient.items()}
    return out


def exact_divide_left(f: TorusElement, g: TorusElement) -> TorusElement:
    """The left quotient q with g * q == f.

    Realized through the bar anti-automorphism, which swaps the two sides.
    """
    return exact_divide(f.bar(), g.bar()).bar()


def _exchange_exponent(pivot: int, b: int, c: int) -> int:
    # X_(m+1) X_(m-1) = v^b X_m^b + 1 for odd pivot m, v^c X_m^c + 1 for even
    return b if pivot % 2 else c


def expand_in_cluster(f: TorusElement, m: int, b: int, c: int) -> TorusElement:
    """Re-express f, given in the initial cluster, in the cluster {X_m, X_(m+1)}.

    Steps one cluster at a time.  Moving up from cluster k, the departing
    variable X_k becomes  u = v^-e Z1^e Z2^-1 + Z2^-1  in the new
    coordinates (Z1, Z2) = (X_(k+1), X_(k+2)), with e the exchange
    exponent at pivot k+1, while the kept X_(k+1) becomes Z1.  Negative
    powers of X_k are cleared by a right factor X_k^N before substituting
    (Horner evaluation in u), and the result is divided back by u once per
    cleared power.  Moving down is symmetric.  Raises NotLaurent when a
    division fails, i.e. when f does not lie in the target torus.
    """
    if b < 1 or c < 1:
        raise ValueError("b and c must be positive")
    current = 1
    g = f
    while current != m and not g.is_zero():
        up = current < m
        pivot = current + 1 if up else current
        e = _exchange_exponent(pivot, b, c)
        if up:
            u = TorusElement({(e, -1): LaurentV.monomial(-e), (0, -1): 1})
            axis = 0
        else:
            u = TorusElement({(-1, e): LaurentV.monomial(-e), (-1, 0): 1})
            axis = 1
        clear = max(0, max(-key[axis] for key in g.support()))
        cleared = g * TorusElement.monomial(clear if axis == 0 else 0,
                                            0 if axis == 0 else clear)
        # group by the departing exponent; the kept variable maps to the
        # complementary slot of the new cluster
        layers: dict[int, dict[ExponentPair, LaurentV]] = {}
        for (i, j), coeff in cleared._t.items():
            departing, kept = (i, (j, 0)) if axis == 0 else (j, (0, i))
            layers.setdefault(departing, {})[kept] = coeff
        top = max(layers)
        acc = TorusElement(layers[top])
        for level in range(top - 1, -1, -1):
            layer = TorusElement(layers.get(level, {}))
            acc = (u * acc if axis == 0 else acc * u) + layer
        for _ in range(clear):
            try:
                acc = exact_divide(acc, u)
            except NotDivisible as exc:
                raise NotLaurent(
                    f"element is not Laurent in cluster {current + (1 if up else -1)}"
                ) from exc
        g = acc
        current += 1 if up else -1
    return g
