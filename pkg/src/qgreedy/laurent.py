"""Exact arithmetic in the ring of integer Laurent polynomials in v.

This ring is the coefficient ring of everything else in the package.  An
element is stored as a sparse map from exponent to (arbitrary precision)
integer coefficient, with zero coefficients never stored, so structural
equality is ring equality.

Besides the ring operations the module provides the bar-involution
v -> v^-1, the truncation to exponents <= 0 together with its inverse on
bar-invariant elements, and the bar-invariant quantum numbers and quantum
binomial coefficients

    [n]_w       = w^(n-1) + w^(n-3) + ... + w^(-n+1),
    [n "choose" k]_w = [n]_w [n-1]_w ... [n-k+1]_w / ([k]_w ... [1]_w),

evaluated at w = v^d.  The binomial is always a Laurent polynomial, also
for negative n; the division by the quantum factorial is performed exactly
and checked at runtime.
"""

from __future__ import annotations

from typing import Iterable, Mapping


class LaurentV:
    """A Laurent polynomial in v with integer coefficients.

    Values are immutable; every operation returns a new object.

    >>> v = LaurentV.monomial(1)
    >>> (v + 1) + (v**-1 - 1)
    LaurentV('v + v^-1')
    >>> (v - v**-1) * (v + v**-1)
    LaurentV('v^2 - v^-2')
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        c: dict[int, int] = {}
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        for k, a in items:
            if a:
                c[k] = c.get(k, 0) + a
                if not c[k]:
                    del c[k]
        self._c = c

    @classmethod
    def zero(cls) -> LaurentV:
        return cls()

    @classmethod
    def one(cls) -> LaurentV:
        return cls({0: 1})

    @classmethod
    def monomial(cls, exponent: int, coefficient: int = 1) -> LaurentV:
        """The single term coefficient * v^exponent."""
        return cls({exponent: coefficient})

    @classmethod
    def coerce(cls, x: int | LaurentV) -> LaurentV:
        if isinstance(x, LaurentV):
            return x
        if isinstance(x, int):
            return cls({0: x})
        raise TypeError(f"cannot interpret {x!r} as a Laurent polynomial")

    # -- structure ---------------------------------------------------------

    def terms(self) -> list[tuple[int, int]]:
        """(exponent, coefficient) pairs, ascending by exponent."""
        return sorted(self._c.items())

    def coefficient(self, exponent: int) -> int:
        return self._c.get(exponent, 0)

    def is_zero(self) -> bool:
        return not self._c

    def is_one(self) -> bool:
        return self._c == {0: 1}

    def is_unit_monomial(self) -> bool:
        """True for +-v^k."""
        return len(self._c) == 1 and abs(next(iter(self._c.values()))) == 1

    def is_nonnegative(self) -> bool:
        """True when all coefficients are >= 0."""
        return all(a >= 0 for a in self._c.values())

    def degree(self) -> int:
        if not self._c:
            raise ValueError("the zero polynomial has no degree")
        return max(self._c)

    def valuation(self) -> int:
        if not self._c:
            raise ValueError("the zero polynomial has no valuation")
        return min(self._c)

    def __bool__(self) -> bool:
        return bool(self._c)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = LaurentV.coerce(other)
        if not isinstance(other, LaurentV):
            return NotImplemented
        return self._c == other._c

    def __hash__(self) -> int:
        return hash(tuple(sorted(self._c.items())))

    # -- ring operations ---------------------------------------------------

    def __add__(self, other: int | LaurentV) -> LaurentV:
        other = LaurentV.coerce(other)
        c = dict(self._c)
        for k, a in other._c.items():
            s = c.get(k, 0) + a
            if s:
                c[k] = s
            elif k in c:
                del c[k]
        out = LaurentV.__new__(LaurentV)
        out._c = c
        return out

    __radd__ = __add__

    def __neg__(self) -> LaurentV:
        out = LaurentV.__new__(LaurentV)
        out._c = {k: -a for k, a in self._c.items()}
        return out

    def __sub__(self, other: int | LaurentV) -> LaurentV:
        other = LaurentV.coerce(other)
        c = dict(self._c)
        for k, a in other._c.items():
            s = c.get(k, 0) - a
            if s:
                c[k] = s
            elif k in c:
                del c[k]
        out = LaurentV.__new__(LaurentV)
        out._c = c
        return out

    def __rsub__(self, other: int | LaurentV) -> LaurentV:
        return LaurentV.coerce(other) + (-self)

    def __mul__(self, other: int | LaurentV) -> LaurentV:
        if isinstance(other, int):
            out = LaurentV.__new__(LaurentV)
            out._c = {k: a * other for k, a in self._c.items()} if other else {}
            return out
        if not isinstance(other, LaurentV):
            return NotImplemented
        left, right = self._c, other._c
        if len(left) > len(right):
            left, right = right, left
        out = LaurentV.__new__(LaurentV)
        if len(left) == 1:
            ((k1, a1),) = left.items()
            out._c = {k1 + k2: a1 * a2 for k2, a2 in right.items()}
            return out
        c: dict[int, int] = {}
        for k1, a1 in left.items():
            for k2, a2 in right.items():
                k = k1 + k2
                s = c.get(k, 0) + a1 * a2
                if s:
                    c[k] = s
                elif k in c:
                    del c[k]
        out._c = c
        return out

    __rmul__ = __mul__

    def __pow__(self, n: int) -> LaurentV:
        if n < 0:
            if not self.is_unit_monomial():
                raise ValueError("only unit monomials +-v^k are invertible")
            ((k, a),) = self._c.items()
            return LaurentV.monomial(-k, a) ** (-n)
        result = LaurentV.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, k: int) -> LaurentV:
        """Multiply by v^k."""
        out = LaurentV.__new__(LaurentV)
        out._c = {e + k: a for e, a in self._c.items()}
        return out

    def _mul_shifted(self, other: LaurentV, k: int) -> LaurentV:
        """self * other * v^k in one pass (hot path of torus products)."""
        left, right = self._c, other._c
        if len(left) > len(right):
            left, right = right, left
        out = LaurentV.__new__(LaurentV)
        if len(left) == 1:
            ((k1, a1),) = left.items()
            k1 += k
            out._c = {k1 + k2: a1 * a2 for k2, a2 in right.items()}
            return out
        c: dict[int, int] = {}
        for k1, a1 in left.items():
            k1 += k
            for k2, a2 in right.items():
                key = k1 + k2
                s = c.get(key, 0) + a1 * a2
                if s:
                    c[key] = s
                elif key in c:
                    del c[key]
        out._c = c
        return out

    # -- involution and truncation ------------------------------------------

    def bar(self) -> LaurentV:
        """The bar-involution v -> v^-1.

        >>> LaurentV({3: 1}).bar()
        LaurentV('v^-3')
        """
        out = LaurentV.__new__(LaurentV)
        out._c = {-k: a for k, a in self._c.items()}
        return out

    def is_bar_invariant(self) -> bool:
        return all(self._c.get(-k, 0) == a for k, a in self._c.items())

    def nonpositive_part(self) -> LaurentV:
        """Keep exactly the terms with exponent <= 0 (constant included)."""
        out = LaurentV.__new__(LaurentV)
        out._c = {k: a for k, a in self._c.items() if k <= 0}
        return out

    # -- evaluation ----------------------------------------------------------

    def at_one(self) -> int:
        """Evaluate at v = 1."""
        return sum(self._c.values())

    def evaluate(self, x):
        """Evaluate at an arbitrary invertible value (e.g. a Fraction)."""
        return sum(a * x**k for k, a in self._c.items())

    # -- division -------------------------------------------------------------

    def divide_exact(self, other: LaurentV) -> LaurentV | None:
        """Return q with q * other == self, or None when no such Laurent
        polynomial with integer coefficients exists."""
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return LaurentV.zero()
        if len(other._c) == 1:
            ((k0, a0),) = other._c.items()
            quotient: dict[int, int] = {}
            for k, a in self._c.items():
                if a % a0:
                    return None
                quotient[k - k0] = a // a0
            out = LaurentV.__new__(LaurentV)
            out._c = quotient
            return out
        # Shift both to ordinary polynomials with nonzero constant term;
        # units v^k do not affect divisibility.
        fval, gval = self.valuation(), other.valuation()
        f = [self._c.get(k, 0) for k in range(fval, self.degree() + 1)]
        g = [other._c.get(k, 0) for k in range(gval, other.degree() + 1)]
        dq = len(f) - len(g)
        if dq < 0:
            return None
        q = [0] * (dq + 1)
        lead = g[-1]
        for i in range(dq, -1, -1):
            head = f[i + len(g) - 1]
            if head % lead:
                return None
            q[i] = head // lead
            if q[i]:
                for j, gj in enumerate(g):
                    f[i + j] -= q[i] * gj
        if any(f):
            return None
        return LaurentV({fval - gval + i: a for i, a in enumerate(q)})

    # -- serialization ----------------------------------------------------------

    def to_json(self) -> dict:
        """{"terms": [[exponent, coefficient-as-decimal-string], ...]}."""
        return {"terms": [[k, str(a)] for k, a in self.terms()]}

    @classmethod
    def from_json(cls, data: dict) -> LaurentV:
        return cls({int(k): int(a) for k, a in data["terms"]})

    # -- formatting -----------------------------------------------------------

    def __str__(self) -> str:
        if not self._c:
            return "0"
        parts = []
        for k, a in sorted(self._c.items(), reverse=True):
            sign = "-" if a < 0 else "+"
            mag = abs(a)
            if k == 0:
                body = str(mag)
            else:
                var = "v" if k == 1 else f"v^{k}"
                body = var if mag == 1 else f"{mag}{var}"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def latex(self) -> str:
        if not self._c:
            return "0"
        parts = []
        for k, a in sorted(self._c.items(), reverse=True):
            sign = "-" if a < 0 else "+"
            mag = abs(a)
            if k == 0:
                body = str(mag)
            else:
                var = "v" if k == 1 else f"v^{{{k}}}"
                body = var if mag == 1 else f"{mag}{var}"
            parts.append((sign, body))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            out += sign + body
        return out

    def __repr__(self) -> str:
        return f"LaurentV('{self}')"


#: the generator v, for building values by arithmetic
V = LaurentV.monomial(1)


def symmetrize_from_nonpositive(g: LaurentV) -> LaurentV:
    """The unique bar-invariant f with f.nonpositive_part() == g.

    >>> symmetrize_from_nonpositive(LaurentV({-2: 1, 0: -1}))
    LaurentV('v^2 - 1 + v^-2')
    """
    strictly_negative = [(k, a) for k, a in g.terms() if k < 0]
    if any(k > 0 for k, _ in g.terms()):
        raise ValueError("input must only have exponents <= 0")
    return g + LaurentV({-k: a for k, a in strictly_negative})


def quantum_integer(n: int, d: int = 1) -> LaurentV:
    """The bar-invariant quantum number [n]_w at w = v^d."""
    if d < 1:
        raise ValueError("d must be a positive integer")
    if n == 0:
        return LaurentV.zero()
    sign = 1 if n > 0 else -1
    m = abs(n)
    return LaurentV({d * (m - 1 - 2 * i): sign for i in range(m)})


def quantum_factorial(k: int, d: int = 1) -> LaurentV:
    """[k]_w [k-1]_w ... [1]_w at w = v^d."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    out = LaurentV.one()
    for i in range(2, k + 1):
        out = out * quantum_integer(i, d)
    return out


def quantum_binomial(n: int, k: int, d: int = 1) -> LaurentV:
    """The bar-invariant quantum binomial coefficient at w = v^d.

    Defined for every integer n and nonnegative k; vanishes for
    0 <= n < k, equals 1 for k = 0, and specializes at v = 1 to the
    ordinary (generalized) binomial coefficient.

    >>> quantum_binomial(4, 1, 2)
    LaurentV('v^6 + v^2 + v^-2 + v^-6')
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    if k == 0:
        return LaurentV.one()
    if 0 <= n < k:
        return LaurentV.zero()
    numerator = LaurentV.one()
    for i in range(k):
        numerator = numerator * quantum_integer(n - i, d)
    q = numerator.divide_exact(quantum_factorial(k, d))
    if q is None:
        raise ArithmeticError(f"quantum binomial [{n} over {k}] division not exact")
    return q
