"""Exact cyclotomic arithmetic.

Values are elements of Q(zeta_e) stored in the canonical basis
1, z, ..., z^(phi(e)-1) modulo the e-th cyclotomic polynomial, with
``fractions.Fraction`` coefficients.  On construction every value is
reduced to the smallest cyclotomic order that contains it, so equality
and hashing are plain coefficient-vector comparisons and a rational
number always carries order 1.  There is no floating point anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Dict, Iterable, List, Optional, Tuple

Rational = Fraction


def _lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


@lru_cache(maxsize=None)
def euler_phi(e: int) -> int:
    if e < 1:
        raise ValueError("order must be positive")
    result = e
    n = e
    p = 2
    while p * p <= n:
        if n % p == 0:
            while n % p == 0:
                n //= p
            result -= result // p
        p += 1
    if n > 1:
        result -= result // n
    return result


def divisors(e: int) -> List[int]:
    small, large = [], []
    d = 1
    while d * d <= e:
        if e % d == 0:
            small.append(d)
            if d != e // d:
                large.append(e // d)
        d += 1
    return small + large[::-1]


def _poly_exact_div(num: List[int], den: Tuple[int, ...]) -> List[int]:
    """Exact division of integer polynomials (coefficients low to high)."""
    num = list(num)
    dd = len(den) - 1
    lead = den[-1]
    quot = [0] * (len(num) - dd)
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i]
        if c == 0:
            continue
        assert c % lead == 0
        q = c // lead
        quot[i - dd] = q
        for j, dc in enumerate(den):
            num[i - dd + j] -= q * dc
    assert all(c == 0 for c in num)
    return quot


@lru_cache(maxsize=None)
def cyclotomic_polynomial(e: int) -> Tuple[int, ...]:
    """Integer coefficients of Phi_e, low degree first, monic."""
    if e < 1:
        raise ValueError("order must be positive")
    if e == 1:
        return (-1, 1)
    poly = [0] * (e + 1)
    poly[0], poly[e] = -1, 1  # x^e - 1
    for d in divisors(e):
        if d < e:
            poly = _poly_exact_div(poly, cyclotomic_polynomial(d))
    return tuple(poly)


def _reduce_mod_phi(e: int, coeffs: List[Fraction]) -> List[Fraction]:
    phi = cyclotomic_polynomial(e)
    deg = len(phi) - 1
    c = list(coeffs)
    if len(c) < deg:
        c += [Fraction(0)] * (deg - len(c))
    for i in range(len(c) - 1, deg - 1, -1):
        q = c[i]
        if q:
            c[i] = Fraction(0)
            for j in range(deg):
                if phi[j]:
                    c[i - deg + j] -= q * phi[j]
    return c[:deg]


def _solve_exact(rows: List[List[Fraction]], rhs: List[Fraction]) -> Optional[List[Fraction]]:
    """Solve A x = rhs over the rationals; None if inconsistent.

    A has full column rank here (columns are a basis of a subfield), so
    a consistent system has a unique solution.
    """
    m = len(rows)
    ncols = len(rows[0]) if m else 0
    aug = [list(rows[i]) + [rhs[i]] for i in range(m)]
    pivots = []
    r = 0
    for col in range(ncols):
        pr = next((i for i in range(r, m) if aug[i][col]), None)
        if pr is None:
            continue
        aug[r], aug[pr] = aug[pr], aug[r]
        pv = aug[r][col]
        aug[r] = [x / pv for x in aug[r]]
        for i in range(m):
            if i != r and aug[i][col]:
                f = aug[i][col]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[r])]
        pivots.append(col)
        r += 1
        if r == m:
            break
    for i in range(r, m):
        if aug[i][ncols]:
            return None
    sol = [Fraction(0)] * ncols
    for i, col in enumerate(pivots):
        sol[col] = aug[i][ncols]
    # free columns cannot occur for a full-rank basis matrix, but if the
    # rank were deficient the reconstruction below would catch it
    for i in range(m):
        acc = sum((rows[i][j] * sol[j] for j in range(ncols)), Fraction(0))
        if acc != rhs[i]:
            return None
    return sol


@lru_cache(maxsize=None)
def _subfield_basis(e: int, d: int) -> Tuple[Tuple[Fraction, ...], ...]:
    """Canonical order-e coefficient vectors of zeta_d^j, j < phi(d)."""
    step = e // d
    basis = []
    for j in range(euler_phi(d)):
        vec = [Fraction(0)] * (j * step + 1)
        vec[j * step] = Fraction(1)
        basis.append(tuple(_reduce_mod_phi(e, vec)))
    return tuple(basis)


class Cyclotomic:
    """An element of Q(zeta_order), canonical and immutable."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs: Tuple[Fraction, ...]):
        # internal: callers must pass an already-canonical representation
        self.order = order
        self.coeffs = coeffs

    # -- construction ---------------------------------------------------

    @staticmethod
    def rational(q) -> "Cyclotomic":
        return Cyclotomic(1, (Fraction(q),))

    @staticmethod
    def from_terms(e: int, terms: Dict[int, Fraction]) -> "Cyclotomic":
        """Build from a sum of q * zeta_e^k terms (exponents folded mod e)."""
        vec = [Fraction(0)] * e
        for k, q in terms.items():
            if q:
                vec[k % e] += q
        reduced = _reduce_mod_phi(e, vec)
        return Cyclotomic._canonical(e, reduced)

    @staticmethod
    def _canonical(e: int, coeffs: List[Fraction]) -> "Cyclotomic":
        if e == 1:
            return Cyclotomic(1, (coeffs[0],))
        if all(c == 0 for c in coeffs[1:]):
            return Cyclotomic(1, (coeffs[0],))
        for d in divisors(e)[:-1]:
            if d == 1:
                continue
            sol = _solve_exact(
                [[b[i] for b in _subfield_basis(e, d)] for i in range(len(coeffs))],
                coeffs,
            )
            if sol is not None:
                return Cyclotomic(d, tuple(sol))
        return Cyclotomic(e, tuple(coeffs))

    # -- queries ---------------------------------------------------------

    def as_rational(self) -> Optional[Fraction]:
        return self.coeffs[0] if self.order == 1 else None

    def is_zero(self) -> bool:
        return self.order == 1 and self.coeffs[0] == 0

    def is_nonnegative_integer(self) -> bool:
        q = self.as_rational()
        return q is not None and q.denominator == 1 and q >= 0

    def is_integer(self) -> bool:
        q = self.as_rational()
        return q is not None and q.denominator == 1

    def embed_terms(self, order: int) -> Dict[int, Fraction]:
        """Power-basis terms of this value viewed inside Q(zeta_order)."""
        if order % self.order != 0:
            raise ValueError(f"order {order} does not extend {self.order}")
        step = order // self.order
        return {i * step: c for i, c in enumerate(self.coeffs) if c}

    # -- arithmetic -------------------------------------------------------

    @staticmethod
    def _coerce(x) -> "Cyclotomic":
        if isinstance(x, Cyclotomic):
            return x
        if isinstance(x, (int, Fraction)):
            return Cyclotomic.rational(x)
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other):
        other = Cyclotomic._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.order == 1 and other.order == 1:
            return Cyclotomic(1, (self.coeffs[0] + other.coeffs[0],))
        e = _lcm(self.order, other.order)
        terms = self.embed_terms(e)
        for k, q in other.embed_terms(e).items():
            terms[k] = terms.get(k, Fraction(0)) + q
        return Cyclotomic.from_terms(e, terms)

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.order, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        other = Cyclotomic._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = Cyclotomic._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.order == 1:
            return other._scale(self.coeffs[0])
        if other.order == 1:
            return self._scale(other.coeffs[0])
        e = _lcm(self.order, other.order)
        a = self.embed_terms(e)
        b = other.embed_terms(e)
        terms: Dict[int, Fraction] = {}
        for ka, qa in a.items():
            for kb, qb in b.items():
                k = (ka + kb) % e
                terms[k] = terms.get(k, Fraction(0)) + qa * qb
        return Cyclotomic.from_terms(e, terms)

    __rmul__ = __mul__

    def _scale(self, q: Fraction) -> "Cyclotomic":
        if q == 0:
            return Cyclotomic.rational(0)
        return Cyclotomic(self.order, tuple(c * q for c in self.coeffs))

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self._scale(1 / Fraction(other))
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not supported")
        result = Cyclotomic.rational(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate(self) -> "Cyclotomic":
        """The Galois map zeta -> zeta^(-1) (complex conjugation)."""
        if self.order == 1:
            return self
        e = self.order
        return Cyclotomic.from_terms(e, {(-k) % e: c for k, c in self.embed_terms(e).items()})

    # -- ordering, hashing, display ----------------------------------------

    def __eq__(self, other):
        other = Cyclotomic._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.order, self.coeffs))

    def sort_key(self):
        """Fixed total order: by order, then by coefficient vector."""
        return (self.order, tuple((c.numerator, c.denominator) for c in self.coeffs))

    def __str__(self):
        if self.order == 1:
            return str(self.coeffs[0])
        parts = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = f"z{self.order}" if k == 1 else f"z{self.order}^{k}" if k else ""
            if k == 0:
                term = str(c)
            elif c == 1:
                term = mono
            elif c == -1:
                term = f"-{mono}"
            else:
                term = f"{c}*{mono}"
            parts.append(term)
        out = parts[0]
        for term in parts[1:]:
            out += f" - {term[1:]}" if term.startswith("-") else f" + {term}"
        return out

    def __repr__(self):
        return f"Cyclotomic({self.order}, {self.coeffs})"


ZERO = Cyclotomic.rational(0)
ONE = Cyclotomic.rational(1)


def zeta(e: int, k: int = 1) -> Cyclotomic:
    """The root of unity zeta_e^k."""
    if e < 1:
        raise ValueError("order must be positive")
    return Cyclotomic.from_terms(e, {k % e: Fraction(1)})


def cyclo_sum(values: Iterable[Cyclotomic]) -> Cyclotomic:
    acc = ZERO
    for v in values:
        acc = acc + v
    return acc
