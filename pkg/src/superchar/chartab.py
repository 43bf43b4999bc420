"""Exact irreducible character tables and class-function arithmetic.

Tables are computed by Dixon's method: simultaneous eigenvectors of the
class-multiplication matrices over a prime field GF(p) with p = 1 mod
exponent(G), degrees recovered from column orthogonality, and values
lifted to exact cyclotomic numbers by counting eigenvalue multiplicities
through power maps.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import isqrt
from typing import Dict, List, Optional, Sequence, Tuple

from .cyclo import ONE, ZERO, Cyclotomic, cyclo_sum
from .errors import (
    EigensplitFailure,
    GroupMismatch,
    NotACharacter,
    NotASubgroup,
    PrimeRejected,
)
from .groups import ConjugacyClasses, FiniteGroup, Subgroup, conjugacy_classes

DEFAULT_SEED = 0
DEFAULT_SPLIT_BUDGET = 64


@dataclass(frozen=True)
class ClassFunction:
    classes: ConjugacyClasses
    values: Tuple[Cyclotomic, ...]

    def __post_init__(self):
        assert len(self.values) == len(self.classes)

    @property
    def group(self) -> FiniteGroup:
        return self.classes.group

    def at_element(self, g: int) -> Cyclotomic:
        return self.values[self.classes.class_of[g]]

    @property
    def degree_value(self) -> Cyclotomic:
        return self.values[0]

    def __add__(self, other: "ClassFunction") -> "ClassFunction":
        if self.classes != other.classes:
            raise GroupMismatch("class functions live on different groups")
        return ClassFunction(
            self.classes, tuple(a + b for a, b in zip(self.values, other.values))
        )

    def __sub__(self, other: "ClassFunction") -> "ClassFunction":
        if self.classes != other.classes:
            raise GroupMismatch("class functions live on different groups")
        return ClassFunction(
            self.classes, tuple(a - b for a, b in zip(self.values, other.values))
        )

    def scale(self, q) -> "ClassFunction":
        c = q if isinstance(q, Cyclotomic) else Cyclotomic.rational(q)
        return ClassFunction(self.classes, tuple(c * v for v in self.values))

    def is_zero(self) -> bool:
        return all(v.is_zero() for v in self.values)


def trivial_character(classes: ConjugacyClasses) -> ClassFunction:
    return ClassFunction(classes, (ONE,) * len(classes))


def regular_character(classes: ConjugacyClasses) -> ClassFunction:
    values = [ZERO] * len(classes)
    values[0] = Cyclotomic.rational(classes.group.order)
    return ClassFunction(classes, tuple(values))


def inner_product(f: ClassFunction, h: ClassFunction) -> Cyclotomic:
    """Hermitian inner product (1/|G|) sum_g f(g) conj(h(g)), classwise."""
    if f.classes != h.classes:
        raise GroupMismatch("inner product requires class functions on one group")
    n = f.group.order
    total = cyclo_sum(
        Fraction(size) * fv * hv.conjugate()
        for size, fv, hv in zip(f.classes.sizes, f.values, h.values)
        if not (fv.is_zero() or hv.is_zero())
    )
    return total * Fraction(1, n)


# -- class multiplication coefficients --------------------------------------


@lru_cache(maxsize=None)
def class_mult_coeffs(G: FiniteGroup) -> Tuple[Tuple[Tuple[int, ...], ...], ...]:
    """a[i][j][k] = #{(x,y) in C_i x C_j : xy = z} for a fixed z in C_k.

    Computed for the minimal representative of each class and asserted
    equal to the count at the maximal representative.
    """
    cls = conjugacy_classes(G)
    r = len(cls)

    def counts_for(rep_pick) -> List[List[List[int]]]:
        a = [[[0] * r for _ in range(r)] for _ in range(r)]
        for k in range(r):
            z = rep_pick(cls.classes[k])
            for x in range(G.order):
                y = G.mul[G.inv[x]][z]
                a[cls.class_of[x]][cls.class_of[y]][k] += 1
        return a

    a_min = counts_for(min)
    assert a_min == counts_for(max), "class multiplication depends on representative"
    for i in range(r):
        for j in range(r):
            total = sum(a_min[i][j][k] * cls.sizes[k] for k in range(r))
            assert total == cls.sizes[i] * cls.sizes[j]
    return tuple(tuple(tuple(row) for row in plane) for plane in a_min)


# -- small GF(p) linear algebra ----------------------------------------------


def _solve_mod_p(cols: List[List[int]], rhs: List[int], p: int) -> List[int]:
    """Solve sum_j x_j cols[j] = rhs mod p (consistent, full column rank)."""
    m = len(rhs)
    d = len(cols)
    aug = [[cols[j][i] % p for j in range(d)] + [rhs[i] % p] for i in range(m)]
    r = 0
    pivots = []
    for col in range(d):
        pr = next((i for i in range(r, m) if aug[i][col]), None)
        if pr is None:
            continue
        aug[r], aug[pr] = aug[pr], aug[r]
        inv = pow(aug[r][col], -1, p)
        aug[r] = [(x * inv) % p for x in aug[r]]
        for i in range(m):
            if i != r and aug[i][col]:
                f = aug[i][col]
                aug[i] = [(a - f * b) % p for a, b in zip(aug[i], aug[r])]
        pivots.append(col)
        r += 1
    sol = [0] * d
    for i, col in enumerate(pivots):
        sol[col] = aug[i][d]
    for i in range(m):
        assert sum(cols[j][i] * sol[j] for j in range(d)) % p == rhs[i] % p
    return sol


def _kernel_mod_p(mat: List[List[int]], p: int) -> List[List[int]]:
    """Basis of the kernel of a square matrix mod p."""
    d = len(mat)
    a = [row[:] for row in mat]
    pivots: Dict[int, int] = {}
    r = 0
    for col in range(d):
        pr = next((i for i in range(r, d) if a[i][col] % p), None)
        if pr is None:
            continue
        a[r], a[pr] = a[pr], a[r]
        inv = pow(a[r][col] % p, -1, p)
        a[r] = [(x * inv) % p for x in a[r]]
        for i in range(d):
            if i != r and a[i][col] % p:
                f = a[i][col] % p
                a[i] = [(x - f * y) % p for x, y in zip(a[i], a[r])]
        pivots[col] = r
        r += 1
    kernel = []
    for col in range(d):
        if col in pivots:
            continue
        vec = [0] * d
        vec[col] = 1
        for pc, pr in pivots.items():
            vec[pc] = (-a[pr][col]) % p
        kernel.append(vec)
    return kernel


def _mat_vec(mat: Sequence[Sequence[int]], vec: Sequence[int], p: int) -> List[int]:
    return [sum(m * v for m, v in zip(row, vec)) % p for row in mat]


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _dixon_prime(order: int, exponent: int, prime: Optional[int]) -> int:
    """Smallest prime p = 1 mod exponent with p^2 > 4|G| (or validate one)."""
    if prime is not None:
        if not _is_prime(prime):
            raise PrimeRejected(f"{prime} is not prime")
        if prime % exponent != 1 % exponent:
            raise PrimeRejected(f"{prime} is not 1 mod exponent {exponent}")
        if prime * prime <= 4 * order:
            raise PrimeRejected(f"{prime} is not greater than 2*sqrt({order})")
        return prime
    p = max(2 * isqrt(order) + 1, exponent + 1)
    while True:
        if p % exponent == 1 % exponent and p * p > 4 * order and _is_prime(p):
            return p
        p += 1


def _primitive_root_of_unity(p: int, e: int) -> int:
    """An element of exact multiplicative order e in GF(p)* (e | p-1)."""
    if e == 1:
        return 1
    factors = set()
    m = p - 1
    d = 2
    while d * d <= m:
        if m % d == 0:
            factors.add(d)
            while m % d == 0:
                m //= d
        d += 1
    if m > 1:
        factors.add(m)
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in factors):
            z = pow(g, (p - 1) // e, p)
            assert pow(z, e, p) == 1
            return z
    raise AssertionError("no primitive root found")


# -- the character table ------------------------------------------------------


@dataclass(frozen=True)
class CharacterTable:
    classes: ConjugacyClasses
    rows: Tuple[ClassFunction, ...]
    degrees: Tuple[int, ...]

    @property
    def group(self) -> FiniteGroup:
        return self.classes.group

    def __len__(self):
        return len(self.rows)

    @property
    def linear_rows(self) -> Tuple[int, ...]:
        return tuple(i for i, d in enumerate(self.degrees) if d == 1)


def _canonical_rows(classes: ConjugacyClasses, rows: List[ClassFunction]) -> CharacterTable:
    trivial = trivial_character(classes)

    def key(row: ClassFunction):
        deg = row.degree_value.as_rational()
        return (deg, 0 if row == trivial else 1, tuple(v.sort_key() for v in row.values))

    rows = sorted(rows, key=key)
    degrees = []
    for row in rows:
        d = row.degree_value.as_rational()
        assert d is not None and d.denominator == 1 and d > 0
        degrees.append(int(d))
    table = CharacterTable(classes, tuple(rows), tuple(degrees))
    assert table.rows[0] == trivial, "trivial character must be row 0"
    return table


def dixon_character_table(
    G: FiniteGroup,
    prime: Optional[int] = None,
    seed: int = DEFAULT_SEED,
    split_budget: int = DEFAULT_SPLIT_BUDGET,
) -> CharacterTable:
    """Exact character table of G via Dixon's method."""
    cls = conjugacy_classes(G)
    r = len(cls)
    n = G.order
    e = G.exponent
    p = _dixon_prime(n, e, prime)
    a = class_mult_coeffs(G)
    # (M_i)[j][k] = a[i][j][k]: the omega vector is a common eigenvector
    mats = [[[a[i][j][k] % p for k in range(r)] for j in range(r)] for i in range(r)]

    def split(space: List[List[int]], mat: List[List[int]]) -> List[List[List[int]]]:
        d = len(space)
        if d == 1:
            return [space]
        cols = [[space[j][i] for j in range(d)] for i in range(r)]  # r x d
        restricted_cols = [
            _solve_mod_p(
                [[space[j][i] for i in range(r)] for j in range(d)],
                _mat_vec(mat, space[j], p),
                p,
            )
            for j in range(d)
        ]
        restricted = [[restricted_cols[j][i] for j in range(d)] for i in range(d)]
        pieces: List[List[List[int]]] = []
        covered = 0
        for lam in range(p):
            shifted = [
                [(restricted[i][j] - (lam if i == j else 0)) % p for j in range(d)]
                for i in range(d)
            ]
            ker = _kernel_mod_p(shifted, p)
            if ker:
                vecs = [
                    [sum(k[j] * space[j][i] for j in range(d)) % p for i in range(r)]
                    for k in ker
                ]
                pieces.append(vecs)
                covered += len(ker)
                if covered == d:
                    break
        assert covered == d, "class matrix not diagonalizable mod p"
        return pieces

    spaces: List[List[List[int]]] = [[[1 if i == j else 0 for i in range(r)] for j in range(r)]]
    for i in range(1, r):
        spaces = [piece for sp in spaces for piece in split(sp, mats[i])]
        if all(len(sp) == 1 for sp in spaces):
            break
    if not all(len(sp) == 1 for sp in spaces):
        rng = random.Random(seed)
        for _ in range(split_budget):
            coeffs = [rng.randrange(p) for _ in range(r)]
            combo = [
                [sum(c * mats[i][j][k] for i, c in enumerate(coeffs)) % p for k in range(r)]
                for j in range(r)
            ]
            spaces = [piece for sp in spaces for piece in split(sp, combo)]
            if all(len(sp) == 1 for sp in spaces):
                break
        else:
            raise EigensplitFailure(seed, split_budget)

    sizes = cls.sizes
    inv_sizes = [pow(s, -1, p) for s in sizes]
    jstar = [cls.class_of[G.inv[cls.representatives[j]]] for j in range(r)]
    rows: List[ClassFunction] = []
    z = _primitive_root_of_unity(p, e)
    inv_e = pow(e, -1, p)
    power_class: List[List[int]] = []
    for j in range(r):
        g = cls.representatives[j]
        x, seq = 0, []
        for _ in range(e):
            seq.append(cls.class_of[x])
            x = G.mul[x][g]
        power_class.append(seq)

    for sp in spaces:
        v = sp[0]
        assert v[0] % p != 0, "eigenvector has zero identity coordinate"
        scale = pow(v[0], -1, p)
        w = [(x * scale) % p for x in v]
        s = sum(w[j] * w[jstar[j]] * inv_sizes[j] for j in range(r)) % p
        d2 = (n * pow(s, -1, p)) % p
        deg = next(t for t in range(1, p // 2 + 1) if (t * t) % p == d2)
        chi_mod = [(deg * w[j] * inv_sizes[j]) % p for j in range(r)]
        values = []
        for j in range(r):
            terms: Dict[int, Fraction] = {}
            for t in range(e):
                acc = sum(
                    chi_mod[power_class[j][s_]] * pow(z, (-s_ * t) % e, p)
                    for s_ in range(e)
                )
                m_t = (acc * inv_e) % p
                assert m_t <= deg, "eigenvalue multiplicity exceeds degree"
                if m_t:
                    terms[t] = Fraction(m_t)
            values.append(Cyclotomic.from_terms(e, terms))
        rows.append(ClassFunction(cls, tuple(values)))

    table = _canonical_rows(cls, rows)
    assert sum(d * d for d in table.degrees) == n
    report = verify_orthogonality(table)
    assert report.ok, f"computed table fails orthogonality: {report.violations}"
    return table


@dataclass
class OrthogonalityReport:
    ok: bool
    violations: List[dict]


def verify_orthogonality(table: CharacterTable) -> OrthogonalityReport:
    """Exact first and second orthogonality relations."""
    violations: List[dict] = []
    rows = table.rows
    cls = table.classes
    n = table.group.order
    for i in range(len(rows)):
        for j in range(i, len(rows)):
            got = inner_product(rows[i], rows[j])
            want = ONE if i == j else ZERO
            if got != want:
                violations.append(
                    {"kind": "row", "i": i, "j": j, "value": str(got)}
                )
    for gi in range(len(cls)):
        for gj in range(len(cls)):
            got = cyclo_sum(
                row.values[gi] * row.values[gj].conjugate() for row in rows
            )
            want = (
                Cyclotomic.rational(Fraction(n, cls.sizes[gi])) if gi == gj else ZERO
            )
            if got != want:
                violations.append(
                    {"kind": "column", "i": gi, "j": gj, "value": str(got)}
                )
    return OrthogonalityReport(not violations, violations)


# -- restriction, induction, decomposition -----------------------------------


def restrict(f: ClassFunction, H: Subgroup) -> ClassFunction:
    """Pull back a class function on the parent group to H."""
    if H.parent != f.group:
        raise NotASubgroup("subgroup does not live in the function's group")
    hcls = conjugacy_classes(H.local)
    values = tuple(
        f.at_element(H.to_parent(c[0])) for c in hcls.classes
    )
    return ClassFunction(hcls, values)


def induce(f: ClassFunction, H: Subgroup) -> ClassFunction:
    """Classical induction from H to its parent, classwise:
    Ind f(g) = |G| / (|H| |Cl(g)|) * sum over Cl(g) intersect H of f."""
    if f.group != H.local:
        raise NotASubgroup("function does not live on the subgroup")
    G = H.parent
    gcls = conjugacy_classes(G)
    values = []
    for c in gcls.classes:
        acc = cyclo_sum(f.at_element(H.to_local(x)) for x in c if H.contains(x))
        values.append(acc * Fraction(G.order, H.order * len(c)))
    return ClassFunction(gcls, tuple(values))


def decompose(f: ClassFunction, table: CharacterTable) -> Tuple[Cyclotomic, ...]:
    """Multiplicity <f, chi_i> for each irreducible row."""
    return tuple(inner_product(f, row) for row in table.rows)


def character_multiplicities(f: ClassFunction, table: CharacterTable) -> Tuple[int, ...]:
    """Decompose a genuine character; NotACharacter if any multiplicity is
    not a nonnegative integer."""
    mults = decompose(f, table)
    out = []
    for i, m in enumerate(mults):
        if not m.is_nonnegative_integer():
            raise NotACharacter(
                f"multiplicity of irreducible {i} is {m}, not a nonnegative integer"
            )
        out.append(int(m.as_rational()))
    return tuple(out)


def has_only_linear_constituents(f: ClassFunction, table: CharacterTable) -> bool:
    """True iff f is a nonnegative-integer combination of degree-1 rows."""
    for i, m in enumerate(decompose(f, table)):
        if not m.is_nonnegative_integer():
            return False
        if not m.is_zero() and table.degrees[i] != 1:
            return False
    return True
