"""Finite groups as explicit Cayley tables.

Elements are the indices 0..n-1 and the identity is always element 0.
Conjugacy classes and subgroups come in a canonical deterministic order
so that downstream block identifiers and file formats are stable.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import gcd
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from .errors import IdentityNotZero, NotAGroup, NotASubgroup, OrderCapExceeded

DEFAULT_MAX_ORDER = 200
DEFAULT_SUBGROUP_CAP = 5000


@dataclass(frozen=True)
class FiniteGroup:
    name: str
    order: int
    mul: Tuple[Tuple[int, ...], ...]
    inv: Tuple[int, ...]
    exponent: int

    identity = 0

    def m(self, a: int, b: int) -> int:
        return self.mul[a][b]

    def inverse(self, a: int) -> int:
        return self.inv[a]

    def elements(self) -> range:
        return range(self.order)

    def conjugate(self, g: int, h: int) -> int:
        """h g h^-1."""
        return self.mul[self.mul[h][g]][self.inv[h]]

    def __repr__(self):
        return f"FiniteGroup({self.name!r}, order={self.order})"


def element_order(G: FiniteGroup, g: int) -> int:
    k, x = 1, g
    while x != 0:
        x = G.mul[x][g]
        k += 1
    return k


def _lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


def group_from_cayley(table: Sequence[Sequence[int]], name: str = "G") -> FiniteGroup:
    """Validate a Cayley table and build the group.

    Checks totality, that element 0 is a two-sided identity, existence of
    two-sided inverses, and associativity on all triples.
    """
    n = len(table)
    if n == 0:
        raise NotAGroup("empty table")
    mul = tuple(tuple(row) for row in table)
    for a, row in enumerate(mul):
        if len(row) != n:
            raise NotAGroup(f"row {a} has length {len(row)}, expected {n}")
        for b, v in enumerate(row):
            if not (0 <= v < n):
                raise NotAGroup(f"entry mul[{a}][{b}] = {v} out of range")
    for a in range(n):
        if mul[0][a] != a or mul[a][0] != a:
            raise IdentityNotZero()
    inv = []
    for a in range(n):
        try:
            b = mul[a].index(0)
        except ValueError:
            raise NotAGroup(f"element {a} has no right inverse") from None
        if mul[b][a] != 0:
            raise NotAGroup(f"inverse of {a} is not two-sided")
        inv.append(b)
    for a in range(n):
        row_a = mul[a]
        for b in range(n):
            ab = row_a[b]
            row_ab = mul[ab]
            row_b = mul[b]
            for c in range(n):
                if row_ab[c] != row_a[row_b[c]]:
                    raise NotAGroup(f"associativity fails at ({a},{b},{c})")
    exponent = 1
    group = FiniteGroup(name, n, mul, tuple(inv), 1)
    for g in range(n):
        exponent = _lcm(exponent, element_order(group, g))
    return FiniteGroup(name, n, mul, tuple(inv), exponent)


def _compose(p: Tuple[int, ...], q: Tuple[int, ...]) -> Tuple[int, ...]:
    """(p * q)(x) = p(q(x))."""
    return tuple(p[q[x]] for x in range(len(p)))


def group_from_permutations(
    degree: int,
    generators: Sequence[Sequence[int]],
    name: str = "G",
    cap: int = DEFAULT_SUBGROUP_CAP,
) -> FiniteGroup:
    """Close a set of permutations of {0..degree-1} into a Cayley-table group.

    Element order is discovery order under breadth-first products with the
    generators sorted, so it is deterministic; the identity is element 0.
    """
    gens = []
    for g in generators:
        p = tuple(g)
        if sorted(p) != list(range(degree)):
            raise NotAGroup(f"generator {g} is not a permutation of 0..{degree - 1}")
        gens.append(p)
    gens.sort()
    identity = tuple(range(degree))
    elements = [identity]
    index = {identity: 0}
    queue = [identity]
    while queue:
        cur = queue.pop(0)
        for gen in gens:
            nxt = _compose(cur, gen)
            if nxt not in index:
                if len(elements) >= cap:
                    raise OrderCapExceeded(
                        f"permutation closure exceeded cap {cap}"
                    )
                index[nxt] = len(elements)
                elements.append(nxt)
                queue.append(nxt)
    n = len(elements)
    mul = tuple(
        tuple(index[_compose(elements[a], elements[b])] for b in range(n))
        for a in range(n)
    )
    return group_from_cayley(mul, name)


@dataclass(frozen=True)
class ConjugacyClasses:
    group: FiniteGroup
    classes: Tuple[Tuple[int, ...], ...]
    class_of: Tuple[int, ...]

    @property
    def sizes(self) -> Tuple[int, ...]:
        return tuple(len(c) for c in self.classes)

    @property
    def representatives(self) -> Tuple[int, ...]:
        return tuple(c[0] for c in self.classes)

    def __len__(self):
        return len(self.classes)


@lru_cache(maxsize=None)
def conjugacy_classes(G: FiniteGroup) -> ConjugacyClasses:
    """Orbits of conjugation, ordered by (size, minimum element)."""
    seen = [False] * G.order
    classes: List[Tuple[int, ...]] = []
    for g in range(G.order):
        if seen[g]:
            continue
        orbit = sorted({G.conjugate(g, h) for h in range(G.order)})
        for x in orbit:
            seen[x] = True
        classes.append(tuple(orbit))
    classes.sort(key=lambda c: (len(c), c[0]))
    class_of = [0] * G.order
    for i, c in enumerate(classes):
        for x in c:
            class_of[x] = i
    result = ConjugacyClasses(G, tuple(classes), tuple(class_of))
    assert result.classes[0] == (0,)
    assert sum(result.sizes) == G.order
    return result


def centralizer_order(G: FiniteGroup, g: int) -> int:
    count = sum(1 for h in range(G.order) if G.mul[h][g] == G.mul[g][h])
    cls = conjugacy_classes(G)
    assert count * cls.sizes[cls.class_of[g]] == G.order
    return count


class Subgroup:
    """A subgroup given by its (sorted) parent element set, carrying the
    induced group on those elements with 0-based local indexing."""

    __slots__ = ("parent", "elements", "local", "_to_local")

    def __init__(self, parent: FiniteGroup, elements: Tuple[int, ...], local: FiniteGroup):
        self.parent = parent
        self.elements = elements
        self.local = local
        self._to_local = {g: i for i, g in enumerate(elements)}

    @property
    def order(self) -> int:
        return len(self.elements)

    def to_parent(self, i: int) -> int:
        return self.elements[i]

    def to_local(self, g: int) -> int:
        return self._to_local[g]

    def contains(self, g: int) -> bool:
        return g in self._to_local

    @property
    def element_set(self) -> FrozenSet[int]:
        return frozenset(self.elements)

    def __eq__(self, other):
        return (
            isinstance(other, Subgroup)
            and self.parent == other.parent
            and self.elements == other.elements
        )

    def __hash__(self):
        return hash((self.parent.name, self.parent.order, self.elements))

    def __repr__(self):
        return f"Subgroup({self.local.name!r}, {list(self.elements)})"


def closure(G: FiniteGroup, gens: Iterable[int], cap: int = DEFAULT_SUBGROUP_CAP) -> FrozenSet[int]:
    """Smallest subgroup of G containing gens."""
    elems = {0} | set(gens)
    frontier = sorted(elems)
    while frontier:
        x = frontier.pop()
        for y in list(elems):
            for z in (G.mul[x][y], G.mul[y][x]):
                if z not in elems:
                    if len(elems) >= cap:
                        raise OrderCapExceeded(f"subgroup closure exceeded cap {cap}")
                    elems.add(z)
                    frontier.append(z)
    return frozenset(elems)


def subgroup_from_elements(
    G: FiniteGroup, elements: Iterable[int], name: Optional[str] = None
) -> Subgroup:
    """Build the subgroup on a closed element set (closure is verified)."""
    elems = tuple(sorted(set(elements)))
    if not elems or elems[0] != 0:
        raise NotASubgroup("subgroup must contain the identity")
    pos = {g: i for i, g in enumerate(elems)}
    for a in elems:
        if G.inv[a] not in pos:
            raise NotASubgroup(f"not closed under inversion at {a}")
        for b in elems:
            if G.mul[a][b] not in pos:
                raise NotASubgroup(f"not closed under multiplication at ({a},{b})")
    if G.order % len(elems) != 0:
        raise NotASubgroup("Lagrange check failed")  # unreachable for closed sets
    if len(elems) == G.order:
        return Subgroup(G, elems, G)  # the whole group embeds as itself
    table = [[pos[G.mul[a][b]] for b in elems] for a in elems]
    label = name if name is not None else f"{G.name}|{{{','.join(map(str, elems))}}}"
    local = group_from_cayley(table, label)
    return Subgroup(G, elems, local)


def whole_subgroup(G: FiniteGroup) -> Subgroup:
    return subgroup_from_elements(G, range(G.order), name=G.name)


def trivial_subgroup(G: FiniteGroup) -> Subgroup:
    return subgroup_from_elements(G, (0,), name="1")


def is_subgroup_chain(h1: Subgroup, h2: Subgroup) -> bool:
    """True iff h1 and h2 share the parent and h1's elements lie in h2."""
    return h1.parent == h2.parent and h1.element_set <= h2.element_set


def subgroup_within(inner: Subgroup, outer: Subgroup) -> Tuple[int, ...]:
    """Embedding of inner into outer's local indexing (inner <= outer)."""
    if not is_subgroup_chain(inner, outer):
        raise NotASubgroup("inner subgroup is not contained in outer")
    return tuple(outer.to_local(g) for g in inner.elements)


@lru_cache(maxsize=None)
def enumerate_subgroups(
    G: FiniteGroup,
    cap: int = DEFAULT_SUBGROUP_CAP,
    max_order: int = DEFAULT_MAX_ORDER,
) -> Tuple[Subgroup, ...]:
    """All subgroups of G, by layered generator addition.

    Seeds with the cyclic subgroups and repeatedly extends each known
    subgroup by one extra element until nothing new appears.  Output is
    canonically ordered by (order, element list).
    """
    if G.order > max_order:
        raise OrderCapExceeded(
            f"group order {G.order} exceeds configured bound {max_order}"
        )
    found: Dict[FrozenSet[int], None] = {}
    layer = set()
    for g in range(G.order):
        layer.add(closure(G, [g], cap))
    for s in layer:
        found[s] = None
    while layer:
        nxt = set()
        for s in layer:
            for g in range(G.order):
                if g in s:
                    continue
                t = closure(G, list(s) + [g], cap)
                if t not in found:
                    if len(found) >= cap:
                        raise OrderCapExceeded(f"subgroup count exceeded cap {cap}")
                    found[t] = None
                    nxt.add(t)
        layer = nxt
    sets = sorted(found, key=lambda s: (len(s), sorted(s)))
    return tuple(subgroup_from_elements(G, s) for s in sets)


# -- built-in groups ------------------------------------------------------


def cyclic_group(n: int) -> FiniteGroup:
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    return group_from_cayley(table, f"C{n}")


def _perm_table_group(perms: List[Tuple[int, ...]], name: str) -> FiniteGroup:
    perms = sorted(perms)  # identity is lexicographically first
    index = {p: i for i, p in enumerate(perms)}
    table = [[index[_compose(p, q)] for q in perms] for p in perms]
    return group_from_cayley(table, name)


def symmetric_group(n: int) -> FiniteGroup:
    perms = [tuple(p) for p in itertools.permutations(range(n))]
    return _perm_table_group(perms, f"S{n}")


def _parity(p: Tuple[int, ...]) -> int:
    inversions = sum(
        1 for i in range(len(p)) for j in range(i + 1, len(p)) if p[i] > p[j]
    )
    return inversions % 2


def alternating_group(n: int) -> FiniteGroup:
    perms = [tuple(p) for p in itertools.permutations(range(n)) if _parity(tuple(p)) == 0]
    return _perm_table_group(perms, f"A{n}")


def dihedral_group(n: int) -> FiniteGroup:
    """Symmetries of the n-gon, order 2n; element i + n*j is r^i s^j."""
    if n < 1:
        raise ValueError("n must be positive")

    def idx(i: int, j: int) -> int:
        return i % n + n * (j % 2)

    table = [[0] * (2 * n) for _ in range(2 * n)]
    for i1 in range(n):
        for j1 in range(2):
            for i2 in range(n):
                for j2 in range(2):
                    i = i1 + i2 if j1 == 0 else i1 - i2
                    table[idx(i1, j1)][idx(i2, j2)] = idx(i, j1 + j2)
    return group_from_cayley(table, f"D{n}")


def quaternion_group(order: int) -> FiniteGroup:
    """Generalized quaternion group of the given order (multiple of 4, >= 8)."""
    if order < 8 or order % 4 != 0:
        raise ValueError("quaternion group order must be a multiple of 4, at least 8")
    m = order // 2

    def idx(i: int, j: int) -> int:
        return i % m + m * (j % 2)

    table = [[0] * order for _ in range(order)]
    for i1 in range(m):
        for j1 in range(2):
            for i2 in range(m):
                for j2 in range(2):
                    i = i1 + i2 if j1 == 0 else i1 - i2
                    if j1 == 1 and j2 == 1:
                        i += m // 2  # b^2 = a^(m/2)
                    table[idx(i1, j1)][idx(i2, j2)] = idx(i, j1 + j2)
    return group_from_cayley(table, f"Q{order}")


def builtin_group(spec: str) -> FiniteGroup:
    """Parse c5/s4/d4/q8/a4-style names into groups."""
    spec = spec.strip().lower()
    if len(spec) < 2 or spec[0] not in "csdqa" or not spec[1:].isdigit():
        raise ValueError(f"unknown builtin group {spec!r}")
    kind, n = spec[0], int(spec[1:])
    if kind == "c":
        return cyclic_group(n)
    if kind == "s":
        return symmetric_group(n)
    if kind == "d":
        return dihedral_group(n)
    if kind == "q":
        return quaternion_group(n)
    return alternating_group(n)
