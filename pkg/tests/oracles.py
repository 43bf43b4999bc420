"""Independent reference implementations, deliberately naive.

Nothing here shares code paths with the package: oracles work directly
on multiplication tables and raw value grids so that agreement with the
library is meaningful evidence.
"""

from fractions import Fraction
from itertools import combinations


# -- raw group facts ----------------------------------------------------------


def is_associative(mul) -> bool:
    n = len(mul)
    return all(
        mul[mul[a][b]][c] == mul[a][mul[b][c]]
        for a in range(n)
        for b in range(n)
        for c in range(n)
    )


def inverse_table(mul):
    n = len(mul)
    return [next(b for b in range(n) if mul[a][b] == 0) for a in range(n)]


def raw_closure(mul, seed):
    out = set(seed) | {0}
    frontier = list(out)
    while frontier:
        x = frontier.pop()
        for y in list(out):
            for z in (mul[x][y], mul[y][x]):
                if z not in out:
                    out.add(z)
                    frontier.append(z)
    return frozenset(out)


def commutator_subgroup(mul):
    n = len(mul)
    inv = inverse_table(mul)
    gens = {
        mul[mul[x][y]][mul[inv[x]][inv[y]]] for x in range(n) for y in range(n)
    }
    return raw_closure(mul, gens)


def subgroups_by_subsets(mul):
    """Every subgroup, by testing all subsets containing the identity.

    Only viable for very small groups.
    """
    n = len(mul)
    inv = inverse_table(mul)
    found = set()
    rest = [g for g in range(1, n)]
    for r in range(n):
        for extra in combinations(rest, r):
            s = frozenset((0,) + extra)
            if all(mul[a][b] in s and inv[a] in s for a in s for b in s):
                found.add(s)
    return found


def subgroups_by_pairs(mul):
    """Closures of all pairs of elements: every subgroup of a group whose
    subgroups are all 2-generated (true for S4)."""
    n = len(mul)
    found = {frozenset([0])}
    for a in range(n):
        for b in range(n):
            found.add(raw_closure(mul, (a, b)))
    return found


# -- conjugacy and induction ---------------------------------------------------


def conjugacy_partition(mul):
    n = len(mul)
    inv = inverse_table(mul)
    seen = set()
    classes = []
    for g in range(n):
        if g in seen:
            continue
        orbit = {mul[mul[x][g]][inv[x]] for x in range(n)}
        seen |= orbit
        classes.append(tuple(sorted(orbit)))
    return classes


def element_sum_induction(mul, h_elements, f_on_h):
    """Ind f(g) = (1/|H|) sum over x in G of f0(x g x^-1), per element.

    ``f_on_h`` maps a parent-group element of H to its value; values must
    support + and scalar Fraction multiplication.
    """
    n = len(mul)
    inv = inverse_table(mul)
    out = []
    for g in range(n):
        acc = None
        for x in range(n):
            c = mul[mul[x][g]][inv[x]]
            if c in f_on_h:
                acc = f_on_h[c] if acc is None else acc + f_on_h[c]
        if acc is None:
            out.append(None)  # zero; caller compares with is_zero
        else:
            out.append(acc * Fraction(1, len(h_elements)))
    return out


# -- degree multisets ----------------------------------------------------------


def degree_multisets(order, n_classes, n_linear):
    """All nondecreasing degree tuples with sum of squares = |G| and
    exactly |G / [G,G]| ones."""
    out = []

    def rec(prefix, remaining, budget, lo):
        if remaining == 0:
            if budget == 0 and prefix.count(1) == n_linear:
                out.append(tuple(prefix))
            return
        d = lo
        while d * d * remaining <= budget:
            if d * d <= budget:
                prefix.append(d)
                rec(prefix, remaining - 1, budget - d * d, d)
                prefix.pop()
            d += 1

    rec([], n_classes, order, 1)
    return out


# -- naive double-partition theory enumeration ----------------------------------


def all_set_partitions(items):
    items = list(items)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in all_set_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [part[i] | {first}] + part[i + 1 :]
        yield [{first}] + part


def naive_theory_count(n_elements, element_values, degrees):
    """Count supercharacter theories by unstructured double enumeration.

    ``element_values[i][g]`` is the value of the i-th irreducible row at
    element g.  No union-of-classes or size pruning: every set partition
    of the elements is paired with every row partition of matching size
    and checked directly against the definition.
    """
    n_rows = len(degrees)
    row_partitions = [
        [tuple(sorted(b)) for b in part]
        for part in all_set_partitions(range(n_rows))
    ]
    sigma_cache = {}

    def sigma(block):
        if block not in sigma_cache:
            sigma_cache[block] = [
                sum(
                    (Fraction(degrees[i]) * element_values[i][g] for i in block[1:]),
                    Fraction(degrees[block[0]]) * element_values[block[0]][g],
                )
                for g in range(n_elements)
            ]
        return sigma_cache[block]

    count = 0
    for kpart in all_set_partitions(range(n_elements)):
        if {0} not in kpart:
            continue
        for xpart in row_partitions:
            if len(xpart) != len(kpart):
                continue
            ok = True
            for xb in xpart:
                vals = sigma(xb)
                for kb in kpart:
                    it = iter(kb)
                    v0 = vals[next(it)]
                    if any(vals[g] != v0 for g in it):
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                count += 1
    return count
