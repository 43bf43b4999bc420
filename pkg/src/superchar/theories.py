"""Supercharacter theories: paired partitions of Irr(G) and of G.

A theory is a pair (X-partition of the irreducible rows, K-partition of
the group elements) such that {1} is a K-block, both partitions have the
same number of blocks, and every sigma_X = sum over X of psi(1) psi is
constant on every K-block.  Compatible theories on a subgroup chain
support superinduction and restriction of superclass functions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

from .chartab import (
    CharacterTable,
    ClassFunction,
    dixon_character_table,
    inner_product,
)
from .cyclo import Cyclotomic, cyclo_sum
from .errors import (
    IncompatibleFamily,
    IncompatibleTheories,
    NotAPartition,
    NotASubgroup,
    NotASuperclassFunction,
    NotASupercharacterTheory,
    OrderCapExceeded,
    SubgroupNotInFamily,
)
from .groups import (
    FiniteGroup,
    Subgroup,
    conjugacy_classes,
    enumerate_subgroups,
    is_subgroup_chain,
    subgroup_within,
)

DEFAULT_ENUM_CLASS_CAP = 12


def _check_partition(blocks: Sequence[Iterable[int]], universe: range, what: str) -> Tuple[Tuple[int, ...], ...]:
    canon = tuple(sorted((tuple(sorted(set(b))) for b in blocks), key=lambda b: b[0] if b else -1))
    seen: List[int] = []
    for b in canon:
        if not b:
            raise NotAPartition(f"{what} contains an empty block")
        seen.extend(b)
    if sorted(seen) != list(universe):
        raise NotAPartition(f"{what} is not a partition of 0..{len(universe) - 1}")
    return canon


class SupercharacterTheory:
    """A validated supercharacter theory on a fixed character table."""

    __slots__ = (
        "table",
        "irr_blocks",
        "class_blocks",
        "element_blocks",
        "sigmas",
        "_block_of_class",
    )

    def __init__(
        self,
        table: CharacterTable,
        irr_blocks: Tuple[Tuple[int, ...], ...],
        class_blocks: Tuple[Tuple[int, ...], ...],
        sigmas: Tuple[ClassFunction, ...],
    ):
        # internal: built by make_theory after validation
        self.table = table
        self.irr_blocks = irr_blocks
        self.class_blocks = class_blocks
        cls = table.classes
        self.element_blocks = tuple(
            tuple(sorted(x for ci in block for x in cls.classes[ci]))
            for block in class_blocks
        )
        self.sigmas = sigmas
        block_of = [0] * len(cls)
        for b, block in enumerate(class_blocks):
            for ci in block:
                block_of[ci] = b
        self._block_of_class = tuple(block_of)

    # -- structure -------------------------------------------------------

    @property
    def group(self) -> FiniteGroup:
        return self.table.group

    @property
    def classes(self):
        return self.table.classes

    @property
    def n_blocks(self) -> int:
        return len(self.irr_blocks)

    def block_of_class(self, class_index: int) -> int:
        return self._block_of_class[class_index]

    def superclass_of(self, g: int) -> int:
        """Index of the K-block containing element g."""
        return self._block_of_class[self.classes.class_of[g]]

    def superclass_elements(self, k: int) -> Tuple[int, ...]:
        return self.element_blocks[k]

    def is_classical(self) -> bool:
        return all(len(b) == 1 for b in self.irr_blocks) and all(
            len(b) == 1 for b in self.class_blocks
        )

    def sort_key(self):
        return (self.n_blocks, self.class_blocks, self.irr_blocks)

    def __eq__(self, other):
        return (
            isinstance(other, SupercharacterTheory)
            and self.table == other.table
            and self.irr_blocks == other.irr_blocks
            and self.class_blocks == other.class_blocks
        )

    def __hash__(self):
        return hash((self.group.name, self.irr_blocks, self.class_blocks))

    def __repr__(self):
        return (
            f"SupercharacterTheory({self.group.name!r}, X={self.irr_blocks}, "
            f"K={self.class_blocks})"
        )

    # -- superclass functions ---------------------------------------------

    def superclass_function(self, block_values: Sequence) -> "SuperclassFunction":
        """Build a superclass function from one value per K-block."""
        if len(block_values) != self.n_blocks:
            raise NotASuperclassFunction(
                f"expected {self.n_blocks} block values, got {len(block_values)}"
            )
        vals = [
            v if isinstance(v, Cyclotomic) else Cyclotomic.rational(v)
            for v in block_values
        ]
        values = tuple(vals[self._block_of_class[ci]] for ci in range(len(self.classes)))
        return SuperclassFunction(self, ClassFunction(self.classes, values))

    def trivial_superclass_function(self) -> "SuperclassFunction":
        return self.superclass_function([1] * self.n_blocks)

    def sigma_function(self, x: int) -> "SuperclassFunction":
        return SuperclassFunction(self, self.sigmas[x])


@dataclass(frozen=True)
class SuperclassFunction:
    """A class function constant on the superclasses of a fixed theory."""

    theory: SupercharacterTheory
    fn: ClassFunction

    def __post_init__(self):
        if self.fn.classes != self.theory.classes:
            raise NotASuperclassFunction("function lives on a different group")
        for block in self.theory.class_blocks:
            v0 = self.fn.values[block[0]]
            for ci in block[1:]:
                if self.fn.values[ci] != v0:
                    raise NotASuperclassFunction(
                        f"values differ inside K-block {block}"
                    )

    def block_values(self) -> Tuple[Cyclotomic, ...]:
        return tuple(self.fn.values[block[0]] for block in self.theory.class_blocks)

    def at_element(self, g: int) -> Cyclotomic:
        return self.fn.at_element(g)


def make_theory(
    table: CharacterTable,
    irr_partition: Sequence[Iterable[int]],
    element_partition: Sequence[Iterable[int]],
) -> SupercharacterTheory:
    """Validate the three defining conditions and build the theory.

    ``element_partition`` partitions the group elements; that its blocks
    are unions of conjugacy classes is verified afterwards, not assumed.
    """
    n = table.group.order
    irr_blocks = _check_partition(irr_partition, range(len(table.rows)), "irr partition")
    elem_blocks = _check_partition(element_partition, range(n), "class partition")
    if elem_blocks[0] != (0,):
        raise NotASupercharacterTheory(
            1,
            "{identity} is not a block of the element partition",
            {"block": list(next(b for b in elem_blocks if 0 in b))},
        )
    if len(irr_blocks) != len(elem_blocks):
        raise NotASupercharacterTheory(
            2,
            f"partition sizes differ: |X| = {len(irr_blocks)}, |K| = {len(elem_blocks)}",
            {"x_blocks": len(irr_blocks), "k_blocks": len(elem_blocks)},
        )
    cls = table.classes
    sigmas = []
    for xb in irr_blocks:
        sigma = ClassFunction(
            cls,
            tuple(
                cyclo_sum(
                    Fraction(table.degrees[i]) * table.rows[i].values[ci] for i in xb
                )
                for ci in range(len(cls))
            ),
        )
        sigmas.append(sigma)
    for bi, block in enumerate(elem_blocks):
        for xi, sigma in enumerate(sigmas):
            v0 = sigma.at_element(block[0])
            for g in block[1:]:
                if sigma.at_element(g) != v0:
                    raise NotASupercharacterTheory(
                        3,
                        f"sigma of X-block {list(irr_blocks[xi])} not constant "
                        f"on K-block {list(block)}",
                        {
                            "x_block": list(irr_blocks[xi]),
                            "k_block": list(block),
                            "element": g,
                            "values": [str(v0), str(sigma.at_element(g))],
                        },
                    )
    # Diaconis-Isaacs: valid superclasses are unions of conjugacy classes
    class_blocks = []
    for block in elem_blocks:
        members = set(block)
        cids = sorted({cls.class_of[g] for g in block})
        assert all(
            set(cls.classes[ci]) <= members for ci in cids
        ), "valid theory with a superclass that is not a union of classes"
        class_blocks.append(tuple(cids))
    return SupercharacterTheory(table, irr_blocks, tuple(class_blocks), tuple(sigmas))


def theory_from_class_blocks(
    table: CharacterTable,
    irr_partition: Sequence[Iterable[int]],
    class_partition: Sequence[Iterable[int]],
) -> SupercharacterTheory:
    """Variant of make_theory taking K-blocks as conjugacy-class indices."""
    cls = table.classes
    blocks = _check_partition(class_partition, range(len(cls)), "class partition")
    element_partition = [
        [x for ci in block for x in cls.classes[ci]] for block in blocks
    ]
    return make_theory(table, irr_partition, element_partition)


def classical_theory(table: CharacterTable) -> SupercharacterTheory:
    """Singleton blocks on both sides: ordinary character theory."""
    return theory_from_class_blocks(
        table,
        [[i] for i in range(len(table.rows))],
        [[ci] for ci in range(len(table.classes))],
    )


def maximal_theory(table: CharacterTable) -> SupercharacterTheory:
    """Two blocks: trivial character vs the rest, {1} vs the rest.

    For the trivial group this degenerates to the classical theory.
    """
    r = len(table.rows)
    if r == 1:
        return classical_theory(table)
    return theory_from_class_blocks(
        table,
        [[0], list(range(1, r))],
        [[0], list(range(1, len(table.classes)))],
    )


# -- enumeration --------------------------------------------------------------


def set_partitions(items: Sequence[int]) -> Iterator[List[List[int]]]:
    """All set partitions, in a deterministic refinement order."""
    items = list(items)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in set_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1 :]
        yield [[first]] + part


def set_partitions_k(items: Sequence[int], k: int) -> Iterator[List[List[int]]]:
    """Set partitions with exactly k blocks."""
    items = list(items)

    def rec(i: int, blocks: List[List[int]]):
        remaining = len(items) - i
        if remaining == 0:
            if len(blocks) == k:
                yield [b[:] for b in blocks]
            return
        if len(blocks) + remaining < k or len(blocks) > k:
            return
        x = items[i]
        for b in blocks:
            b.append(x)
            yield from rec(i + 1, blocks)
            b.pop()
        if len(blocks) < k:
            blocks.append([x])
            yield from rec(i + 1, blocks)
            blocks.pop()

    yield from rec(0, [])


def enumerate_theories(
    table: CharacterTable, max_classes: int = DEFAULT_ENUM_CLASS_CAP
) -> List[SupercharacterTheory]:
    """Exhaustive list of supercharacter theories of the table's group.

    K-candidates run over partitions of the conjugacy classes with the
    identity class in its own block (Diaconis-Isaacs union-of-classes
    pruning); X-candidates over row partitions of matching size.
    """
    r = len(table.classes)
    if r > max_classes:
        raise OrderCapExceeded(
            f"{r} conjugacy classes exceeds enumeration cap {max_classes}"
        )
    found: List[SupercharacterTheory] = []
    for kpart in set_partitions(list(range(1, r))):
        class_blocks = [[0]] + kpart
        m = len(class_blocks)
        for xpart in set_partitions_k(list(range(len(table.rows))), m):
            try:
                found.append(theory_from_class_blocks(table, xpart, class_blocks))
            except NotASupercharacterTheory:
                continue
    found.sort(key=lambda t: t.sort_key())
    return found


# -- compatibility, superinduction, restriction --------------------------------


def is_compatible(
    sub_theory: SupercharacterTheory,
    big_theory: SupercharacterTheory,
    embedding: Sequence[int],
) -> Tuple[bool, Optional[int]]:
    """Check SCl_H(h) subset of SCl_G(h) for all h; witness on failure.

    ``embedding`` maps local element indices of the subgroup into the big
    theory's group.
    """
    if len(embedding) != sub_theory.group.order:
        raise NotASubgroup("embedding length does not match subgroup order")
    for h in range(sub_theory.group.order):
        target = big_theory.superclass_of(embedding[h])
        for x in sub_theory.superclass_elements(sub_theory.superclass_of(h)):
            if big_theory.superclass_of(embedding[x]) != target:
                return False, h
    return True, None


def _require_compatible(sub_theory, big_theory, embedding):
    ok, witness = is_compatible(sub_theory, big_theory, embedding)
    if not ok:
        raise IncompatibleTheories(
            f"superclass of element {witness} does not embed", witness=witness
        )


def superinduce(
    phi: SuperclassFunction,
    big_theory: SupercharacterTheory,
    embedding: Sequence[int],
) -> SuperclassFunction:
    """Superinduction: averaged lift of a superclass function of H to G.

    Sind phi(g) = |G| / (|H| |SCl_G(g)|) * sum over SCl_G(g) of phi^0,
    where phi^0 vanishes outside H.
    """
    _require_compatible(phi.theory, big_theory, embedding)
    G = big_theory.group
    h_order = len(embedding)
    local_of = {g: i for i, g in enumerate(embedding)}
    block_values = []
    for k in range(big_theory.n_blocks):
        block = big_theory.superclass_elements(k)
        acc = cyclo_sum(
            phi.fn.at_element(local_of[x]) for x in block if x in local_of
        )
        block_values.append(acc * Fraction(G.order, h_order * len(block)))
    return big_theory.superclass_function(block_values)


def superinduce_via_reciprocity(
    phi: SuperclassFunction,
    big_theory: SupercharacterTheory,
    embedding: Sequence[int],
) -> SuperclassFunction:
    """Reconstruct the superinduction from Super Frobenius Reciprocity:
    the sigma_X form an orthogonal basis of the superclass functions, so
    Sind phi = sum_X <phi, sigma_X|_H> / <sigma_X, sigma_X> * sigma_X."""
    _require_compatible(phi.theory, big_theory, embedding)
    h_classes = phi.fn.classes
    values = None
    for x in range(big_theory.n_blocks):
        sigma = big_theory.sigmas[x]
        sigma_h = ClassFunction(
            h_classes,
            tuple(sigma.at_element(embedding[c[0]]) for c in h_classes.classes),
        )
        coeff = inner_product(phi.fn, sigma_h) * (
            Fraction(1) / inner_product(sigma, sigma).as_rational()
        )
        term = sigma.scale(coeff)
        values = term if values is None else values + term
    return SuperclassFunction(big_theory, values)


def srestrict(
    theta: SuperclassFunction,
    sub_theory: SupercharacterTheory,
    embedding: Sequence[int],
) -> SuperclassFunction:
    """Value pullback of a superclass function of G to a compatible H."""
    _require_compatible(sub_theory, theta.theory, embedding)
    h_classes = conjugacy_classes(sub_theory.group)
    fn = ClassFunction(
        h_classes,
        tuple(theta.fn.at_element(embedding[c[0]]) for c in h_classes.classes),
    )
    return SuperclassFunction(sub_theory, fn)


# -- compatible families --------------------------------------------------------


class CompatibleFamily:
    """A supercharacter theory for each subgroup in a set, pairwise
    compatible along every containment."""

    def __init__(
        self,
        group: FiniteGroup,
        subgroups: Tuple[Subgroup, ...],
        theories: Dict[FrozenSet[int], SupercharacterTheory],
        label: str = "custom",
    ):
        self.group = group
        self.subgroups = subgroups
        self.theories = theories
        self.label = label
        self.top = next(s for s in subgroups if s.order == group.order)
        self._cache: Dict = {}

    @property
    def top_theory(self) -> SupercharacterTheory:
        return self.theories[self.top.element_set]

    def theory_for(self, sub: Subgroup) -> SupercharacterTheory:
        try:
            return self.theories[sub.element_set]
        except KeyError:
            raise SubgroupNotInFamily(
                f"no theory for subgroup {sorted(sub.elements)}"
            ) from None

    def subgroup_by_elements(self, elements: Iterable[int]) -> Subgroup:
        key = frozenset(elements)
        for s in self.subgroups:
            if s.element_set == key:
                return s
        raise SubgroupNotInFamily(f"no subgroup with elements {sorted(key)}")

    def embedding_to_top(self, sub: Subgroup) -> Tuple[int, ...]:
        return sub.elements

    def containment_pairs(self) -> Iterator[Tuple[Subgroup, Subgroup]]:
        """All ordered pairs (H1, H2) with H1 a proper subgroup of H2."""
        for h1 in self.subgroups:
            for h2 in self.subgroups:
                if h1.order < h2.order and is_subgroup_chain(h1, h2):
                    yield h1, h2

    def superinduce_to_top(self, phi: SuperclassFunction, sub: Subgroup) -> SuperclassFunction:
        return superinduce(phi, self.top_theory, sub.elements)


def make_family(
    G: FiniteGroup,
    chooser: Union[str, Callable[[Subgroup, CharacterTable], SupercharacterTheory]] = "classical",
    subgroups: Optional[Sequence[Subgroup]] = None,
    prime: Optional[int] = None,
    seed: int = 0,
) -> CompatibleFamily:
    """Build and validate a compatible family of theories on subgroups of G.

    ``chooser`` is "classical", "maximal", or a callable mapping
    (subgroup, its character table) to a theory of that subgroup.
    """
    if subgroups is None:
        subgroups = enumerate_subgroups(G)
    subgroups = tuple(subgroups)
    if not any(s.order == G.order for s in subgroups):
        raise NotASubgroup("family must include the whole group")
    if chooser == "classical":
        label, pick = "classical", lambda sub, tab: classical_theory(tab)
    elif chooser == "maximal":
        label, pick = "maximal", lambda sub, tab: maximal_theory(tab)
    elif callable(chooser):
        label, pick = "custom", chooser
    else:
        raise ValueError(f"unknown theory chooser {chooser!r}")
    theories: Dict[FrozenSet[int], SupercharacterTheory] = {}
    for sub in subgroups:
        table = dixon_character_table(sub.local, prime=prime if sub.order == G.order else None, seed=seed)
        theories[sub.element_set] = pick(sub, table)
    family = CompatibleFamily(G, subgroups, theories, label=label)
    for h1, h2 in family.containment_pairs():
        emb = subgroup_within(h1, h2)
        ok, witness = is_compatible(
            theories[h1.element_set], theories[h2.element_set], emb
        )
        if not ok:
            raise IncompatibleFamily(h1.elements, h2.elements, witness)
    return family
