"""
Abstract groups given by a multiplication table, their subgroup lattice, and
the faithful permutation representations built from coset actions.

Element indices are positions in the table; ``table[i, j]`` is the index of
the product "i then j", matching the left-to-right convention used for
permutations.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

import numpy as np

from config.settings import ASSOCIATIVITY_CHECK_CAP, CAYLEY_ORDER_CAP, LATTICE_ORDER_CAP
from scripts.errors import check_cap
from scripts.perm_group import GeneratedGroup, group_from
from scripts.permutation import Permutation, compose, format_cycles

LOGGER = logging.getLogger("abstract_group")


@dataclass(frozen=True, eq=False)
class AbstractGroup:
    """A finite group as an m x m table over element indices."""

    table: np.ndarray
    identity: int
    labels: tuple[str, ...]

    def __post_init__(self) -> None:
        table = np.asarray(self.table, dtype=np.int64)
        object.__setattr__(self, "table", table)
        m = table.shape[0] if table.ndim == 2 else 0
        if m == 0 or table.shape != (m, m):
            raise ValueError(f"table must be a nonempty square array, got shape {table.shape}")
        if len(self.labels) != m:
            raise ValueError(f"expected {m} labels, got {len(self.labels)}")
        if not 0 <= self.identity < m:
            raise ValueError(f"identity index {self.identity} out of range")
        ident = np.arange(m)
        if not (np.array_equal(table[self.identity], ident) and np.array_equal(table[:, self.identity], ident)):
            raise ValueError("identity row/column is not the identity")
        # a Latin square with an identity has two-sided inverses
        sorted_rows = np.sort(table, axis=1)
        sorted_cols = np.sort(table, axis=0)
        if not (np.all(sorted_rows == ident) and np.all(sorted_cols == ident[:, None])):
            raise ValueError("table is not a Latin square")
        if m <= ASSOCIATIVITY_CHECK_CAP:
            left = table[table]
            right = table[ident[:, None, None], table[None, :, :]]
            if not np.array_equal(left, right):
                raise ValueError("table is not associative")
        table.setflags(write=False)

    @property
    def order(self) -> int:
        return int(self.table.shape[0])

    @cached_property
    def inverses(self) -> np.ndarray:
        return np.argmax(self.table == self.identity, axis=1)

    def inverse(self, x: int) -> int:
        return int(self.inverses[x])

    def multiply(self, x: int, y: int) -> int:
        return int(self.table[x, y])

    def element_order(self, x: int) -> int:
        result, current = 1, x
        while current != self.identity:
            current = int(self.table[current, x])
            result += 1
        return result

    def generated(self, elements: Iterable[int]) -> tuple[int, ...]:
        """Sorted indices of the subgroup generated by the given elements."""
        current = np.unique(np.append(np.asarray(list(elements), dtype=np.int64), self.identity))
        while True:
            grown = np.unique(self.table[np.ix_(current, current)])
            if grown.size == current.size:
                return tuple(int(x) for x in current)
            current = grown

    @cached_property
    def generators(self) -> tuple[int, ...]:
        """Greedy generating set: each element not yet generated, in index order."""
        gens: list[int] = []
        span = {self.identity}
        for x in range(self.order):
            if x not in span:
                gens.append(x)
                span = set(self.generated(gens))
        return tuple(gens) or (self.identity,)

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))


@dataclass(frozen=True)
class Subgroup:
    """A subgroup as the sorted tuple of its element indices."""

    elements: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    def key(self) -> tuple[int, tuple[int, ...]]:
        return (self.order, self.elements)

    def __contains__(self, x: int) -> bool:
        return x in self.elements


@dataclass(frozen=True)
class SubgroupClass:
    """A conjugacy class of subgroups with its minimal-key representative."""

    representative: Subgroup
    members: tuple[Subgroup, ...]


def from_permutations(perms: Sequence[Permutation]) -> AbstractGroup:
    """Table of a closed set of permutations, sorted lexicographically (identity first)."""
    elements = sorted(set(perms))
    index = {p: i for i, p in enumerate(elements)}
    m = len(elements)
    table = np.empty((m, m), dtype=np.int64)
    for i, p in enumerate(elements):
        for j, q in enumerate(elements):
            table[i, j] = index[compose(p, q)]
    labels = tuple(format_cycles(p) for p in elements)
    return AbstractGroup(table=table, identity=0, labels=labels)


def cayley_table(g: GeneratedGroup, cap: int | None = None) -> AbstractGroup:
    limit = CAYLEY_ORDER_CAP if cap is None else cap
    check_cap("cayley table order", limit, g.order())
    return from_permutations(list(g.elements(limit)))


def cyclic_group(n: int) -> AbstractGroup:
    idx = np.arange(n)
    table = (idx[:, None] + idx[None, :]) % n
    labels = tuple("e" if i == 0 else f"a^{i}" for i in range(n))
    return AbstractGroup(table=table, identity=0, labels=labels)


def direct_product(a: AbstractGroup, b: AbstractGroup) -> AbstractGroup:
    """a x b with (x, y) at index x * |b| + y."""
    mb = b.order
    table = a.table[:, None, :, None] * mb + b.table[None, :, None, :]
    m = a.order * mb
    labels = tuple(f"({x}, {y})" for x in a.labels for y in b.labels)
    return AbstractGroup(table=table.reshape(m, m), identity=a.identity * mb + b.identity, labels=labels)


def subgroups(a: AbstractGroup, cap: int | None = None) -> list[Subgroup]:
    """Every subgroup, from the cyclic ones closed under joins, ordered by (order, elements)."""
    check_cap("subgroup lattice order", LATTICE_ORDER_CAP if cap is None else cap, a.order)
    cyclic = {a.generated([x]) for x in range(a.order)}
    found = set(cyclic)
    frontier = list(found)
    while frontier:
        grown = []
        for h in frontier:
            members = set(h)
            for c in cyclic:
                if members.issuperset(c):
                    continue
                joined = a.generated(members | set(c))
                if joined not in found:
                    found.add(joined)
                    grown.append(joined)
        frontier = grown
    out = sorted((Subgroup(h) for h in found), key=Subgroup.key)
    LOGGER.debug("subgroup lattice of order %s: %s subgroups", a.order, len(out))
    return out


def conjugate(a: AbstractGroup, h: Subgroup, g: int) -> Subgroup:
    """g^-1 h g."""
    elems = np.asarray(h.elements, dtype=np.int64)
    conj = a.table[a.table[a.inverse(g), elems], g]
    return Subgroup(tuple(sorted(int(x) for x in conj)))


def is_normal(a: AbstractGroup, h: Subgroup) -> bool:
    return all(conjugate(a, h, g) == h for g in a.generators)


def core(a: AbstractGroup, h: Subgroup) -> Subgroup:
    """Intersection of all conjugates of h; the kernel of the action on its cosets."""
    common = set(h.elements)
    for g in range(a.order):
        common &= set(conjugate(a, h, g).elements)
    return Subgroup(tuple(sorted(common)))


def _coset_images(a: AbstractGroup, h: Subgroup) -> list[tuple[int, ...]]:
    """0-based images of a.generators on the right cosets Hx, numbered by first element in index order."""
    elems = np.asarray(h.elements, dtype=np.int64)
    coset_of = np.full(a.order, -1, dtype=np.int64)
    reps: list[int] = []
    for x in range(a.order):
        if coset_of[x] < 0:
            coset_of[a.table[elems, x]] = len(reps)
            reps.append(x)
    return [tuple(int(coset_of[a.table[r, s]]) for r in reps) for s in a.generators]


def coset_action(a: AbstractGroup, h: Subgroup) -> GeneratedGroup:
    """Right multiplication on the right cosets Hx."""
    images = _coset_images(a, h)
    return group_from(len(images[0]), [Permutation._trusted(x) for x in images])


def diagonal_action(a: AbstractGroup, subs: Sequence[Subgroup]) -> GeneratedGroup:
    """a acting on the disjoint union of the coset spaces of subs.

    Generator j of the result moves every block by generator j of a, so the
    image is a quotient of a (isomorphic to it when the cores meet trivially).
    """
    if not subs:
        raise ValueError("diagonal_action needs at least one subgroup")
    return _concatenate([_coset_images(a, h) for h in subs])


def _concatenate(blocks: Sequence[list[tuple[int, ...]]]) -> GeneratedGroup:
    gens = []
    for j in range(len(blocks[0])):
        images: list[int] = []
        for block in blocks:
            offset = len(images)
            images.extend(offset + x for x in block[j])
        gens.append(Permutation._trusted(tuple(images)))
    return group_from(len(gens[0].images), gens)


def subgroup_classes(a: AbstractGroup, subs: Sequence[Subgroup] | None = None) -> list[SubgroupClass]:
    """Conjugacy classes of subgroups, ordered by their representatives' keys."""
    remaining = list(subgroups(a) if subs is None else subs)
    seen: set[Subgroup] = set()
    classes = []
    for h in remaining:
        if h in seen:
            continue
        members = sorted({conjugate(a, h, g) for g in range(a.order)}, key=Subgroup.key)
        seen.update(members)
        classes.append(SubgroupClass(representative=members[0], members=tuple(members)))
    classes.sort(key=lambda c: c.representative.key())
    return classes


def _multisets(sizes: Sequence[int], max_total: int) -> Iterator[tuple[int, ...]]:
    """Nondecreasing index tuples into sizes whose size sum is at most max_total."""

    def walk(start: int, total: int, prefix: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
        if prefix:
            yield prefix
        for i in range(start, len(sizes)):
            if total + sizes[i] <= max_total:
                yield from walk(i, total + sizes[i], prefix + (i,))

    return walk(0, 0, ())


def faithful_representations(
    a: AbstractGroup, max_degree: int, cap: int | None = None
) -> Iterator[GeneratedGroup]:
    """Every faithful action of a on at most max_degree points, up to equivalence.

    An action is a multiset of conjugacy classes of proper subgroups (fixed
    points never change a closure, so the whole group is left out) whose cores
    meet trivially. The stream is ordered by degree, then by class indices.
    """
    check_cap("subgroup lattice order", LATTICE_ORDER_CAP if cap is None else cap, a.order)
    if a.order == 1:
        if max_degree >= 1:
            yield group_from(1, [])
        return

    classes = [c for c in subgroup_classes(a) if c.representative.order < a.order]
    sizes = [a.order // c.representative.order for c in classes]
    cores = [set(core(a, c.representative).elements) for c in classes]

    choices = []
    for combo in _multisets(sizes, max_degree):
        kernel = set.intersection(*(cores[i] for i in combo))
        if kernel == {a.identity}:
            choices.append((sum(sizes[i] for i in combo), combo))
    choices.sort()
    LOGGER.debug("order %s: %s faithful actions up to degree %s", a.order, len(choices), max_degree)

    blocks: dict[int, list[tuple[int, ...]]] = {}
    for _, combo in choices:
        for i in set(combo):
            if i not in blocks:
                blocks[i] = _coset_images(a, classes[i].representative)
        yield _concatenate([blocks[i] for i in combo])


def representation_count(a: AbstractGroup, max_degree: int) -> int:
    return sum(1 for _ in faithful_representations(a, max_degree))
