"""
Orbit colourings of Omega^k and the Wielandt k-closure.

A k-tuple over {1..n} is encoded as an integer in base n with the first
coordinate most significant, so numeric order is lexicographic order. The
colour of a tuple is the smallest code in its G-orbit; a permutation lies in
G^(k) exactly when it maps every tuple to a tuple of the same colour.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from config.settings import CLOSURE_DEGREE_CAP, NAIVE_DEGREE_CAP, TUPLE_TABLE_CAP
from scripts.errors import PermutationError, check_cap
from scripts.perm_group import GeneratedGroup, build_chain, reduce_generators
from scripts.permutation import Permutation, is_identity

LOGGER = logging.getLogger("closure_engine")
NAIVE_CHUNK = 2048


def _digit_table(degree: int, arity: int) -> np.ndarray:
    """Array of shape (arity, degree**arity) holding the 0-based digits of every code."""
    codes = np.arange(degree ** arity, dtype=np.int64)
    rows = [(codes // degree ** (arity - 1 - j)) % degree for j in range(arity)]
    return np.stack(rows)


def _weights(degree: int, arity: int) -> np.ndarray:
    return degree ** np.arange(arity - 1, -1, -1, dtype=np.int64)


@dataclass(frozen=True, eq=False)
class OrbitColoring:
    """Canonical colouring of Omega^k by G-orbit."""

    degree: int
    arity: int
    colors: np.ndarray

    def encode(self, points: Sequence[int]) -> int:
        """Code of a 1-based k-tuple."""
        if len(points) != self.arity:
            raise PermutationError(f"expected a {self.arity}-tuple, got {tuple(points)}")
        code = 0
        for point in points:
            if not 1 <= point <= self.degree:
                raise PermutationError(f"point {point} out of range 1..{self.degree}")
            code = code * self.degree + (point - 1)
        return code

    def decode(self, code: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.arity):
            code, digit = divmod(code, self.degree)
            out.append(digit + 1)
        return tuple(reversed(out))

    def color_of(self, points: Sequence[int]) -> int:
        return int(self.colors[self.encode(points)])

    def orbit_of(self, points: Sequence[int]) -> list[tuple[int, ...]]:
        """All tuples sharing the colour of ``points``, in lexicographic order."""
        codes = np.flatnonzero(self.colors == self.color_of(points))
        return [self.decode(int(code)) for code in codes]

    def orbit_count(self) -> int:
        return int(np.unique(self.colors).size)


def tuple_orbits(g: GeneratedGroup, k: int, cap: int | None = None) -> OrbitColoring:
    """Colour every k-tuple by its G-orbit (colour = smallest code in the orbit)."""
    if k < 1:
        raise ValueError(f"k must be at least 1, got {k}")
    n = g.degree
    check_cap("tuple table", TUPLE_TABLE_CAP if cap is None else cap, n ** k)

    digits = _digit_table(n, k)
    weights = _weights(n, k)
    moves = []
    for gen in g.generators:
        if is_identity(gen):
            continue
        perm = np.asarray(gen.images, dtype=np.int64)
        moves.append(weights @ perm[digits])

    # min-label propagation with pointer jumping; the fixpoint labels each
    # tuple with the smallest code in its connected component
    labels = np.arange(n ** k, dtype=np.int64)
    while True:
        previous = labels.copy()
        for move in moves:
            np.minimum(labels, labels[move], out=labels)
            labels[move] = np.minimum(labels[move], labels)
        labels = labels[labels]
        if np.array_equal(labels, previous):
            break
    labels.setflags(write=False)
    LOGGER.debug("tuple_orbits: degree=%s k=%s orbits=%s", n, k, np.unique(labels).size)
    return OrbitColoring(degree=n, arity=k, colors=labels)


def k_orbit_count(g: GeneratedGroup, k: int) -> int:
    """Number of G-orbits on ordered k-tuples."""
    return tuple_orbits(g, k).orbit_count()


class _ColorSearch:
    """Backtracking over point images with colour checks on every completed tuple."""

    def __init__(self, coloring: OrbitColoring) -> None:
        n, k = coloring.degree, coloring.arity
        self.degree = n
        self.colors = coloring.colors
        self.weights = _weights(n, k)
        digits = _digit_table(n, k)
        top = digits.max(axis=0)
        # tuples whose largest entry is i become checkable once i is assigned
        self.new_tuples = [digits[:, top == i].T.copy() for i in range(n)]
        self.new_colors = [self.colors[t @ self.weights] for t in self.new_tuples]
        diagonal = self.colors[np.arange(n, dtype=np.int64) * int(self.weights.sum())]
        self.candidates = [
            [y for y in range(n) if diagonal[y] == diagonal[i]] for i in range(n)
        ]

    def _consistent(self, partial: np.ndarray, point: int) -> bool:
        mapped = partial[self.new_tuples[point]] @ self.weights
        return bool(np.array_equal(self.colors[mapped], self.new_colors[point]))

    def find(self, point: int, target: int) -> Permutation | None:
        """First colour-preserving h fixing 0..point-1 with h(point) = target."""
        n = self.degree
        partial = np.full(n, -1, dtype=np.int64)
        partial[:point] = np.arange(point)
        used = [False] * n
        for j in range(point):
            used[j] = True
        partial[point] = target
        used[target] = True
        if not self._consistent(partial, point):
            return None
        if self._extend(partial, used, point + 1):
            return Permutation._trusted(tuple(int(x) for x in partial))
        return None

    def _extend(self, partial: np.ndarray, used: list[bool], point: int) -> bool:
        if point == self.degree:
            return True
        for y in self.candidates[point]:
            if used[y]:
                continue
            partial[point] = y
            used[y] = True
            if self._consistent(partial, point) and self._extend(partial, used, point + 1):
                return True
            used[y] = False
        partial[point] = -1
        return False


def _orbit_of_point(point: int, generators: list[Permutation]) -> set[int]:
    orbit = {point}
    frontier = [point]
    while frontier:
        x = frontier.pop()
        for gen in generators:
            y = gen.images[x]
            if y not in orbit:
                orbit.add(y)
                frontier.append(y)
    return orbit


def _closure_representatives(
    g: GeneratedGroup, k: int, degree_cap: int | None, stop_at_first: bool
) -> list[Permutation]:
    """Colour-preserving elements that, together with g, generate G^(k).

    Levels are processed from the last point to the first. At point i the
    known part of the closure's stabilizer of 0..i-1 is g's own stabilizer plus
    every representative found so far; one representative is searched for
    each candidate image outside its orbit. With stop_at_first the first
    representative is returned, and it never lies in g.
    """
    check_cap("closure degree", CLOSURE_DEGREE_CAP if degree_cap is None else degree_cap, g.degree)
    coloring = tuple_orbits(g, k)
    search = _ColorSearch(coloring)
    chain = build_chain(g)
    found: list[Permutation] = []
    for point in reversed(range(g.degree)):
        generators = chain.level_generators(point) + found
        orbit = _orbit_of_point(point, generators)
        for target in search.candidates[point]:
            if target < point or target in orbit:
                continue
            rep = search.find(point, target)
            if rep is None:
                continue
            LOGGER.debug("closure representative at point %s -> %s: %s", point + 1, target + 1, rep)
            if stop_at_first:
                return [rep]
            found.append(rep)
            generators.append(rep)
            orbit = _orbit_of_point(point, generators)
    return found


def find_closure_witness(
    g: GeneratedGroup, k: int, degree_cap: int | None = None
) -> Permutation | None:
    """A permutation preserving every k-orbit colour that is not in g, or None."""
    found = _closure_representatives(g, k, degree_cap, stop_at_first=True)
    return found[0] if found else None


def is_k_closed(g: GeneratedGroup, k: int, degree_cap: int | None = None) -> bool:
    """Whether G^(k) == G; exits on the first witness outside g."""
    return find_closure_witness(g, k, degree_cap) is None


def k_closure(g: GeneratedGroup, k: int, degree_cap: int | None = None) -> GeneratedGroup:
    """G^(k) with a deterministic reduced generating set."""
    found = _closure_representatives(g, k, degree_cap, stop_at_first=False)
    candidates = sorted(set(build_chain(g).strong_generators) | set(found))
    return GeneratedGroup(g.degree, reduce_generators(candidates, g.degree))


def k_closure_naive(g: GeneratedGroup, k: int) -> GeneratedGroup:
    """G^(k) by filtering every element of Sym(n) against the colouring."""
    n = g.degree
    check_cap("naive degree", NAIVE_DEGREE_CAP, n)
    coloring = tuple_orbits(g, k)
    digits = _digit_table(n, k)
    weights = _weights(n, k)
    colors = coloring.colors

    accepted: list[Permutation] = []
    perms = itertools.permutations(range(n))
    while True:
        chunk = np.array(list(itertools.islice(perms, NAIVE_CHUNK)), dtype=np.int64)
        if chunk.size == 0:
            break
        # codes[p, c] = code of the image of tuple c under permutation p
        codes = np.einsum("j,pjc->pc", weights, chunk[:, digits])
        keep = np.all(colors[codes] == colors[None, :], axis=1)
        for row in chunk[keep]:
            accepted.append(Permutation._trusted(tuple(int(x) for x in row)))
    LOGGER.debug("naive closure: degree=%s k=%s accepted=%s", n, k, len(accepted))
    return GeneratedGroup(n, reduce_generators(accepted, n))
