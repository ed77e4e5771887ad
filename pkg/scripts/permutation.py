"""
Exact permutation arithmetic on a fixed finite domain, with cycle-notation I/O.

Points are 1-based at every public boundary (cycle text, tuples, one_based()).
Internally a Permutation stores 0-based images so that image lookups are plain
tuple indexing. Products act left to right: ``compose(p, q)`` applies p first,
so ``compose(p, q)(x) == q(p(x))``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from scripts.errors import PermutationError

CYCLE_RE = re.compile(r"\(\s*(\d+(?:\s+\d+)*)?\s*\)")
PERMUTATION_RE = re.compile(r"\s*(?:\(\s*(?:\d+(?:\s+\d+)*)?\s*\)\s*)+")


@dataclass(frozen=True, order=True)
class Permutation:
    """A bijection of {1..degree}; ``images[i]`` is the 0-based image of point i+1."""

    degree: int
    images: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.degree < 1:
            raise PermutationError(f"degree must be positive, got {self.degree}")
        if len(self.images) != self.degree:
            raise PermutationError(
                f"expected {self.degree} images, got {len(self.images)}"
            )
        if sorted(self.images) != list(range(self.degree)):
            raise PermutationError(f"images are not a bijection: {self.images}")

    @classmethod
    def _trusted(cls, images: tuple[int, ...]) -> "Permutation":
        """Build from images already known to be a bijection (skips validation)."""
        perm = object.__new__(cls)
        object.__setattr__(perm, "degree", len(images))
        object.__setattr__(perm, "images", images)
        return perm

    @classmethod
    def from_one_based(cls, images: Sequence[int]) -> "Permutation":
        """Build from a 1-based image list such as ``[2, 1, 4, 3]``."""
        return cls(len(images), tuple(int(x) - 1 for x in images))

    def one_based(self) -> list[int]:
        """Return the image sequence in the external 1-based layout."""
        return [x + 1 for x in self.images]

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def __str__(self) -> str:
        return format_cycles(self)


def _check_point(point: int, degree: int) -> None:
    if not 1 <= point <= degree:
        raise PermutationError(f"point {point} out of range 1..{degree}")


def identity(degree: int) -> Permutation:
    """Return the identity permutation of the given degree."""
    if degree < 1:
        raise PermutationError(f"degree must be positive, got {degree}")
    return Permutation._trusted(tuple(range(degree)))


def is_identity(p: Permutation) -> bool:
    """Return whether p fixes every point."""
    return all(i == x for i, x in enumerate(p.images))


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Apply p first, then q."""
    if p.degree != q.degree:
        raise PermutationError(f"degree mismatch: {p.degree} vs {q.degree}")
    qi = q.images
    return Permutation._trusted(tuple(qi[x] for x in p.images))


def compose_all(perms: Iterable[Permutation], degree: int) -> Permutation:
    """Multiply a sequence of permutations left to right."""
    result = identity(degree)
    for perm in perms:
        result = compose(result, perm)
    return result


def inverse(p: Permutation) -> Permutation:
    """Return the inverse permutation."""
    inv = [0] * p.degree
    for i, x in enumerate(p.images):
        inv[x] = i
    return Permutation._trusted(tuple(inv))


def _cycles0(p: Permutation) -> list[tuple[int, ...]]:
    """Nontrivial cycles with 0-based points, each starting at its smallest point."""
    seen = [False] * p.degree
    out = []
    for start in range(p.degree):
        if seen[start] or p.images[start] == start:
            continue
        cycle = [start]
        seen[start] = True
        nxt = p.images[start]
        while nxt != start:
            seen[nxt] = True
            cycle.append(nxt)
            nxt = p.images[nxt]
        out.append(tuple(cycle))
    return out


def cycles(p: Permutation) -> list[tuple[int, ...]]:
    """Nontrivial cycles as 1-based tuples, sorted by smallest element."""
    return [tuple(x + 1 for x in cycle) for cycle in _cycles0(p)]


def support(p: Permutation) -> list[int]:
    """Points moved by p (1-based, increasing)."""
    return [i + 1 for i, x in enumerate(p.images) if i != x]


def power(p: Permutation, exponent: int) -> Permutation:
    """Return p**exponent, computed cycle by cycle (negative exponents allowed)."""
    images = list(range(p.degree))
    for cycle in _cycles0(p):
        length = len(cycle)
        shift = exponent % length
        for index, point in enumerate(cycle):
            images[point] = cycle[(index + shift) % length]
    return Permutation._trusted(tuple(images))


def apply_to_tuple(p: Permutation, points: Sequence[int]) -> tuple[int, ...]:
    """Coordinatewise image of a tuple of 1-based points."""
    for point in points:
        _check_point(point, p.degree)
    return tuple(p.images[x - 1] + 1 for x in points)


def format_cycles(p: Permutation) -> str:
    """Cycle notation with fixed points omitted; the identity prints as ``()``."""
    parts = ["(" + " ".join(str(x) for x in cycle) + ")" for cycle in cycles(p)]
    return "".join(parts) if parts else "()"


def parse_cycles(text: str, degree: int) -> Permutation:
    """Parse cycle notation such as ``(1 2 3 4)(5 6)`` on {1..degree}.

    Points may appear at most once in the whole expression, so the text always
    describes disjoint cycles rather than a product.
    """
    if degree < 1:
        raise PermutationError(f"degree must be positive, got {degree}")
    if not PERMUTATION_RE.fullmatch(text):
        raise PermutationError(f"could not parse permutation {text!r}")

    images = list(range(degree))
    seen: set[int] = set()
    for match in CYCLE_RE.finditer(text):
        body = match.group(1)
        if not body:
            continue
        cycle = [int(token) for token in body.split()]
        for point in cycle:
            _check_point(point, degree)
            if point in seen:
                raise PermutationError(f"point {point} repeated in {text!r}")
            seen.add(point)
        for src, dst in zip(cycle, cycle[1:] + cycle[:1]):
            images[src - 1] = dst - 1
    return Permutation._trusted(tuple(images))
