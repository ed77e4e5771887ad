"""
Generated permutation groups and their stabilizer chains.

Chains are built by a deterministic Schreier-Sims pass over the full point
sequence 1..n (optionally led by a chosen prefix). Levels whose basic orbit is
a single point are kept internally for sifting but are not part of the base,
so the exposed base is exactly the greedy one: each base point is the
smallest point moved by the pointwise stabilizer of the earlier ones.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import TYPE_CHECKING, Iterable, Iterator, Sequence

from config.settings import ELEMENT_ENUMERATION_CAP
from scripts.errors import GroupSpecError, PermutationError, check_cap
from scripts.permutation import (
    Permutation,
    compose,
    format_cycles,
    identity,
    inverse,
    is_identity,
    parse_cycles,
)

if TYPE_CHECKING:
    from scripts.abstract_group import AbstractGroup

LOGGER = logging.getLogger("perm_group")
GROUP_SPEC_RE = re.compile(r"\s*(\d+)\s*:(.*)", re.DOTALL)


@dataclass(frozen=True)
class GeneratedGroup:
    """The group generated by a nonempty list of equal-degree permutations."""

    degree: int
    generators: tuple[Permutation, ...]

    def __post_init__(self) -> None:
        gens = tuple(self.generators)
        object.__setattr__(self, "generators", gens)
        if not gens:
            raise PermutationError("a generated group needs at least one generator")
        for gen in gens:
            if gen.degree != self.degree:
                raise PermutationError(
                    f"generator {format_cycles(gen)} has degree {gen.degree}, expected {self.degree}"
                )

    @cached_property
    def chain(self) -> "StabilizerChain":
        return build_chain(self)

    def order(self) -> int:
        return self.chain.order()

    def contains(self, p: Permutation) -> bool:
        return self.chain.contains(p)

    def elements(self, cap: int | None = None) -> Iterator[Permutation]:
        return self.chain.elements(cap)

    def __str__(self) -> str:
        return format_group_spec(self)


@dataclass
class _Level:
    """One level of a stabilizer chain: base point, generators, transversal."""

    point: int  # 0-based
    generators: list[Permutation] = field(default_factory=list)
    orbit: list[int] = field(default_factory=list)
    transversal: dict[int, Permutation] = field(default_factory=dict)
    inverse_transversal: dict[int, Permutation] = field(default_factory=dict)

    def reset_orbit(self, degree: int) -> None:
        """Recompute the basic orbit and transversal in breadth-first order."""
        ident = identity(degree)
        self.orbit = [self.point]
        self.transversal = {self.point: ident}
        self.inverse_transversal = {self.point: ident}
        cursor = 0
        while cursor < len(self.orbit):
            x = self.orbit[cursor]
            cursor += 1
            ux = self.transversal[x]
            for gen in self.generators:
                y = gen.images[x]
                if y not in self.transversal:
                    uy = compose(ux, gen)
                    self.transversal[y] = uy
                    self.inverse_transversal[y] = inverse(uy)
                    self.orbit.append(y)


class StabilizerChain:
    """Base, basic orbits with transversals, and strong generators of a group."""

    def __init__(self, degree: int, levels: list[_Level]) -> None:
        self.degree = degree
        self._levels = levels

    @classmethod
    def empty(cls, degree: int, point_order: Sequence[int]) -> "StabilizerChain":
        levels = [_Level(point=point) for point in point_order]
        for level in levels:
            level.reset_orbit(degree)
        return cls(degree, levels)

    @property
    def base(self) -> list[int]:
        """Base points (1-based); levels with a trivial basic orbit are skipped."""
        return [level.point + 1 for level in self._levels if len(level.orbit) > 1]

    @property
    def strong_generators(self) -> list[Permutation]:
        seen: set[Permutation] = set()
        out = []
        for level in self._levels:
            for gen in level.generators:
                if gen not in seen:
                    seen.add(gen)
                    out.append(gen)
        return out

    def level_generators(self, index: int) -> list[Permutation]:
        """Generators of the pointwise stabilizer of the first ``index`` chain points."""
        if index >= len(self._levels):
            return []
        return list(self._levels[index].generators)

    def order(self) -> int:
        result = 1
        for level in self._levels:
            result *= len(level.orbit)
        return result

    def sift(self, p: Permutation, start: int = 0) -> tuple[Permutation, int]:
        """Strip p through the chain; returns the residue and the level reached."""
        if p.degree != self.degree:
            raise PermutationError(f"degree mismatch: {p.degree} vs {self.degree}")
        for index in range(start, len(self._levels)):
            level = self._levels[index]
            x = p.images[level.point]
            u_inv = level.inverse_transversal.get(x)
            if u_inv is None:
                return p, index
            p = compose(p, u_inv)
        return p, len(self._levels)

    def contains(self, p: Permutation, start: int = 0) -> bool:
        residue, index = self.sift(p, start)
        return index == len(self._levels) and is_identity(residue)

    def extend(self, index: int, h: Permutation) -> bool:
        """Make the group at level ``index`` contain h; returns False if it already did."""
        if index >= len(self._levels) or self.contains(h, index):
            return False
        level = self._levels[index]
        level.generators.append(h)
        level.reset_orbit(self.degree)
        for x in list(level.orbit):
            ux = level.transversal[x]
            for gen in list(level.generators):
                y = gen.images[x]
                schreier = compose(compose(ux, gen), level.inverse_transversal[y])
                if not is_identity(schreier):
                    self.extend(index + 1, schreier)
        return True

    def elements(self, cap: int | None = None) -> Iterator[Permutation]:
        """Stream every element exactly once, in a fixed order."""
        limit = ELEMENT_ENUMERATION_CAP if cap is None else cap
        check_cap("element enumeration", limit, self.order())
        levels = [level for level in self._levels if len(level.orbit) > 1]
        return self._walk(levels, 0)

    def _walk(self, levels: list[_Level], index: int) -> Iterator[Permutation]:
        if index == len(levels):
            yield identity(self.degree)
            return
        level = levels[index]
        for x in level.orbit:
            u = level.transversal[x]
            for h in self._walk(levels, index + 1):
                yield compose(h, u)


def build_chain(g: GeneratedGroup, base_prefix: Sequence[int] = ()) -> StabilizerChain:
    """Build the stabilizer chain of g, optionally led by the 1-based points in base_prefix."""
    prefix = [point - 1 for point in base_prefix]
    for point in prefix:
        if not 0 <= point < g.degree:
            raise PermutationError(f"point {point + 1} out of range 1..{g.degree}")
    point_order = prefix + [x for x in range(g.degree) if x not in prefix]
    chain = StabilizerChain.empty(g.degree, point_order)
    for gen in g.generators:
        if not is_identity(gen):
            chain.extend(0, gen)
    LOGGER.debug("chain built: degree=%s order=%s base=%s", g.degree, chain.order(), chain.base)
    return chain


def group_from(degree: int, generators: Iterable[Permutation]) -> GeneratedGroup:
    """Group generated by the given permutations; the identity stands in for an empty list."""
    gens = tuple(generators)
    return GeneratedGroup(degree, gens or (identity(degree),))


def reduce_generators(candidates: Iterable[Permutation], degree: int) -> tuple[Permutation, ...]:
    """Keep, in the given order, only the candidates that enlarge the group built so far."""
    chain = StabilizerChain.empty(degree, range(degree))
    kept = []
    for candidate in candidates:
        if chain.extend(0, candidate):
            kept.append(candidate)
    return tuple(kept) or (identity(degree),)


def orbits(g: GeneratedGroup) -> list[tuple[int, ...]]:
    """Orbit partition of {1..degree}, each orbit sorted, ordered by smallest element."""
    seen = [False] * g.degree
    out = []
    for start in range(g.degree):
        if seen[start]:
            continue
        seen[start] = True
        orbit = [start]
        cursor = 0
        while cursor < len(orbit):
            x = orbit[cursor]
            cursor += 1
            for gen in g.generators:
                y = gen.images[x]
                if not seen[y]:
                    seen[y] = True
                    orbit.append(y)
        out.append(tuple(sorted(x + 1 for x in orbit)))
    return out


def pointwise_stabilizer(g: GeneratedGroup, points: Sequence[int]) -> GeneratedGroup:
    """Generators of the pointwise stabilizer of the given 1-based points."""
    if len(set(points)) != len(points):
        raise PermutationError(f"repeated point in {list(points)}")
    chain = build_chain(g, base_prefix=points)
    return group_from(g.degree, chain.level_generators(len(points)))


def point_stabilizer(g: GeneratedGroup, alpha: int) -> GeneratedGroup:
    """Generators of the full stabilizer of one point."""
    return pointwise_stabilizer(g, [alpha])


def is_abelian(g: GeneratedGroup) -> bool:
    gens = g.generators
    return all(
        compose(a, b) == compose(b, a) for i, a in enumerate(gens) for b in gens[i + 1:]
    )


def is_transitive(g: GeneratedGroup) -> bool:
    return len(orbits(g)) == 1


def is_regular(g: GeneratedGroup) -> bool:
    return is_transitive(g) and g.order() == g.degree


def is_subgroup(h: GeneratedGroup, g: GeneratedGroup) -> bool:
    """Whether every generator of h lies in g."""
    return h.degree == g.degree and all(g.contains(x) for x in h.generators)


def same_group(g: GeneratedGroup, h: GeneratedGroup) -> bool:
    """Equality of generated groups: same order and mutual generator membership."""
    return g.order() == h.order() and is_subgroup(h, g) and is_subgroup(g, h)


def regular_representation(a: "AbstractGroup") -> GeneratedGroup:
    """Right-multiplication action of an abstract group on its own elements."""
    gens = []
    for s in a.generators:
        column = a.table[:, s]
        gens.append(Permutation._trusted(tuple(int(x) for x in column)))
    return group_from(a.order, gens)


def disjoint_union_product(parts: Sequence[GeneratedGroup]) -> GeneratedGroup:
    """Direct product acting on the disjoint union of the parts' domains."""
    if not parts:
        raise PermutationError("disjoint_union_product needs at least one part")
    if len(parts) == 1:
        return parts[0]
    total = sum(part.degree for part in parts)
    gens = []
    offset = 0
    for part in parts:
        for gen in part.generators:
            if is_identity(gen):
                continue
            images = list(range(total))
            for i, x in enumerate(gen.images):
                images[offset + i] = offset + x
            gens.append(Permutation._trusted(tuple(images)))
        offset += part.degree
    return group_from(total, gens)


def symmetric_group(points: Sequence[int], degree: int) -> GeneratedGroup:
    """Full symmetric group on the given 1-based points, fixing all others."""
    pts = sorted(points)
    if len(pts) < 2:
        return group_from(degree, [])
    transposition = list(range(degree))
    transposition[pts[0] - 1], transposition[pts[1] - 1] = pts[1] - 1, pts[0] - 1
    gens = [Permutation._trusted(tuple(transposition))]
    if len(pts) > 2:
        cycle = list(range(degree))
        for src, dst in zip(pts, pts[1:] + pts[:1]):
            cycle[src - 1] = dst - 1
        gens.append(Permutation._trusted(tuple(cycle)))
    return GeneratedGroup(degree, tuple(gens))


def parse_group_spec(text: str) -> GeneratedGroup:
    """Parse ``"6: (3 4)(5 6), (1 2)(5 6)"``; an empty list after the colon is the trivial group."""
    match = GROUP_SPEC_RE.fullmatch(text or "")
    if not match:
        raise GroupSpecError(f"expected 'degree: gen, gen, ...', got {text!r}")
    degree = int(match.group(1))
    if degree < 1:
        raise GroupSpecError(f"degree must be positive in {text!r}")
    body = match.group(2).strip()
    if not body:
        return group_from(degree, [])
    gens = []
    for piece in body.split(","):
        piece = piece.strip()
        if not piece:
            raise GroupSpecError(f"empty generator in {text!r}")
        try:
            gens.append(parse_cycles(piece, degree))
        except PermutationError as exc:
            raise GroupSpecError(f"bad generator {piece!r}: {exc}") from exc
    return GeneratedGroup(degree, tuple(gens))


def format_group_spec(g: GeneratedGroup) -> str:
    return f"{g.degree}: " + ", ".join(format_cycles(gen) for gen in g.generators)
