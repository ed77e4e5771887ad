"""
Structure of permutation groups: element orders and p-parts, Sylow
decomposition of nilpotent groups, greedy and exact base numbers, and the
abelian invariant-factor count n(G).
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

from sympy import factorint, isprime, multiplicity, primefactors
from sympy.ntheory.modular import crt

from config.settings import BASE_SEARCH_DEGREE_CAP, ELEMENT_ENUMERATION_CAP
from scripts.errors import NonAbelianInputError, NotNilpotentError, NotPrimeError, check_cap
from scripts.perm_group import (
    GeneratedGroup,
    group_from,
    is_abelian,
    orbits,
    point_stabilizer,
)
from scripts.permutation import Permutation, compose, cycles, identity, is_identity, power

LOGGER = logging.getLogger("structure")


@dataclass(frozen=True)
class SylowComponent:
    prime: int
    exponent: int
    group: GeneratedGroup

    @property
    def order(self) -> int:
        return self.prime ** self.exponent


@dataclass(frozen=True)
class SylowDecomposition:
    """Sylow subgroups of a nilpotent group, one per prime dividing its order."""

    order: int
    components: tuple[SylowComponent, ...]

    @property
    def primes(self) -> list[int]:
        return [c.prime for c in self.components]

    def component(self, prime: int) -> SylowComponent:
        for c in self.components:
            if c.prime == prime:
                return c
        raise KeyError(prime)

    def to_dict(self) -> dict[str, object]:
        return {
            "order": self.order,
            "primes": self.primes,
            "components": [
                {"prime": c.prime, "order": c.order, "group": str(c.group)}
                for c in self.components
            ],
        }


def _require_prime(p: int) -> None:
    if not isprime(p):
        raise NotPrimeError(f"{p} is not prime")


def prime_power(n: int) -> tuple[int, int] | None:
    """(p, e) with n == p**e and e >= 1, or None."""
    if n < 2:
        return None
    factors = factorint(n)
    if len(factors) != 1:
        return None
    (p, e), = factors.items()
    return int(p), int(e)


def element_order(p: Permutation) -> int:
    return math.lcm(*(len(c) for c in cycles(p)))


def p_part(x: Permutation, p: int) -> Permutation:
    """The p-power-order part of x, i.e. x**a with a = 1 mod p^e and a = 0 mod m'."""
    _require_prime(p)
    m = element_order(x)
    e = multiplicity(p, m)
    if e == 0:
        return identity(x.degree)
    pe = p ** e
    rest = m // pe
    if rest == 1:
        return x
    a, _ = crt([pe, rest], [1, 0])
    return power(x, int(a))


def is_p_group(g: GeneratedGroup, p: int | None = None) -> bool:
    """Whether |g| is a power of p (of some prime when p is None); the trivial group counts."""
    order = g.order()
    if order == 1:
        return True
    pp = prime_power(order)
    return pp is not None and (p is None or pp[0] == p)


def sylow_decomposition(g: GeneratedGroup) -> SylowDecomposition:
    """Split g into the subgroups generated by its generators' p-parts and validate."""
    order = g.order()
    components = []
    for p in primefactors(order):
        gens = [x for x in (p_part(s, p) for s in g.generators) if not is_identity(x)]
        part = group_from(g.degree, gens)
        part_order = part.order()
        pp = prime_power(part_order)
        if pp is None or pp[0] != p:
            raise NotNilpotentError(
                f"p-parts for p={p} generate a group of order {part_order}, not a {p}-group"
            )
        components.append(SylowComponent(prime=int(p), exponent=pp[1], group=part))

    if math.prod(c.order for c in components) != order:
        raise NotNilpotentError(
            f"component orders {[c.order for c in components]} do not multiply to {order}"
        )
    for i, left in enumerate(components):
        for right in components[i + 1:]:
            for a in left.group.generators:
                for b in right.group.generators:
                    if compose(a, b) != compose(b, a):
                        raise NotNilpotentError(
                            f"{a} ({left.prime}-part) and {b} ({right.prime}-part) do not commute"
                        )
    LOGGER.debug("sylow decomposition of %s: %s", g, [(c.prime, c.order) for c in components])
    return SylowDecomposition(order=order, components=tuple(components))


def is_nilpotent(g: GeneratedGroup) -> bool:
    try:
        sylow_decomposition(g)
    except NotNilpotentError:
        return False
    return True


def greedy_base(g: GeneratedGroup) -> list[int]:
    """Base built from the smallest point moved by each successive stabilizer."""
    return g.chain.base


def _has_base_within(h: GeneratedGroup, remaining: int) -> bool:
    order = h.order()
    if order == 1:
        return True
    if remaining == 0:
        return False
    moved = [orbit for orbit in orbits(h) if len(orbit) > 1]
    # one added point divides the order by at most the largest orbit length
    if max(len(orbit) for orbit in moved) ** remaining < order:
        return False
    # stabilizers of points in one orbit are conjugate; the smallest point stands for the orbit
    for orbit in moved:
        if _has_base_within(point_stabilizer(h, orbit[0]), remaining - 1):
            return True
    return False


def base_number(g: GeneratedGroup, cap: int | None = None) -> int:
    """Exact minimal base size, by increasing-size search over irredundant sequences."""
    upper = len(greedy_base(g))
    if upper <= 1:
        return upper
    check_cap("base search degree", BASE_SEARCH_DEGREE_CAP if cap is None else cap, g.degree)
    for size in range(1, upper):
        if _has_base_within(g, size):
            LOGGER.debug("base number of %s is %s (greedy %s)", g, size, upper)
            return size
    return upper


def invariant_factor_count(g: GeneratedGroup) -> int:
    """n(G) as the largest p-rank, counting elements with x**p == 1."""
    if not is_abelian(g):
        raise NonAbelianInputError(f"{g} is not abelian")
    order = g.order()
    if order == 1:
        return 0
    elements = list(g.elements(ELEMENT_ENUMERATION_CAP))
    best = 0
    for p in primefactors(order):
        count = sum(1 for x in elements if is_identity(power(x, p)))
        best = max(best, multiplicity(p, count))
    return int(best)


def is_elementary_abelian(g: GeneratedGroup, p: int) -> bool:
    if not isprime(p) or not is_abelian(g) or not is_p_group(g, p):
        return False
    return all(is_identity(power(gen, p)) for gen in g.generators)


def is_cyclic(g: GeneratedGroup) -> bool:
    """An abelian group is cyclic iff the lcm of its generator orders equals its order."""
    if not is_abelian(g):
        return False
    return math.lcm(*(element_order(gen) for gen in g.generators)) == g.order()


def involution_count(g: GeneratedGroup) -> int:
    return sum(1 for x in g.elements() if element_order(x) == 2)


def is_generalized_quaternion(g: GeneratedGroup) -> bool:
    """Noncyclic 2-group of order at least 8 with a unique involution."""
    order = g.order()
    if order < 8 or not is_p_group(g, 2) or is_cyclic(g):
        return False
    return involution_count(g) == 1
