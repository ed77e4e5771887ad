"""Domain exceptions shared by the group-computation modules."""

from __future__ import annotations


class PermutationError(ValueError):
    """Malformed cycle text, bad point, or mixed degrees."""


class GroupSpecError(ValueError):
    """Malformed ``degree: gen, gen, ...`` group text."""


class CapExceededError(RuntimeError):
    """A configured search or enumeration cap was exceeded."""

    def __init__(self, cap: str, limit: int, value: int) -> None:
        super().__init__(f"{cap} exceeded: {value} > {limit}")
        self.cap = cap
        self.limit = limit
        self.value = value


class NotNilpotentError(ValueError):
    """Sylow validation failed, so the group is not nilpotent."""


class NonAbelianInputError(ValueError):
    """An abelian-only operation received a nonabelian group."""


class HypothesisNotMetError(ValueError):
    """A theorem was asked to decide a group outside its hypothesis."""


class NotPrimeError(ValueError):
    """A prime argument was not prime."""


class UnknownTheoremError(ValueError):
    """A verification tag is not registered."""


def check_cap(cap: str, limit: int, value: int) -> None:
    """Raise CapExceededError when value is above limit."""
    if value > limit:
        raise CapExceededError(cap, limit, value)
