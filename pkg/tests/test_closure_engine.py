"""Tests for k-tuple orbit colourings and Wielandt closures."""

import pytest

from scripts.closure_engine import (
    find_closure_witness,
    is_k_closed,
    k_closure,
    k_closure_naive,
    k_orbit_count,
    tuple_orbits,
)
from scripts.errors import CapExceededError, PermutationError
from scripts.perm_group import is_subgroup, parse_group_spec, same_group, symmetric_group
from scripts.permutation import apply_to_tuple

KLEIN_DEG6 = "6: (3 4)(5 6), (1 2)(5 6)"
SQUARE = "4: (1 2 3 4), (1 3)"


def test_tuple_orbits_lists_orbits_lexicographically() -> None:
    """The orbit of (1, 3) under two commuting transpositions has four pairs."""
    coloring = tuple_orbits(parse_group_spec("4: (1 2), (3 4)"), 2)
    assert coloring.orbit_of((1, 3)) == [(1, 3), (1, 4), (2, 3), (2, 4)]
    assert coloring.color_of((2, 4)) == coloring.encode((1, 3))


def test_tuple_orbits_of_klein_on_six_points() -> None:
    """The degree-6 Klein group moves (1, 3) through four pairs."""
    coloring = tuple_orbits(parse_group_spec(KLEIN_DEG6), 2)
    assert coloring.orbit_of((1, 3)) == [(1, 3), (1, 4), (2, 3), (2, 4)]


def test_encode_decode_agree() -> None:
    """Codes are base-n numbers with the first coordinate most significant."""
    coloring = tuple_orbits(parse_group_spec("3: (1 2 3)"), 2)
    assert coloring.encode((1, 1)) == 0
    assert coloring.encode((2, 3)) == 5
    assert coloring.decode(5) == (2, 3)
    with pytest.raises(PermutationError):
        coloring.encode((1, 4))
    with pytest.raises(PermutationError):
        coloring.encode((1,))


def test_orbit_counts() -> None:
    """The trivial group leaves every pair alone; a regular Z_3 has three pair orbits."""
    assert k_orbit_count(parse_group_spec("3:"), 2) == 9
    assert k_orbit_count(parse_group_spec("3: (1 2 3)"), 2) == 3
    assert k_orbit_count(parse_group_spec("3: (1 2 3)"), 1) == 1


def test_klein_on_six_points_is_not_2_closed() -> None:
    """Its 2-closure is the elementary abelian group of order 8."""
    g = parse_group_spec(KLEIN_DEG6)
    closure = k_closure(g, 2)
    assert closure.order() == 8
    assert same_group(closure, parse_group_spec("6: (1 2), (3 4), (5 6)"))
    assert not is_k_closed(g, 2)


def test_closure_witness_preserves_colours_and_lies_outside() -> None:
    """The first witness is a colour-preserving permutation outside the group."""
    g = parse_group_spec(KLEIN_DEG6)
    witness = find_closure_witness(g, 2)
    assert witness is not None
    assert not g.contains(witness)
    coloring = tuple_orbits(g, 2)
    for i in range(1, 7):
        for j in range(1, 7):
            assert coloring.color_of(apply_to_tuple(witness, (i, j))) == coloring.color_of((i, j))


def test_regular_cyclic_group_is_2_closed() -> None:
    """A regular group equals its own 2-closure."""
    g = parse_group_spec("4: (1 2 3 4)")
    assert k_closure(g, 2).order() == 4
    assert is_k_closed(g, 2)
    assert find_closure_witness(g, 2) is None


def test_1_closure_is_product_of_orbit_symmetric_groups() -> None:
    """A 3-cycle on four points has 1-closure Sym(3) fixing the fourth point."""
    closure = k_closure(parse_group_spec("4: (1 2 3)"), 1)
    assert closure.order() == 6
    assert same_group(closure, symmetric_group([1, 2, 3], 4))


def test_symmetric_group_is_closed_at_every_arity() -> None:
    """Sym(3) is k-closed for k = 1, 2, 3, and Sym(4) is 2-closed."""
    sym3 = parse_group_spec("3: (1 2 3), (1 2)")
    assert all(is_k_closed(sym3, k) for k in (1, 2, 3))
    assert k_closure(symmetric_group(range(1, 5), 4), 2).order() == 24


def test_closures_shrink_as_k_grows() -> None:
    """G <= G^(3) <= G^(2) <= G^(1) for the square symmetries plus a transposition."""
    g = parse_group_spec("6: (1 2 3 4), (1 3), (5 6)")
    c1, c2, c3 = (k_closure(g, k) for k in (1, 2, 3))
    assert is_subgroup(g, c3)
    assert is_subgroup(c3, c2)
    assert is_subgroup(c2, c1)


def test_closure_is_idempotent() -> None:
    """Closing twice changes nothing."""
    closure = k_closure(parse_group_spec(KLEIN_DEG6), 2)
    assert same_group(k_closure(closure, 2), closure)


@pytest.mark.parametrize(
    ("spec", "k"),
    [
        ("4: (1 2), (3 4)", 2),
        ("4: (1 2)(3 4)", 2),
        ("3:", 1),
        (SQUARE, 2),
        (SQUARE, 3),
        ("5: (1 2 3)(4 5)", 1),
        ("5: (1 2 3)(4 5)", 2),
        (KLEIN_DEG6, 2),
    ],
)
def test_search_matches_naive_filter(spec: str, k: int) -> None:
    """The level-wise search and the Sym(n) filter agree on small groups."""
    g = parse_group_spec(spec)
    assert same_group(k_closure(g, k), k_closure_naive(g, k))


def test_closure_caps() -> None:
    """Degree and tuple-table caps raise instead of running away."""
    with pytest.raises(CapExceededError):
        k_closure(parse_group_spec("13: (1 2)"), 2)
    with pytest.raises(CapExceededError):
        k_closure_naive(parse_group_spec("9: (1 2)"), 2)
    with pytest.raises(CapExceededError):
        tuple_orbits(parse_group_spec("12: (1 2 3 4 5 6 7 8 9 10 11 12)"), 7)


def test_degree_cap_override() -> None:
    """An explicit degree cap lifts the default limit."""
    assert k_closure(parse_group_spec("13: (1 2)"), 2, degree_cap=13).order() == 2


def test_k_must_be_positive() -> None:
    """Arity zero is refused."""
    with pytest.raises(ValueError):
        tuple_orbits(parse_group_spec("3: (1 2 3)"), 0)
