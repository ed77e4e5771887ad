"""Tests for multiplication tables, subgroup lattices and coset actions."""

import numpy as np
import pytest

from scripts.abstract_group import (
    AbstractGroup,
    Subgroup,
    cayley_table,
    core,
    coset_action,
    cyclic_group,
    diagonal_action,
    direct_product,
    faithful_representations,
    is_normal,
    representation_count,
    subgroup_classes,
    subgroups,
)
from scripts.errors import CapExceededError
from scripts.closure_engine import is_k_closed, k_closure
from scripts.perm_group import is_regular, orbits, parse_group_spec
from scripts.structure import greedy_base

Q8 = "8: (1 2 3 4)(5 8 7 6), (1 5 3 7)(2 6 4 8)"
SQUARE = "4: (1 2 3 4), (1 3)"


def test_cayley_table_lists_identity_first() -> None:
    """Elements are sorted, so the identity gets index 0."""
    a = cayley_table(parse_group_spec("2: (1 2)"))
    assert a.order == 2
    assert a.identity == 0
    assert a.labels == ("()", "(1 2)")
    assert a.multiply(1, 1) == 0


def test_cayley_table_abelian_flag() -> None:
    """Klein is abelian; the square symmetries are not."""
    assert cayley_table(parse_group_spec("4: (1 2), (3 4)")).is_abelian()
    assert not cayley_table(parse_group_spec(SQUARE)).is_abelian()


def test_cayley_table_cap() -> None:
    """Tables above the order cap are refused."""
    with pytest.raises(CapExceededError):
        cayley_table(parse_group_spec("5: (1 2 3 4 5), (1 2)"), cap=60)


def test_cyclic_group_helpers() -> None:
    """Z_6 is generated by one element, has inverses mod 6, and element orders divide 6."""
    z6 = cyclic_group(6)
    assert z6.generators == (1,)
    assert z6.inverse(2) == 4
    assert z6.element_order(2) == 3
    assert z6.generated([3]) == (0, 3)


def test_invalid_tables_are_rejected() -> None:
    """A table without an identity row is not a group."""
    with pytest.raises(ValueError):
        AbstractGroup(table=np.array([[0, 1], [0, 1]]), identity=0, labels=("e", "x"))
    with pytest.raises(ValueError):
        AbstractGroup(table=np.array([[0, 1], [1, 0]]), identity=0, labels=("e",))


def test_direct_product_of_two_cyclic_groups() -> None:
    """Z_2 x Z_2 built from tables is the Klein group."""
    v4 = direct_product(cyclic_group(2), cyclic_group(2))
    assert v4.order == 4
    assert v4.is_abelian()
    assert len(subgroups(v4)) == 5


@pytest.mark.parametrize(
    ("spec", "count"),
    [
        ("4: (1 2), (3 4)", 5),
        ("4: (1 2 3 4)", 3),
        (Q8, 6),
        (SQUARE, 10),
        ("3: (1 2 3), (1 2)", 6),
    ],
)
def test_subgroup_counts(spec: str, count: int) -> None:
    """Lattice sizes of small groups."""
    assert len(subgroups(cayley_table(parse_group_spec(spec)))) == count


def test_subgroups_are_ordered_by_size() -> None:
    """The trivial subgroup comes first and the whole group last."""
    subs = subgroups(cyclic_group(4))
    assert subs[0].elements == (0,)
    assert subs[-1].order == 4


def test_conjugacy_classes_of_sym3() -> None:
    """Sym(3) has four classes of subgroups: 1, the three order-2, A3, itself."""
    a = cayley_table(parse_group_spec("3: (1 2 3), (1 2)"))
    classes = subgroup_classes(a)
    assert [len(c.members) for c in classes] == [1, 3, 1, 1]
    assert [c.representative.order for c in classes] == [1, 2, 3, 6]


def test_core_of_point_stabilizer_in_sym3_is_trivial() -> None:
    """An order-2 subgroup of Sym(3) is not normal and has trivial core."""
    a = cayley_table(parse_group_spec("3: (1 2 3), (1 2)"))
    h = next(s for s in subgroups(a) if s.order == 2)
    assert not is_normal(a, h)
    assert core(a, h).order == 1
    a3 = next(s for s in subgroups(a) if s.order == 3)
    assert is_normal(a, a3)
    assert core(a, a3) == a3


def test_coset_actions_of_extreme_subgroups() -> None:
    """Cosets of the trivial subgroup give the regular action; of the whole group, one point."""
    a = cayley_table(parse_group_spec(SQUARE))
    regular = coset_action(a, Subgroup((0,)))
    assert regular.degree == 8
    assert regular.order() == 8
    whole = coset_action(a, Subgroup(tuple(range(8))))
    assert whole.degree == 1
    assert whole.order() == 1


def test_coset_action_on_non_normal_subgroup_is_faithful() -> None:
    """A non-central order-2 subgroup of D8 gives a faithful action on four cosets."""
    a = cayley_table(parse_group_spec(SQUARE))
    h = next(s for s in subgroups(a) if s.order == 2 and not is_normal(a, s))
    action = coset_action(a, h)
    assert action.degree == 4
    assert action.order() == 8


def test_faithful_representations_of_z2() -> None:
    """Z_2 has one faithful action on at most two points."""
    reps = list(faithful_representations(cyclic_group(2), 2))
    assert len(reps) == 1
    assert reps[0].degree == 2
    assert reps[0].order() == 2


def test_faithful_representations_of_klein_up_to_degree_six() -> None:
    """Fourteen actions, ordered by degree, all faithful."""
    a = cayley_table(parse_group_spec("4: (1 2), (3 4)"))
    reps = list(faithful_representations(a, 6))
    assert len(reps) == 14
    degrees = [r.degree for r in reps]
    assert degrees == sorted(degrees)
    assert degrees.count(4) == 4
    assert all(r.order() == 4 for r in reps)
    assert len(greedy_base(reps[0])) == 1
    assert representation_count(a, 3) == 0


def test_faithful_actions_of_q8_contain_a_regular_orbit() -> None:
    """Every nontrivial subgroup of Q8 contains its centre, so faithful means regular orbit."""
    a = cayley_table(parse_group_spec(Q8))
    reps = list(faithful_representations(a, 16))
    assert reps
    assert all(len(greedy_base(r)) == 1 for r in reps)


def test_trivial_group_acts_on_one_point() -> None:
    """The trivial group's only action is on a single point."""
    reps = list(faithful_representations(cyclic_group(1), 4))
    assert len(reps) == 1
    assert reps[0].degree == 1


@pytest.mark.parametrize(
    ("spec", "max_degree"),
    [
        ("4: (1 2), (3 4)", 6),
        (SQUARE, 8),
        ("6: (1 2 3 4 5 6)", 8),
        ("6: (1 2), (3 4), (5 6)", 8),
    ],
)
def test_faithful_representations_are_actions_of_the_group(spec: str, max_degree: int) -> None:
    """Every emitted action has the group's order, not the order of a product of its images."""
    a = cayley_table(parse_group_spec(spec))
    reps = list(faithful_representations(a, max_degree))
    assert reps
    assert all(r.order() == a.order for r in reps)
    assert all(len(r.generators) == len(a.generators) for r in reps)


def test_diagonal_action_of_klein_on_three_two_point_blocks() -> None:
    """The three subgroups of order 2 give a degree-6 Klein action whose 2-closure has order 8."""
    a = cayley_table(parse_group_spec("4: (1 2), (3 4)"))
    halves = [s for s in subgroups(a) if s.order == 2]
    assert len(halves) == 3
    g = diagonal_action(a, halves)
    assert g.degree == 6
    assert g.order() == 4
    assert [len(o) for o in orbits(g)] == [2, 2, 2]
    assert not is_k_closed(g, 2)
    assert k_closure(g, 2).order() == 8


def test_diagonal_action_of_one_trivial_subgroup_is_regular() -> None:
    """A single trivial subgroup gives the regular action."""
    a = cayley_table(parse_group_spec(SQUARE))
    g = diagonal_action(a, [Subgroup((a.identity,))])
    assert g.degree == 8
    assert is_regular(g)
    with pytest.raises(ValueError):
        diagonal_action(a, [])
