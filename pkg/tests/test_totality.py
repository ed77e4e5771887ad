"""Tests for the bounded prober and the total-closure classifiers."""

import pytest

from config.settings import PROBE_DEGREE_CAP
from scripts.abstract_group import cayley_table, cyclic_group
from scripts.closure_engine import is_k_closed, k_closure
from scripts.errors import CapExceededError, HypothesisNotMetError, NotNilpotentError
from scripts.perm_group import parse_group_spec
from scripts.totality import (
    VerdictKind,
    combine_sylow_witness,
    decide_total_closure,
    lemma_na_classify,
    nilpotent_2_closed_classify,
    probe_totally_k_closed,
    sylow_parts,
    theorem_a_classify,
    theorem_b_classify,
    theorem_cpr_classify,
    trivial_k1_classify,
    verify_chnl_product,
)

KLEIN = "4: (1 2), (3 4)"
KLEIN_DEG6 = "6: (3 4)(5 6), (1 2)(5 6)"
SQUARE = "4: (1 2 3 4), (1 3)"
Q8 = "8: (1 2 3 4)(5 8 7 6), (1 5 3 7)(2 6 4 8)"
SYM3 = "3: (1 2 3), (1 2)"


def test_probe_finds_klein_witness_on_six_points() -> None:
    """The smallest non-2-closed Klein action has degree 6 and 2-closure of order 8."""
    verdict = probe_totally_k_closed(cayley_table(parse_group_spec(KLEIN)), 2, 6)
    assert verdict.kind is VerdictKind.WITNESS_FOUND
    assert verdict.totally_closed is False
    assert verdict.witness.degree == 6
    assert verdict.closure_order == 8
    assert not is_k_closed(verdict.witness, 2)
    assert not verdict.witness.contains(verdict.witness_element)


def test_probe_exhausts_bound_for_cyclic_group() -> None:
    """Z_4 has no non-2-closed action up to degree 8; the result never claims closedness."""
    verdict = probe_totally_k_closed(cyclic_group(4), 2, 8)
    assert verdict.kind is VerdictKind.EXHAUSTED_BOUND
    assert verdict.totally_closed is None
    assert verdict.bound == 8
    assert verdict.representations_checked == 4


def test_prober_finds_two_regular_copies_of_z2_at_k1() -> None:
    """Two regular blocks of Z_2 moved together are not 1-closed."""
    verdict = probe_totally_k_closed(cyclic_group(2), 1, 4)
    assert verdict.kind is VerdictKind.WITNESS_FOUND
    assert verdict.witness.degree == 4
    assert verdict.witness.order() == 2
    assert verdict.closure_order == 4
    assert verdict.representations_checked == 2


def test_probe_on_trivial_group() -> None:
    """The trivial group's single action is 1-closed."""
    verdict = probe_totally_k_closed(cyclic_group(1), 1, 4)
    assert verdict.kind is VerdictKind.EXHAUSTED_BOUND
    assert verdict.representations_checked == 1


def test_probe_rejects_bad_arity() -> None:
    """k must be positive."""
    with pytest.raises(ValueError):
        probe_totally_k_closed(cyclic_group(2), 0, 4)


def test_probe_degree_cap_override() -> None:
    """A degree cap below the first checked action raises instead of guessing."""
    with pytest.raises(CapExceededError):
        probe_totally_k_closed(cayley_table(parse_group_spec(KLEIN)), 2, 6, degree_cap=3)


def test_prober_refuses_degree_bound_above_cap() -> None:
    """A degree bound past the prober cap raises before any search."""
    with pytest.raises(CapExceededError):
        probe_totally_k_closed(cyclic_group(2), 2, PROBE_DEGREE_CAP + 1)


def test_verdict_to_dict() -> None:
    """Serialized verdicts carry the witness as group text."""
    payload = probe_totally_k_closed(cayley_table(parse_group_spec(KLEIN)), 2, 6).to_dict()
    assert payload["kind"] == "witness_found"
    assert payload["witness_degree"] == 6
    assert payload["witness"].startswith("6: ")


def test_k1_rule() -> None:
    """Only the trivial group is totally 1-closed."""
    assert trivial_k1_classify(parse_group_spec("3:"), 1).totally_closed is True
    assert trivial_k1_classify(parse_group_spec("2: (1 2)"), 1).totally_closed is False
    with pytest.raises(HypothesisNotMetError):
        trivial_k1_classify(parse_group_spec("2: (1 2)"), 2)


@pytest.mark.parametrize(
    ("spec", "k", "expected"),
    [
        ("4: (1 2 3 4)", 2, True),
        (KLEIN, 2, False),
        (KLEIN, 3, True),
        ("6: (1 2), (3 4), (5 6)", 3, False),
        ("6: (1 2), (3 4), (5 6)", 4, True),
        ("6: (1 2), (3 4 5 6)", 2, False),
    ],
)
def test_abelian_rule(spec: str, k: int, expected: bool) -> None:
    """Abelian groups are totally k-closed exactly when k exceeds n(G)."""
    verdict = theorem_cpr_classify(parse_group_spec(spec), k)
    assert verdict.totally_closed is expected
    assert verdict.citation == "cpr"


def test_abelian_rule_needs_abelian_input() -> None:
    """The abelian rule does not apply to the square symmetries."""
    with pytest.raises(HypothesisNotMetError):
        theorem_cpr_classify(parse_group_spec(SQUARE), 3)


def test_small_nonabelian_p_groups() -> None:
    """D8 and Q8 are totally 3-closed; the rule is silent for k=2 and for abelian groups."""
    assert lemma_na_classify(parse_group_spec(SQUARE), 3).totally_closed is True
    assert lemma_na_classify(parse_group_spec(Q8), 4).totally_closed is True
    with pytest.raises(HypothesisNotMetError):
        lemma_na_classify(parse_group_spec(SQUARE), 2)
    with pytest.raises(HypothesisNotMetError):
        lemma_na_classify(parse_group_spec(KLEIN), 3)
    with pytest.raises(HypothesisNotMetError):
        lemma_na_classify(parse_group_spec(SYM3), 3)


@pytest.mark.parametrize(
    ("spec", "k", "expected"),
    [
        (KLEIN, 2, False),
        (SQUARE, 3, True),
        ("6: (1 2 3 4 5 6)", 2, True),
        ("7: (1 2), (3 4), (5 6 7)", 2, False),
        ("6: (1 2 3), (4 5 6)", 2, False),
        ("9: (1 2 3), (4 5 6), (7 8 9)", 3, False),
        (Q8, 3, True),
    ],
)
def test_bounded_sylow_rule(spec: str, k: int, expected: bool) -> None:
    """With every Sylow of order at most p^k, only an elementary abelian Z_p^k breaks closedness."""
    verdict = theorem_b_classify(parse_group_spec(spec), k)
    assert verdict.totally_closed is expected
    assert verdict.citation == "theorem-b"


def test_bounded_sylow_rule_hypotheses() -> None:
    """Large Sylow subgroups and non-nilpotent groups are refused."""
    with pytest.raises(HypothesisNotMetError):
        theorem_b_classify(parse_group_spec("6: (1 2), (3 4), (5 6)"), 2)
    with pytest.raises(NotNilpotentError):
        theorem_b_classify(parse_group_spec(SYM3), 2)


def test_sylow_reduction() -> None:
    """Nilpotent groups inherit the verdicts of their Sylow subgroups."""
    assert theorem_a_classify(parse_group_spec("7: (1 2), (3 4), (5 6 7)"), 2).totally_closed is False
    assert theorem_a_classify(parse_group_spec("6: (1 2 3 4 5 6)"), 2).totally_closed is True
    assert theorem_a_classify(parse_group_spec("7: (1 2 3 4), (1 3), (5 6 7)"), 3).totally_closed is True
    with pytest.raises(HypothesisNotMetError):
        theorem_a_classify(parse_group_spec(Q8), 2)
    with pytest.raises(HypothesisNotMetError):
        theorem_a_classify(parse_group_spec("6: (1 2 3 4 5 6)"), 1)


@pytest.mark.parametrize(
    ("spec", "expected"),
    [
        ("6: (1 2 3 4 5 6)", True),
        (Q8, True),
        ("11: (1 2 3 4)(5 8 7 6), (1 5 3 7)(2 6 4 8), (9 10 11)", True),
        (SQUARE, False),
        (KLEIN, False),
        ("6: (1 2 3), (4 5 6)", False),
    ],
)
def test_nilpotent_2_closed_classification(spec: str, expected: bool) -> None:
    """Cyclic groups and quaternion-by-odd-cyclic groups are the totally 2-closed nilpotent ones."""
    assert nilpotent_2_closed_classify(parse_group_spec(spec)).totally_closed is expected


def test_decide_total_closure_picks_first_applicable_rule() -> None:
    """The decision order tries the k=1 rule, the abelian rule, then the nonabelian ones."""
    assert decide_total_closure(parse_group_spec("2: (1 2)"), 1).citation == "k1-trivial"
    assert decide_total_closure(parse_group_spec(KLEIN), 2).citation == "cpr"
    assert decide_total_closure(parse_group_spec(SQUARE), 3).citation == "lemma-na"
    verdict = decide_total_closure(parse_group_spec(Q8), 2)
    assert verdict.citation == "nilpotent-2closed"
    assert verdict.totally_closed is True
    with pytest.raises(HypothesisNotMetError):
        decide_total_closure(parse_group_spec(SYM3), 2)


def test_combine_sylow_witness_for_klein_times_three() -> None:
    """A Klein witness next to a regular Z_3 gives a degree-9 action with 2-closure of order 24."""
    g = parse_group_spec("7: (1 2), (3 4), (5 6 7)")
    parts = sylow_parts(g)
    assert sorted(parts) == [2, 3]
    combined = combine_sylow_witness(parts, 2, parse_group_spec(KLEIN_DEG6))
    assert combined.degree == 9
    assert combined.order() == 12
    assert k_closure(combined, 2).order() == 24


def test_combine_sylow_witness_single_prime() -> None:
    """With one prime the witness is returned unchanged."""
    witness = parse_group_spec(KLEIN_DEG6)
    assert combine_sylow_witness({2: parse_group_spec(KLEIN)}, 2, witness) is witness
    with pytest.raises(ValueError):
        combine_sylow_witness({2: parse_group_spec(KLEIN)}, 3, witness)


@pytest.mark.parametrize(
    ("spec", "k"),
    [
        ("6: (1 2 3 4 5 6)", 2),
        ("6: (1 2), (3 4 5 6)", 2),
        ("7: (1 2 3 4), (1 3), (5 6 7)", 2),
        ("7: (1 2), (3 4), (5 6 7)", 3),
    ],
)
def test_closure_of_nilpotent_group_is_product_of_sylow_closures(spec: str, k: int) -> None:
    """G^(k) is generated by the k-closures of the Sylow subgroups."""
    assert verify_chnl_product(parse_group_spec(spec), k)


def test_closure_product_refuses_non_nilpotent() -> None:
    """Sym(3) has no Sylow product structure."""
    with pytest.raises(NotNilpotentError):
        verify_chnl_product(parse_group_spec(SYM3), 2)
