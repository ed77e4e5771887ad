"""
Total k-closedness: the bounded prober over faithful representations and the
decision procedures that settle the quantifier exactly for nilpotent groups.

A search can only ever find a witness or exhaust its degree bound; verdicts
that claim total closedness come from the classifiers alone.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Any, Callable, Mapping

from config.settings import CLOSURE_DEGREE_CAP, COMBINE_DEGREE_CAP, PROBE_DEGREE_CAP
from scripts.abstract_group import AbstractGroup, cayley_table, faithful_representations
from scripts.closure_engine import find_closure_witness, k_closure
from scripts.errors import HypothesisNotMetError, NotNilpotentError, check_cap
from scripts.perm_group import (
    GeneratedGroup,
    disjoint_union_product,
    group_from,
    is_abelian,
    regular_representation,
    same_group,
)
from scripts.permutation import Permutation
from scripts.structure import (
    greedy_base,
    invariant_factor_count,
    is_cyclic,
    is_elementary_abelian,
    is_generalized_quaternion,
    prime_power,
    sylow_decomposition,
)

LOGGER = logging.getLogger("totality")


class VerdictKind(str, Enum):
    THEOREM_DECIDED = "theorem_decided"
    WITNESS_FOUND = "witness_found"
    EXHAUSTED_BOUND = "exhausted_bound"


@dataclass(frozen=True)
class Verdict:
    """Outcome of a total k-closedness question."""

    kind: VerdictKind
    k: int
    totally_closed: bool | None = None
    citation: str | None = None
    reason: str = ""
    witness: GeneratedGroup | None = None
    witness_element: Permutation | None = None
    closure_order: int | None = None
    bound: int | None = None
    representations_checked: int = 0

    def to_dict(self) -> dict[str, Any]:
        return {
            "kind": self.kind.value,
            "k": self.k,
            "totally_closed": self.totally_closed,
            "citation": self.citation,
            "reason": self.reason,
            "witness": str(self.witness) if self.witness is not None else None,
            "witness_degree": self.witness.degree if self.witness is not None else None,
            "witness_element": str(self.witness_element) if self.witness_element is not None else None,
            "closure_order": self.closure_order,
            "bound": self.bound,
            "representations_checked": self.representations_checked,
        }


def _decided(k: int, totally: bool, citation: str, reason: str) -> Verdict:
    return Verdict(
        kind=VerdictKind.THEOREM_DECIDED,
        k=k,
        totally_closed=totally,
        citation=citation,
        reason=reason,
    )


def _check_k(k: int) -> None:
    if k < 1:
        raise ValueError(f"k must be at least 1, got {k}")


def probe_totally_k_closed(
    a: AbstractGroup, k: int, max_degree: int, degree_cap: int | None = None
) -> Verdict:
    """Search faithful representations of degree <= max_degree for one that is not k-closed.

    max_degree may not exceed PROBE_DEGREE_CAP; closure searches stay under
    max(max_degree, CLOSURE_DEGREE_CAP) unless degree_cap overrides it.
    """
    _check_k(k)
    check_cap("prober degree", PROBE_DEGREE_CAP, max_degree)
    cap = max(max_degree, CLOSURE_DEGREE_CAP) if degree_cap is None else degree_cap
    checked = 0
    for rep in faithful_representations(a, max_degree):
        checked += 1
        # a base of size <= k-1 already forces k-closedness
        if len(greedy_base(rep)) <= k - 1:
            continue
        element = find_closure_witness(rep, k, degree_cap=cap)
        if element is None:
            continue
        closure_order = k_closure(rep, k, degree_cap=cap).order()
        LOGGER.info(
            "witness for order %s at k=%s: degree %s, closure order %s",
            a.order, k, rep.degree, closure_order,
        )
        return Verdict(
            kind=VerdictKind.WITNESS_FOUND,
            k=k,
            totally_closed=False,
            reason=f"representation of degree {rep.degree} is not {k}-closed",
            witness=rep,
            witness_element=element,
            closure_order=closure_order,
            bound=max_degree,
            representations_checked=checked,
        )
    LOGGER.info("no witness for order %s at k=%s up to degree %s (%s checked)", a.order, k, max_degree, checked)
    return Verdict(
        kind=VerdictKind.EXHAUSTED_BOUND,
        k=k,
        reason=f"every faithful representation of degree <= {max_degree} is {k}-closed",
        bound=max_degree,
        representations_checked=checked,
    )


def trivial_k1_classify(g: GeneratedGroup, k: int) -> Verdict:
    """Only the trivial group is totally 1-closed."""
    if k != 1:
        raise HypothesisNotMetError(f"the k=1 rule needs k=1, got {k}")
    trivial = g.order() == 1
    return _decided(1, trivial, "k1-trivial", "trivial group" if trivial else "nontrivial group")


def theorem_cpr_classify(g: GeneratedGroup, k: int) -> Verdict:
    """Abelian groups are totally k-closed exactly when k >= n(G) + 1."""
    _check_k(k)
    if not is_abelian(g):
        raise HypothesisNotMetError(f"{g} is not abelian")
    n = invariant_factor_count(g)
    return _decided(k, k >= n + 1, "cpr", f"n(G) = {n}")


def lemma_na_classify(g: GeneratedGroup, k: int) -> Verdict:
    """Nonabelian groups of order at most p^k are totally k-closed."""
    _check_k(k)
    if is_abelian(g):
        raise HypothesisNotMetError(f"{g} is abelian")
    pp = prime_power(g.order())
    if pp is None:
        raise HypothesisNotMetError(f"order {g.order()} is not a prime power")
    p, e = pp
    if e > k:
        raise HypothesisNotMetError(f"order {p}^{e} exceeds {p}^{k}")
    return _decided(k, True, "lemma-na", f"nonabelian of order {p}^{e} <= {p}^{k}")


def theorem_b_classify(g: GeneratedGroup, k: int) -> Verdict:
    """Nilpotent with every Sylow of order <= p^k: totally k-closed iff no Sylow is Z_p^k."""
    _check_k(k)
    decomposition = sylow_decomposition(g)
    for c in decomposition.components:
        if c.exponent > k:
            raise HypothesisNotMetError(
                f"Sylow {c.prime}-subgroup has order {c.prime}^{c.exponent} > {c.prime}^{k}"
            )
    offending = [
        c.prime
        for c in decomposition.components
        if c.exponent == k and is_elementary_abelian(c.group, c.prime)
    ]
    if offending:
        return _decided(k, False, "theorem-b", f"contains Z_{offending[0]}^{k}")
    return _decided(k, True, "theorem-b", f"no Sylow subgroup is elementary abelian of rank {k}")


def _sylow_verdict(group: GeneratedGroup, k: int) -> Verdict | None:
    for classify in (theorem_cpr_classify, lemma_na_classify):
        try:
            return classify(group, k)
        except HypothesisNotMetError:
            continue
    return None


def theorem_a_classify(g: GeneratedGroup, k: int) -> Verdict:
    """A nilpotent group is totally k-closed iff every Sylow subgroup is (k >= 2)."""
    _check_k(k)
    if k < 2:
        raise HypothesisNotMetError("the Sylow reduction needs k >= 2")
    decomposition = sylow_decomposition(g)
    undecided = []
    for c in decomposition.components:
        verdict = _sylow_verdict(c.group, k)
        if verdict is None:
            undecided.append(c.prime)
        elif not verdict.totally_closed:
            return _decided(
                k, False, "theorem-a",
                f"Sylow {c.prime}-subgroup is not totally {k}-closed ({verdict.citation})",
            )
    if undecided:
        raise HypothesisNotMetError(f"Sylow subgroups for primes {undecided} are not decided")
    return _decided(k, True, "theorem-a", "every Sylow subgroup is totally closed")


def nilpotent_2_closed_classify(g: GeneratedGroup) -> Verdict:
    """Nilpotent and totally 2-closed iff cyclic, or generalized quaternion times odd cyclic."""
    decomposition = sylow_decomposition(g)
    odd_cyclic = all(is_cyclic(c.group) for c in decomposition.components if c.prime != 2)
    two_part = [c.group for c in decomposition.components if c.prime == 2]
    two_ok = not two_part or is_cyclic(two_part[0]) or is_generalized_quaternion(two_part[0])
    totally = odd_cyclic and two_ok
    if totally and is_cyclic(g):
        reason = "cyclic"
    elif totally:
        reason = "generalized quaternion times odd cyclic"
    else:
        reason = "neither cyclic nor generalized quaternion times odd cyclic"
    return _decided(2, totally, "nilpotent-2closed", reason)


def _nilpotent_2_closed_at(g: GeneratedGroup, k: int) -> Verdict:
    if k != 2:
        raise HypothesisNotMetError(f"the nilpotent 2-closed classification needs k=2, got {k}")
    return nilpotent_2_closed_classify(g)


DECISION_ORDER: list[tuple[str, Callable[[GeneratedGroup, int], Verdict]]] = [
    ("k1-trivial", trivial_k1_classify),
    ("cpr", theorem_cpr_classify),
    ("lemma-na", lemma_na_classify),
    ("theorem-b", theorem_b_classify),
    ("theorem-a", theorem_a_classify),
    ("nilpotent-2closed", _nilpotent_2_closed_at),
]


def decide_total_closure(g: GeneratedGroup, k: int) -> Verdict:
    """First classifier whose hypothesis holds; HypothesisNotMetError if none does."""
    _check_k(k)
    reasons = []
    for name, classify in DECISION_ORDER:
        try:
            return classify(g, k)
        except (HypothesisNotMetError, NotNilpotentError) as exc:
            reasons.append(f"{name}: {exc}")
    raise HypothesisNotMetError("no classifier applies; " + "; ".join(reasons))


def sylow_parts(g: GeneratedGroup) -> dict[int, GeneratedGroup]:
    return {c.prime: c.group for c in sylow_decomposition(g).components}


def combine_sylow_witness(
    parts: Mapping[int, GeneratedGroup | AbstractGroup],
    q: int,
    witness: GeneratedGroup,
) -> GeneratedGroup:
    """The q-witness next to regular actions of the other Sylow subgroups."""
    if q not in parts:
        raise ValueError(f"prime {q} is not among the parts {sorted(parts)}")
    pieces = []
    for p in sorted(parts):
        if p == q:
            pieces.append(witness)
            continue
        part = parts[p]
        abstract = part if isinstance(part, AbstractGroup) else cayley_table(part)
        pieces.append(regular_representation(abstract))
    check_cap("combined witness degree", COMBINE_DEGREE_CAP, sum(piece.degree for piece in pieces))
    return disjoint_union_product(pieces)


def verify_chnl_product(g: GeneratedGroup, k: int, degree_cap: int | None = None) -> bool:
    """Whether G^(k) is generated by the k-closures of the Sylow subgroups."""
    decomposition = sylow_decomposition(g)
    whole = k_closure(g, k, degree_cap)
    gens = [
        x
        for c in decomposition.components
        for x in k_closure(c.group, k, degree_cap).generators
    ]
    product = group_from(g.degree, gens)
    LOGGER.debug("closure product check %s k=%s: %s vs %s", g, k, whole.order(), product.order())
    return same_group(whole, product)