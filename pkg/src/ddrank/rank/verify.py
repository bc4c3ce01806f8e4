"""Semantic verification of dividing certificates against a theory oracle.

Verifiers return a :class:`VerificationResult`: truthiness plus reason codes
for every violated condition.  Structural malformation (missing tree nodes,
ragged rows, k beyond the width) raises instead -- those are not meaningful
certificates at all.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from ..logic import Formula, FormulaTemplate, conjoin, vars_of
from ..theories import TheoryOracle
from .certificates import (
    ChainCertificate,
    DividingWitness,
    InpCertificate,
    SequenceCertificate,
    TreeCertificate,
)


@dataclass(frozen=True)
class VerificationResult:
    ok: bool
    reasons: tuple[str, ...] = ()

    def __bool__(self) -> bool:
        return self.ok

    @staticmethod
    def success() -> "VerificationResult":
        return VerificationResult(True)

    @staticmethod
    def failure(reasons: Sequence[str]) -> "VerificationResult":
        return VerificationResult(False, tuple(reasons))


def check_k_inconsistent(
    oracle: TheoryOracle,
    template: FormulaTemplate,
    family: Sequence[tuple[str, ...]],
    k: int,
    tuple_length: int | None = None,
) -> bool:
    """True iff every k-subset of the instance family is jointly inconsistent."""
    if len(family) < k:
        raise ValueError(f"family of size {len(family)} has no {k}-subsets")
    instances = [template.instantiate(tuple(t)) for t in family]
    if tuple_length is None:
        tuple_length = max((v for f in instances for v in vars_of(f)), default=0) + 1
    for subset in itertools.combinations(instances, k):
        if oracle.consistent(subset, tuple_length):
            return False
    return True


def verify_dividing_witness(
    oracle: TheoryOracle, witness: DividingWitness, tuple_length: int | None = None
) -> VerificationResult:
    reasons = []
    for j, member in enumerate(witness.family):
        if not oracle.same_type_over(member, witness.anchor, witness.base):
            reasons.append(
                f"family member {j} {member} is not conjugate to the anchor over the base"
            )
    if not check_k_inconsistent(
        oracle, witness.template, witness.family, witness.k, tuple_length
    ):
        reasons.append(f"instance family is not {witness.k}-inconsistent")
    return VerificationResult(not reasons, tuple(reasons))


def verify_sequence_certificate(
    oracle: TheoryOracle, cert: SequenceCertificate
) -> VerificationResult:
    reasons = []
    p = cert.ptype
    branch: list[Formula] = []
    for i, entry in enumerate(cert.entries):
        expected_base = cert.base_at(i)
        if entry.witness.template != entry.template:
            reasons.append(f"entry {i}: witness formula differs from the entry formula")
        if entry.witness.anchor != entry.anchor:
            reasons.append(f"entry {i}: witness anchor differs from the entry anchor")
        if entry.witness.base != expected_base:
            reasons.append(
                f"entry {i}: witness base mismatch "
                f"(expected {sorted(expected_base)}, got {sorted(entry.witness.base)})"
            )
        inner = verify_dividing_witness(oracle, entry.witness, p.tuple_length)
        reasons.extend(f"entry {i}: {r}" for r in inner.reasons)
        branch.append(entry.template.instantiate(entry.anchor))
    if not oracle.consistent((*p.formulas, *branch), p.tuple_length):
        reasons.append("branch is inconsistent with the type")
    return VerificationResult(not reasons, tuple(reasons))


def verify_tree_certificate(
    oracle: TheoryOracle, tree: TreeCertificate, ptype
) -> VerificationResult:
    reasons = []
    for length in range(tree.depth):
        level = tree.levels[length]
        for prefix in itertools.product(range(tree.width), repeat=length):
            family = tree.siblings(prefix)
            if not check_k_inconsistent(
                oracle, level.template, family, level.k, ptype.tuple_length
            ):
                reasons.append(
                    f"siblings under {prefix} at level {length} are not {level.k}-inconsistent"
                )
    for branch in tree.branches():
        instances = [
            tree.levels[i].template.instantiate(tree.node(branch[: i + 1]))
            for i in range(tree.depth)
        ]
        if not oracle.consistent((*ptype.formulas, *instances), ptype.tuple_length):
            reasons.append(f"branch {branch} is inconsistent with the type")
    return VerificationResult(not reasons, tuple(reasons))


def verify_inp_certificate(
    oracle: TheoryOracle, inp: InpCertificate, ptype
) -> VerificationResult:
    reasons = []
    for j, row in enumerate(inp.rows):
        if not check_k_inconsistent(
            oracle, row.template, row.tuples, row.k, ptype.tuple_length
        ):
            reasons.append(f"row {j} is not {row.k}-inconsistent")
    for choice in itertools.product(range(inp.width), repeat=inp.depth):
        instances = [
            row.template.instantiate(row.tuples[c]) for row, c in zip(inp.rows, choice)
        ]
        if not oracle.consistent((*ptype.formulas, *instances), ptype.tuple_length):
            reasons.append(f"column choice {choice} is inconsistent with the type")
    return VerificationResult(not reasons, tuple(reasons))


def verify_chain_certificate(
    oracle: TheoryOracle, chain: ChainCertificate
) -> VerificationResult:
    reasons = []
    p = chain.ptype
    prev_formulas: tuple[Formula, ...] = p.formulas
    prev_base = frozenset(p.base_params)
    accumulated_base = prev_base
    for i, step in enumerate(chain.steps):
        q = step.ptype
        if not set(prev_formulas) <= set(q.formulas):
            reasons.append(f"step {i}: does not extend the previous type")
        if not prev_base <= q.base_params:
            reasons.append(f"step {i}: base does not extend the previous base")
        if step.witness.base != accumulated_base:
            reasons.append(
                f"step {i}: witness base mismatch "
                f"(expected {sorted(accumulated_base)}, got {sorted(step.witness.base)})"
            )
        new = [f for f in q.formulas if f not in set(prev_formulas)]
        if not new:
            reasons.append(f"step {i}: adds no formulas, nothing witnesses dividing")
        else:
            instance = step.witness.template.instantiate(step.witness.anchor)
            if instance != conjoin(new) and not _core_plus_entailed(
                oracle, prev_formulas, instance, new, q.tuple_length
            ):
                reasons.append(
                    f"step {i}: witness formula is not the conjunction of the new formulas"
                )
        inner = verify_dividing_witness(oracle, step.witness, q.tuple_length)
        reasons.extend(f"step {i}: {r}" for r in inner.reasons)
        if not oracle.consistent(q.formulas, q.tuple_length):
            reasons.append(f"step {i}: accumulated type is inconsistent")
        prev_formulas = q.formulas
        prev_base = frozenset(q.base_params)
        accumulated_base = accumulated_base | prev_base
    return VerificationResult(not reasons, tuple(reasons))


def _core_plus_entailed(oracle, prev_formulas, instance, new, tuple_length) -> bool:
    """Completed chains carry entailed atomic decoration beyond the witness.

    Accept when the witnessed instance is among the new formulas and every
    other new formula is forced by the previous type plus the instance.
    """
    if instance not in new:
        return False
    from ..logic import Not

    context = (*prev_formulas, instance)
    for g in new:
        if g == instance:
            continue
        if oracle.consistent((*context, Not(g)), tuple_length):
            return False
    return True
