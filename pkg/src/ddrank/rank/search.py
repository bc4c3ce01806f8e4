"""Bounded-exhaustive search for the deepest verifying dividing sequence.

Iterative deepening over the depth target: because a prefix of a verifying
sequence verifies, the first target with no certificate refutes everything
deeper, and when the candidate enumeration ran uncurtailed the rank is exact.
Candidates are enumerated up to quantifier-free type equality over the
accumulated base (existing base parameters plus each backend's canonical
fresh configurations), and witness families are the backends' canonical
conjugate spreads, so the enumeration covers every type the theory can
realise within the bounds.  A single-template alphabet computes the local
rank of that formula.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from ..logic import (
    Atom,
    Eq,
    FormulaTemplate,
    Param,
    PartialType,
    Var,
    render_formula,
    validate_type,
)
from ..ordinals import ExtOrdinal
from ..theories import OracleError, TheoryOracle
from .certificates import (
    DividingWitness,
    SequenceCertificate,
    SequenceEntry,
)
from .verify import check_k_inconsistent

log = logging.getLogger("ddrank.search")


@dataclass(frozen=True)
class SearchBounds:
    depth: int
    width: int
    param_budget: int

    def __post_init__(self) -> None:
        if self.depth < 1 or self.width < 2 or self.param_budget < 0:
            raise ValueError("need depth >= 1, width >= 2, param_budget >= 0")

    def to_json(self) -> dict:
        return {
            "depth": self.depth,
            "width": self.width,
            "param_budget": self.param_budget,
        }


@dataclass
class RankReport:
    """Search outcome: a certified lower bound, exactness when exhaustive.

    ``oracle`` is the parameter space extended by everything the attached
    certificate mentions; ``theory_config`` is its loadable description, so
    reports are self-contained for later verification.
    """

    oracle: TheoryOracle
    theory_config: dict
    ptype: PartialType
    alphabet: tuple[FormulaTemplate, ...]
    bounds: SearchBounds
    certified_lower: ExtOrdinal
    exhausted: bool
    exact_value: int | None
    certificate: SequenceCertificate | None
    notes: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if self.exact_value is not None:
            assert self.exhausted, "exact values require an exhausted enumeration"
            assert self.certified_lower <= ExtOrdinal.plus(self.exact_value)

    @property
    def truncated(self) -> bool:
        return not self.exhausted

    def to_json(self) -> dict:
        from ..logic import type_to_json
        from ..ordexpr import render_ext_ordinal
        from .certificates import certificate_to_json

        return {
            "schema": "ddrank:rank-report:1",
            "theory": self.theory_config,
            "type": type_to_json(self.ptype),
            "alphabet": [t.describe() for t in self.alphabet],
            "bounds": self.bounds.to_json(),
            "certified_lower": render_ext_ordinal(self.certified_lower),
            "exhausted": self.exhausted,
            "truncated": self.truncated,
            "exact_value": self.exact_value,
            "certificate": (
                certificate_to_json(self.certificate) if self.certificate else None
            ),
            "notes": list(self.notes),
        }


def iter_tuple_configs(
    oracle: TheoryOracle,
    base_seq: tuple[str, ...],
    nslots: int,
    budget: int,
    on_curtail=None,
) -> Iterator[tuple[TheoryOracle, tuple[str, ...], int]]:
    """Parameter tuples over a base, one representative per realisable type.

    Slot by slot: existing base parameters, then the backend's canonical
    fresh configurations over base plus the earlier slots.  Yields the
    extended oracle, the tuple and the number of parameters created.
    """
    if nslots == 0:
        yield oracle, (), 0
        return
    for o, partial, cost in iter_tuple_configs(
        oracle, base_seq, nslots - 1, budget, on_curtail
    ):
        context = base_seq + tuple(p for p in partial if p not in base_seq)
        for kind, payload in o.anchor_options(context):
            if kind == "existing":
                yield o, partial + (payload,), cost
            else:
                if cost + 1 > budget:
                    if on_curtail is not None:
                        on_curtail()
                    continue
                o2, names = o.fresh_parameters(payload, 1)
                yield o2, partial + (names[0],), cost + 1


def default_alphabet(
    oracle: TheoryOracle, tuple_length: int
) -> tuple[FormulaTemplate, ...]:
    """Equality and every relation, anchored at each tuple position."""
    templates = []
    for i in range(tuple_length):
        slots = ("y0",)
        templates.append(FormulaTemplate(Eq(Var(i), Param("y0")), slots))
    for rel, arity in oracle.signature.relations:
        for i in range(tuple_length):
            slots = tuple(f"y{j}" for j in range(arity - 1))
            args = (Var(i), *(Param(s) for s in slots))
            templates.append(FormulaTemplate(Atom(rel, args), slots))
    return tuple(templates)


class _Search:
    def __init__(
        self,
        oracle: TheoryOracle,
        ptype: PartialType,
        alphabet: Sequence[FormulaTemplate],
        bounds: SearchBounds,
    ):
        self.oracle = oracle
        self.ptype = ptype
        self.alphabet = tuple(alphabet)
        self.bounds = bounds
        self.truncated = False
        self.consistency_checks = 0

    # -- candidate anchors, up to type equality over the base ------------------

    def _anchor_candidates(
        self, oracle: TheoryOracle, base_seq: tuple[str, ...], nslots: int, budget: int
    ) -> Iterator[tuple[TheoryOracle, tuple[str, ...], int]]:
        def curtailed() -> None:
            self.truncated = True

        yield from iter_tuple_configs(oracle, base_seq, nslots, budget, curtailed)

    # -- witnesses ----------------------------------------------------------------

    def _find_witness(
        self,
        oracle: TheoryOracle,
        template: FormulaTemplate,
        anchor: tuple[str, ...],
        base_seq: tuple[str, ...],
        budget: int,
    ) -> tuple[TheoryOracle, DividingWitness, int] | None:
        base = frozenset(base_seq)
        width = self.bounds.width
        # value semantics make speculative creation free: build the family,
        # then charge for the parameters it actually added
        o, family = oracle.generic_family(anchor, base, width)
        cost = len(o.params) - len(oracle.params)
        if cost > budget:
            self.truncated = True
            return None
        self.consistency_checks += 1
        for k in range(2, width + 1):
            if check_k_inconsistent(
                o, template, family, k, self.ptype.tuple_length
            ):
                witness = DividingWitness(template, anchor, base, tuple(family), k)
                return o, witness, cost
        return None

    # -- depth-first extension to an exact target ------------------------------------

    def find_at_depth(
        self, target: int
    ) -> tuple[SequenceCertificate, TheoryOracle] | None:
        found = self._extend(
            self.oracle,
            tuple(dict.fromkeys(self.ptype.base_params)),
            tuple(self.ptype.formulas),
            (),
            target,
            self.bounds.param_budget,
        )
        if found is None:
            return None
        entries, oracle = found
        return SequenceCertificate(self.ptype, entries), oracle

    def _extend(
        self,
        oracle: TheoryOracle,
        base_seq: tuple[str, ...],
        branch: tuple,
        entries: tuple[SequenceEntry, ...],
        remaining: int,
        budget: int,
    ) -> tuple[tuple[SequenceEntry, ...], TheoryOracle] | None:
        if remaining == 0:
            return entries, oracle
        for template in self.alphabet:
            for o, anchor, anchor_cost in self._anchor_candidates(
                oracle, base_seq, len(template.slots), budget
            ):
                instance = template.instantiate(anchor)
                self.consistency_checks += 1
                if not o.consistent(branch + (instance,), self.ptype.tuple_length):
                    continue
                found_witness = self._find_witness(
                    o, template, anchor, base_seq, budget - anchor_cost
                )
                if found_witness is None:
                    continue
                o2, witness, witness_cost = found_witness
                entry = SequenceEntry(template, anchor, witness)
                deeper = self._extend(
                    o2,
                    base_seq + tuple(p for p in anchor if p not in base_seq),
                    branch + (instance,),
                    entries + (entry,),
                    remaining - 1,
                    budget - anchor_cost - witness_cost,
                )
                if deeper is not None:
                    return deeper
        return None


def search_rank(
    oracle: TheoryOracle,
    ptype: PartialType,
    alphabet: Sequence[FormulaTemplate] | None,
    depth_bound: int,
    width: int = 4,
    param_budget: int = 96,
) -> RankReport:
    """Iterative-deepening exhaustive search for the dividing depth.

    The report carries the deepest verified sequence certificate; the exact
    value is set when the enumeration was never budget-curtailed and the
    depth bound was not attained (the first failing target was refuted
    exhaustively).
    """
    if alphabet is None:
        alphabet = default_alphabet(oracle, ptype.tuple_length)
    if not alphabet:
        raise ValueError("alphabet must not be empty")
    bounds = SearchBounds(depth_bound, width, param_budget)
    issues = validate_type(ptype, oracle.signature)
    if issues:
        raise OracleError("; ".join(issues))
    missing = set(ptype.base_params) - set(oracle.params)
    if missing:
        raise OracleError(f"type base parameters missing from the space: {sorted(missing)}")

    notes: list[str] = []
    if not oracle.consistent(ptype.formulas, ptype.tuple_length):
        return RankReport(
            oracle=oracle,
            theory_config=oracle.to_config(),
            ptype=ptype,
            alphabet=tuple(alphabet),
            bounds=bounds,
            certified_lower=ExtOrdinal.plus(0),
            exhausted=True,
            exact_value=0,
            certificate=None,
            notes=("type is inconsistent; rank 0 by convention, no certificate",),
        )

    engine = _Search(oracle, ptype, alphabet, bounds)
    best = SequenceCertificate(ptype, ())
    best_oracle = oracle
    for target in range(1, depth_bound + 1):
        log.debug("searching depth target %d", target)
        found = engine.find_at_depth(target)
        if found is None:
            break
        best, best_oracle = found
    exhausted = not engine.truncated
    exact = (
        best.depth
        if exhausted and best.depth < depth_bound
        else None
    )
    if engine.truncated:
        notes.append("parameter budget curtailed the candidate enumeration")
    log.debug(
        "search done: depth=%d exact=%s checks=%d",
        best.depth,
        exact,
        engine.consistency_checks,
    )
    return RankReport(
        oracle=best_oracle,
        theory_config=best_oracle.to_config(),
        ptype=ptype,
        alphabet=tuple(alphabet),
        bounds=bounds,
        certified_lower=ExtOrdinal.plus(best.depth),
        exhausted=exhausted,
        exact_value=exact,
        certificate=best if best.depth else None,
        notes=tuple(notes),
    )
