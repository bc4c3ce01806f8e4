"""Conversions between certificate kinds.

The cycle tree -> branch sequence -> chain -> sequence preserves depth and
verification; an inp-pattern becomes a tree by copying its rows level-wise;
two sequences over stacked bases concatenate into one for the product type;
and a sequence grows into a full tree by transporting its tail along every
sibling (the backends' conjugate copies keep every branch consistent).
"""

from __future__ import annotations

import itertools
from typing import Mapping, Sequence

from ..logic import (
    And,
    Atom,
    Eq,
    Formula,
    FormulaTemplate,
    Not,
    Param,
    PartialType,
    Var,
    params_of,
    shift_vars,
)
from ..theories import TheoryOracle
from .certificates import (
    CertificateError,
    ChainCertificate,
    ChainStep,
    DividingWitness,
    InpCertificate,
    InpRow,
    SequenceCertificate,
    SequenceEntry,
    TreeCertificate,
    TreeLevel,
)


class ConversionError(ValueError):
    """A conversion precondition failed; carries enough context to act on."""


def inp_to_tree(inp: InpCertificate) -> TreeCertificate:
    """Copy each row across its whole level: a_(s,i) := a_(|s|,i)."""
    nodes = []
    for length in range(inp.depth):
        row = inp.rows[length]
        for prefix in itertools.product(range(inp.width), repeat=length):
            for i in range(inp.width):
                nodes.append((prefix + (i,), row.tuples[i]))
    levels = tuple(TreeLevel(row.template, row.k) for row in inp.rows)
    return TreeCertificate(inp.depth, inp.width, levels, tuple(nodes))


def tree_branch_to_sequence(
    oracle: TheoryOracle,
    tree: TreeCertificate,
    branch: Sequence[int],
    ptype: PartialType,
) -> SequenceCertificate:
    """Read one branch off a tree; sibling rows become the witnesses.

    Requires the siblings along the branch to be pairwise conjugate over the
    accumulated base (the finite stand-in for row indiscernibility).
    """
    branch = tuple(branch)
    if len(branch) != tree.depth or any(not 0 <= i < tree.width for i in branch):
        raise ConversionError(
            f"branch {branch} does not address a depth-{tree.depth}, "
            f"width-{tree.width} tree"
        )
    base = set(ptype.base_params)
    entries = []
    for level_idx in range(tree.depth):
        prefix = branch[:level_idx]
        siblings = tree.siblings(prefix)
        anchor = siblings[branch[level_idx]]
        for j, member in enumerate(siblings):
            if not oracle.same_type_over(member, anchor, base):
                raise ConversionError(
                    f"level {level_idx}: sibling {j} is not conjugate to the "
                    f"chosen node over the accumulated base"
                )
        level = tree.levels[level_idx]
        witness = DividingWitness(
            level.template, anchor, frozenset(base), tuple(siblings), level.k
        )
        entries.append(SequenceEntry(level.template, anchor, witness))
        base.update(anchor)
    return SequenceCertificate(ptype, tuple(entries))


def sequence_to_chain(
    cert: SequenceCertificate,
    oracle: TheoryOracle | None = None,
    complete_fragment: bool = False,
) -> ChainCertificate:
    """Accumulate the branch into a chain of partial types.

    With ``complete_fragment`` the steps additionally close under every
    atomic fact over their base that the accumulated type already forces
    (needs the oracle to decide entailment).
    """
    if complete_fragment and oracle is None:
        raise ConversionError("complete_fragment closure needs an oracle")
    p = cert.ptype
    formulas = list(p.formulas)
    base = set(p.base_params)
    steps = []
    for entry in cert.entries:
        formulas = formulas + [entry.template.instantiate(entry.anchor)]
        base = base | set(entry.anchor)
        step_type = PartialType(p.tuple_length, tuple(formulas), frozenset(base))
        if complete_fragment:
            step_type = _close_under_atomic_facts(oracle, step_type)
            formulas = list(step_type.formulas)
        steps.append(ChainStep(step_type, entry.witness))
    return ChainCertificate(p, steps)


def _close_under_atomic_facts(oracle: TheoryOracle, p: PartialType) -> PartialType:
    """Append every decided atomic fact about the tuple over the base."""
    candidates: list[Formula] = []
    terms = [Var(i) for i in range(p.tuple_length)]
    base = sorted(p.base_params)
    for i, left in enumerate(terms):
        for right in terms[i + 1 :]:
            candidates.append(Eq(left, right))
        for b in base:
            candidates.append(Eq(left, Param(b)))
    for rel, arity in oracle.signature.relations:
        pool = terms + [Param(b) for b in base]
        for combo in itertools.product(pool, repeat=arity):
            if any(isinstance(t, Var) for t in combo):
                candidates.append(Atom(rel, tuple(combo)))
    extra = []
    have = set(p.formulas)
    for atom in candidates:
        for fact in (atom, Not(atom)):
            opposite = fact.body if isinstance(fact, Not) else Not(fact)
            if fact in have:
                break
            if not oracle.consistent((*p.formulas, opposite), p.tuple_length):
                extra.append(fact)
                break
    return PartialType(p.tuple_length, p.formulas + tuple(extra), p.base_params)


def chain_to_sequence(
    oracle: TheoryOracle, chain: ChainCertificate
) -> SequenceCertificate:
    """Extract the witnessed formulas; anchors already live in the step bases."""
    entries = []
    for i, step in enumerate(chain.steps):
        witness = step.witness
        missing = [a for a in witness.anchor if a not in step.ptype.base_params]
        if missing:
            raise ConversionError(
                f"step {i}: witness anchor {missing} escapes the step base; "
                f"no extractable dividing witness"
            )
        entries.append(SequenceEntry(witness.template, witness.anchor, witness))
    return SequenceCertificate(chain.ptype, tuple(entries))


def product_concat(
    certS: SequenceCertificate, certT: SequenceCertificate
) -> SequenceCertificate:
    """Stack a sequence for the second factor on top of one for the first.

    ``certT`` must live over exactly the first certificate's base plus its
    anchors, and its type formulas may only mention the shared base: the
    output is then a certificate for the product type over that base.
    """
    nS = certS.ptype.tuple_length
    base_A = certS.ptype.base_params
    expected = frozenset(base_A) | set(certS.anchor_params())
    if frozenset(certT.ptype.base_params) != expected:
        raise ConversionError(
            f"second certificate must be based on the first one's base plus "
            f"anchors {sorted(expected)}, got {sorted(certT.ptype.base_params)}"
        )
    stray = set().union(*(params_of(f) for f in certT.ptype.formulas)) - set(base_A)
    if stray:
        raise ConversionError(
            f"second type mentions parameters outside the shared base: {sorted(stray)}"
        )
    lifted_formulas = certS.ptype.formulas + tuple(
        shift_vars(f, nS) for f in certT.ptype.formulas
    )
    product_type = PartialType(
        nS + certT.ptype.tuple_length, lifted_formulas, base_A
    )
    entries = list(certS.entries)
    for entry in certT.entries:
        template = FormulaTemplate(
            shift_vars(entry.template.formula, nS), entry.template.slots
        )
        witness = DividingWitness(
            template, entry.anchor, entry.witness.base, entry.witness.family, entry.witness.k
        )
        entries.append(SequenceEntry(template, entry.anchor, witness))
    return SequenceCertificate(product_type, tuple(entries))


def sequence_to_tree(
    oracle: TheoryOracle, cert: SequenceCertificate, width: int | None = None
) -> tuple[TheoryOracle, TreeCertificate]:
    """Grow a sequence into a full tree by transporting its tail.

    Each witness family becomes a sibling row; under every sibling the rest
    of the certificate is copied by a conjugate transport pinned to that
    sibling, so all branches stay consistent.
    """
    widths = {len(e.witness.family) for e in cert.entries}
    if width is None:
        if len(widths) > 1:
            raise ConversionError(f"mixed family widths {sorted(widths)}; pass one")
        width = widths.pop() if widths else 2
    elif widths and widths != {width}:
        raise ConversionError(f"family widths {sorted(widths)} do not match {width}")

    levels = tuple(
        TreeLevel(e.template, e.witness.k) for e in cert.entries
    )
    nodes: list[tuple[tuple[int, ...], tuple[str, ...]]] = []

    def grow(
        o: TheoryOracle,
        path: tuple[int, ...],
        base: frozenset[str],
        mapping: Mapping[str, str],
        idx: int,
    ) -> TheoryOracle:
        if idx == cert.depth:
            return o
        entry = cert.entries[idx]
        family = [
            tuple(mapping.get(p, p) for p in member) for member in entry.witness.family
        ]
        anchor_here = tuple(mapping.get(p, p) for p in entry.anchor)
        tail: list[str] = []
        for later in cert.entries[idx + 1 :]:
            for tup in (later.anchor, *later.witness.family):
                for p in tup:
                    q = mapping.get(p, p)
                    if q not in tail:
                        tail.append(q)
        for i, sibling in enumerate(family):
            nodes.append((path + (i,), sibling))
            pin = dict(zip(anchor_here, sibling))
            to_copy = [q for q in tail if q not in base and q not in pin]
            o, moved = o.transport(to_copy, base, pin)
            child_map = {p: moved.get(mapping.get(p, p), mapping.get(p, p)) for p in _all_params(cert, idx + 1)}
            o = grow(
                o,
                path + (i,),
                base | frozenset(sibling),
                child_map,
                idx + 1,
            )
        return o

    final = grow(
        oracle,
        (),
        frozenset(cert.ptype.base_params),
        {},
        0,
    )
    return final, TreeCertificate(cert.depth, width, levels, tuple(nodes))


def _all_params(cert: SequenceCertificate, start: int) -> list[str]:
    out: list[str] = []
    for entry in cert.entries[start:]:
        for tup in (entry.anchor, *entry.witness.family):
            for p in tup:
                if p not in out:
                    out.append(p)
    return out


def inp_from_witnesses(
    rows: Sequence[tuple[FormulaTemplate, Sequence[tuple[str, ...]], int]]
) -> InpCertificate:
    """Assemble an inp-pattern from per-row (template, tuples, k) data."""
    return InpCertificate(
        tuple(InpRow(t, k, tuple(tuple(x) for x in tuples)) for t, tuples, k in rows)
    )
