"""Finite dividing certificates and their JSON encoding.

Four certificate kinds witness lower bounds on the dividing depth of a
partial type: sequences (formula-by-formula dividing steps), trees (the
branching form), inp-patterns (trees whose levels reuse one row of
parameters) and chains (accumulated types).  Construction validates shape;
semantic checks live in :mod:`ddrank.rank.verify`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from ..logic import (
    FormulaTemplate,
    PartialType,
    template_from_json,
    template_to_json,
    type_from_json,
    type_to_json,
)

CERTIFICATE_SCHEMA_ID = "ddrank:certificate:1"


class CertificateError(ValueError):
    """Structurally malformed certificate."""


@dataclass(frozen=True)
class DividingWitness:
    """Finite-width evidence that an instance divides over a base.

    ``family`` members all realise the anchor's quantifier-free type over
    ``base`` and the instance family is ``k``-inconsistent.
    """

    template: FormulaTemplate
    anchor: tuple[str, ...]
    base: frozenset[str]
    family: tuple[tuple[str, ...], ...]
    k: int

    def __post_init__(self) -> None:
        if self.k < 2:
            raise CertificateError("k must be at least 2")
        if len(self.family) < self.k:
            raise CertificateError(
                f"family of width {len(self.family)} cannot be {self.k}-inconsistent"
            )
        width = len(self.template.slots)
        for tup in (self.anchor, *self.family):
            if len(tup) != width:
                raise CertificateError(
                    f"tuple {tup} does not fill the {width} template slots"
                )


@dataclass(frozen=True)
class SequenceEntry:
    template: FormulaTemplate
    anchor: tuple[str, ...]
    witness: DividingWitness


@dataclass(frozen=True)
class SequenceCertificate:
    """A dividing sequence: each instance divides over the accumulated base."""

    ptype: PartialType
    entries: tuple[SequenceEntry, ...]

    @property
    def depth(self) -> int:
        return len(self.entries)

    def base_at(self, i: int) -> frozenset[str]:
        """The base of entry ``i``: the type's base plus earlier anchors."""
        names = set(self.ptype.base_params)
        for entry in self.entries[:i]:
            names.update(entry.anchor)
        return frozenset(names)

    def anchor_params(self) -> tuple[str, ...]:
        out: list[str] = []
        for entry in self.entries:
            for name in entry.anchor:
                if name not in out:
                    out.append(name)
        return tuple(out)


@dataclass(frozen=True)
class TreeLevel:
    template: FormulaTemplate
    k: int


@dataclass(frozen=True)
class TreeCertificate:
    """The branching certificate: per-level templates, a full parameter tree."""

    depth: int
    width: int
    levels: tuple[TreeLevel, ...]
    nodes: tuple[tuple[tuple[int, ...], tuple[str, ...]], ...]

    def __post_init__(self) -> None:
        if self.depth < 0 or self.width < 2:
            raise CertificateError("need depth >= 0 and width >= 2")
        if len(self.levels) != self.depth:
            raise CertificateError(
                f"{self.depth} levels expected, got {len(self.levels)}"
            )
        for level in self.levels:
            if level.k < 2 or level.k > self.width:
                raise CertificateError(
                    f"level k={level.k} outside 2..width={self.width}"
                )
        lookup = {}
        for path, params in self.nodes:
            if not (1 <= len(path) <= self.depth):
                raise CertificateError(f"node path {path} outside depth {self.depth}")
            if any(not (0 <= i < self.width) for i in path):
                raise CertificateError(f"node path {path} outside width {self.width}")
            if path in lookup:
                raise CertificateError(f"duplicate node {path}")
            lookup[path] = params
        for length in range(1, self.depth + 1):
            for path in itertools.product(range(self.width), repeat=length):
                if path not in lookup:
                    raise CertificateError(f"missing node {path}")
        object.__setattr__(self, "_lookup", lookup)

    def node(self, path: tuple[int, ...]) -> tuple[str, ...]:
        return self._lookup[path]  # type: ignore[attr-defined]

    def siblings(self, prefix: tuple[int, ...]) -> list[tuple[str, ...]]:
        return [self.node(prefix + (i,)) for i in range(self.width)]

    def branches(self):
        return itertools.product(range(self.width), repeat=self.depth)


@dataclass(frozen=True)
class InpRow:
    template: FormulaTemplate
    k: int
    tuples: tuple[tuple[str, ...], ...]

    def __post_init__(self) -> None:
        if self.k < 2:
            raise CertificateError("k must be at least 2")
        if self.k > len(self.tuples):
            raise CertificateError(
                f"row of width {len(self.tuples)} cannot be {self.k}-inconsistent"
            )
        width = len(self.template.slots)
        for tup in self.tuples:
            if len(tup) != width:
                raise CertificateError(
                    f"tuple {tup} does not fill the {width} template slots"
                )


@dataclass(frozen=True)
class InpCertificate:
    """Rows reused across a whole level: the inp-pattern form."""

    rows: tuple[InpRow, ...]

    def __post_init__(self) -> None:
        widths = {len(row.tuples) for row in self.rows}
        if len(widths) > 1:
            raise CertificateError(f"ragged rows: widths {sorted(widths)}")

    @property
    def depth(self) -> int:
        return len(self.rows)

    @property
    def width(self) -> int:
        return len(self.rows[0].tuples) if self.rows else 0


@dataclass(frozen=True)
class ChainStep:
    ptype: PartialType
    witness: DividingWitness


@dataclass(frozen=True)
class ChainCertificate:
    """A dividing chain of partial types over growing bases."""

    ptype: PartialType
    steps: tuple[ChainStep, ...]

    @property
    def depth(self) -> int:
        return len(self.steps)


Certificate = SequenceCertificate | TreeCertificate | InpCertificate | ChainCertificate


def rename_certificate(cert: Certificate, mapping: Mapping[str, str]):
    """Apply a parameter renaming to every name a certificate mentions."""
    from ..logic import rename_params

    def name(n: str) -> str:
        return mapping.get(n, n)

    def tup(t: Iterable[str]) -> tuple[str, ...]:
        return tuple(name(n) for n in t)

    def template(t: FormulaTemplate) -> FormulaTemplate:
        # slots are abstract placeholders, not space parameters; keep them
        return t

    def ptype(p: PartialType) -> PartialType:
        return PartialType(
            p.tuple_length,
            tuple(rename_params(f, mapping) for f in p.formulas),
            frozenset(name(n) for n in p.base_params),
        )

    def witness(w: DividingWitness) -> DividingWitness:
        return DividingWitness(
            template(w.template),
            tup(w.anchor),
            frozenset(name(n) for n in w.base),
            tuple(tup(t) for t in w.family),
            w.k,
        )

    if isinstance(cert, SequenceCertificate):
        return SequenceCertificate(
            ptype(cert.ptype),
            tuple(
                SequenceEntry(template(e.template), tup(e.anchor), witness(e.witness))
                for e in cert.entries
            ),
        )
    if isinstance(cert, TreeCertificate):
        return TreeCertificate(
            cert.depth,
            cert.width,
            cert.levels,
            tuple((path, tup(params)) for path, params in cert.nodes),
        )
    if isinstance(cert, InpCertificate):
        return InpCertificate(
            tuple(
                InpRow(template(r.template), r.k, tuple(tup(t) for t in r.tuples))
                for r in cert.rows
            )
        )
    if isinstance(cert, ChainCertificate):
        return ChainCertificate(
            ptype(cert.ptype),
            tuple(ChainStep(ptype(s.ptype), witness(s.witness)) for s in cert.steps),
        )
    raise CertificateError(f"unknown certificate {cert!r}")


# -- JSON --------------------------------------------------------------------


def _witness_to_json(w: DividingWitness) -> dict:
    return {
        "template": template_to_json(w.template),
        "anchor": list(w.anchor),
        "base": sorted(w.base),
        "family": [list(t) for t in w.family],
        "k": w.k,
    }


def _witness_from_json(doc: dict) -> DividingWitness:
    return DividingWitness(
        template=template_from_json(doc["template"]),
        anchor=tuple(doc["anchor"]),
        base=frozenset(doc["base"]),
        family=tuple(tuple(t) for t in doc["family"]),
        k=int(doc["k"]),
    )


def certificate_to_json(
    cert: Certificate,
    ptype: PartialType | None = None,
    theory_config: dict | None = None,
) -> dict:
    """Tagged JSON document; trees and inp-patterns embed the ambient type.

    ``theory_config`` optionally bundles the hosting parameter space so the
    file can be verified without side channels.
    """
    doc = _certificate_body(cert, ptype)
    if theory_config is not None:
        doc["theory"] = theory_config
    return doc


def _certificate_body(cert: Certificate, ptype: PartialType | None) -> dict:
    if isinstance(cert, SequenceCertificate):
        return {
            "schema": CERTIFICATE_SCHEMA_ID,
            "kind": "sequence",
            "type": type_to_json(cert.ptype),
            "entries": [
                {
                    "template": template_to_json(e.template),
                    "anchor": list(e.anchor),
                    "witness": _witness_to_json(e.witness),
                }
                for e in cert.entries
            ],
        }
    if isinstance(cert, ChainCertificate):
        return {
            "schema": CERTIFICATE_SCHEMA_ID,
            "kind": "chain",
            "type": type_to_json(cert.ptype),
            "steps": [
                {"type": type_to_json(s.ptype), "witness": _witness_to_json(s.witness)}
                for s in cert.steps
            ],
        }
    if ptype is None:
        raise CertificateError("tree and inp certificates need their ambient type")
    if isinstance(cert, TreeCertificate):
        return {
            "schema": CERTIFICATE_SCHEMA_ID,
            "kind": "tree",
            "type": type_to_json(ptype),
            "depth": cert.depth,
            "width": cert.width,
            "levels": [
                {"template": template_to_json(l.template), "k": l.k} for l in cert.levels
            ],
            "nodes": [
                {"path": list(path), "params": list(params)}
                for path, params in sorted(cert.nodes)
            ],
        }
    if isinstance(cert, InpCertificate):
        return {
            "schema": CERTIFICATE_SCHEMA_ID,
            "kind": "inp",
            "type": type_to_json(ptype),
            "rows": [
                {
                    "template": template_to_json(r.template),
                    "k": r.k,
                    "tuples": [list(t) for t in r.tuples],
                }
                for r in cert.rows
            ],
        }
    raise CertificateError(f"unknown certificate {cert!r}")


def certificate_from_json(doc: dict) -> tuple[Certificate, PartialType]:
    """Decode a certificate document; returns the certificate and its type."""
    kind = doc.get("kind")
    ptype = type_from_json(doc["type"])
    if kind == "sequence":
        entries = tuple(
            SequenceEntry(
                template=template_from_json(e["template"]),
                anchor=tuple(e["anchor"]),
                witness=_witness_from_json(e["witness"]),
            )
            for e in doc["entries"]
        )
        return SequenceCertificate(ptype, entries), ptype
    if kind == "chain":
        steps = tuple(
            ChainStep(type_from_json(s["type"]), _witness_from_json(s["witness"]))
            for s in doc["steps"]
        )
        return ChainCertificate(ptype, steps), ptype
    if kind == "tree":
        cert = TreeCertificate(
            depth=int(doc["depth"]),
            width=int(doc["width"]),
            levels=tuple(
                TreeLevel(template_from_json(l["template"]), int(l["k"]))
                for l in doc["levels"]
            ),
            nodes=tuple(
                (tuple(n["path"]), tuple(n["params"])) for n in doc["nodes"]
            ),
        )
        return cert, ptype
    if kind == "inp":
        cert = InpCertificate(
            rows=tuple(
                InpRow(
                    template_from_json(r["template"]),
                    int(r["k"]),
                    tuple(tuple(t) for t in r["tuples"]),
                )
                for r in doc["rows"]
            )
        )
        return cert, ptype
    raise CertificateError(f"unknown certificate kind {kind!r}")
