"""A finite relational structure; consistency by exhaustive evaluation.

Every type here is algebraic: an infinite indiscernible sequence inside a
finite universe is necessarily constant, so the canonical witness families
(:meth:`generic_family`) repeat their anchor and certify no dividing.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Mapping, Sequence

from ..logic import (
    And,
    Atom,
    Eq,
    Formula,
    Not,
    Or,
    Param,
    PartialType,
    Signature,
    Var,
)
from .core import Conjunct, OracleError, TheoryOracle, diagram_equalities


class FiniteStructureOracle(TheoryOracle):
    kind = "finite_structure"

    def __init__(
        self,
        size: int,
        relations: Mapping[str, Iterable[tuple[int, ...]]],
        bindings: Mapping[str, int] | None = None,
        arities: Mapping[str, int] | None = None,
    ):
        if size < 1:
            raise OracleError("universe must be non-empty")
        self._size = size
        self._tables: dict[str, frozenset[tuple[int, ...]]] = {}
        declared = dict(arities or {})
        sig_entries = []
        for name, rows in relations.items():
            rows = frozenset(tuple(r) for r in rows)
            arity = declared.get(name)
            for row in rows:
                if arity is None:
                    arity = len(row)
                elif len(row) != arity:
                    raise OracleError(f"ragged rows in relation {name!r}")
                if any(not (0 <= x < size) for x in row):
                    raise OracleError(f"relation {name!r} mentions a non-element")
            self._tables[name] = rows
            sig_entries.append((name, arity if arity is not None else 2))
        self._signature = Signature(tuple(sig_entries))
        self._arities = {n: a for n, a in sig_entries}
        bindings = dict(bindings or {})
        for name, elem in bindings.items():
            if not (0 <= elem < size):
                raise OracleError(f"parameter {name!r} bound to non-element {elem}")
        bound = set(bindings.values())
        auto = 0
        for elem in range(size):
            if elem not in bound:
                while f"e{auto}" in bindings:
                    auto += 1
                bindings[f"e{auto}"] = elem
        self._elem = bindings
        self._names = tuple(bindings)

    @property
    def size(self) -> int:
        return self._size

    @property
    def signature(self) -> Signature:
        return self._signature

    @property
    def params(self) -> tuple[str, ...]:
        return self._names

    def _param_set(self) -> frozenset[str]:
        return frozenset(self._elem)

    def element_of(self, name: str) -> int:
        return self._elem[name]

    def holds(self, relation: str, row: tuple[int, ...]) -> bool:
        return row in self._tables[relation]

    # -- consistency: try every assignment of the free tuple -----------------

    def consistent(self, formulas: Iterable[Formula], tuple_length: int) -> bool:
        formulas = tuple(formulas)
        self.validate_instance(formulas, tuple_length)
        for assignment in itertools.product(range(self._size), repeat=tuple_length):
            if all(self._eval(f, assignment) for f in formulas):
                return True
        return False

    def _conjunct_sat(self, conjunct: Conjunct, tuple_length: int) -> bool:
        raise NotImplementedError("finite structures evaluate directly")

    def _eval(self, f: Formula, assignment: Sequence[int]) -> bool:
        if isinstance(f, Atom):
            row = tuple(self._value(t, assignment) for t in f.args)
            return row in self._tables[f.relation]
        if isinstance(f, Eq):
            return self._value(f.left, assignment) == self._value(f.right, assignment)
        if isinstance(f, Not):
            return not self._eval(f.body, assignment)
        if isinstance(f, And):
            return self._eval(f.left, assignment) and self._eval(f.right, assignment)
        if isinstance(f, Or):
            return self._eval(f.left, assignment) or self._eval(f.right, assignment)
        raise OracleError(f"unsupported formula node {f!r}")

    def _value(self, t, assignment: Sequence[int]) -> int:
        return assignment[t.index] if isinstance(t, Var) else self._elem[t.name]

    # -- types ------------------------------------------------------------------

    def _tuple_pattern(self, tup, base):
        elems = [self._elem[n] for n in tup]
        base_elems = {self._elem[b] for b in base}
        eq_pattern = []
        for i, e in enumerate(elems):
            if e in base_elems:
                eq_pattern.append(("base", e))
            else:
                eq_pattern.append(("new", elems.index(e)))
        facts = []
        for rel, rows in sorted(self._tables.items()):
            arity = self._signature.arity(rel) or 0
            positions: list[tuple] = [("var", i) for i in range(len(tup))]
            positions += [("elem", e) for e in sorted(base_elems)]
            for combo in itertools.product(positions, repeat=arity):
                if not any(kind == "var" for kind, _ in combo):
                    continue
                row = tuple(
                    elems[x] if kind == "var" else x for kind, x in combo
                )
                facts.append((rel, combo, row in rows))
        return tuple(eq_pattern), tuple(facts)

    def qf_type(self, tup: Sequence[str], base: Iterable[str]) -> PartialType:
        tup = tuple(tup)
        base_names = sorted(frozenset(base))
        self._check_params([*tup, *base_names])
        same = lambda a, b: self._elem[a] == self._elem[b]
        formulas = diagram_equalities(tup, base_names, same)
        terms: list = [Var(i) for i in range(len(tup))]
        terms += [Param(b) for b in base_names]
        values = {**{Var(i): self._elem[n] for i, n in enumerate(tup)},
                  **{Param(b): self._elem[b] for b in base_names}}
        for rel, rows in sorted(self._tables.items()):
            arity = self._signature.arity(rel) or 0
            for combo in itertools.product(terms, repeat=arity):
                if not any(isinstance(t, Var) for t in combo):
                    continue
                f: Formula = Atom(rel, tuple(combo))
                row = tuple(values[t] for t in combo)
                formulas.append(f if row in rows else Not(f))
        return PartialType(len(tup), tuple(formulas), frozenset(base_names))

    # -- growth: there is none ------------------------------------------------------

    def fresh_parameters(self, spec=None, count: int = 1):
        raise OracleError(
            f"finite structure of size {self._size}: universe exhausted, "
            f"cannot add {count} more element(s)"
        )

    def transport(self, names, base, pin=None):
        names = list(names)
        if names:
            raise OracleError("finite structures cannot host fresh copies")
        mapping = {b: b for b in base}
        mapping.update(pin or {})
        return self, mapping

    def generic_family(self, anchor, base, count):
        # only constant sequences are indiscernible in a finite universe
        return self, [tuple(anchor)] * count

    def candidate_specs(self, base_seq):
        return []

    def anchor_options(self, base_seq):
        out = []
        seen = set()
        base = frozenset(base_seq)
        for name in self._names:
            pattern = self._tuple_pattern((name,), base)
            if pattern not in seen:
                seen.add(pattern)
                out.append(("existing", name))
        return out

    def rename(self, mapping: Mapping[str, str]) -> "FiniteStructureOracle":
        full = self._full_rename(mapping)
        bindings = {full[n]: e for n, e in self._elem.items()}
        return FiniteStructureOracle(self._size, self._tables, bindings, self._arities)

    def to_config(self) -> dict:
        return {
            "kind": self.kind,
            "universe": self._size,
            "relations": {r: sorted(map(list, rows)) for r, rows in self._tables.items()},
            "parameters": dict(sorted(self._elem.items())),
        }
