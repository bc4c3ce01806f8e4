"""The random graph: one symmetric irreflexive edge relation R.

Extension axioms make every finite adjacency demand realisable, so
consistency is the absence of a direct contradiction after equality
propagation.  The parameter space is a concrete finite graph: declared
equalities identify names, and any pair without a declared edge is a
non-edge.
"""

from __future__ import annotations

from typing import Iterable, Mapping, Sequence

from .. import kernel
from ..logic import Atom, Eq, Formula, Not, Param, PartialType, Signature, Var
from .core import (
    Conjunct,
    OracleError,
    TheoryOracle,
    _stable_dedupe,
    diagram_equalities,
    encode_term,
)

_SIG = Signature((("R", 2),))


class RandomGraphOracle(TheoryOracle):
    kind = "random_graph"

    def __init__(
        self,
        names: Sequence[str] = (),
        aliases: Mapping[str, str] | None = None,
        edges: Iterable[tuple[str, str]] = (),
        counter: int = 0,
    ):
        self._names = tuple(names)
        if len(set(self._names)) != len(self._names):
            raise OracleError("parameter names must be unique")
        name_set = set(self._names)
        self._alias = dict(aliases or {})
        for src, dst in self._alias.items():
            if src not in name_set or dst not in name_set:
                raise OracleError(f"equality fact over unknown names: {src}={dst}")
        # canonical representatives, in declaration order
        self._rep = {n: self._resolve(n) for n in self._names}
        self._reps = tuple(_stable_dedupe(self._rep[n] for n in self._names))
        self._rep_index = {r: i for i, r in enumerate(self._reps)}
        self._edges: set[tuple[str, str]] = set()
        for u, v in edges:
            ru, rv = self._rep.get(u), self._rep.get(v)
            if ru is None or rv is None:
                raise OracleError(f"edge over unknown names: {u}-{v}")
            if ru == rv:
                raise OracleError(f"loops are not allowed: {u}-{v}")
            self._edges.add((min(ru, rv), max(ru, rv)))
        self._counter = counter
        self._index = {n: i for i, n in enumerate(self._names)}

    def _resolve(self, name: str) -> str:
        seen = set()
        while name in self._alias:
            if name in seen:
                raise OracleError("cyclic equality facts")
            seen.add(name)
            name = self._alias[name]
        return name

    @property
    def signature(self) -> Signature:
        return _SIG

    @property
    def params(self) -> tuple[str, ...]:
        return self._names

    def _param_set(self) -> frozenset[str]:
        return frozenset(self._index)

    def adjacent(self, u: str, v: str) -> bool:
        ru, rv = self._rep[u], self._rep[v]
        return (min(ru, rv), max(ru, rv)) in self._edges

    def same_element(self, u: str, v: str) -> bool:
        return self._rep[u] == self._rep[v]

    # -- consistency ---------------------------------------------------------

    def _conjunct_sat(self, conjunct: Conjunct, tuple_length: int) -> bool:
        # index only the representatives this conjunct mentions
        local: dict[str, int] = {}

        def encode(t) -> int:
            if isinstance(t, Var):
                return t.index
            rep = self._rep[t.name]
            if rep not in local:
                local[rep] = len(local)
            return tuple_length + local[rep]

        eqs: list[int] = []
        neqs: list[int] = []
        pos: list[int] = []
        neg: list[int] = []
        for sign, atom in conjunct:
            if isinstance(atom, Eq):
                target = eqs if sign else neqs
                args = (atom.left, atom.right)
            else:
                target = pos if sign else neg
                args = atom.args
            target.append(encode(args[0]))
            target.append(encode(args[1]))
        n = len(local)
        matrix = bytearray(n * n)
        for rep, i in local.items():
            for other, j in local.items():
                if j > i and (min(rep, other), max(rep, other)) in self._edges:
                    matrix[i * n + j] = 1
                    matrix[j * n + i] = 1
        return kernel.graph_sat(tuple_length, n, bytes(matrix), eqs, neqs, pos, neg)

    # -- types -------------------------------------------------------------------

    def _tuple_pattern(self, tup, base):
        eq_pattern = []
        reps = [self._rep[n] for n in tup]
        base_reps = {self._rep[b] for b in base}
        for i, r in enumerate(reps):
            if r in base_reps:
                eq_pattern.append(("base", r))
            else:
                eq_pattern.append(("new", reps.index(r)))
        internal = tuple(
            self.adjacent(tup[i], tup[j])
            for i in range(len(tup))
            for j in range(i + 1, len(tup))
        )
        external = tuple(
            tuple(sorted(b for b in base_reps if self.adjacent(n, b))) for n in tup
        )
        return tuple(eq_pattern), internal, external

    def qf_type(self, tup: Sequence[str], base: Iterable[str]) -> PartialType:
        tup = tuple(tup)
        base_names = sorted(frozenset(base))
        self._check_params([*tup, *base_names])
        formulas = diagram_equalities(tup, base_names, self.same_element)
        for i in range(len(tup)):
            for j in range(i + 1, len(tup)):
                f: Formula = Atom("R", (Var(i), Var(j)))
                formulas.append(f if self.adjacent(tup[i], tup[j]) else Not(f))
            for b in base_names:
                f = Atom("R", (Var(i), Param(b)))
                formulas.append(f if self.adjacent(tup[i], b) else Not(f))
        return PartialType(len(tup), tuple(formulas), frozenset(base_names))

    # -- growth ---------------------------------------------------------------------

    def fresh_parameters(self, spec=None, count: int = 1):
        spec = dict(spec or {})
        adjacent_to = list(spec.pop("adjacent_to", ()))
        not_adjacent_to = list(spec.pop("not_adjacent_to", ()))
        if spec:
            raise OracleError(f"unknown fresh-parameter attributes: {sorted(spec)}")
        self._check_params(adjacent_to)
        self._check_params(not_adjacent_to)
        overlap = {self._rep[u] for u in adjacent_to} & {
            self._rep[u] for u in not_adjacent_to
        }
        if overlap:
            raise OracleError(f"contradictory adjacency spec on {sorted(overlap)}")
        names, counter = self._next_names(count)
        edges = set(self._edges)
        for name in names:
            for u in adjacent_to:
                ru = self._rep[u]
                edges.add((min(name, ru), max(name, ru)))
        return (
            RandomGraphOracle(self._names + tuple(names), self._alias, edges, counter),
            names,
        )

    def transport(self, names, base, pin=None):
        base = frozenset(base)
        names = list(names)
        pin = dict(pin or {})
        self._check_params(names)
        self._check_params(base)
        self._check_params(pin.values())
        copies, counter = self._next_names(len(names))
        copy_of = dict(zip(names, copies))
        context = {**{b: b for b in base}, **pin}
        edges = set(self._edges)
        for src, copy in copy_of.items():
            for other, target in context.items():
                if self.adjacent(src, other):
                    rt = self._rep[target]
                    edges.add((min(copy, rt), max(copy, rt)))
            for other, other_copy in copy_of.items():
                if other != src and self.adjacent(src, other):
                    edges.add((min(copy, other_copy), max(copy, other_copy)))
        oracle = RandomGraphOracle(
            self._names + tuple(copies), self._alias, edges, counter
        )
        mapping = dict(context)
        mapping.update(copy_of)
        return oracle, mapping

    def candidate_specs(self, base_seq):
        import itertools

        reps = _stable_dedupe(self._rep[b] for b in base_seq)
        specs: list[Mapping] = []
        for r in range(len(reps) + 1):
            for combo in itertools.combinations(reps, r):
                specs.append({"adjacent_to": list(combo)})
        return specs

    def rename(self, mapping: Mapping[str, str]) -> "RandomGraphOracle":
        full = self._full_rename(mapping)
        aliases = {full[s]: full[d] for s, d in self._alias.items()}
        edges = {(full[u], full[v]) for u, v in self._edges}
        return RandomGraphOracle(
            tuple(full[n] for n in self._names), aliases, edges, self._counter
        )

    def to_config(self) -> dict:
        return {
            "kind": self.kind,
            "vertices": list(self._names),
            "edges": sorted([u, v] for u, v in self._edges),
            "equalities": sorted([s, d] for s, d in self._alias.items()),
        }
