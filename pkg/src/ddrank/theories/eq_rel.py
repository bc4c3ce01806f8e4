"""One equivalence relation E with unboundedly many unbounded classes.

Fresh elements of any class and entirely fresh classes are always available,
so every class is as good as infinite and so is the supply of classes.
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

_SIG = Signature((("E", 2),))


class EqRelOracle(TheoryOracle):
    kind = "eq_rel"

    def __init__(
        self,
        labels: Sequence[tuple[str, str]] = (),
        counter: int = 0,
        label_counter: int = 0,
    ):
        self._entries = tuple(labels)
        names = [n for n, _ in self._entries]
        if len(set(names)) != len(names):
            raise OracleError("parameter names must be unique")
        self._names = tuple(names)
        self._label = dict(self._entries)
        self._index = {n: i for i, n in enumerate(self._names)}
        self._counter = counter
        self._label_counter = label_counter
        label_ids: dict[str, int] = {}
        for _, lab in self._entries:
            label_ids.setdefault(lab, len(label_ids))
        self._label_ints = [label_ids[lab] for _, lab in self._entries]

    @property
    def signature(self) -> Signature:
        return _SIG

    @property
    def params(self) -> tuple[str, ...]:
        return self._names

    def _param_set(self) -> frozenset[str]:
        return frozenset(self._index)

    def class_of(self, name: str) -> str:
        try:
            return self._label[name]
        except KeyError:
            raise OracleError(f"unknown parameter {name!r}") from None

    # -- consistency ----------------------------------------------------------

    def _conjunct_sat(self, conjunct: Conjunct, tuple_length: int) -> bool:
        # index only the parameters this conjunct mentions
        local: dict[str, int] = {}
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
            for t in args:
                target.append(encode_term(t, tuple_length, local, default=True))
        label_ids: dict[str, int] = {}
        labels = [0] * len(local)
        for name, i in local.items():
            lab = self._label[name]
            labels[i] = label_ids.setdefault(lab, len(label_ids))
        return kernel.eqrel_sat(tuple_length, labels, eqs, neqs, pos, neg)

    # -- types --------------------------------------------------------------------

    def _tuple_pattern(self, tup, base):
        base_labels = {self._label[b] for b in base}
        classes = []
        seen: dict[str, int] = {}
        for i, name in enumerate(tup):
            lab = self._label[name]
            if lab in base_labels:
                classes.append(("class", lab))
            else:
                classes.append(("new", seen.setdefault(lab, i)))
        return self._equality_pattern(tup, base), tuple(classes)

    def qf_type(self, tup: Sequence[str], base: Iterable[str]) -> PartialType:
        tup = tuple(tup)
        base_names = sorted(frozenset(base))
        self._check_params([*tup, *base_names])
        formulas = diagram_equalities(tup, base_names, lambda a, b: a == b)
        same = lambda a, b: self._label[a] == self._label[b]
        for i in range(len(tup)):
            for j in range(i + 1, len(tup)):
                f: Formula = Atom("E", (Var(i), Var(j)))
                formulas.append(f if same(tup[i], tup[j]) else Not(f))
            for b in base_names:
                f = Atom("E", (Var(i), Param(b)))
                formulas.append(f if same(tup[i], b) else Not(f))
        return PartialType(len(tup), tuple(formulas), frozenset(base_names))

    # -- growth -----------------------------------------------------------------

    def _fresh_labels(self, count: int) -> tuple[list[str], int]:
        used = set(self._label.values())
        out: list[str] = []
        i = self._label_counter
        while len(out) < count:
            i += 1
            lab = f"C{i}"
            if lab not in used:
                out.append(lab)
        return out, i

    def fresh_parameters(self, spec=None, count: int = 1):
        spec = dict(spec or {})
        fresh_class = spec.pop("fresh_class", False)
        class_of = spec.pop("class_of", None)
        label = spec.pop("label", None)
        if spec:
            raise OracleError(f"unknown fresh-parameter attributes: {sorted(spec)}")
        if sum(x is not None and x is not False for x in (fresh_class, class_of, label)) > 1:
            raise OracleError("give at most one of fresh_class, class_of, label")
        if class_of is not None:
            label = self.class_of(class_of)
        names, counter = self._next_names(count)
        if label is not None:
            labels = [label] * count
            label_counter = self._label_counter
        else:
            # default: each new parameter opens its own fresh class
            labels, label_counter = self._fresh_labels(count)
        entries = self._entries + tuple(zip(names, labels))
        return EqRelOracle(entries, counter, label_counter), names

    def transport(self, names, base, pin=None):
        base = frozenset(base)
        names = list(names)
        pin = dict(pin or {})
        self._check_params(names)
        self._check_params(base)
        self._check_params(pin.values())
        # translate class labels: pinned sources hand their class to the
        # pin target's class, base-visible classes stay, the rest go fresh
        translation: dict[str, str] = {self._label[b]: self._label[b] for b in base}
        for src, dst in pin.items():
            translation.setdefault(self._label[src], self._label[dst])
        needed = _stable_dedupe(
            self._label[n] for n in names if self._label[n] not in translation
        )
        fresh, label_counter = self._fresh_labels(len(needed))
        translation.update(zip(needed, fresh))
        copies, counter = self._next_names(len(names))
        entries = self._entries + tuple(
            (copy, translation[self._label[src]]) for copy, src in zip(copies, names)
        )
        oracle = EqRelOracle(entries, counter, label_counter)
        mapping = {b: b for b in base}
        mapping.update(pin)
        mapping.update(zip(names, copies))
        return oracle, mapping

    def candidate_specs(self, base_seq):
        specs: list[Mapping] = []
        seen_labels = set()
        for b in base_seq:
            lab = self.class_of(b)
            if lab not in seen_labels:
                seen_labels.add(lab)
                specs.append({"class_of": b})
        specs.append({"fresh_class": True})
        return specs

    def rename(self, mapping: Mapping[str, str]) -> "EqRelOracle":
        full = self._full_rename(mapping)
        entries = tuple((full[n], lab) for n, lab in self._entries)
        return EqRelOracle(entries, self._counter, self._label_counter)

    def to_config(self) -> dict:
        return {
            "kind": self.kind,
            "parameters": [{"name": n, "class": lab} for n, lab in self._entries],
        }
