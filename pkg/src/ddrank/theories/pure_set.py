"""The pure infinite set: equality only, an endless supply of fresh points."""

from __future__ import annotations

from typing import Iterable, Mapping, Sequence

from .. import kernel
from ..logic import Eq, PartialType, Signature
from .core import (
    Conjunct,
    OracleError,
    TheoryOracle,
    diagram_equalities,
    encode_term,
)

_SIG = Signature()


class PureSetOracle(TheoryOracle):
    kind = "pure_set"

    def __init__(self, names: Sequence[str] = (), counter: int = 0):
        self._names = tuple(names)
        if len(set(self._names)) != len(self._names):
            raise OracleError("parameter names must be unique")
        self._counter = counter
        self._index = {n: i for i, n in enumerate(self._names)}

    @property
    def signature(self) -> Signature:
        return _SIG

    @property
    def params(self) -> tuple[str, ...]:
        return self._names

    def _param_set(self) -> frozenset[str]:
        return frozenset(self._index)

    # -- consistency --------------------------------------------------------

    def _conjunct_sat(self, conjunct: Conjunct, tuple_length: int) -> bool:
        # index only the parameters this conjunct mentions
        local: dict[str, int] = {}
        eqs: list[int] = []
        neqs: list[int] = []
        for sign, atom in conjunct:
            assert isinstance(atom, Eq)  # the signature has no relations
            target = eqs if sign else neqs
            target.append(encode_term(atom.left, tuple_length, local, default=True))
            target.append(encode_term(atom.right, tuple_length, local, default=True))
        return kernel.pure_sat(tuple_length, len(local), eqs, neqs)

    # -- types ----------------------------------------------------------------

    def _tuple_pattern(self, tup, base):
        return self._equality_pattern(tup, base)

    def qf_type(self, tup: Sequence[str], base: Iterable[str]) -> PartialType:
        tup = tuple(tup)
        base_names = sorted(frozenset(base))
        self._check_params([*tup, *base_names])
        formulas = diagram_equalities(tup, base_names, lambda a, b: a == b)
        return PartialType(len(tup), tuple(formulas), frozenset(base_names))

    # -- growth ------------------------------------------------------------------

    def fresh_parameters(self, spec=None, count: int = 1):
        if spec:
            raise OracleError(f"pure set takes no fresh-parameter attributes: {spec}")
        names, counter = self._next_names(count)
        return PureSetOracle(self._names + tuple(names), counter), names

    def transport(self, names, base, pin=None):
        base = frozenset(base)
        names = list(names)
        self._check_params(names)
        copies, counter = self._next_names(len(names))
        oracle = PureSetOracle(self._names + tuple(copies), counter)
        mapping = {b: b for b in base}
        mapping.update(pin or {})
        mapping.update(zip(names, copies))
        return oracle, mapping

    def candidate_specs(self, base_seq):
        return [{}]

    def rename(self, mapping: Mapping[str, str]) -> "PureSetOracle":
        full = self._full_rename(mapping)
        return PureSetOracle(tuple(full[n] for n in self._names), self._counter)

    def to_config(self) -> dict:
        return {"kind": self.kind, "parameters": list(self._names)}
