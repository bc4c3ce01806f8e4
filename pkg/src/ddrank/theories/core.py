"""Shared oracle machinery: literal extraction, validation, the backend ABC.

A backend decides, exactly, the consistency of finite sets of instantiated
quantifier-free formulas, and quantifier-free type equality of parameter
tuples over finite bases.  Consistency goes through disjunctive normal form:
each conjunct of literals is handed to a small satisfiability kernel (with a
compiled twin, see :mod:`ddrank.kernel`).

Oracles are value-like: mutating operations (``fresh_parameters``,
``transport``, ``rename``) return extended copies and never touch the
receiver, so read paths are safe to share across search workers.
"""

from __future__ import annotations

import abc
import functools
import itertools
from typing import Iterable, Iterator, Mapping, Sequence

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
    Term,
    Var,
    params_of,
    subformulas,
    vars_of,
)


class TheoryError(ValueError):
    """Bad theory configuration."""


class OracleError(ValueError):
    """Structurally invalid input handed to an oracle."""


Literal = tuple[bool, Formula]  # sign, Eq or Atom
Conjunct = tuple[Literal, ...]


@functools.lru_cache(maxsize=4096)
def formula_dnf(f: Formula) -> tuple[Conjunct, ...]:
    """Disjunctive normal form as literal tuples; small formulas only."""
    if isinstance(f, (Atom, Eq)):
        return (((True, f),),)
    if isinstance(f, Not):
        return _negation_dnf(f.body)
    if isinstance(f, And):
        return tuple(
            l + r for l in formula_dnf(f.left) for r in formula_dnf(f.right)
        )
    if isinstance(f, Or):
        return formula_dnf(f.left) + formula_dnf(f.right)
    raise OracleError(f"unsupported formula node {f!r}")


def _negation_dnf(f: Formula) -> tuple[Conjunct, ...]:
    if isinstance(f, (Atom, Eq)):
        return (((False, f),),)
    if isinstance(f, Not):
        return formula_dnf(f.body)
    if isinstance(f, And):
        return _negation_dnf(f.left) + _negation_dnf(f.right)
    if isinstance(f, Or):
        return tuple(
            l + r for l in _negation_dnf(f.left) for r in _negation_dnf(f.right)
        )
    raise OracleError(f"unsupported formula node {f!r}")


def conjunct_choices(formulas: Sequence[Formula]) -> Iterator[Conjunct]:
    """Cartesian product of the per-formula DNFs (the set is a conjunction)."""
    dnfs = [formula_dnf(f) for f in formulas]
    for choice in itertools.product(*dnfs):
        merged: list[Literal] = []
        for conj in choice:
            merged.extend(conj)
        yield tuple(merged)


class TheoryOracle(abc.ABC):
    """Uniform interface over the bundled decidable backends."""

    kind: str

    # -- parameter space ---------------------------------------------------

    @property
    @abc.abstractmethod
    def signature(self) -> Signature: ...

    @property
    @abc.abstractmethod
    def params(self) -> tuple[str, ...]: ...

    def has_param(self, name: str) -> bool:
        return name in self._param_set()

    @abc.abstractmethod
    def _param_set(self) -> frozenset[str]: ...

    # -- consistency ---------------------------------------------------------

    def consistent(self, formulas: Iterable[Formula], tuple_length: int) -> bool:
        """Exact satisfiability of the instantiated formula set."""
        formulas = tuple(formulas)
        self.validate_instance(formulas, tuple_length)
        if not formulas:
            return True
        for conjunct in conjunct_choices(formulas):
            if self._conjunct_sat(conjunct, tuple_length):
                return True
        return False

    @abc.abstractmethod
    def _conjunct_sat(self, conjunct: Conjunct, tuple_length: int) -> bool: ...

    def validate_instance(self, formulas: Sequence[Formula], tuple_length: int) -> None:
        if tuple_length < 1:
            raise OracleError("tuple length must be positive")
        known = self._param_set()
        sig = self.signature
        for f in formulas:
            for sub in subformulas(f):
                if isinstance(sub, Atom):
                    arity = sig.arity(sub.relation)
                    if arity is None:
                        raise OracleError(f"unknown relation {sub.relation!r}")
                    if arity != len(sub.args):
                        raise OracleError(
                            f"relation {sub.relation!r} expects {arity} arguments"
                        )
            for v in vars_of(f):
                if v >= tuple_length:
                    raise OracleError(
                        f"variable x{v} outside tuple of length {tuple_length}"
                    )
            missing = params_of(f) - known
            if missing:
                raise OracleError(f"unknown parameters: {sorted(missing)}")

    # -- types -----------------------------------------------------------------

    def same_type_over(
        self,
        t1: Sequence[str],
        t2: Sequence[str],
        base: Iterable[str],
    ) -> bool:
        """Quantifier-free type equality of tuples over a base."""
        t1, t2 = tuple(t1), tuple(t2)
        if len(t1) != len(t2):
            raise OracleError("tuples must have equal length")
        base = frozenset(base)
        self._check_params(itertools.chain(t1, t2, base))
        return self._tuple_pattern(t1, base) == self._tuple_pattern(t2, base)

    def _check_params(self, names: Iterable[str]) -> None:
        known = self._param_set()
        missing = {n for n in names if n not in known}
        if missing:
            raise OracleError(f"unknown parameters: {sorted(missing)}")

    @abc.abstractmethod
    def _tuple_pattern(self, tup: tuple[str, ...], base: frozenset[str]): ...

    @staticmethod
    def _equality_pattern(tup: tuple[str, ...], base: frozenset[str]):
        out = []
        for i, name in enumerate(tup):
            if name in base:
                out.append(("base", name))
            else:
                out.append(("new", tup.index(name)))
        return tuple(out)

    @abc.abstractmethod
    def qf_type(self, tup: Sequence[str], base: Iterable[str]) -> PartialType:
        """The full quantifier-free diagram of ``tup`` over ``base``."""

    # -- growth -------------------------------------------------------------------

    @abc.abstractmethod
    def fresh_parameters(
        self, spec: Mapping | None = None, count: int = 1
    ) -> tuple["TheoryOracle", list[str]]:
        """Extend the space with ``count`` parameters satisfying ``spec``."""

    @abc.abstractmethod
    def transport(
        self,
        names: Sequence[str],
        base: Iterable[str],
        pin: Mapping[str, str] | None = None,
    ) -> tuple["TheoryOracle", dict[str, str]]:
        """Fresh copies of ``names`` with the same facts over ``base``.

        ``pin`` maps already-replaced parameters to their stand-ins; facts of
        the copies relative to pinned sources transfer to the pin targets.
        The returned mapping is the identity on ``base`` and ``pin`` targets.
        """

    def generic_family(
        self, anchor: Sequence[str], base: Iterable[str], count: int
    ) -> tuple["TheoryOracle", list[tuple[str, ...]]]:
        """Canonically spread conjugate copies of ``anchor`` over ``base``.

        Copies realise the anchor's type over the base and are mutually as
        free as the backend allows, matching an indiscernible spread.
        """
        base_set = frozenset(base)
        oracle: TheoryOracle = self
        families = []
        to_copy = _stable_dedupe(n for n in anchor if n not in base_set)
        for _ in range(count):
            oracle, mapping = oracle.transport(to_copy, base_set)
            families.append(tuple(mapping.get(n, n) for n in anchor))
        return oracle, families

    def anchor_options(
        self, base_seq: Sequence[str]
    ) -> list[tuple[str, object]]:
        """Candidate single-parameter anchors over a base, one per type.

        Pairs ``("existing", name)`` or ``("fresh", spec)``; deterministic
        order (base order first, then the backend's canonical fresh configs).
        """
        out: list[tuple[str, object]] = [("existing", b) for b in _stable_dedupe(base_seq)]
        out.extend(("fresh", spec) for spec in self.candidate_specs(base_seq))
        return out

    @abc.abstractmethod
    def candidate_specs(self, base_seq: Sequence[str]) -> list[Mapping]:
        """Fresh-parameter configurations covering every type over the base."""

    @abc.abstractmethod
    def rename(self, mapping: Mapping[str, str]) -> "TheoryOracle":
        """Rename parameters through an injective map (identity off the map)."""

    @abc.abstractmethod
    def to_config(self) -> dict:
        """A loadable configuration document describing this oracle."""

    # -- shared helpers ---------------------------------------------------------

    def _next_names(self, count: int) -> tuple[list[str], int]:
        """Allocate ``count`` unused names; returns them and the new counter."""
        used = set(self.params)
        out: list[str] = []
        i = getattr(self, "_counter", 0)
        while len(out) < count:
            i += 1
            name = f"p{i}"
            if name not in used:
                out.append(name)
        return out, i

    def _full_rename(self, mapping: Mapping[str, str]) -> dict[str, str]:
        full = {name: mapping.get(name, name) for name in self.params}
        if len(set(full.values())) != len(full):
            raise OracleError("rename map must be injective on the space")
        return full


def _stable_dedupe(names: Iterable[str]) -> list[str]:
    seen = set()
    out = []
    for n in names:
        if n not in seen:
            seen.add(n)
            out.append(n)
    return out


def encode_term(
    t: Term, n_vars: int, index: dict[str, int], default: bool = False
) -> int:
    """Node id of a term; with ``default`` new parameters are indexed lazily."""
    if isinstance(t, Var):
        return t.index
    if default and t.name not in index:
        index[t.name] = len(index)
    return n_vars + index[t.name]


def diagram_equalities(
    tup: tuple[str, ...],
    base_names: Sequence[str],
    equal: "callable[[str, str], bool]",
) -> list[Formula]:
    """Equality fragment of a tuple diagram: internal pairs, then base pairs."""
    out: list[Formula] = []
    for i in range(len(tup)):
        for j in range(i + 1, len(tup)):
            f: Formula = Eq(Var(i), Var(j))
            out.append(f if equal(tup[i], tup[j]) else Not(f))
        for b in base_names:
            f = Eq(Var(i), Param(b))
            out.append(f if equal(tup[i], b) else Not(f))
    return out
