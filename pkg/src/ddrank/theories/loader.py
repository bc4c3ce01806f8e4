"""Theory configuration loading and the bundled ready-made backends."""

from __future__ import annotations

import itertools
from typing import Mapping

from ..schema_io import validate
from .core import TheoryError, TheoryOracle
from .eq_rel import EqRelOracle
from .finite import FiniteStructureOracle
from .pure_set import PureSetOracle
from .random_graph import RandomGraphOracle

_KIND_ALIASES = {
    "pure_set": "pure_set",
    "pure_infinite_set": "pure_set",
    "eq_rel": "eq_rel",
    "equivalence_relation": "eq_rel",
    "random_graph": "random_graph",
    "finite": "finite_structure",
    "finite_structure": "finite_structure",
}


def load_theory(config: Mapping) -> TheoryOracle:
    """Build an oracle from a configuration document (schema-checked)."""
    validate(config, "theory_config")
    kind = _KIND_ALIASES[config["kind"]]
    try:
        if kind == "pure_set":
            return PureSetOracle(tuple(config.get("parameters", ())))
        if kind == "eq_rel":
            entries = tuple(
                (p["name"], p["class"]) for p in config.get("parameters", ())
            )
            return EqRelOracle(entries)
        if kind == "random_graph":
            aliases = {src: dst for src, dst in config.get("equalities", ())}
            return RandomGraphOracle(
                tuple(config.get("vertices", ())),
                aliases,
                [tuple(e) for e in config.get("edges", ())],
            )
        oracle = FiniteStructureOracle(
            config["universe"],
            {r: [tuple(row) for row in rows] for r, rows in config["relations"].items()},
            config.get("parameters"),
            config.get("arities"),
        )
        for rel in config.get("equivalence_relations", ()):
            _check_equivalence_table(oracle, rel, config["universe"])
        return oracle
    except ValueError as exc:
        raise TheoryError(str(exc)) from exc


def _check_equivalence_table(
    oracle: FiniteStructureOracle, rel: str, size: int
) -> None:
    arity = oracle.signature.arity(rel)
    if arity != 2:
        raise TheoryError(f"declared equivalence relation {rel!r} must be binary")
    rows = {
        (a, b)
        for a, b in itertools.product(range(size), repeat=2)
        if oracle.holds(rel, (a, b))
    }
    for a in range(size):
        if (a, a) not in rows:
            raise TheoryError(f"equivalence table {rel!r} is not reflexive at {a}")
    for a, b in rows:
        if (b, a) not in rows:
            raise TheoryError(f"equivalence table {rel!r} is not symmetric at ({a},{b})")
    for (a, b), (c, d) in itertools.product(rows, repeat=2):
        if b == c and (a, d) not in rows:
            raise TheoryError(
                f"equivalence table {rel!r} is not transitive at ({a},{b},{d})"
            )


BUILTIN_CONFIGS: dict[str, dict] = {
    "pure_set": {"kind": "pure_set"},
    "eq_rel": {"kind": "eq_rel"},
    "random_graph": {"kind": "random_graph"},
    # three elements, E an equivalence with classes {0,1} and {2}
    "finite": {
        "kind": "finite_structure",
        "universe": 3,
        "relations": {
            "E": [[0, 0], [0, 1], [1, 0], [1, 1], [2, 2]],
        },
        "equivalence_relations": ["E"],
    },
}


def builtin_theory(name: str) -> TheoryOracle:
    try:
        return load_theory(BUILTIN_CONFIGS[name])
    except KeyError:
        raise TheoryError(
            f"unknown builtin theory {name!r}; choose from {sorted(BUILTIN_CONFIGS)}"
        ) from None
