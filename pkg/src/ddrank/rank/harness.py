"""Batch harnesses: Lascar-style inequalities, the disjunction law, and the
supremum over completions, all on seeded random instances with exact searches.

An instance is conclusive only when every involved search reached an exact
value; inconclusive instances are reported separately and never count as
failures.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass
from typing import Sequence

from ..logic import Or, PartialType, conjoin, type_to_json
from ..ordexpr import render_ext_ordinal
from ..ordinals import ExtOrdinal, ext_compare, hat_oplus, hat_plus
from ..theories import TheoryOracle, builtin_theory
from .search import RankReport, SearchBounds, iter_tuple_configs, search_rank

log = logging.getLogger("ddrank.harness")

DEFAULT_BOUNDS = SearchBounds(depth=5, width=4, param_budget=200)


@dataclass
class HarnessReport:
    kind: str
    theory_config: dict
    seed: int
    bounds: SearchBounds
    instances: list[dict]
    checked: int
    failures: int
    inconclusive: int

    @property
    def ok(self) -> bool:
        return self.failures == 0

    def to_json(self) -> dict:
        return {
            "schema": "ddrank:harness-report:1",
            "kind": self.kind,
            "theory": self.theory_config,
            "seed": self.seed,
            "bounds": self.bounds.to_json(),
            "instances": self.instances,
            "checked": self.checked,
            "failures": self.failures,
            "inconclusive": self.inconclusive,
        }


def _exact(report: RankReport) -> int | None:
    return report.exact_value


# -- Lascar-style inequalities ------------------------------------------------


def lascar_harness(
    oracle: TheoryOracle,
    instances: Sequence[tuple[tuple[str, ...], tuple[str, ...], tuple[str, ...]]],
    bounds: SearchBounds = DEFAULT_BOUNDS,
    seed: int = 0,
) -> HarnessReport:
    """Check rank additivity bounds on (a, b, base) triples.

    Upper: the pair rank never exceeds the signed natural sum of the part
    ranks; lower: their signed sum never exceeds the pair rank.
    """
    rows = []
    failures = inconclusive = 0
    for a, b, base in instances:
        p_ab = oracle.qf_type(a + b, base)
        p_a = oracle.qf_type(a, base)
        p_b = oracle.qf_type(b, tuple(base) + tuple(a))
        dd_ab = _exact(search_rank(oracle, p_ab, None, bounds.depth, bounds.width, bounds.param_budget))
        dd_a = _exact(search_rank(oracle, p_a, None, bounds.depth, bounds.width, bounds.param_budget))
        dd_b = _exact(search_rank(oracle, p_b, None, bounds.depth, bounds.width, bounds.param_budget))
        row = {
            "a": list(a),
            "b": list(b),
            "base": list(base),
            "dd_ab": dd_ab,
            "dd_a": dd_a,
            "dd_b_over_a": dd_b,
        }
        if None in (dd_ab, dd_a, dd_b):
            row.update(status="inconclusive", upper_ok=None, lower_ok=None)
            inconclusive += 1
        else:
            x_ab = ExtOrdinal.plus(dd_ab)
            x_a = ExtOrdinal.plus(dd_a)
            x_b = ExtOrdinal.plus(dd_b)
            upper = hat_oplus(x_a, x_b)
            lower = hat_plus(x_a, x_b)
            upper_ok = ext_compare(x_ab, upper) <= 0
            lower_ok = ext_compare(lower, x_ab) <= 0
            row.update(
                status="pass" if upper_ok and lower_ok else "fail",
                upper_ok=upper_ok,
                lower_ok=lower_ok,
                upper_bound=render_ext_ordinal(upper),
                lower_bound=render_ext_ordinal(lower),
            )
            if row["status"] == "fail":
                failures += 1
        rows.append(row)
        log.debug("lascar instance %s", row)
    return HarnessReport(
        kind="lascar",
        theory_config=oracle.to_config(),
        seed=seed,
        bounds=bounds,
        instances=rows,
        checked=len(rows) - inconclusive,
        failures=failures,
        inconclusive=inconclusive,
    )


def generate_lascar_instances(
    kind: str, count: int, seed: int
) -> tuple[TheoryOracle, list[tuple[tuple[str, ...], tuple[str, ...], tuple[str, ...]]]]:
    """Seeded random (a, b, base) singleton triples on a growing space."""
    rng = random.Random(seed)
    oracle = builtin_theory(kind)
    instances = []
    for _ in range(count):
        if oracle.kind == "finite_structure":
            pool = list(oracle.params)
            n_base = rng.randint(0, 2)
            base = tuple(rng.sample(pool, n_base))
            a = (rng.choice(pool),)
            b = (rng.choice(pool),)
        else:
            names: list[str] = []
            n_base = rng.randint(0, 2)
            for _position in range(n_base + 2):
                oracle, created = oracle.fresh_parameters(
                    _random_spec(oracle, rng, names), 1
                )
                names.extend(created)
            base = tuple(names[:n_base])
            a = (names[-2],)
            b = (names[-1],)
        instances.append((a, b, base))
    return oracle, instances


def _random_spec(oracle: TheoryOracle, rng: random.Random, context: list[str]):
    if oracle.kind == "eq_rel":
        if context and rng.random() < 0.5:
            return {"class_of": rng.choice(context)}
        return {"fresh_class": True}
    if oracle.kind == "random_graph":
        return {"adjacent_to": [p for p in context if rng.random() < 0.5]}
    return None


def run_lascar(
    kind: str, count: int, seed: int, bounds: SearchBounds = DEFAULT_BOUNDS
) -> HarnessReport:
    oracle, instances = generate_lascar_instances(kind, count, seed)
    return lascar_harness(oracle, instances, bounds, seed=seed)


# -- disjunction law ------------------------------------------------------------


def run_disjunction(
    kind: str = "eq_rel",
    count: int = 20,
    seed: int = 0,
    bounds: SearchBounds = SearchBounds(depth=4, width=4, param_budget=200),
) -> HarnessReport:
    """exact(p or q) must equal max(exact(p), exact(q)) on random pairs."""
    rng = random.Random(seed)
    oracle = builtin_theory(kind)
    rows = []
    failures = inconclusive = 0
    for _ in range(count):
        oracle, p = _random_unary_type(oracle, rng)
        oracle, q = _random_unary_type(oracle, rng)
        combined = PartialType(
            1,
            (Or(conjoin(p.formulas), conjoin(q.formulas)),),
            p.base_params | q.base_params,
        )
        dd_p = _exact(search_rank(oracle, p, None, bounds.depth, bounds.width, bounds.param_budget))
        dd_q = _exact(search_rank(oracle, q, None, bounds.depth, bounds.width, bounds.param_budget))
        dd_or = _exact(search_rank(oracle, combined, None, bounds.depth, bounds.width, bounds.param_budget))
        row = {
            "p": type_to_json(p),
            "q": type_to_json(q),
            "dd_p": dd_p,
            "dd_q": dd_q,
            "dd_or": dd_or,
        }
        if None in (dd_p, dd_q, dd_or):
            row["status"] = "inconclusive"
            inconclusive += 1
        else:
            row["status"] = "pass" if dd_or == max(dd_p, dd_q) else "fail"
            if row["status"] == "fail":
                failures += 1
        rows.append(row)
    return HarnessReport(
        kind="disjunction",
        theory_config=oracle.to_config(),
        seed=seed,
        bounds=bounds,
        instances=rows,
        checked=len(rows) - inconclusive,
        failures=failures,
        inconclusive=inconclusive,
    )


def _random_unary_type(
    oracle: TheoryOracle, rng: random.Random
) -> tuple[TheoryOracle, PartialType]:
    """The diagram of a random point over a small random base, maybe thinned."""
    names: list[str] = []
    for _ in range(rng.randint(1, 2)):
        oracle, created = oracle.fresh_parameters(_random_spec(oracle, rng, names), 1)
        names.extend(created)
    oracle, created = oracle.fresh_parameters(_random_spec(oracle, rng, names), 1)
    point = created[0]
    diagram = oracle.qf_type((point,), names)
    formulas = tuple(f for f in diagram.formulas if rng.random() < 0.8)
    if not formulas:
        formulas = diagram.formulas
    return oracle, PartialType(1, formulas, diagram.base_params)


# -- supremum over completions ----------------------------------------------------


def run_completion_sup(
    kind: str = "eq_rel",
    count: int = 10,
    seed: int = 0,
    bounds: SearchBounds = SearchBounds(depth=4, width=4, param_budget=200),
) -> HarnessReport:
    """exact(p) must equal the maximum over its atomic completions over A."""
    rng = random.Random(seed)
    oracle = builtin_theory(kind)
    rows = []
    failures = inconclusive = 0
    for _ in range(count):
        oracle, p = _random_unary_type(oracle, rng)
        dd_p = _exact(search_rank(oracle, p, None, bounds.depth, bounds.width, bounds.param_budget))
        completions = []
        best = None
        base_seq = tuple(sorted(p.base_params))
        for o2, config, _cost in iter_tuple_configs(
            oracle, base_seq, p.tuple_length, bounds.param_budget
        ):
            diagram = o2.qf_type(config, base_seq)
            if not o2.consistent(p.formulas + diagram.formulas, p.tuple_length):
                continue
            completion = PartialType(
                p.tuple_length, p.formulas + diagram.formulas, p.base_params
            )
            dd_c = _exact(
                search_rank(o2, completion, None, bounds.depth, bounds.width, bounds.param_budget)
            )
            completions.append({"realization": list(config), "dd": dd_c})
            if dd_c is None:
                best = None
                break
            best = dd_c if best is None or dd_c > best else best
        row = {
            "p": type_to_json(p),
            "dd_p": dd_p,
            "completions": completions,
            "max_completion": best,
        }
        if dd_p is None or best is None:
            row["status"] = "inconclusive"
            inconclusive += 1
        else:
            row["status"] = "pass" if dd_p == best else "fail"
            if row["status"] == "fail":
                failures += 1
        rows.append(row)
    return HarnessReport(
        kind="completion_sup",
        theory_config=oracle.to_config(),
        seed=seed,
        bounds=bounds,
        instances=rows,
        checked=len(rows) - inconclusive,
        failures=failures,
        inconclusive=inconclusive,
    )
