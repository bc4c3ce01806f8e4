"""Backend oracles: consistency, type equality, growth, loading."""

from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ddrank.logic import parse_formula
from ddrank.theories import (
    EqRelOracle,
    FiniteStructureOracle,
    OracleError,
    PureSetOracle,
    RandomGraphOracle,
    TheoryError,
    builtin_theory,
    load_theory,
)


def fs(oracle, *texts):
    return [parse_formula(t, oracle.signature) for t in texts]


# -- pure infinite set ------------------------------------------------------


def test_pure_equality_clash():
    o = PureSetOracle(("a", "b"))
    assert not o.consistent(fs(o, "x0 = a", "x0 = b"), 1)


def test_pure_distinct_values_available():
    o = PureSetOracle(("a", "b"))
    assert o.consistent(fs(o, "!(x0 = a)", "!(x0 = b)", "!(x0 = x1)"), 2)


def test_pure_same_type_fresh_singletons():
    o, (c, d) = PureSetOracle().fresh_parameters(count=2)
    assert o.same_type_over((c,), (d,), ())
    assert not o.same_type_over((c,), (d,), (c,))


def test_pure_disjunction_needs_dnf():
    o = PureSetOracle(("a", "b"))
    assert o.consistent(fs(o, "x0 = a | x0 = b", "!(x0 = a)"), 1)
    assert not o.consistent(fs(o, "(x0 = a | x0 = b) & !(x0 = a)", "!(x0 = b)"), 1)


def _pure_finite_model_sat(params, eq_constraints, n_vars):
    """Brute-force oracle: equality constraints over a big-enough finite set.

    Parameters take the distinct values 0..n_params-1; variables range over
    a universe with n_vars spare elements.
    """
    universe = range(len(params) + n_vars)
    for assign in itertools.product(universe, repeat=n_vars):
        def val(t):
            return assign[t[1]] if t[0] == "x" else t[1]
        if all((val(a) == val(b)) == positive for positive, a, b in eq_constraints):
            return True
    return False


@settings(max_examples=200)
@given(st.lists(
    st.tuples(
        st.booleans(),
        st.tuples(st.sampled_from("xp"), st.integers(0, 2)),
        st.tuples(st.sampled_from("xp"), st.integers(0, 2)),
    ),
    max_size=6,
))
def test_pure_consistency_matches_finite_models(constraints):
    params = ("a0", "a1", "a2")
    o = PureSetOracle(params)

    def term(t):
        return f"x{t[1]}" if t[0] == "x" else params[t[1]]

    formulas = []
    for positive, a, b in constraints:
        text = f"{term(a)} = {term(b)}"
        formulas.append(text if positive else f"!({text})")
    got = o.consistent(fs(o, *formulas), 3)
    want = _pure_finite_model_sat(params, constraints, 3)
    assert got == want


# -- equivalence relation -----------------------------------------------------


def eqrel(*entries):
    return EqRelOracle(tuple(entries))


def test_eqrel_disjoint_classes_clash():
    o = eqrel(("a", "C1"), ("b", "C2"))
    assert not o.consistent(fs(o, "E(x0,a)", "E(x0,b)"), 1)


def test_eqrel_same_class_fine():
    o = eqrel(("a", "C1"), ("b", "C1"))
    assert o.consistent(fs(o, "E(x0,a)", "E(x0,b)"), 1)
    assert not o.consistent(fs(o, "E(x0,a)", "!E(x0,b)"), 1)


def test_eqrel_reflexivity():
    o = eqrel(("a", "C1"))
    assert not o.consistent(fs(o, "!E(x0,x0)"), 1)
    assert o.consistent(fs(o, "E(x0,x0)"), 1)


def test_eqrel_equality_forces_class():
    o = eqrel(("a", "C1"), ("b", "C2"))
    assert not o.consistent(fs(o, "x0 = a", "E(x0,b)"), 1)


def test_eqrel_same_type_in_class():
    o = eqrel(("a", "C1"), ("b1", "C1"), ("b2", "C1"), ("c", "C2"))
    assert o.same_type_over(("b1",), ("b2",), ("a",))
    assert not o.same_type_over(("b1",), ("c",), ("a",))


def test_eqrel_same_type_is_equivalence():
    o = eqrel(("a", "C1"), ("b", "C1"), ("c", "C2"), ("d", "C3"))
    tuples = [(x,) for x in o.params]
    base = ("a",)
    for t in tuples:
        assert o.same_type_over(t, t, base)
    for t1, t2 in itertools.product(tuples, repeat=2):
        assert o.same_type_over(t1, t2, base) == o.same_type_over(t2, t1, base)
    for t1, t2, t3 in itertools.product(tuples, repeat=3):
        if o.same_type_over(t1, t2, base) and o.same_type_over(t2, t3, base):
            assert o.same_type_over(t1, t3, base)


def test_eqrel_fresh_classes_distinct():
    o, names = EqRelOracle().fresh_parameters({"fresh_class": True}, count=4)
    labels = {o.class_of(n) for n in names}
    assert len(labels) == 4


def test_eqrel_fresh_in_class():
    o = eqrel(("a", "C1"))
    o2, (b,) = o.fresh_parameters({"class_of": "a"})
    assert o2.consistent(fs(o2, "E(a,b)".replace("b", b)), 1)
    assert o2.class_of(b) == "C1"
    assert not o2.same_type_over((b,), ("a",), ("a",))
    assert o2.same_type_over((b,), ("a",), ())


# -- random graph ---------------------------------------------------------------


def test_graph_extension_axiom_demands():
    o = RandomGraphOracle(("a", "b", "c"))
    assert o.consistent(fs(o, "R(x0,a)", "R(x0,b)", "!R(x0,c)", "!(x0 = a)"), 1)


def test_graph_direct_contradiction():
    o = RandomGraphOracle(("a", "b"))
    assert not o.consistent(fs(o, "R(x0,a)", "!R(x0,a)"), 1)
    assert not o.consistent(fs(o, "R(x0,x0)"), 1)
    assert o.consistent(fs(o, "!R(x0,x0)"), 1)


def test_graph_declared_facts_bind():
    o = RandomGraphOracle(("a", "b"), edges=[("a", "b")])
    assert o.consistent(fs(o, "x0 = a", "R(x0,b)"), 1)
    assert not o.consistent(fs(o, "x0 = a", "!R(x0,b)"), 1)
    # undeclared pairs are non-edges
    o2 = RandomGraphOracle(("a", "b"))
    assert not o2.consistent(fs(o2, "x0 = a", "R(x0,b)"), 1)


def test_graph_equalities_identify():
    o = RandomGraphOracle(("a", "b", "c"), aliases={"b": "c"})
    assert o.consistent(fs(o, "x0 = b", "x0 = c"), 1)
    assert not o.consistent(fs(o, "!(x0 = b)", "x0 = c"), 1)


def test_graph_same_type_by_pattern():
    o = RandomGraphOracle(("a", "b", "u", "v"), edges=[("u", "a"), ("v", "a")])
    assert o.same_type_over(("u",), ("v",), ("a", "b"))
    o2, (w,) = o.fresh_parameters({"adjacent_to": ["b"]})
    assert not o2.same_type_over(("u",), (w,), ("a", "b"))


def test_graph_fresh_contradictory_spec():
    o = RandomGraphOracle(("a",))
    with pytest.raises(OracleError):
        o.fresh_parameters({"adjacent_to": ["a"], "not_adjacent_to": ["a"]})


def _graph_one_var_worlds(params, declared):
    """Every realisable placement of one variable: a param, or a fresh vertex
    with any adjacency pattern over the params (extension axioms)."""
    edge = lambda u, v: (min(u, v), max(u, v)) in declared
    for p in params:
        yield p, (lambda u, _p=p: edge(_p, u)), True
    for pattern in itertools.product((0, 1), repeat=len(params)):
        adjacent = {p for p, bit in zip(params, pattern) if bit}
        yield None, (lambda u, _s=adjacent: u in _s), False


def test_graph_consistency_matches_world_enumeration():
    o = RandomGraphOracle(("a", "b"), edges=[("a", "b")])
    declared = {("a", "b")}
    literal_sets = [
        [(True, "R", "a"), (True, "R", "b")],
        [(True, "R", "a"), (False, "R", "a")],
        [(True, "=", "a"), (True, "R", "b")],
        [(True, "=", "a"), (False, "R", "b")],
        [(True, "=", "a"), (True, "=", "b")],
        [(False, "=", "a"), (False, "=", "b"), (True, "R", "a"), (False, "R", "b")],
    ]
    for lits in literal_sets:
        texts = [
            (f"x0 = {p}" if rel == "=" else f"R(x0,{p})")
            if positive
            else (f"!(x0 = {p})" if rel == "=" else f"!R(x0,{p})")
            for positive, rel, p in lits
        ]
        want = any(
            all(
                (
                    ((ident == p) if is_param else False)
                    if rel == "="
                    else (adj(p) if ident != p else False)
                )
                == positive
                for positive, rel, p in lits
            )
            for ident, adj, is_param in _graph_one_var_worlds(("a", "b"), declared)
        )
        assert o.consistent(fs(o, *texts), 1) == want, texts


# -- finite structure ---------------------------------------------------------


def finite3():
    return builtin_theory("finite")


def test_finite_exhaustive_consistency():
    o = finite3()
    assert o.consistent(fs(o, "E(x0,e0)", "!(x0 = e0)"), 1)
    assert not o.consistent(fs(o, "E(x0,e2)", "!(x0 = e2)"), 1)
    assert not o.consistent(
        fs(o, "!(x0 = e0)", "!(x0 = e1)", "!(x0 = e2)"), 1
    )


def _naive_eval(oracle, formula_text, assignment):
    """Independent evaluator: satisfying-set semantics per connective."""
    from ddrank.logic import And, Atom, Eq, Not, Or, Var, parse_formula

    f = parse_formula(formula_text, oracle.signature)

    def sat_set(g, n_vars):
        space = list(itertools.product(range(oracle.size), repeat=n_vars))
        if isinstance(g, Atom):
            return {
                a
                for a in space
                if tuple(
                    a[t.index] if isinstance(t, Var) else oracle.element_of(t.name)
                    for t in g.args
                )
                in {row for row in _rows(oracle, g.relation)}
            }
        if isinstance(g, Eq):
            def v(t, a):
                return a[t.index] if isinstance(t, Var) else oracle.element_of(t.name)
            return {a for a in space if v(g.left, a) == v(g.right, a)}
        if isinstance(g, Not):
            return set(space) - sat_set(g.body, n_vars)
        if isinstance(g, And):
            return sat_set(g.left, n_vars) & sat_set(g.right, n_vars)
        if isinstance(g, Or):
            return sat_set(g.left, n_vars) | sat_set(g.right, n_vars)
        raise AssertionError

    return assignment in sat_set(f, len(assignment))


def _rows(oracle, rel):
    for a in range(oracle.size):
        for b in range(oracle.size):
            if oracle.holds(rel, (a, b)):
                yield (a, b)


def test_finite_matches_naive_evaluator():
    o = finite3()
    texts = [
        "E(x0,x1)",
        "E(x0,e0) & !(x0 = e1)",
        "E(x0,x1) | x0 = e2",
        "!(E(x0,e2) | x0 = e0)",
    ]
    for text in texts:
        got = o.consistent(fs(o, text), 2)
        want = any(
            _naive_eval(o, text, a)
            for a in itertools.product(range(o.size), repeat=2)
        )
        assert got == want, text


def test_finite_same_type_over():
    o = finite3()
    assert o.same_type_over(("e0",), ("e1",), ())
    # no quantifier-free formula without parameters separates e0 from e2
    assert o.same_type_over(("e0",), ("e2",), ())
    # over a base inside e0's class they come apart
    assert not o.same_type_over(("e0",), ("e2",), ("e1",))
    assert not o.same_type_over(("e0",), ("e1",), ("e0",))


def test_finite_fresh_exhausted():
    o = finite3()
    with pytest.raises(OracleError) as exc:
        o.fresh_parameters(count=1)
    assert "exhausted" in str(exc.value)


# -- monotonicity (all backends) -------------------------------------------------


@pytest.mark.parametrize("name", ["pure_set", "eq_rel", "random_graph", "finite"])
def test_consistency_monotone(name):
    o = builtin_theory(name)
    if o.kind != "finite_structure":
        o, _ = o.fresh_parameters(
            {"fresh_class": True} if o.kind == "eq_rel" else None, count=3
        )
    names = o.params[:3]
    a, b, c = names
    base = [f"x0 = {a}", f"!(x0 = {a})"]  # inconsistent pair
    extensions = [[], [f"!(x0 = {b})"], [f"x0 = {c}", f"!(x0 = {b})"]]
    for ext in extensions:
        assert not o.consistent(fs(o, *(base + ext)), 1)


# -- loading ------------------------------------------------------------------------


def test_load_finite_with_equivalence_table():
    o = load_theory(
        {
            "kind": "finite_structure",
            "universe": 3,
            "relations": {"E": [[0, 0], [1, 1], [2, 2], [0, 1], [1, 0]]},
            "equivalence_relations": ["E"],
        }
    )
    assert isinstance(o, FiniteStructureOracle)


def test_load_random_graph_empty():
    o = load_theory({"kind": "random_graph"})
    assert isinstance(o, RandomGraphOracle)
    assert o.params == ()


def test_load_rejects_intransitive_equivalence():
    with pytest.raises(TheoryError) as exc:
        load_theory(
            {
                "kind": "finite_structure",
                "universe": 3,
                "relations": {
                    "E": [[0, 0], [1, 1], [2, 2], [0, 1], [1, 0], [1, 2], [2, 1]]
                },
                "equivalence_relations": ["E"],
            }
        )
    assert "transitive" in str(exc.value)


def test_load_rejects_schema_violation():
    from ddrank.schema_io import SchemaError

    with pytest.raises(SchemaError):
        load_theory({"kind": "eq_rel", "parameters": [{"name": "a"}]})


def test_load_rejects_graph_loop():
    with pytest.raises(TheoryError):
        load_theory(
            {"kind": "random_graph", "vertices": ["a"], "edges": [["a", "a"]]}
        )


# -- renaming invariance -----------------------------------------------------------


@pytest.mark.parametrize("name", ["pure_set", "eq_rel", "random_graph"])
def test_rename_preserves_verdicts(name):
    o = builtin_theory(name)
    o, created = o.fresh_parameters(
        {"fresh_class": True} if name == "eq_rel" else None, count=2
    )
    a, b = created
    mapping = {a: "zz1", b: "zz2"}
    renamed = o.rename(mapping)
    probe = [f"!(x0 = {a})", f"!(x0 = {b})"]
    probe_renamed = [f"!(x0 = zz1)", f"!(x0 = zz2)"]
    assert o.consistent(fs(o, *probe), 1) == renamed.consistent(
        fs(renamed, *probe_renamed), 1
    )
    assert renamed.same_type_over(("zz1",), ("zz2",), ())
