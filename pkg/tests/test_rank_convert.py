"""Conversions: the sequence/chain/tree cycle, inp copying, products."""

from __future__ import annotations

import pytest

from ddrank.logic import Eq, FormulaTemplate, PartialType, Var, parse_formula
from ddrank.rank import (
    ConversionError,
    InpCertificate,
    InpRow,
    SequenceCertificate,
    chain_to_sequence,
    inp_to_tree,
    product_concat,
    search_rank,
    sequence_to_chain,
    sequence_to_tree,
    tree_branch_to_sequence,
    verify_chain_certificate,
    verify_inp_certificate,
    verify_sequence_certificate,
    verify_tree_certificate,
)
from ddrank.theories import EqRelOracle, PureSetOracle, builtin_theory


def xeqx():
    return PartialType(1, (Eq(Var(0), Var(0)),))


def searched(kind, ptype=None, depth=3, oracle=None):
    oracle = oracle or builtin_theory(kind)
    report = search_rank(oracle, ptype or xeqx(), None, depth, 4, 200)
    assert report.certificate is not None
    return report.oracle, report.certificate


# -- sequence -> chain -> sequence --------------------------------------------------


@pytest.mark.parametrize("kind", ["pure_set", "eq_rel", "random_graph"])
def test_chain_round_trip_preserves_depth_and_verdict(kind):
    oracle, cert = searched(kind)
    chain = sequence_to_chain(cert)
    assert chain.depth == cert.depth
    assert verify_chain_certificate(oracle, chain), verify_chain_certificate(
        oracle, chain
    ).reasons
    back = chain_to_sequence(oracle, chain)
    assert back.depth == cert.depth
    assert verify_sequence_certificate(oracle, back)
    assert back == cert  # the cycle is the identity on search output


def test_chain_depth0():
    chain = sequence_to_chain(SequenceCertificate(xeqx(), ()))
    assert chain.depth == 0
    assert chain_to_sequence(PureSetOracle(), chain).depth == 0


def test_chain_complete_fragment_closure_still_verifies():
    oracle, cert = searched("eq_rel")
    chain = sequence_to_chain(cert, oracle, complete_fragment=True)
    # closure adds decided facts: at least the instance itself is decided
    assert all(
        len(step.ptype.formulas) >= i + 2 for i, step in enumerate(chain.steps)
    )
    result = verify_chain_certificate(oracle, chain)
    assert result, result.reasons
    back = chain_to_sequence(oracle, chain)
    assert verify_sequence_certificate(oracle, back)
    assert back.depth == cert.depth


def test_chain_bases_accumulate():
    oracle, cert = searched("eq_rel")
    chain = sequence_to_chain(cert)
    assert chain.steps[0].witness.base == frozenset(cert.ptype.base_params)
    assert chain.steps[1].witness.base == frozenset(cert.entries[0].anchor)
    assert set(chain.steps[0].ptype.base_params) <= set(
        chain.steps[1].ptype.base_params
    )


# -- trees ------------------------------------------------------------------------------


@pytest.mark.parametrize(
    "kind,expected_depth",
    [("pure_set", 1), ("random_graph", 1), ("eq_rel", 2)],
)
def test_sequence_grows_into_verifying_tree(kind, expected_depth):
    oracle, cert = searched(kind)
    assert cert.depth == expected_depth
    oracle2, tree = sequence_to_tree(oracle, cert)
    assert tree.depth == cert.depth and tree.width == 4
    result = verify_tree_certificate(oracle2, tree, cert.ptype)
    assert result, result.reasons


def test_tree_branches_become_verifying_sequences():
    oracle, cert = searched("eq_rel")
    oracle2, tree = sequence_to_tree(oracle, cert)
    for branch in tree.branches():
        seq = tree_branch_to_sequence(oracle2, tree, branch, cert.ptype)
        assert seq.depth == tree.depth
        result = verify_sequence_certificate(oracle2, seq)
        assert result, (branch, result.reasons)


def test_branch_conversion_rejects_non_conjugate_siblings():
    o = PureSetOracle(("a", "b", "c"))
    t = FormulaTemplate(parse_formula("x0 = y0", o.signature), ("y0",))
    from ddrank.rank import TreeCertificate, TreeLevel

    tree = TreeCertificate(
        1, 3, (TreeLevel(t, 2),), (((0,), ("a",)), ((1,), ("b",)), ((2,), ("c",)))
    )
    # make one sibling base-visible: conjugacy over {a} fails
    with pytest.raises(ConversionError) as exc:
        tree_branch_to_sequence(o, tree, [1], PartialType(1, (), frozenset({"a"})))
    assert "not conjugate" in str(exc.value)


def test_branch_conversion_validates_branch_shape():
    oracle, cert = searched("pure_set")
    oracle2, tree = sequence_to_tree(oracle, cert)
    with pytest.raises(ConversionError):
        tree_branch_to_sequence(oracle2, tree, [0, 0], cert.ptype)


# -- inp-patterns -------------------------------------------------------------------------


def test_inp_to_tree_copies_levels():
    o = PureSetOracle(("c0", "c1", "d0", "d1"))
    sig = o.signature
    pair = PartialType(2, (parse_formula("!(x0 = x1)", sig),))
    rows = (
        InpRow(FormulaTemplate(parse_formula("x0 = y0", sig), ("y0",)), 2, (("c0",), ("c1",))),
        InpRow(FormulaTemplate(parse_formula("x1 = y0", sig), ("y0",)), 2, (("d0",), ("d1",))),
    )
    inp = InpCertificate(rows)
    assert verify_inp_certificate(o, inp, pair)
    tree = inp_to_tree(inp)
    assert tree.depth == 2 and tree.width == 2
    # both level-1 subtrees carry identical rows
    assert tree.node((0, 0)) == tree.node((1, 0)) == ("d0",)
    assert tree.node((0, 1)) == tree.node((1, 1)) == ("d1",)
    assert verify_tree_certificate(o, tree, pair)


def test_inp_to_tree_single_row():
    o = PureSetOracle(("c0", "c1"))
    t = FormulaTemplate(parse_formula("x0 = y0", o.signature), ("y0",))
    tree = inp_to_tree(InpCertificate((InpRow(t, 2, (("c0",), ("c1",))),)))
    assert tree.depth == 1 and tree.siblings(()) == [("c0",), ("c1",)]


# -- products -----------------------------------------------------------------------------


def test_product_concat_pure_pair():
    oracle, certS = searched("pure_set")
    t_base = frozenset(certS.anchor_params())
    ptype_T = PartialType(1, (Eq(Var(0), Var(0)),), t_base)
    oracle, certT = searched("pure_set", ptype_T, oracle=oracle)
    assert certT.depth == 1
    combined = product_concat(certS, certT)
    assert combined.depth == 2
    assert combined.ptype.tuple_length == 2
    result = verify_sequence_certificate(oracle, combined)
    assert result, result.reasons


def test_product_concat_eq_rel_two_plus_one():
    base_oracle, (a,) = builtin_theory("eq_rel").fresh_parameters({"fresh_class": True})
    shared = frozenset({a})
    ptype_S = PartialType(1, (Eq(Var(0), Var(0)),), shared)
    oracle, certS = searched("eq_rel", ptype_S, oracle=base_oracle)
    assert certS.depth == 2
    # the second factor is class-pinned over the SHARED base, so its depth
    # stays 1 even over the stacked base
    ptype_T = PartialType(
        1,
        (parse_formula(f"E(x0,{a})", oracle.signature),),
        shared | set(certS.anchor_params()),
    )
    oracle, certT = searched("eq_rel", ptype_T, oracle=oracle)
    combined = product_concat(certS, certT)
    assert combined.depth == certS.depth + certT.depth == 3
    assert verify_sequence_certificate(oracle, combined)


def test_product_concat_depth0_right():
    oracle, certS = searched("pure_set")
    certT = SequenceCertificate(
        PartialType(1, (Eq(Var(0), Var(0)),), frozenset(certS.anchor_params())), ()
    )
    combined = product_concat(certS, certT)
    assert combined.entries == certS.entries
    assert combined.ptype.tuple_length == 2


def test_product_concat_base_mismatch():
    oracle, certS = searched("pure_set")
    certT = SequenceCertificate(PartialType(1, (Eq(Var(0), Var(0)),)), ())
    with pytest.raises(ConversionError) as exc:
        product_concat(certS, certT)
    assert "base" in str(exc.value)
