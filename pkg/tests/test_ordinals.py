"""Ordinal arithmetic: frozen examples and algebraic laws."""

from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ddrank.ordinals import (
    OMEGA,
    ONE,
    ZERO,
    ExtOrdinal,
    Ordinal,
    OrdinalError,
    Sign,
    add,
    compare,
    enumerate_below,
    ext_compare,
    hat_oplus,
    hat_plus,
    natural_sum,
    sup_shift,
)

from .oracles import signed_domain, t_add, t_nat, t_sup_plus

W2 = Ordinal.omega_power(2)


def fin(n: int) -> Ordinal:
    return Ordinal.from_int(n)


def from_triple(t) -> Ordinal:
    terms = []
    for pos, coeff in enumerate(t):
        if coeff:
            terms.append((fin(2 - pos), coeff))
    return Ordinal(tuple(terms))


def to_triple(a: Ordinal):
    digits = [0, 0, 0]
    for exp, coeff in a.terms:
        digits[2 - exp.as_int()] = coeff
    return tuple(digits)


triples = st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3))


# -- comparison ----------------------------------------------------------


def test_compare_identity():
    assert compare(ZERO, ZERO) == 0


def test_compare_omega_exceeds_naturals():
    assert compare(OMEGA, fin(5)) > 0


def test_compare_mixed():
    # order-type comparison, checked against the lex order on triples
    a = add(Ordinal.omega_power(1, 2), ONE)  # w*2+1
    b = Ordinal.omega_power(1, 3)  # w*3
    assert (to_triple(a) < to_triple(b)) == (compare(a, b) < 0)
    assert compare(a, b) < 0


@given(triples, triples)
def test_compare_agrees_with_lex_encoding(ta, tb):
    c = compare(from_triple(ta), from_triple(tb))
    assert c == (-1 if ta < tb else (0 if ta == tb else 1))


# -- addition ------------------------------------------------------------


def test_add_absorption():
    assert add(ONE, OMEGA) == OMEGA


def test_add_successor():
    assert add(OMEGA, ONE).terms == ((fin(1), 1), (ZERO, 1))


def test_add_concatenated_order():
    # (w+3) + w*2 -> w*3, frozen from the triple oracle
    a = add(OMEGA, fin(3))
    b = Ordinal.omega_power(1, 2)
    assert to_triple(add(a, b)) == t_add(to_triple(a), to_triple(b)) == (0, 3, 0)


@given(triples, triples)
def test_add_agrees_with_triple_oracle(ta, tb):
    assert to_triple(add(from_triple(ta), from_triple(tb))) == t_add(ta, tb)


@given(triples, triples, triples)
def test_add_associative(ta, tb, tc):
    a, b, c = map(from_triple, (ta, tb, tc))
    assert add(add(a, b), c) == add(a, add(b, c))


@given(triples, triples)
def test_add_dominates_right(ta, tb):
    a, b = from_triple(ta), from_triple(tb)
    assert compare(add(a, b), b) >= 0


@given(triples, triples, triples)
def test_add_strictly_monotone_right(ta, tb, tc):
    a, b, c = map(from_triple, (ta, tb, tc))
    if compare(b, c) < 0:
        assert compare(add(a, b), add(a, c)) < 0


# -- natural sum ---------------------------------------------------------


def test_natural_sum_disjoint_exponents():
    assert natural_sum(OMEGA, ONE) == add(OMEGA, ONE)


def test_natural_sum_shuffle_maximum():
    # (w+1) (+) w -> w*2+1, frozen from the coefficient-vector oracle
    a = add(OMEGA, ONE)
    assert to_triple(natural_sum(a, OMEGA)) == t_nat(to_triple(a), (0, 1, 0)) == (0, 2, 1)


def test_natural_sum_finite():
    assert natural_sum(fin(5), fin(3)) == fin(8)


@given(triples, triples)
def test_natural_sum_agrees_with_vector_oracle(ta, tb):
    assert to_triple(natural_sum(from_triple(ta), from_triple(tb))) == t_nat(ta, tb)


@given(triples, triples)
def test_natural_sum_commutative(ta, tb):
    a, b = from_triple(ta), from_triple(tb)
    assert natural_sum(a, b) == natural_sum(b, a)


@given(triples, triples, triples)
def test_natural_sum_associative(ta, tb, tc):
    a, b, c = map(from_triple, (ta, tb, tc))
    assert natural_sum(natural_sum(a, b), c) == natural_sum(a, natural_sum(b, c))


@given(triples, triples, triples)
def test_natural_sum_strictly_monotone(ta, tb, tc):
    a, b, c = map(from_triple, (ta, tb, tc))
    if compare(b, c) < 0:
        assert compare(natural_sum(a, b), natural_sum(a, c)) < 0
        assert compare(natural_sum(b, a), natural_sum(c, a)) < 0


def test_natural_sum_deep_exponents():
    # hereditary CNF beyond the triple range still merges correctly
    deep = Ordinal.omega_power(OMEGA)  # w^w
    assert natural_sum(deep, OMEGA) == Ordinal(((OMEGA, 1), (fin(1), 1)))
    assert natural_sum(deep, deep) == Ordinal.omega_power(OMEGA, 2)


# -- limits and suprema ---------------------------------------------------


def test_is_limit():
    assert OMEGA.is_limit
    assert not add(OMEGA, ONE).is_limit
    assert Ordinal.omega_power(2, 3).is_limit
    assert not ZERO.is_limit


def test_sup_shift_examples():
    assert sup_shift(OMEGA, ONE) == (OMEGA, False)
    assert sup_shift(OMEGA, OMEGA) == (OMEGA, True)
    assert sup_shift(fin(5), fin(2)) == (fin(6), True)


def test_sup_shift_rejects_zero():
    with pytest.raises(OrdinalError):
        sup_shift(ZERO, OMEGA)


@given(triples, triples)
def test_sup_shift_matches_enumeration_oracle(ta, tb):
    if ta == (0, 0, 0):
        return
    got_val, got_att = sup_shift(from_triple(ta), from_triple(tb))
    want_val, want_att = t_sup_plus(ta, tb)
    assert (to_triple(got_val), got_att) == (want_val, want_att)


# -- signed values ---------------------------------------------------------


def test_minus_requires_limit():
    with pytest.raises(OrdinalError):
        ExtOrdinal(fin(3), Sign.MINUS)
    ExtOrdinal(OMEGA, Sign.MINUS)  # fine


def test_ext_compare():
    assert ext_compare(ExtOrdinal.minus(OMEGA), ExtOrdinal.plus(OMEGA)) < 0
    assert ext_compare(ExtOrdinal.plus(OMEGA), ExtOrdinal.plus(add(OMEGA, ONE))) < 0
    assert ext_compare(ExtOrdinal.plus(OMEGA), ExtOrdinal.plus(OMEGA)) == 0


def test_ext_compare_total_order():
    values = [
        ExtOrdinal(from_triple(t), Sign(s)) for t, s in signed_domain(2)
    ]
    for x, y in itertools.product(values, repeat=2):
        cx, cy = ext_compare(x, y), ext_compare(y, x)
        assert cx == -cy
        assert (cx == 0) == (x == y)
    for x, y, z in itertools.product(values[:12], repeat=3):
        if ext_compare(x, y) <= 0 and ext_compare(y, z) <= 0:
            assert ext_compare(x, z) <= 0


def test_hat_plus_pinned_cases():
    w_plus = ExtOrdinal.plus(OMEGA)
    w_minus = ExtOrdinal.minus(OMEGA)
    assert hat_plus(w_plus, w_minus) == ExtOrdinal.minus(Ordinal.omega_power(1, 2))
    assert hat_plus(w_minus, ExtOrdinal.plus(1)) == w_minus
    assert hat_plus(w_minus, w_plus) == w_plus


def test_hat_oplus_pinned_cases():
    w_plus = ExtOrdinal.plus(OMEGA)
    w_minus = ExtOrdinal.minus(OMEGA)
    assert hat_oplus(w_plus, w_minus) == ExtOrdinal.minus(Ordinal.omega_power(1, 2))
    assert hat_oplus(w_minus, w_minus) == w_minus
    assert hat_oplus(ExtOrdinal.plus(5), ExtOrdinal.plus(3)) == ExtOrdinal.plus(8)


def test_hat_plus_plus_plus_is_plain_add():
    for ta, tb in itertools.product(itertools.product(range(3), repeat=3), repeat=2):
        a, b = from_triple(ta), from_triple(tb)
        got = hat_plus(ExtOrdinal.plus(a), ExtOrdinal.plus(b))
        assert got.sign is Sign.PLUS
        assert got.value == add(a, b)


def test_hat_oplus_commutative():
    domain = [ExtOrdinal(from_triple(t), Sign(s)) for t, s in signed_domain(2)]
    for x, y in itertools.product(domain, repeat=2):
        assert hat_oplus(x, y) == hat_oplus(y, x)


def test_hat_oplus_successor_rounding():
    # 3+ (o^) w-: the natural sum w+3 is a successor, so the minus tag is
    # uninhabited and the result rounds down to (w+2)+
    got = hat_oplus(ExtOrdinal.plus(3), ExtOrdinal.minus(OMEGA))
    assert got == ExtOrdinal.plus(add(OMEGA, fin(2)))


# -- enumeration ----------------------------------------------------------


def test_enumerate_below_finite():
    assert enumerate_below(fin(3), 5) == [ZERO, ONE, fin(2)]


def test_enumerate_below_omega_capped():
    assert enumerate_below(OMEGA, 4) == [fin(n) for n in range(5)]


def test_enumerate_below_omega2():
    got = enumerate_below(Ordinal.omega_power(1, 2), 2)
    want = [ZERO, ONE, fin(2), OMEGA, add(OMEGA, ONE), add(OMEGA, fin(2))]
    assert got == want


def test_enumerate_below_is_sorted_and_capped():
    got = enumerate_below(Ordinal((( fin(2), 2), (fin(1), 1))), 3)
    assert got == sorted(got, key=to_triple)
    assert all(max(to_triple(g)) <= 3 for g in got)
    assert all(compare(g, Ordinal(((fin(2), 2), (fin(1), 1)))) < 0 for g in got)


def test_enumerate_below_range_check():
    with pytest.raises(OrdinalError):
        enumerate_below(Ordinal.omega_power(3), 2)


# -- CNF validation --------------------------------------------------------


def test_invalid_cnf_rejected():
    with pytest.raises(OrdinalError):
        Ordinal(((ZERO, 0),))
    with pytest.raises(OrdinalError):
        Ordinal(((ZERO, 1), (fin(1), 1)))  # increasing exponents
