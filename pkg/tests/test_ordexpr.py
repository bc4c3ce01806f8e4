"""Ordinal expression syntax: evaluation, rendering, round-trips, errors."""

from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ddrank.ordexpr import OrdinalParseError, parse_value, render_value
from ddrank.ordinals import ExtOrdinal, Ordinal, OrdinalError, Sign, add


CASES = {
    "0": "0",
    "3": "3",
    "w": "w",
    "w + 1": "w+1",
    "1+w": "w",
    "w*2": "w*2",
    "w^2*3": "w^2*3",
    "w^2+w*2+5": "w^2+w*2+5",
    "(w+3)+w*2": "w*3",
    "w (+) 1": "w+1",
    "(w+1) (+) w": "w*2+1",
    "5 (+) 3": "8",
    "w^(w+1)": "w^(w+1)",
    "w^w*2+w": "w^w*2+w",
    "(w+1)*3": "w*3+1",
    "w-": "w-",
    "w*2-": "(w*2)-",
    "(w^2+3)+": "(w^2+3)+",
    "0+": "0+",
    "w+ (+^) w-": "(w*2)-",
    "w- (+^) 1+": "w-",
    "w- (+^) w+": "w+",
    "w+ (o^) w-": "(w*2)-",
    "w- (o^) w-": "w-",
    "5+ (o^) 3+": "8+",
    "w+ (+^) w+ (+^) 1+": "(w*2+1)+",
}


@pytest.mark.parametrize("text,expected", sorted(CASES.items()))
def test_eval_and_render(text, expected):
    assert render_value(parse_value(text)) == expected


@pytest.mark.parametrize("text", sorted(CASES))
def test_render_parse_round_trip(text):
    value = parse_value(text)
    assert parse_value(render_value(value)) == value


@pytest.mark.parametrize(
    "bad",
    [
        "",
        "+w",
        "w^",
        "(w",
        "w)",
        "w * w",
        "*2",
        "w (+^) w",  # missing signs
        "w- + 1",  # plain operator on a signed value
        "(w-)*2",
        "3 @ 4",
        "w-2",  # minus is never binary
    ],
)
def test_parse_errors_carry_positions(bad):
    with pytest.raises(OrdinalParseError) as exc:
        parse_value(bad)
    assert "position" in str(exc.value)


def test_minus_validation_is_not_a_parse_error():
    with pytest.raises(OrdinalError):
        parse_value("3-")


ordinals_small = st.builds(
    lambda t: _from_digits(t),
    st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3)),
)


def _from_digits(t):
    terms = []
    for pos, coeff in enumerate(t):
        if coeff:
            terms.append((Ordinal.from_int(2 - pos), coeff))
    return Ordinal(tuple(terms))


@given(ordinals_small)
def test_plain_round_trip(a):
    assert parse_value(render_value(a)) == a


@given(ordinals_small, st.booleans())
def test_signed_round_trip(a, plus):
    if not plus and not a.is_limit:
        return
    x = ExtOrdinal(a, Sign.PLUS if plus else Sign.MINUS)
    assert parse_value(render_value(x)) == x


def test_deep_exponent_round_trip():
    a = add(Ordinal.omega_power(add(Ordinal.omega_power(1, 2), Ordinal.from_int(1)), 2), Ordinal.from_int(7))
    assert parse_value(render_value(a)) == a
