"""Ordinal arithmetic in hereditary Cantor normal form, below epsilon-0.

An ordinal is stored as a strictly decreasing list of (exponent, coefficient)
pairs, the exponents themselves being ordinals.  On top of the plain ordinals
sits a signed variant: a value tagged ``+`` (a witness of that depth exists)
or ``-`` (the value is only approached from below; limits only).  The signed
operations ``hat_plus`` and ``hat_oplus`` combine plain addition, the
Hessenberg natural sum and symbolic suprema over initial segments.
"""

from __future__ import annotations

import enum
import functools
import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator


class OrdinalError(ValueError):
    """Invalid ordinal construction or an operation outside its domain."""


@dataclass(frozen=True)
class Ordinal:
    """An ordinal below epsilon-0 in Cantor normal form.

    ``terms`` is a tuple of (exponent, coefficient) pairs with strictly
    decreasing exponents and coefficients >= 1.  The empty tuple is 0.
    """

    terms: tuple[tuple["Ordinal", int], ...] = ()

    def __post_init__(self) -> None:
        prev: Ordinal | None = None
        for exp, coeff in self.terms:
            if not isinstance(exp, Ordinal):
                raise OrdinalError(f"exponent must be an Ordinal, got {exp!r}")
            if not isinstance(coeff, int) or coeff < 1:
                raise OrdinalError(f"coefficient must be a positive int, got {coeff!r}")
            if prev is not None and compare(prev, exp) <= 0:
                raise OrdinalError("exponents must be strictly decreasing")
            prev = exp

    # -- constructors ---------------------------------------------------

    @staticmethod
    def from_int(n: int) -> "Ordinal":
        if n < 0:
            raise OrdinalError("ordinals are non-negative")
        if n == 0:
            return ZERO
        return Ordinal(((ZERO, n),))

    @staticmethod
    def omega_power(exp: "Ordinal | int", coeff: int = 1) -> "Ordinal":
        if isinstance(exp, int):
            exp = Ordinal.from_int(exp)
        if coeff < 1:
            raise OrdinalError("coefficient must be >= 1")
        return Ordinal(((exp, coeff),))

    # -- structure ------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_limit(self) -> bool:
        """True iff nonzero and the least exponent is nonzero."""
        return bool(self.terms) and not self.terms[-1][0].is_zero

    @property
    def is_successor(self) -> bool:
        return bool(self.terms) and self.terms[-1][0].is_zero

    @property
    def is_finite(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and self.terms[0][0].is_zero)

    def as_int(self) -> int:
        if not self.is_finite:
            raise OrdinalError(f"{self} is not finite")
        return self.terms[0][1] if self.terms else 0

    def predecessor(self) -> "Ordinal":
        if not self.is_successor:
            raise OrdinalError(f"{self} is not a successor")
        return _decrement_last(self)

    # -- comparisons ----------------------------------------------------

    def __lt__(self, other: "Ordinal") -> bool:
        return compare(self, other) < 0

    def __le__(self, other: "Ordinal") -> bool:
        return compare(self, other) <= 0

    def __gt__(self, other: "Ordinal") -> bool:
        return compare(self, other) > 0

    def __ge__(self, other: "Ordinal") -> bool:
        return compare(self, other) >= 0

    def __add__(self, other: "Ordinal") -> "Ordinal":
        return add(self, other)

    def __repr__(self) -> str:
        from .ordexpr import render_ordinal

        return f"Ordinal[{render_ordinal(self)}]"


ZERO = Ordinal()
ONE = Ordinal.from_int(1)
OMEGA = Ordinal.omega_power(1)


def compare(a: Ordinal, b: Ordinal) -> int:
    """Total order on CNF ordinals: -1, 0 or 1."""
    for (ea, ca), (eb, cb) in zip(a.terms, b.terms):
        c = compare(ea, eb)
        if c != 0:
            return c
        if ca != cb:
            return -1 if ca < cb else 1
    if len(a.terms) == len(b.terms):
        return 0
    return -1 if len(a.terms) < len(b.terms) else 1


def _decrement_last(a: Ordinal) -> Ordinal:
    """Drop one from the last coefficient (the term vanishes at zero)."""
    exp, coeff = a.terms[-1]
    if coeff > 1:
        return Ordinal(a.terms[:-1] + ((exp, coeff - 1),))
    return Ordinal(a.terms[:-1])


def add(a: Ordinal, b: Ordinal) -> Ordinal:
    """Ordinal sum; terms of ``a`` below the leading exponent of ``b`` absorb."""
    if b.is_zero:
        return a
    e0, c0 = b.terms[0]
    kept = []
    merged = c0
    for exp, coeff in a.terms:
        c = compare(exp, e0)
        if c > 0:
            kept.append((exp, coeff))
        elif c == 0:
            merged = coeff + c0
            break
        else:
            break
    return Ordinal(tuple(kept) + ((e0, merged),) + b.terms[1:])


def natural_sum(a: Ordinal, b: Ordinal) -> Ordinal:
    """Hessenberg sum: coefficient-wise merge of the two normal forms."""
    merged: list[tuple[Ordinal, int]] = []
    ta, tb = list(a.terms), list(b.terms)
    i = j = 0
    while i < len(ta) and j < len(tb):
        c = compare(ta[i][0], tb[j][0])
        if c > 0:
            merged.append(ta[i])
            i += 1
        elif c < 0:
            merged.append(tb[j])
            j += 1
        else:
            merged.append((ta[i][0], ta[i][1] + tb[j][1]))
            i += 1
            j += 1
    merged.extend(ta[i:])
    merged.extend(tb[j:])
    return Ordinal(tuple(merged))


def is_limit(a: Ordinal) -> bool:
    return a.is_limit


def sup_shift(alpha: Ordinal, beta: Ordinal) -> tuple[Ordinal, bool]:
    """``sup { gamma + beta : gamma < alpha }`` and whether it is attained.

    ``alpha`` must be nonzero (the supremum over an empty range is rejected).
    The gamma range includes 0.
    """
    if alpha.is_zero:
        raise OrdinalError("sup_shift needs alpha > 0 (empty supremum)")
    if alpha.is_successor:
        return add(alpha.predecessor(), beta), True
    if beta.is_zero:
        return alpha, False
    # alpha is a limit: the sup runs over the multiples of w^e below alpha,
    # where e is the leading exponent of beta.
    e = beta.terms[0][0]
    head = []
    for exp, coeff in alpha.terms:
        if compare(exp, e) >= 0:
            head.append((exp, coeff))
        else:
            break
    if len(head) < len(alpha.terms):
        # alpha has a tail below w^e; the largest multiple is the head.
        return add(Ordinal(tuple(head)), beta), True
    e_min = alpha.terms[-1][0]
    if compare(e_min, e) == 0:
        return add(_decrement_last(alpha), beta), True
    # every exponent of alpha exceeds e: multiples of w^e are cofinal in alpha
    return alpha, False


def natural_sup(alpha: Ordinal, beta: Ordinal) -> Ordinal:
    """``sup { gamma (+) delta : gamma < alpha, delta < beta }`` for limits."""
    if not (alpha.is_limit and beta.is_limit):
        raise OrdinalError("natural_sup is defined for limit arguments")
    ea = alpha.terms[-1][0]
    eb = beta.terms[-1][0]
    c = compare(ea, eb)
    if c == 0:
        return _decrement_last(natural_sum(alpha, beta))
    if c < 0:
        alpha = _truncate_at_least(alpha, eb)
    else:
        beta = _truncate_at_least(beta, ea)
    return natural_sum(alpha, beta)


def _truncate_at_least(a: Ordinal, e: Ordinal) -> Ordinal:
    """Keep only the terms with exponent >= e."""
    kept = tuple(t for t in a.terms if compare(t[0], e) >= 0)
    return Ordinal(kept)


# -- signed ordinals ----------------------------------------------------


class Sign(enum.Enum):
    MINUS = "-"
    PLUS = "+"


@dataclass(frozen=True)
class ExtOrdinal:
    """An ordinal tagged with an attainment sign.

    ``MINUS`` is only admitted on limit values: a non-attained supremum is
    necessarily a limit, since depths below a successor have a maximum.
    """

    value: Ordinal
    sign: Sign = Sign.PLUS

    def __post_init__(self) -> None:
        if self.sign is Sign.MINUS and not self.value.is_limit:
            raise OrdinalError(
                f"minus sign requires a limit value, got {self.value!r}"
            )

    @staticmethod
    def plus(value: Ordinal | int) -> "ExtOrdinal":
        if isinstance(value, int):
            value = Ordinal.from_int(value)
        return ExtOrdinal(value, Sign.PLUS)

    @staticmethod
    def minus(value: Ordinal) -> "ExtOrdinal":
        return ExtOrdinal(value, Sign.MINUS)

    def __lt__(self, other: "ExtOrdinal") -> bool:
        return ext_compare(self, other) < 0

    def __le__(self, other: "ExtOrdinal") -> bool:
        return ext_compare(self, other) <= 0

    def __repr__(self) -> str:
        from .ordexpr import render_ext_ordinal

        return f"ExtOrdinal[{render_ext_ordinal(self)}]"


def ext_compare(x: ExtOrdinal, y: ExtOrdinal) -> int:
    """Value order with the tie broken minus-below-plus."""
    c = compare(x.value, y.value)
    if c != 0:
        return c
    if x.sign is y.sign:
        return 0
    return -1 if x.sign is Sign.MINUS else 1


def hat_plus(x: ExtOrdinal, y: ExtOrdinal) -> ExtOrdinal:
    """Signed ordinal sum.

    Plus/plus and plus/minus add directly; a minus on the left turns into the
    supremum of ``gamma + value(y)`` over ``gamma < value(x)``, signed by
    attainment (forced minus when y itself carries minus).
    """
    a, b = x.value, y.value
    if x.sign is Sign.PLUS:
        total = add(a, b)
        if y.sign is Sign.PLUS:
            return ExtOrdinal(total, Sign.PLUS)
        assert total.is_limit, "plus +hat minus cannot leave the limit ordinals"
        return ExtOrdinal(total, Sign.MINUS)
    sup, attained = sup_shift(a, b)
    if y.sign is Sign.MINUS:
        assert sup.is_limit
        return ExtOrdinal(sup, Sign.MINUS)
    if attained:
        return ExtOrdinal(sup, Sign.PLUS)
    assert sup.is_limit
    return ExtOrdinal(sup, Sign.MINUS)


def hat_oplus(x: ExtOrdinal, y: ExtOrdinal) -> ExtOrdinal:
    """Signed natural sum; commutative by construction.

    Minus/minus is the supremum of pairwise natural sums over the two initial
    segments.  Plus/minus is the natural sum tagged minus; when that value is
    a successor (the left operand has a finite part) the minus tag has no
    inhabitant, so the result rounds down to the predecessor tagged plus --
    the largest representable value strictly below the phantom one, which
    bounds exactly the same set of ranks.
    """
    if x.sign is Sign.MINUS and y.sign is Sign.PLUS:
        x, y = y, x
    a, b = x.value, y.value
    if x.sign is Sign.PLUS and y.sign is Sign.PLUS:
        return ExtOrdinal(natural_sum(a, b), Sign.PLUS)
    if x.sign is Sign.PLUS:
        total = natural_sum(a, b)
        if total.is_limit:
            return ExtOrdinal(total, Sign.MINUS)
        return ExtOrdinal(total.predecessor(), Sign.PLUS)
    return ExtOrdinal(natural_sup(a, b), Sign.MINUS)


# -- bounded enumeration (testing oracle support) ------------------------

_ENUM_BOUND = Ordinal.omega_power(3)


def _as_triple(a: Ordinal) -> tuple[int, int, int]:
    digits = [0, 0, 0]
    for exp, coeff in a.terms:
        if not exp.is_finite or exp.as_int() > 2:
            raise OrdinalError(f"{a!r} is outside the enumeration range (< w^3)")
        digits[2 - exp.as_int()] = coeff
    return tuple(digits)  # type: ignore[return-value]


def _from_triple(t: tuple[int, int, int]) -> Ordinal:
    terms = []
    for pos, coeff in enumerate(t):
        if coeff:
            terms.append((Ordinal.from_int(2 - pos), coeff))
    return Ordinal(tuple(terms))


def enumerate_below(alpha: Ordinal, cap: int) -> list[Ordinal]:
    """All ordinals below ``alpha`` whose CNF coefficients are <= cap.

    Increasing order.  Only supported below w^3; this is deliberately a
    small-scale enumeration oracle, not a general facility.
    """
    if compare(alpha, _ENUM_BOUND) >= 0:
        raise OrdinalError("enumerate_below supports only alpha < w^3")
    if cap < 0:
        raise OrdinalError("cap must be >= 0")
    bound = _as_triple(alpha)
    out = []
    for t in itertools.product(range(cap + 1), repeat=3):
        if t < bound:
            out.append(_from_triple(t))  # lex order on triples = ordinal order
    return out
