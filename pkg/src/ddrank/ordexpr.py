"""Text syntax for ordinal expressions.

Grammar (EBNF, whitespace free between tokens):

    expr      = operand { ext-op operand } ;
    operand   = sum [ sign ] ;
    sum       = product { ("+" | "(+)") product } ;
    product   = atom [ "*" integer ] ;
    atom      = "w" [ "^" atom ] | integer | "(" expr ")" ;
    ext-op    = "(+^)" | "(o^)" ;
    sign      = "+" | "-" ;

``w`` is the first infinite ordinal, ``(+)`` the natural (Hessenberg) sum,
``(+^)`` and ``(o^)`` the signed sum and signed natural sum.  A trailing
``+``/``-`` turns a plain ordinal into a signed one; a ``+`` is read as a
binary operator exactly when an operand follows it.  Signed values are only
combinable with ``(+^)`` / ``(o^)``, plain values only with the plain
operators; mixing is a parse error.
"""

from __future__ import annotations

from dataclasses import dataclass

from .ordinals import (
    ExtOrdinal,
    Ordinal,
    Sign,
    add,
    hat_oplus,
    hat_plus,
    natural_sum,
)


class OrdinalParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


# -- rendering -----------------------------------------------------------


def render_ordinal(a: Ordinal) -> str:
    if not a.terms:
        return "0"
    return "+".join(_render_term(exp, coeff) for exp, coeff in a.terms)


def _render_term(exp: Ordinal, coeff: int) -> str:
    if exp.is_zero:
        return str(coeff)
    if exp.is_finite and exp.as_int() == 1:
        base = "w"
    elif exp.is_finite:
        base = f"w^{exp.as_int()}"
    elif len(exp.terms) == 1 and exp.terms[0] == (Ordinal.from_int(1), 1):
        base = "w^w"
    else:
        base = f"w^({render_ordinal(exp)})"
    return base if coeff == 1 else f"{base}*{coeff}"


def render_ext_ordinal(x: ExtOrdinal) -> str:
    body = render_ordinal(x.value)
    if body not in ("w",) and not body.isdigit():
        body = f"({body})"
    return body + x.sign.value


def render_value(v: Ordinal | ExtOrdinal) -> str:
    if isinstance(v, ExtOrdinal):
        return render_ext_ordinal(v)
    return render_ordinal(v)


# -- tokenizing ----------------------------------------------------------

_EXT_OPS = {"(+)": "NATSUM", "(+^)": "HATPLUS", "(o^)": "HATNAT"}


@dataclass(frozen=True)
class _Token:
    kind: str
    text: str
    pos: int


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch == "(":
            matched = False
            for literal, kind in _EXT_OPS.items():
                if text.startswith(literal, i):
                    tokens.append(_Token(kind, literal, i))
                    i += len(literal)
                    matched = True
                    break
            if matched:
                continue
            tokens.append(_Token("LPAREN", "(", i))
            i += 1
        elif ch == ")":
            tokens.append(_Token("RPAREN", ")", i))
            i += 1
        elif ch == "w":
            tokens.append(_Token("OMEGA", "w", i))
            i += 1
        elif ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(_Token("INT", text[i:j], i))
            i = j
        elif ch == "+":
            tokens.append(_Token("PLUS", "+", i))
            i += 1
        elif ch == "-":
            tokens.append(_Token("MINUS", "-", i))
            i += 1
        elif ch == "*":
            tokens.append(_Token("STAR", "*", i))
            i += 1
        elif ch == "^":
            tokens.append(_Token("CARET", "^", i))
            i += 1
        else:
            raise OrdinalParseError(f"unexpected character {ch!r}", i)
    tokens.append(_Token("END", "", n))
    return tokens


# -- parsing -------------------------------------------------------------

_OPERAND_STARTERS = {"OMEGA", "INT", "LPAREN"}


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self, ahead: int = 0) -> _Token:
        return self.tokens[min(self.i + ahead, len(self.tokens) - 1)]

    def take(self) -> _Token:
        tok = self.tokens[self.i]
        if tok.kind != "END":
            self.i += 1
        return tok

    def expect(self, kind: str) -> _Token:
        tok = self.peek()
        if tok.kind != kind:
            raise OrdinalParseError(
                f"expected {kind}, found {tok.text or 'end of input'!r}", tok.pos
            )
        return self.take()

    # value variants: plain Ordinal or signed ExtOrdinal

    def parse_expr(self) -> Ordinal | ExtOrdinal:
        value = self.parse_operand()
        while self.peek().kind in ("HATPLUS", "HATNAT"):
            op = self.take()
            rhs = self.parse_operand()
            if not isinstance(value, ExtOrdinal) or not isinstance(rhs, ExtOrdinal):
                raise OrdinalParseError(
                    f"operands of {op.text} must carry an explicit sign", op.pos
                )
            value = hat_plus(value, rhs) if op.kind == "HATPLUS" else hat_oplus(value, rhs)
        return value

    def parse_operand(self) -> Ordinal | ExtOrdinal:
        value = self.parse_sum()
        tok = self.peek()
        if tok.kind == "MINUS":
            self.take()
            return ExtOrdinal(value, Sign.MINUS)
        if tok.kind == "PLUS":
            # a '+' not followed by an operand is a sign suffix
            self.take()
            return ExtOrdinal(value, Sign.PLUS)
        return value

    def parse_sum(self) -> Ordinal:
        value = self.parse_product()
        while True:
            tok = self.peek()
            if tok.kind == "NATSUM":
                self.take()
                value = natural_sum(value, self.parse_product())
            elif tok.kind == "PLUS" and self.peek(1).kind in _OPERAND_STARTERS:
                self.take()
                value = add(value, self.parse_product())
            else:
                return value

    def parse_product(self) -> Ordinal:
        value = self.parse_atom()
        if self.peek().kind == "STAR":
            star = self.take()
            count = int(self.expect("INT").text)
            if count < 1:
                raise OrdinalParseError("coefficient must be >= 1", star.pos)
            value = _scale(value, count, star.pos)
        return value

    def parse_atom(self) -> Ordinal:
        tok = self.peek()
        if tok.kind == "OMEGA":
            self.take()
            if self.peek().kind == "CARET":
                self.take()
                exp = self.parse_atom()
                return Ordinal.omega_power(exp)
            return Ordinal.omega_power(1)
        if tok.kind == "INT":
            self.take()
            return Ordinal.from_int(int(tok.text))
        if tok.kind == "LPAREN":
            self.take()
            inner = self.parse_expr()
            self.expect("RPAREN")
            if isinstance(inner, ExtOrdinal):
                raise OrdinalParseError(
                    "a signed value cannot be used as a plain ordinal", tok.pos
                )
            return inner
        raise OrdinalParseError(
            f"expected an ordinal, found {tok.text or 'end of input'!r}", tok.pos
        )

    def parse_full(self) -> Ordinal | ExtOrdinal:
        value = self.parse_expr()
        tok = self.peek()
        if tok.kind != "END":
            raise OrdinalParseError(f"unexpected trailing {tok.text!r}", tok.pos)
        return value


def _scale(a: Ordinal, count: int, pos: int) -> Ordinal:
    """Right multiplication by a positive integer: a*n = w^e*(c*(n-1)) + a."""
    if a.is_zero or count == 1:
        return a
    exp, coeff = a.terms[0]
    return add(Ordinal(((exp, coeff * (count - 1)),)), a)


def parse_value(text: str) -> Ordinal | ExtOrdinal:
    """Parse an ordinal expression, evaluating it to a (possibly signed) value."""
    return _Parser(text).parse_full()
