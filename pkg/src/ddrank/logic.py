"""Quantifier-free relational formulas over a named parameter space.

Terms are either positions in the designated free tuple (``x0``, ``x1``, ...)
or named parameters; formulas are built from relation atoms and equality with
``!``, ``&``, ``|``.  The grammar (EBNF):

    formula = disjunct { "|" disjunct } ;
    disjunct = conjunct { "&" conjunct } ;
    conjunct = "!" conjunct | atom ;
    atom = identifier "(" term { "," term } ")"
         | term "=" term
         | "(" formula ")" ;
    term = "x" digits | identifier ;

Identifiers are ``[A-Za-z_][A-Za-z0-9_']*``; a bare identifier is a parameter
name unless it matches ``x<k>``, which is the k-th free variable.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Union


class LogicError(ValueError):
    """Structural problem in a formula, signature or type."""


class ParseError(LogicError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


# -- signature ------------------------------------------------------------


@dataclass(frozen=True)
class Signature:
    """Relation symbols with arities; equality is always available."""

    relations: tuple[tuple[str, int], ...] = ()

    def __post_init__(self) -> None:
        seen = set()
        for name, arity in self.relations:
            if name in seen:
                raise LogicError(f"duplicate relation symbol {name!r}")
            if arity < 1:
                raise LogicError(f"relation {name!r} must have arity >= 1")
            seen.add(name)

    def arity(self, name: str) -> int | None:
        for rel, arity in self.relations:
            if rel == name:
                return arity
        return None


# -- terms and formulas -----------------------------------------------------


@dataclass(frozen=True)
class Var:
    index: int

    def __repr__(self) -> str:
        return f"x{self.index}"


@dataclass(frozen=True)
class Param:
    name: str

    def __repr__(self) -> str:
        return self.name


Term = Union[Var, Param]


@dataclass(frozen=True)
class Atom:
    relation: str
    args: tuple[Term, ...]


@dataclass(frozen=True)
class Eq:
    left: Term
    right: Term


@dataclass(frozen=True)
class Not:
    body: "Formula"


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


Formula = Union[Atom, Eq, Not, And, Or]


def subformulas(f: Formula) -> Iterator[Formula]:
    yield f
    if isinstance(f, Not):
        yield from subformulas(f.body)
    elif isinstance(f, (And, Or)):
        yield from subformulas(f.left)
        yield from subformulas(f.right)


def terms_of(f: Formula) -> Iterator[Term]:
    for sub in subformulas(f):
        if isinstance(sub, Atom):
            yield from sub.args
        elif isinstance(sub, Eq):
            yield sub.left
            yield sub.right


def params_of(f: Formula) -> set[str]:
    return {t.name for t in terms_of(f) if isinstance(t, Param)}


def vars_of(f: Formula) -> set[int]:
    return {t.index for t in terms_of(f) if isinstance(t, Var)}


def conjoin(formulas: Iterable[Formula]) -> Formula:
    """Left-fold conjunction; a single formula stays as is."""
    items = list(formulas)
    if not items:
        raise LogicError("cannot conjoin an empty list")
    out = items[0]
    for f in items[1:]:
        out = And(out, f)
    return out


# -- parsing ---------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<ident>[A-Za-z_][A-Za-z0-9_']*)|(?P<punct>[()!&|=,]))"
)
_VAR_RE = re.compile(r"^x(\d+)$")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN_RE.match(text, pos)
        if not m or m.start() != pos:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        if m.group("ident"):
            tokens.append(("ident", m.group("ident"), m.start("ident")))
        else:
            tokens.append((m.group("punct"), m.group("punct"), m.start("punct")))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _FormulaParser:
    def __init__(self, text: str, sig: Signature):
        self.tokens = _tokenize(text)
        self.sig = sig
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        if tok[0] != "end":
            self.i += 1
        return tok

    def expect(self, kind: str):
        tok = self.peek()
        if tok[0] != kind:
            raise ParseError(f"expected {kind!r}, found {tok[1] or 'end of input'!r}", tok[2])
        return self.take()

    def parse(self) -> Formula:
        f = self.parse_or()
        tok = self.peek()
        if tok[0] != "end":
            raise ParseError(f"unexpected trailing {tok[1]!r}", tok[2])
        return f

    def parse_or(self) -> Formula:
        f = self.parse_and()
        while self.peek()[0] == "|":
            self.take()
            f = Or(f, self.parse_and())
        return f

    def parse_and(self) -> Formula:
        f = self.parse_unary()
        while self.peek()[0] == "&":
            self.take()
            f = And(f, self.parse_unary())
        return f

    def parse_unary(self) -> Formula:
        tok = self.peek()
        if tok[0] == "!":
            self.take()
            return Not(self.parse_unary())
        if tok[0] == "(":
            self.take()
            f = self.parse_or()
            self.expect(")")
            return f
        return self.parse_atom()

    def parse_atom(self) -> Formula:
        tok = self.peek()
        if tok[0] != "ident":
            raise ParseError(f"expected a formula, found {tok[1] or 'end of input'!r}", tok[2])
        name_tok = self.take()
        if self.peek()[0] == "(":
            return self.parse_relation(name_tok)
        left = self.as_term(name_tok)
        eq = self.expect("=")
        right_tok = self.expect("ident")
        return Eq(left, self.as_term(right_tok))

    def parse_relation(self, name_tok) -> Formula:
        name = name_tok[1]
        arity = self.sig.arity(name)
        if arity is None:
            raise ParseError(f"unknown relation symbol {name!r}", name_tok[2])
        self.expect("(")
        args = [self.as_term(self.expect("ident"))]
        while self.peek()[0] == ",":
            self.take()
            args.append(self.as_term(self.expect("ident")))
        close = self.expect(")")
        if len(args) != arity:
            raise ParseError(
                f"relation {name!r} expects {arity} arguments, got {len(args)}",
                name_tok[2],
            )
        return Atom(name, tuple(args))

    @staticmethod
    def as_term(tok) -> Term:
        m = _VAR_RE.match(tok[1])
        if m:
            return Var(int(m.group(1)))
        return Param(tok[1])


def parse_formula(text: str, sig: Signature) -> Formula:
    """Parse ``text`` against ``sig``; errors carry the offending position."""
    return _FormulaParser(text, sig).parse()


# -- rendering ---------------------------------------------------------------


def render_formula(f: Formula) -> str:
    return _render(f, top=True)


def _render(f: Formula, top: bool = False) -> str:
    if isinstance(f, Atom):
        return f"{f.relation}({','.join(map(_render_term, f.args))})"
    if isinstance(f, Eq):
        return f"{_render_term(f.left)} = {_render_term(f.right)}"
    if isinstance(f, Not):
        body = _render(f.body)
        if isinstance(f.body, (And, Or, Eq)):
            body = f"({body})"
        return f"!{body}"
    op = "&" if isinstance(f, And) else "|"
    left = _render(f.left)
    right = _render(f.right)
    if isinstance(f.left, (And, Or)):
        left = f"({left})"
    if isinstance(f.right, (And, Or)):
        right = f"({right})"
    return f"{left} {op} {right}"


def _render_term(t: Term) -> str:
    return f"x{t.index}" if isinstance(t, Var) else t.name


# -- substitution -------------------------------------------------------------


def substitute(f: Formula, assignment: Mapping[str, str]) -> Formula:
    """Rename every parameter of ``f`` through ``assignment``.

    The assignment must cover every parameter occurring in the formula (an
    abstract slot with no image is an error); variables are untouched.
    """
    missing = params_of(f) - set(assignment)
    if missing:
        raise LogicError(f"unassigned parameter slots: {sorted(missing)}")
    return _subst(f, assignment)


def _subst(f: Formula, a: Mapping[str, str]) -> Formula:
    if isinstance(f, Atom):
        return Atom(f.relation, tuple(_subst_term(t, a) for t in f.args))
    if isinstance(f, Eq):
        return Eq(_subst_term(f.left, a), _subst_term(f.right, a))
    if isinstance(f, Not):
        return Not(_subst(f.body, a))
    if isinstance(f, And):
        return And(_subst(f.left, a), _subst(f.right, a))
    return Or(_subst(f.left, a), _subst(f.right, a))


def _subst_term(t: Term, a: Mapping[str, str]) -> Term:
    if isinstance(t, Param):
        return Param(a[t.name])
    return t


def rename_params(f: Formula, mapping: Mapping[str, str]) -> Formula:
    """Rename parameters through ``mapping``; unmapped names stay put."""
    return _subst(f, _Defaulting(mapping))


class _Defaulting(dict):
    def __init__(self, mapping: Mapping[str, str]):
        super().__init__(mapping)

    def __missing__(self, key: str) -> str:
        return key


def shift_vars(f: Formula, offset: int) -> Formula:
    """Move every free variable up by ``offset`` positions."""
    if isinstance(f, Atom):
        return Atom(f.relation, tuple(_shift_term(t, offset) for t in f.args))
    if isinstance(f, Eq):
        return Eq(_shift_term(f.left, offset), _shift_term(f.right, offset))
    if isinstance(f, Not):
        return Not(shift_vars(f.body, offset))
    if isinstance(f, And):
        return And(shift_vars(f.left, offset), shift_vars(f.right, offset))
    return Or(shift_vars(f.left, offset), shift_vars(f.right, offset))


def _shift_term(t: Term, offset: int) -> Term:
    return Var(t.index + offset) if isinstance(t, Var) else t


# -- templates ----------------------------------------------------------------


@dataclass(frozen=True)
class FormulaTemplate:
    """A formula whose parameters form an ordered slot block.

    Instantiating a template substitutes the slot names with a parameter
    tuple of matching length.
    """

    formula: Formula
    slots: tuple[str, ...]

    def __post_init__(self) -> None:
        if len(set(self.slots)) != len(self.slots):
            raise LogicError("template slots must be distinct")
        extra = params_of(self.formula) - set(self.slots)
        if extra:
            raise LogicError(f"template has parameters outside the slot block: {sorted(extra)}")

    def instantiate(self, args: tuple[str, ...]) -> Formula:
        if len(args) != len(self.slots):
            raise LogicError(
                f"template needs {len(self.slots)} arguments, got {len(args)}"
            )
        return substitute(self.formula, dict(zip(self.slots, args)))

    def describe(self) -> str:
        return render_formula(self.formula)


# -- partial types --------------------------------------------------------------


@dataclass(frozen=True)
class PartialType:
    """A finite set of formulas in a free tuple, over a base parameter set."""

    tuple_length: int
    formulas: tuple[Formula, ...]
    base_params: frozenset[str] = frozenset()

    def __post_init__(self) -> None:
        if self.tuple_length < 1:
            raise LogicError("tuple length must be positive")

    def violations(self, sig: Signature) -> list[str]:
        return validate_type(self, sig)


def validate_type(p: PartialType, sig: Signature) -> list[str]:
    """Invariant check; returns human-readable violations instead of raising."""
    out = []
    for i, f in enumerate(p.formulas):
        for v in sorted(vars_of(f)):
            if v >= p.tuple_length:
                out.append(f"formula {i}: free variable x{v} outside tuple of length {p.tuple_length}")
        for name in sorted(params_of(f) - p.base_params):
            out.append(f"formula {i}: parameter {name!r} not declared in the base")
        for sub in subformulas(f):
            if isinstance(sub, Atom):
                arity = sig.arity(sub.relation)
                if arity is None:
                    out.append(f"formula {i}: unknown relation {sub.relation!r}")
                elif arity != len(sub.args):
                    out.append(
                        f"formula {i}: relation {sub.relation!r} expects {arity} arguments, got {len(sub.args)}"
                    )
    return out


# -- JSON encoding ----------------------------------------------------------------


def term_to_json(t: Term) -> dict:
    if isinstance(t, Var):
        return {"kind": "var", "index": t.index}
    return {"kind": "param", "name": t.name}


def term_from_json(doc: dict) -> Term:
    if doc["kind"] == "var":
        return Var(int(doc["index"]))
    if doc["kind"] == "param":
        return Param(doc["name"])
    raise LogicError(f"unknown term kind {doc.get('kind')!r}")


def formula_to_json(f: Formula) -> dict:
    if isinstance(f, Atom):
        return {"kind": "atom", "relation": f.relation, "args": [term_to_json(t) for t in f.args]}
    if isinstance(f, Eq):
        return {"kind": "eq", "left": term_to_json(f.left), "right": term_to_json(f.right)}
    if isinstance(f, Not):
        return {"kind": "not", "body": formula_to_json(f.body)}
    if isinstance(f, And):
        return {"kind": "and", "left": formula_to_json(f.left), "right": formula_to_json(f.right)}
    return {"kind": "or", "left": formula_to_json(f.left), "right": formula_to_json(f.right)}


def formula_from_json(doc: dict) -> Formula:
    kind = doc.get("kind")
    if kind == "atom":
        return Atom(doc["relation"], tuple(term_from_json(t) for t in doc["args"]))
    if kind == "eq":
        return Eq(term_from_json(doc["left"]), term_from_json(doc["right"]))
    if kind == "not":
        return Not(formula_from_json(doc["body"]))
    if kind == "and":
        return And(formula_from_json(doc["left"]), formula_from_json(doc["right"]))
    if kind == "or":
        return Or(formula_from_json(doc["left"]), formula_from_json(doc["right"]))
    raise LogicError(f"unknown formula kind {kind!r}")


def type_to_json(p: PartialType) -> dict:
    return {
        "tuple_length": p.tuple_length,
        "formulas": [formula_to_json(f) for f in p.formulas],
        "base_params": sorted(p.base_params),
    }


def type_from_json(doc: dict) -> PartialType:
    return PartialType(
        tuple_length=int(doc["tuple_length"]),
        formulas=tuple(formula_from_json(f) for f in doc["formulas"]),
        base_params=frozenset(doc.get("base_params", ())),
    )


def template_to_json(t: FormulaTemplate) -> dict:
    return {"formula": formula_to_json(t.formula), "slots": list(t.slots)}


def template_from_json(doc: dict) -> FormulaTemplate:
    return FormulaTemplate(
        formula=formula_from_json(doc["formula"]), slots=tuple(doc["slots"])
    )
