"""Tokenizer, recursive-descent parser, and printer for the expression
grammar:

    expr   := ['-'] term (('+'|'-') term)*
    term   := factor ('*' factor)*
    factor := atom ['^-1' | '^*']
    atom   := rational | 'i' | generator | '(' expr ')'

Precedence: inversion/adjoint bind tighter than '*', which binds tighter
than '+'/'-'.  'i' and '1' are reserved (imaginary unit, identity word)."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional

from .algebra import GroupAlgebraElement, ga_adjoint, ga_mul, ga_scalar, ga_word
from .errors import NotExpandable, UnknownGeneratorError, WordSyntaxError
from .expressions import (
    Add,
    Adjoint,
    Expression,
    Inv,
    Leaf,
    Mul,
    Neg,
    ScalarMul,
    expr_adjoint,
    expr_inv,
)
from .scalars import ExactComplex, ONE
from .words import GeneratorSet, format_word, generator, identity

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<rational>\d+(?:/\d+)?)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<invpow>\^-1)|(?P<adjpow>\^\*)|(?P<op>[+\-*()]))"
)


@dataclass
class Token:
    kind: str
    text: str
    position: int


def tokenize(text: str) -> List[Token]:
    tokens: List[Token] = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None or m.end() == pos:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            raise WordSyntaxError(f"unexpected character {stripped[0]!r}", position=pos)
        for kind in ("rational", "name", "invpow", "adjpow", "op"):
            val = m.group(kind)
            if val is not None:
                tokens.append(Token(kind if kind != "op" else val, val, m.start(kind)))
                break
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, tokens: List[Token], gens: GeneratorSet, text: str):
        self.tokens = tokens
        self.gens = gens
        self.text = text
        self.index = 0

    def peek(self) -> Optional[Token]:
        return self.tokens[self.index] if self.index < len(self.tokens) else None

    def next(self) -> Token:
        tok = self.peek()
        if tok is None:
            raise WordSyntaxError("unexpected end of input", position=len(self.text))
        self.index += 1
        return tok

    def expect(self, kind: str) -> Token:
        tok = self.next()
        if tok.kind != kind:
            raise WordSyntaxError(f"expected {kind!r}, found {tok.text!r}", position=tok.position)
        return tok

    def parse_expr(self) -> Expression:
        tok = self.peek()
        negate = False
        if tok is not None and tok.kind == "-":
            self.next()
            negate = True
        node = self.parse_term()
        if negate:
            node = Neg(node)
        while True:
            tok = self.peek()
            if tok is None or tok.kind not in ("+", "-"):
                return node
            self.next()
            rhs = self.parse_term()
            node = Add(node, Neg(rhs) if tok.kind == "-" else rhs)

    def parse_term(self) -> Expression:
        node = self.parse_factor()
        while True:
            tok = self.peek()
            if tok is None or tok.kind != "*":
                return node
            self.next()
            node = Mul(node, self.parse_factor())

    def parse_factor(self) -> Expression:
        node = self.parse_atom()
        tok = self.peek()
        if tok is not None and tok.kind == "invpow":
            self.next()
            return Inv(node)
        if tok is not None and tok.kind == "adjpow":
            self.next()
            return expr_adjoint(node)
        return node

    def parse_atom(self) -> Expression:
        tok = self.next()
        if tok.kind == "rational":
            return Leaf(ga_scalar(self.gens, Fraction(tok.text)))
        if tok.kind == "name":
            if tok.text == "i":
                return Leaf(ga_scalar(self.gens, ExactComplex(0, 1)))
            try:
                index = self.gens.index_of(tok.text)
            except UnknownGeneratorError:
                raise WordSyntaxError(
                    f"unknown generator {tok.text!r}", position=tok.position
                ) from None
            return Leaf(ga_word(generator(self.gens, index)))
        if tok.kind == "(":
            node = self.parse_expr()
            self.expect(")")
            return node
        raise WordSyntaxError(f"unexpected token {tok.text!r}", position=tok.position)


def parse_expression(gens: GeneratorSet, text: str) -> Expression:
    """Parse text into an expression tree; raises WordSyntaxError with the
    offending position on malformed input."""
    tokens = tokenize(text)
    if not tokens:
        raise WordSyntaxError("empty expression")
    parser = _Parser(tokens, gens, text)
    node = parser.parse_expr()
    leftover = parser.peek()
    if leftover is not None:
        raise WordSyntaxError(f"trailing input {leftover.text!r}", position=leftover.position)
    return node


def evaluate_in_group_algebra(e: Expression) -> GroupAlgebraElement:
    """Evaluate a tree in the group algebra.  Inverses are only defined for
    nonzero monomials c*g there; anything else raises NotExpandable."""
    if isinstance(e, Leaf):
        return e.element
    if isinstance(e, Add):
        return evaluate_in_group_algebra(e.left) + evaluate_in_group_algebra(e.right)
    if isinstance(e, Neg):
        return -evaluate_in_group_algebra(e.operand)
    if isinstance(e, Mul):
        return ga_mul(evaluate_in_group_algebra(e.left), evaluate_in_group_algebra(e.right))
    if isinstance(e, ScalarMul):
        return e.scalar * evaluate_in_group_algebra(e.operand)
    if isinstance(e, Adjoint):
        return ga_adjoint(evaluate_in_group_algebra(e.operand))
    if isinstance(e, Inv):
        inner = evaluate_in_group_algebra(e.operand)
        terms = list(inner.terms.items())
        if len(terms) != 1:
            raise NotExpandable(
                "group-algebra inverse only defined for nonzero monomials", node=e
            )
        w, c = terms[0]
        from .words import invert

        return GroupAlgebraElement(inner.gens, {invert(w): ONE / c})
    raise TypeError(f"unknown expression node {e!r}")


def parse_element(gens: GeneratorSet, text: str) -> GroupAlgebraElement:
    """Group-algebra text syntax: scalars, generators with ^-1, '*', '+', '-'."""
    return evaluate_in_group_algebra(parse_expression(gens, text))


# --- printer ---------------------------------------------------------------

_ATOM, _MUL, _ADD = 0, 1, 2


def _print(e: Expression, level: int) -> str:
    if isinstance(e, Leaf):
        el = e.element
        if el.is_zero():
            return "0"
        terms = list(el.terms.items())
        if len(terms) == 1:
            w, c = terms[0]
            if w.is_identity():
                body = str(c)
                needs = ("+" in body[1:]) or ("-" in body[1:]) or body.startswith("-")
                return f"({body})" if needs and level < _ADD else body
            if c == ONE:
                return format_word(w)
            return _maybe_paren(f"{c}*{format_word(w)}", level, _MUL)
        from .algebra import format_element

        return f"({format_element(el)})"
    if isinstance(e, Add):
        right = e.right
        if isinstance(right, Neg):
            body = f"{_print(e.left, _ADD)} - {_print(right.operand, _MUL)}"
        else:
            body = f"{_print(e.left, _ADD)} + {_print(right, _MUL)}"
        return _maybe_paren(body, level, _ADD)
    if isinstance(e, Neg):
        return _maybe_paren(f"-{_print(e.operand, _MUL)}", level, _ADD)
    if isinstance(e, Mul):
        return _maybe_paren(f"{_print(e.left, _MUL)}*{_print(e.right, _MUL)}", level, _MUL)
    if isinstance(e, ScalarMul):
        return _maybe_paren(f"{e.scalar}*{_print(e.operand, _MUL)}", level, _MUL)
    if isinstance(e, Inv):
        return f"{_print(e.operand, _ATOM)}^-1"
    if isinstance(e, Adjoint):
        return f"{_print(e.operand, _ATOM)}^*"
    raise TypeError(f"unknown expression node {e!r}")


def _maybe_paren(body: str, level: int, own: int) -> str:
    return f"({body})" if own > level else body


def format_expression(e: Expression) -> str:
    """Canonical text; parse(format_expression(e)) is semantically e and
    format o parse is idempotent."""
    return _print(e, _ADD)
