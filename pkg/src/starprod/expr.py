"""Textual expressions for graded polynomials.

Grammar (the only operators are + - * ^):

    expr   := term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := '-' factor | atom ('^' integer)*
    atom   := rational | name | '(' expr ')'

Rational literals are single tokens like 7 or 3/2 (there is no division
operator).  'I' is the imaginary unit.  Every other name must resolve to a
generator of the target space.  Exponents are nonnegative integer literals.

parse_expr produces a small AST; to_poly interprets it over a GradedSpace;
poly_to_expr prints a polynomial back in a canonical form that round-trips.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import InputError
from .scalars import Scalar, scalar_to_expr
from .superalg import GradedPoly, GradedSpace

# AST ------------------------------------------------------------------------


@dataclass(frozen=True)
class Num:
    value: Fraction
    pos: int = 0


@dataclass(frozen=True)
class Name:
    ident: str
    pos: int = 0


@dataclass(frozen=True)
class Neg:
    arg: "Node"
    pos: int = 0


@dataclass(frozen=True)
class Add:
    left: "Node"
    right: "Node"
    pos: int = 0


@dataclass(frozen=True)
class Sub:
    left: "Node"
    right: "Node"
    pos: int = 0


@dataclass(frozen=True)
class Mul:
    left: "Node"
    right: "Node"
    pos: int = 0


@dataclass(frozen=True)
class Pow:
    base: "Node"
    exponent: int
    pos: int = 0


Node = Union[Num, Name, Neg, Add, Sub, Mul, Pow]

# lexer ----------------------------------------------------------------------

_TOKEN = re.compile(
    r"(?P<num>\d+(?:/\d+)?)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*^()])")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if m is None:
            raise InputError(f"unexpected character {text[pos]!r} "
                             f"at column {pos + 1}")
        kind = m.lastgroup
        tokens.append((kind, m.group(), pos + 1))
        pos = m.end()
    tokens.append(("end", "", n + 1))
    return tokens


class _Parser:
    def __init__(self, tokens: list[tuple[str, str, int]]):
        self.tokens = tokens
        self.k = 0

    def peek(self):
        return self.tokens[self.k]

    def advance(self):
        tok = self.tokens[self.k]
        self.k += 1
        return tok

    def expr(self) -> Node:
        node = self.term()
        while True:
            kind, text, pos = self.peek()
            if kind == "op" and text in "+-":
                self.advance()
                rhs = self.term()
                node = Add(node, rhs, pos) if text == "+" else Sub(node, rhs, pos)
            else:
                return node

    def term(self) -> Node:
        node = self.factor()
        while True:
            kind, text, pos = self.peek()
            if kind == "op" and text == "*":
                self.advance()
                node = Mul(node, self.factor(), pos)
            else:
                return node

    def factor(self) -> Node:
        kind, text, pos = self.peek()
        if kind == "op" and text == "-":
            self.advance()
            return Neg(self.factor(), pos)
        node = self.atom()
        while True:
            kind, text, pos = self.peek()
            if kind == "op" and text == "^":
                self.advance()
                node = Pow(node, self._exponent(), pos)
            else:
                return node

    def _exponent(self) -> int:
        kind, text, pos = self.advance()
        if kind != "num" or "/" in text:
            raise InputError("exponent must be a nonnegative integer "
                             f"at column {pos}")
        return int(text)

    def atom(self) -> Node:
        kind, text, pos = self.advance()
        if kind == "num":
            try:
                value = Fraction(text)
            except ZeroDivisionError:
                raise InputError(f"zero denominator at column {pos}") from None
            return Num(value, pos)
        if kind == "name":
            return Name(text, pos)
        if kind == "op" and text == "(":
            node = self.expr()
            kind, text, pos = self.advance()
            if not (kind == "op" and text == ")"):
                raise InputError(f"expected ')' at column {pos}")
            return node
        if kind == "end":
            raise InputError(f"unexpected end of expression at column {pos}")
        raise InputError(f"unexpected {text!r} at column {pos}")


def parse_expr(text: str) -> Node:
    """Parse an expression to its term tree.  Raises InputError with a column."""
    if not text or text.isspace():
        raise InputError("empty expression")
    parser = _Parser(_tokenize(text))
    node = parser.expr()
    kind, tok, pos = parser.peek()
    if kind != "end":
        raise InputError(f"unexpected {tok!r} at column {pos}")
    return node


# interpretation ---------------------------------------------------------------

def to_poly(node: Node, space: GradedSpace) -> GradedPoly:
    """Interpret an AST over a graded space."""
    if isinstance(node, Num):
        return GradedPoly.constant(space, node.value)
    if isinstance(node, Name):
        if node.ident == "I":
            return GradedPoly.constant(space, Scalar(0, 1))
        if node.ident in space._index:
            return GradedPoly.generator(space, node.ident)
        raise InputError(f"unknown generator {node.ident!r} "
                         f"at column {node.pos}")
    if isinstance(node, Neg):
        return -to_poly(node.arg, space)
    if isinstance(node, Add):
        return to_poly(node.left, space) + to_poly(node.right, space)
    if isinstance(node, Sub):
        return to_poly(node.left, space) - to_poly(node.right, space)
    if isinstance(node, Mul):
        return to_poly(node.left, space) * to_poly(node.right, space)
    if isinstance(node, Pow):
        base = to_poly(node.base, space)
        par = base.parity()
        if par == 1 and node.exponent > 1:
            return GradedPoly.zero(space)
        return base ** node.exponent
    raise InputError(f"unrecognized expression node {node!r}")


def parse_poly(text: str, space: GradedSpace) -> GradedPoly:
    return to_poly(parse_expr(text), space)


# printing ---------------------------------------------------------------------

def _monomial_body(space: GradedSpace, key: tuple[int, ...]) -> str:
    parts = []
    for idx, e in enumerate(key):
        if e == 0:
            continue
        name = space.names[idx]
        parts.append(name if e == 1 else f"{name}^{e}")
    return "*".join(parts)


def poly_to_expr(p: GradedPoly) -> str:
    """Canonical text: ascending total degree, then generator order.

    parse_poly(poly_to_expr(p), p.space) == p, and printing is idempotent.
    """
    if not p.terms:
        return "0"
    keys = sorted(p.terms, key=lambda k: (sum(k), tuple(-e for e in k)))
    rendered = []
    for key in keys:
        c = p.terms[key]
        negative = (c.im == 0 and c.re < 0) or (c.re == 0 and c.im < 0)
        mag = -c if negative else c
        body = _monomial_body(p.space, key)
        if not body:
            text = scalar_to_expr(mag)
        elif mag == Scalar(1):
            text = body
        else:
            text = f"{scalar_to_expr(mag)}*{body}"
        rendered.append(("-" if negative else "+", text))
    sign, text = rendered[0]
    out = [text if sign == "+" else f"-{text}"]
    for sign, text in rendered[1:]:
        out.append(f" {sign} {text}")
    return "".join(out)
