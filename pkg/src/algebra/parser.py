"""
Polynomial strings.

    expr   := term (('+' | '-') term)*
    term   := unary ('*' unary)*
    unary  := '-' unary | power
    power  := atom ('^' INTEGER)?
    atom   := INTEGER | IDENT | '(' expr ')'

Integer literals are reduced into the field. Juxtaposition is rejected, so
"2x" is an error rather than 2*x. In an extension field the identifier `a`
(when it is not a ring variable) is the field generator.
"""

import re
from typing import List, Optional, Sequence, Tuple

from src.algebra.fields import GENERATOR_NAME, Domain, FieldDescriptor, FieldElement
from src.algebra.poly import MultiPoly
from src.errors import ParseError

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.))")

Token = Tuple[str, str, int]  # kind, text, offset


def _tokenize(text: str) -> List[Token]:
    tokens: List[Token] = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        if m.group(1) is not None:
            tokens.append(("int", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            tokens.append(("ident", m.group(2), m.start(2)))
        elif m.group(3) is not None:
            ch = m.group(3)
            if ch not in "+-*^()":
                raise ParseError(f"unexpected character {ch!r}", m.start(3), text)
            tokens.append(("op", ch, m.start(3)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, field: Domain, vars: Sequence[str], generator: Optional[str]):
        self.text = text
        self.field = field
        self.vars = tuple(vars)
        self.generator = generator
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> Token:
        return self.tokens[self.i]

    def take(self) -> Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail(self, message: str, tok: Optional[Token] = None):
        tok = tok or self.peek()
        raise ParseError(message, tok[2], self.text)

    def parse(self) -> MultiPoly:
        if self.peek()[0] == "end":
            self.fail("empty polynomial")
        out = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            if tok[0] in ("int", "ident") or tok[1] == "(":
                self.fail("implicit multiplication is not allowed; use '*'")
            self.fail(f"unexpected {tok[1]!r}")
        return out

    def expr(self) -> MultiPoly:
        out = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            rhs = self.term()
            out = out + rhs if op == "+" else out - rhs
        return out

    def term(self) -> MultiPoly:
        out = self.unary()
        while self.peek()[0] == "op" and self.peek()[1] == "*":
            self.take()
            out = out * self.unary()
        return out

    def unary(self) -> MultiPoly:
        if self.peek()[0] == "op" and self.peek()[1] == "-":
            self.take()
            return -self.unary()
        return self.power()

    def power(self) -> MultiPoly:
        base = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            tok = self.peek()
            if tok[0] != "int":
                self.fail("expected a nonnegative integer exponent")
            self.take()
            return base ** int(tok[1])
        return base

    def atom(self) -> MultiPoly:
        tok = self.take()
        kind, text, _ = tok
        if kind == "int":
            nxt = self.peek()
            if nxt[0] == "ident" and nxt[2] == tok[2] + len(text):
                self.fail("implicit multiplication is not allowed; use '*'", nxt)
            return MultiPoly.from_int(self.field, self.vars, int(text))
        if kind == "ident":
            if text in self.vars:
                return MultiPoly.var(self.field, self.vars, text)
            if (
                text == self.generator
                and isinstance(self.field, FieldDescriptor)
                and self.field.k > 1
            ):
                return MultiPoly.constant(self.field, self.vars, self.field.generator().value)
            self.fail(f"unknown variable {text!r}", tok)
        if kind == "op" and text == "(":
            inner = self.expr()
            if self.peek()[1] != ")":
                self.fail("expected ')'")
            self.take()
            return inner
        if kind == "end":
            self.fail("unexpected end of input", tok)
        self.fail(f"unexpected {text!r}", tok)


def parse_poly(
    text: str,
    field: Domain,
    vars: Sequence[str],
    generator: Optional[str] = GENERATOR_NAME,
) -> MultiPoly:
    return _Parser(text, field, vars, generator).parse()


def parse_element(text: str, field: FieldDescriptor) -> FieldElement:
    """A field element written as an integer or a polynomial in the generator."""
    poly = parse_poly(text, field, ())
    return FieldElement(field, poly.constant_term())


def parse_point(texts: Sequence[str], field: FieldDescriptor) -> List[FieldElement]:
    return [parse_element(t, field) for t in texts]
