"""
Recursive-descent parser for observable expressions.

Grammar (precedence ^ > unary minus > * / > + -, binary operators left
associative except ^, which is right associative; exponents are restricted
to optionally signed numeric literals and a chain of them is folded into a
single number):

    expression := term (('+' | '-') term)*
    term       := unary (('*' | '/') unary)*
    unary      := '-' unary | power
    power      := primary ['^' exponent]
    exponent   := ['-'] NUMBER ['^' exponent]
    primary    := NUMBER | FUNC '(' expression ')' | IDENT | '(' expression ')'
"""

import math
import re
from dataclasses import dataclass
from typing import List

from src.core.errors import ExprSyntaxError
from src.expr.nodes import FUNCTIONS, BinOp, Call, Expr, Neg, Num, Pow, Var

TOKEN_PATTERN = re.compile(
    r"\s*(?:"
    r"(?P<number>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)"
    r"|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<op>[-+*/^()])"
    r")"
)


@dataclass(frozen=True)
class Token:
    kind: str       # number | ident | op | end
    text: str
    position: int


def tokenize(source: str) -> List[Token]:
    tokens = []
    position = 0
    while position < len(source):
        if source[position:].isspace():
            break
        match = TOKEN_PATTERN.match(source, position)
        if match is None or match.end() == position:
            start = position + len(source[position:]) - len(source[position:].lstrip())
            raise ExprSyntaxError(f"unexpected character {source[start]!r}", start)
        kind = match.lastgroup
        tokens.append(Token(kind, match.group(kind), match.start(kind)))
        position = match.end()
    tokens.append(Token("end", "", len(source)))
    return tokens


class Parser:
    def __init__(self, source: str):
        self.source = source
        self.tokens = tokenize(source)
        self.index = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.index]

    def advance(self) -> Token:
        token = self.current
        self.index += 1
        return token

    def accept(self, text: str) -> bool:
        if self.current.kind == "op" and self.current.text == text:
            self.index += 1
            return True
        return False

    def expect(self, text: str) -> None:
        if not self.accept(text):
            found = self.current.text or "end of input"
            raise ExprSyntaxError(f"expected '{text}', found '{found}'", self.current.position)

    def parse(self) -> Expr:
        tree = self.expression()
        if self.current.kind != "end":
            raise ExprSyntaxError(f"unexpected '{self.current.text}'", self.current.position)
        return tree

    def expression(self) -> Expr:
        node = self.term()
        while self.current.kind == "op" and self.current.text in "+-":
            op = self.advance().text
            node = BinOp(op, node, self.term())
        return node

    def term(self) -> Expr:
        node = self.unary()
        while self.current.kind == "op" and self.current.text in "*/":
            op = self.advance().text
            node = BinOp(op, node, self.unary())
        return node

    def unary(self) -> Expr:
        if self.accept("-"):
            return Neg(self.unary())
        return self.power()

    def power(self) -> Expr:
        node = self.primary()
        if self.accept("^"):
            node = Pow(node, self.exponent())
        return node

    def exponent(self) -> float:
        """Signed literal chain folded from the right: 2^3^2 = 2^9, 2^-1^2 = 2^-1"""
        start = self.current.position
        sign = -1.0 if self.accept("-") else 1.0
        token = self.current
        if token.kind != "number":
            raise ExprSyntaxError("exponent must be a numeric literal", token.position)
        self.advance()
        value = self.literal(token)
        if self.accept("^"):
            try:
                value = value ** self.exponent()
            except (OverflowError, ZeroDivisionError):
                raise ExprSyntaxError("exponent out of range", start)
            if not math.isfinite(value):
                raise ExprSyntaxError("exponent out of range", start)
        return sign * value

    @staticmethod
    def literal(token: Token) -> float:
        value = float(token.text)
        if not math.isfinite(value):
            raise ExprSyntaxError("numeric literal out of range", token.position)
        return value

    def primary(self) -> Expr:
        token = self.current
        if token.kind == "number":
            self.advance()
            return Num(self.literal(token))
        if token.kind == "ident":
            self.advance()
            if token.text in FUNCTIONS:
                self.expect("(")
                arg = self.expression()
                self.expect(")")
                return Call(token.text, arg)
            return Var(token.text)
        if self.accept("("):
            node = self.expression()
            self.expect(")")
            return node
        found = token.text or "end of input"
        raise ExprSyntaxError(f"unexpected '{found}'", token.position)


def parse(source: str) -> Expr:
    return Parser(source).parse()
