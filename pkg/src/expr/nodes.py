"""Syntax tree of classical-observable expressions"""

from dataclasses import dataclass
from typing import Union

FUNCTIONS = ("sin", "cos", "exp", "sqrt", "abs")
BINARY_OPERATORS = ("+", "-", "*", "/")


@dataclass(frozen=True)
class Num:
    value: float

    def __str__(self):
        return to_source(self)


@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Neg:
    operand: "Expr"

    def __str__(self):
        return to_source(self)


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Expr"
    right: "Expr"

    def __str__(self):
        return to_source(self)


@dataclass(frozen=True)
class Pow:
    base: "Expr"
    exponent: float     # numeric literal only

    def __str__(self):
        return to_source(self)


@dataclass(frozen=True)
class Call:
    func: str
    arg: "Expr"

    def __str__(self):
        return to_source(self)


Expr = Union[Num, Var, Neg, BinOp, Pow, Call]


def to_source(e: Expr) -> str:
    """Canonical, fully parenthesized form; parses back to the same tree"""
    if isinstance(e, Num):
        return repr(float(e.value)) if e.value >= 0 else f"(-{float(-e.value)!r})"
    if isinstance(e, Var):
        return e.name
    if isinstance(e, Neg):
        return f"(-{to_source(e.operand)})"
    if isinstance(e, BinOp):
        return f"({to_source(e.left)} {e.op} {to_source(e.right)})"
    if isinstance(e, Pow):
        return f"({to_source(e.base)} ^ {float(e.exponent)!r})"
    if isinstance(e, Call):
        return f"{e.func}({to_source(e.arg)})"
    raise TypeError(f"not an expression node: {e!r}")
