"""Static properties of expressions: free identifiers and trigonometric degree"""

from typing import Mapping, Optional, Set

from constants import constant_identifiers
from src.expr.nodes import BinOp, Call, Expr, Neg, Num, Pow, Var

PERIODIC_IDENTIFIERS = ("theta", "phi", "chi")
POLYNOMIAL_IDENTIFIERS = ("tau",)


def free_identifiers(e: Expr) -> Set[str]:
    if isinstance(e, Num):
        return set()
    if isinstance(e, Var):
        return {e.name}
    if isinstance(e, (Neg,)):
        return free_identifiers(e.operand)
    if isinstance(e, BinOp):
        return free_identifiers(e.left) | free_identifiers(e.right)
    if isinstance(e, Pow):
        return free_identifiers(e.base)
    if isinstance(e, Call):
        return free_identifiers(e.arg)
    raise TypeError(f"not an expression node: {e!r}")


def _angle_multiple(arg: Expr) -> Optional[int]:
    """k when arg is k*angle for an integer literal k, else None"""
    if isinstance(arg, Var) and arg.name in PERIODIC_IDENTIFIERS:
        return 1
    if isinstance(arg, Neg):
        return _angle_multiple(arg.operand)
    if isinstance(arg, BinOp) and arg.op == "*":
        for factor, other in ((arg.left, arg.right), (arg.right, arg.left)):
            if isinstance(factor, Num) and float(factor.value).is_integer():
                inner = _angle_multiple(other)
                if inner is not None:
                    return abs(int(factor.value)) * inner
    return None


def trig_degree(e: Expr, degrees: Optional[Mapping[str, int]] = None) -> Optional[int]:
    """
    Total degree of e as a trigonometric polynomial in the periodic chart
    variables, when e is a polynomial in tau and sin/cos of integer multiples
    of those variables; None (unknown) otherwise.

    `degrees` assigns degrees to extra chart-dependent identifiers, e.g. the
    ambient coordinates x1, x2 (degree 1) of the 2d chart.
    """
    degrees = dict(degrees or {})
    constants = set(constant_identifiers) - set(degrees)
    return _degree(e, degrees, constants)


def _degree(e: Expr, degrees: Mapping[str, int], constants: Set[str]) -> Optional[int]:
    if free_identifiers(e) <= constants:
        return 0
    if isinstance(e, Var):
        if e.name in POLYNOMIAL_IDENTIFIERS:
            return 0
        return degrees.get(e.name)
    if isinstance(e, Neg):
        return _degree(e.operand, degrees, constants)
    if isinstance(e, BinOp):
        left = _degree(e.left, degrees, constants)
        if e.op == "/":
            if left is not None and free_identifiers(e.right) <= constants:
                return left
            return None
        right = _degree(e.right, degrees, constants)
        if left is None or right is None:
            return None
        return max(left, right) if e.op in "+-" else left + right
    if isinstance(e, Pow):
        base = _degree(e.base, degrees, constants)
        if base is None or e.exponent < 0 or not float(e.exponent).is_integer():
            return None
        return base * int(e.exponent)
    if isinstance(e, Call) and e.func in ("sin", "cos"):
        return _angle_multiple(e.arg)
    return None
