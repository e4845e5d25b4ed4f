"""Vectorized evaluation of observable expressions over binding tables"""

import math
from typing import Mapping, Union

import numpy as np

from src.core.errors import ExprDomainError, UnboundIdentifierError
from src.expr.nodes import BinOp, Call, Expr, Neg, Num, Pow, Var

Value = Union[float, np.ndarray]

builtin_constants = {"pi": math.pi}

_functions = {
    "sin": np.sin,
    "cos": np.cos,
    "exp": np.exp,
    "abs": np.abs,
}


def evaluate(e: Expr, bindings: Mapping[str, Value]) -> Value:
    """
    IEEE double evaluation; arrays in the bindings broadcast together.
    Finite-checks of the result are left to the caller.
    """
    with np.errstate(over="ignore", invalid="ignore"):
        return _eval(e, bindings)


def _eval(e: Expr, bindings: Mapping[str, Value]) -> Value:
    if isinstance(e, Num):
        return np.float64(e.value)
    if isinstance(e, Var):
        if e.name in bindings:
            value = bindings[e.name]
            # numpy scalars so that overflow gives inf
            return np.float64(value) if isinstance(value, (int, float)) else value
        if e.name in builtin_constants:
            return np.float64(builtin_constants[e.name])
        raise UnboundIdentifierError(e.name)
    if isinstance(e, Neg):
        return -_eval(e.operand, bindings)
    if isinstance(e, BinOp):
        left = _eval(e.left, bindings)
        right = _eval(e.right, bindings)
        if e.op == "+":
            return left + right
        if e.op == "-":
            return left - right
        if e.op == "*":
            return left * right
        if np.any(np.asarray(right) == 0):
            raise ExprDomainError("division by zero", e)
        return left / right
    if isinstance(e, Pow):
        base = _eval(e.base, bindings)
        exponent = e.exponent
        if not float(exponent).is_integer() and np.any(np.asarray(base) < 0):
            raise ExprDomainError("fractional power of a negative number", e)
        if exponent < 0 and np.any(np.asarray(base) == 0):
            raise ExprDomainError("negative power of zero", e)
        return np.power(base, exponent)
    if isinstance(e, Call):
        arg = _eval(e.arg, bindings)
        if e.func == "sqrt":
            if np.any(np.asarray(arg) < 0):
                raise ExprDomainError("square root of a negative number", e)
            return np.sqrt(arg)
        return _functions[e.func](arg)
    raise TypeError(f"not an expression node: {e!r}")
