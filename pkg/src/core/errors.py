# Error hierarchy shared by every module; the CLI maps these onto exit codes

from typing import Optional


class FuzzyDSError(Exception):
    """Base class for all toolkit errors"""


class InvalidIntervalError(FuzzyDSError, ValueError):
    pass


class InvalidCountError(FuzzyDSError, ValueError):
    pass


class DimensionMismatchError(FuzzyDSError, ValueError):
    pass


class MarginTooLargeError(FuzzyDSError, ValueError):
    pass


class DegenerateBasisError(FuzzyDSError, ValueError):
    """N(x) underflowed to zero: the truncation is too aggressive at this point"""


class NonFiniteObservableError(FuzzyDSError, ValueError):
    pass


class TruncationTooSmallError(FuzzyDSError, ValueError):
    pass


class ConfigError(FuzzyDSError, ValueError):
    pass


class MatrixFileError(FuzzyDSError):
    pass


class ExprError(FuzzyDSError):
    """Base class for expression parse and evaluation errors"""


class ExprSyntaxError(ExprError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class UnboundIdentifierError(ExprError):
    def __init__(self, name: str):
        super().__init__(f"unbound identifier '{name}'")
        self.name = name


class ExprDomainError(ExprError):
    def __init__(self, message: str, node: Optional[object] = None):
        detail = f" in '{node}'" if node is not None else ""
        super().__init__(f"{message}{detail}")
        self.node = node
