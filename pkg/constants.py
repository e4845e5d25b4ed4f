from enum import Enum
import math


class Model(Enum):
    DS2 = "ds2"
    DS4 = "ds4"

    def __str__(self):
        return self.value


class X0Convention(Enum):
    CS = "cs"                   # x0 = r*diag(m), the direct quantization of x0 = r*tau
    GENERATOR = "generator"     # x0 = -r*M12, opposite sign

    @property
    def sign(self) -> int:
        return 1 if self is X0Convention.CS else -1


class Verdict(Enum):
    PASS = "pass"
    FAIL = "fail"

    def __str__(self):
        return self.value


class DomainTag(Enum):
    INTERVAL = "interval"
    PERIODIC = "periodic"


class ExitCode(Enum):
    OK = 0
    CONFIG = 2
    IO = 3
    VERIFY_FAILED = 4
    EXPRESSION = 5


# Verification thresholds
ALGEBRAIC_TOLERANCE = 1e-12
QUADRATURE_TOLERANCE = 1e-8
ORTHONORMALITY_WARNING = 1e-6

# Truncation-edge control
DEFAULT_INTERIOR_MARGIN = 2
MIN_VERIFY_TRUNCATION = 3

# Quadrature defaults
DEFAULT_NODES_PER_UNIT = 20
TAU_TAIL_WIDTH = 10.0           # window half-width beyond the labels, in units of 1/sqrt(epsilon)
DEFAULT_S3_NODES = 32
FLOAT_BUDGET = 4_000_000        # max doubles in one quadrature chunk


def default_theta_count(M: int) -> int:
    """Periodic node count exact for the trigonometric products of the 2d basis"""
    return 4 * M + 5


# Parameter defaults
ds2_defaults = {
    "r": 0.5,
    "rho": 2.0,
    "epsilon": 0.1,
    "M": 20,
}

ds4_defaults = {
    "epsilon": 1.0,
    "L_max": 2,
    "s": 0.5,
}

DEFAULT_HINV = 1.0

S3_VOLUME = 2.0 * math.pi ** 2

# Names bound in every expression table
constant_identifiers = ("r", "Hinv", "rho", "nu", "s", "epsilon", "pi")
chart_identifiers = ("tau", "theta", "chi", "phi")
