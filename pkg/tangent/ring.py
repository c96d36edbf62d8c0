import logging
import re
from abc import ABC, abstractmethod
from fractions import Fraction
from typing import Any

from .errors import NotInvertible

logger = logging.getLogger(__name__)

Scalar = Any  # Fraction for the rational ring, float for the float ring

_RATIONAL_LITERAL = re.compile(r"^\s*[+-]?\d+(\s*/\s*\d+)?\s*$")

DEFAULT_FLOAT_EPSILON = 1e-12
DEFAULT_FLOAT_TOLERANCE = 1e-9


class Ring(ABC):
    """A commutative ring with unit.

    Everything downstream (hypercube products, tangent algebras, anchors,
    expression evaluation) only talks to scalars through an instance of this
    class, so the same code runs over exact rationals, floats, or a tangent
    algebra itself.
    """

    name: str = "ring"

    @abstractmethod
    def zero(self) -> Scalar: ...

    @abstractmethod
    def one(self) -> Scalar: ...

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    @abstractmethod
    def try_invert(self, a) -> Scalar:
        """Return the inverse of `a`, or raise NotInvertible."""

    def is_unit(self, a) -> bool:
        try:
            self.try_invert(a)
        except NotInvertible:
            return False
        return True

    @abstractmethod
    def coerce(self, value) -> Scalar:
        """Bring an int, Fraction or native scalar into this ring."""

    def parse(self, text: str) -> Scalar:
        return self.coerce(text)

    def equal(self, a, b) -> bool:
        return a == b

    def is_zero(self, a) -> bool:
        return self.equal(a, self.zero())

    def to_json(self, a):
        return a

    def __repr__(self):
        return f"<{type(self).__name__} {self.name}>"


class RationalRing(Ring):
    """Exact arithmetic over the rationals (fractions.Fraction)."""

    name = "rational"

    def zero(self) -> Fraction:
        return Fraction(0)

    def one(self) -> Fraction:
        return Fraction(1)

    def try_invert(self, a) -> Fraction:
        a = self.coerce(a)
        if a.numerator == 0:
            raise NotInvertible("0 is not invertible")
        return 1 / a

    def coerce(self, value) -> Fraction:
        if isinstance(value, Fraction):
            return value
        if isinstance(value, bool):
            raise TypeError("booleans are not ring elements")
        if isinstance(value, int):
            return Fraction(value)
        if isinstance(value, str):
            if not _RATIONAL_LITERAL.match(value):
                raise ValueError(f"'{value}' is not a rational literal (expected p or p/q)")
            return Fraction(value.replace(" ", ""))
        if isinstance(value, float):
            raise TypeError("floats are not accepted by the rational ring")
        raise TypeError(f"cannot coerce {type(value).__name__} into the rational ring")

    def to_json(self, a) -> str:
        a = self.coerce(a)
        if a.denominator == 1:
            return str(a.numerator)
        return f"{a.numerator}/{a.denominator}"


class FloatRing(Ring):
    """Double precision arithmetic with a configurable invertibility threshold."""

    name = "float"

    def __init__(self, epsilon: float = DEFAULT_FLOAT_EPSILON, tolerance: float = DEFAULT_FLOAT_TOLERANCE):
        if epsilon < 0 or tolerance < 0:
            raise ValueError("epsilon and tolerance must be non-negative")
        self.epsilon = epsilon
        self.tolerance = tolerance

    def zero(self) -> float:
        return 0.0

    def one(self) -> float:
        return 1.0

    def try_invert(self, a) -> float:
        a = self.coerce(a)
        if abs(a) <= self.epsilon:
            logger.debug(f"{a!r} treated as non-invertible (epsilon={self.epsilon})")
            raise NotInvertible(f"{a!r} is within {self.epsilon} of zero")
        return 1.0 / a

    def coerce(self, value) -> float:
        if isinstance(value, bool):
            raise TypeError("booleans are not ring elements")
        if isinstance(value, str):
            text = value.replace(" ", "")
            if "/" in text:
                return float(Fraction(text))
            return float(text)
        return float(value)

    def equal(self, a, b) -> bool:
        a, b = float(a), float(b)
        return abs(a - b) <= max(self.tolerance, self.tolerance * max(abs(a), abs(b)))

    def to_json(self, a) -> float:
        return float(a)

    def __eq__(self, other):
        return isinstance(other, FloatRing) and (self.epsilon, self.tolerance) == (other.epsilon, other.tolerance)

    def __hash__(self):
        return hash((FloatRing, self.epsilon, self.tolerance))


RATIONAL = RationalRing()


def ring_from_name(name: str, epsilon: float = DEFAULT_FLOAT_EPSILON, tolerance: float = DEFAULT_FLOAT_TOLERANCE) -> Ring:
    """Build the ring instance named on the command line or in the config."""
    if name == "rational":
        return RATIONAL
    if name == "float":
        return FloatRing(epsilon, tolerance)
    raise ValueError(f"unknown ring '{name}' (expected 'rational' or 'float')")


# Module-level aliases for the ring operations, dispatched through a ring instance.

def add(a, b, ring: Ring = RATIONAL):
    return ring.add(a, b)


def sub(a, b, ring: Ring = RATIONAL):
    return ring.sub(a, b)


def mul(a, b, ring: Ring = RATIONAL):
    return ring.mul(a, b)


def neg(a, ring: Ring = RATIONAL):
    return ring.neg(a)


def try_invert(a, ring: Ring = RATIONAL):
    return ring.try_invert(a)


def prod(values, ring: Ring = RATIONAL):
    result = ring.one()
    for v in values:
        result = ring.mul(result, v)
    return result


__all__ = [
    "Ring", "RationalRing", "FloatRing", "RATIONAL", "Scalar", "ring_from_name",
    "add", "sub", "mul", "neg", "try_invert", "prod",
]
