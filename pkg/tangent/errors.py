"""Exception hierarchy shared by the library and the command line."""


class TangentError(Exception):
    """Base class for every error raised by the tangent package."""


class NotInvertible(TangentError, ArithmeticError):
    """Raised when an element has no multiplicative inverse."""


class NotRegular(NotInvertible):
    """Raised when a time label has a factor with non-invertible t_i - s_i."""

    def __init__(self, label, factors=()):
        self.label = label
        self.factors = tuple(factors)
        where = f" (factors {', '.join(str(i) for i in self.factors)})" if self.factors else ""
        super().__init__(f"label not regular{where}")


class DomainError(TangentError, ValueError):
    """Raised when an evaluation point lies outside the declared domain."""

    def __init__(self, point, reason: str = "outside domain"):
        self.point = tuple(point)
        super().__init__(f"evaluation point {self.point} {reason}")


class LabelMismatch(TangentError, ValueError):
    """Raised when two tangent elements live over different time labels."""


class DimensionMismatch(TangentError, ValueError):
    """Raised when hypercube or payload dimensions disagree."""


class PayloadError(TangentError, ValueError):
    """Raised when an operation needs scalar payloads but got vectors (or vice versa)."""


class NotComposable(TangentError, ValueError):
    """Raised when groupoid composition is asked for a pair with alpha(u) != beta(w)."""


class ExprSyntaxError(TangentError, ValueError):
    def __init__(self, message: str, column: int):
        self.column = column
        super().__init__(f"{message} at column {column}")


class UnboundVariable(TangentError, KeyError):
    def __init__(self, name: str):
        self.name = name
        super().__init__(name)

    def __str__(self):
        return f"unbound variable '{self.name}'"


class ConfigError(TangentError):
    """Raised for configuration values that cannot be repaired by falling back to defaults."""
