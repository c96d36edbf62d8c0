"""The tangent algebras K^n_{(t,s)} = K[X_1..X_n] / ((X_i - t_i)(X_i - s_i)).

An element is stored by its 2^n coordinates in the basis e_A = [X^A],
indexed by bit mask. Coordinates are scalars (shape (2^n,)) or, for the
scalar extension V ⊗ K^n_{(t,s)} used by the slope engine, vectors of a
fixed length d (shape (2^n, d)).
"""
import logging
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, LabelMismatch, NotComposable, NotInvertible, PayloadError
from .hypercube import SubsetIdx, TimeLabel, check_permutation, oplus
from .ring import Ring, Scalar

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class TangentElement:
    label: TimeLabel
    coeffs: np.ndarray

    def __post_init__(self):
        size = 1 << self.label.n
        if self.coeffs.ndim not in (1, 2) or self.coeffs.shape[0] != size:
            raise DimensionMismatch(f"expected {size} coefficients, got shape {self.coeffs.shape}")

    @classmethod
    def from_coefficients(cls, label: TimeLabel, values: Sequence) -> "TangentElement":
        """Build an element from 2^n coefficients (scalars or equal-length vectors)."""
        ring = label.ring
        if len(values) and isinstance(values[0], (list, tuple, np.ndarray)):
            width = len(values[0])
            if any(len(v) != width for v in values):
                raise DimensionMismatch("vector payloads must all have the same length")
            coeffs = np.empty((len(values), width), dtype=object)
            for i, v in enumerate(values):
                for j, x in enumerate(v):
                    coeffs[i, j] = ring.coerce(x)
        else:
            coeffs = np.empty(len(values), dtype=object)
            for i, x in enumerate(values):
                coeffs[i] = ring.coerce(x)
        return cls(label, coeffs)

    @property
    def n(self) -> int:
        return self.label.n

    @property
    def ring(self) -> Ring:
        return self.label.ring

    @property
    def is_vector(self) -> bool:
        return self.coeffs.ndim == 2

    @property
    def payload_dim(self) -> int | None:
        return self.coeffs.shape[1] if self.is_vector else None

    def coefficient(self, a: SubsetIdx):
        if a.dim != self.n:
            raise DimensionMismatch(f"subset of P({a.dim}) for an element of order {self.n}")
        return _payload_out(self.coeffs[a.bits])

    def items(self):
        """(SubsetIdx, payload) pairs in ascending index order."""
        return [(SubsetIdx(bits, self.n), _payload_out(v)) for bits, v in enumerate(self.coeffs)]

    def is_zero(self) -> bool:
        return all(self.ring.is_zero(x) for x in self.coeffs.flat)

    def __eq__(self, other):
        if not isinstance(other, TangentElement):
            return NotImplemented
        if other.label != self.label or other.coeffs.shape != self.coeffs.shape:
            return False
        return all(self.ring.equal(x, y) for x, y in zip(self.coeffs.flat, other.coeffs.flat))

    __hash__ = None

    def __add__(self, other):
        return add(self, _lift(self, other))

    __radd__ = __add__

    def __sub__(self, other):
        return sub(self, _lift(self, other))

    def __rsub__(self, other):
        return sub(_lift(self, other), self)

    def __neg__(self):
        return neg(self)

    def __mul__(self, other):
        if isinstance(other, TangentElement):
            return mul(self, other)
        return scale(self, other)

    def __rmul__(self, other):
        return scale(self, other)

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("only non-negative integer powers are defined")
        result, base = from_base(self.label, self.ring.one()), self
        while exponent:
            if exponent & 1:
                result = mul(result, base)
            base = mul(base, base)
            exponent >>= 1
        return result

    def __repr__(self):
        terms = ", ".join(f"{a}: {v}" for a, v in self.items())
        return f"TangentElement(t={self.label.t}, s={self.label.s}, {{{terms}}})"


def _payload_out(value):
    if isinstance(value, np.ndarray):
        return tuple(value)
    return value


def _lift(x: TangentElement, other) -> TangentElement:
    if isinstance(other, TangentElement):
        return other
    return from_base(x.label, other)


def _same_label(x: TangentElement, y: TangentElement) -> None:
    if x.label != y.label:
        raise LabelMismatch(f"labels differ: {x.label} vs {y.label}")
    if x.coeffs.shape != y.coeffs.shape:
        raise PayloadError(f"payload shapes differ: {x.coeffs.shape} vs {y.coeffs.shape}")


def _require_scalar(*elements: TangentElement) -> None:
    if any(e.is_vector for e in elements):
        raise PayloadError("operation needs scalar payloads; vector payloads only form a module")


def _require_first_order(x: TangentElement) -> None:
    if x.n != 1:
        raise DimensionMismatch(f"defined for first-order algebras only, got n={x.n}")


# --- Module structure ---

def from_base(label: TimeLabel, x) -> TangentElement:
    """The imbedding x -> x e_∅ (a vector x gives a vector payload)."""
    ring = label.ring
    size = 1 << label.n
    if isinstance(x, (list, tuple, np.ndarray)):
        coeffs = np.empty((size, len(x)), dtype=object)
        coeffs.fill(ring.zero())
        for j, v in enumerate(x):
            coeffs[0, j] = ring.coerce(v)
    else:
        coeffs = np.empty(size, dtype=object)
        coeffs.fill(ring.zero())
        coeffs[0] = ring.coerce(x)
    return TangentElement(label, coeffs)


def zero(label: TimeLabel) -> TangentElement:
    return from_base(label, label.ring.zero())


def one(label: TimeLabel) -> TangentElement:
    return from_base(label, label.ring.one())


def basis(label: TimeLabel, a: SubsetIdx) -> TangentElement:
    """The basis element e_A = [X^A]."""
    if a.dim != label.n:
        raise DimensionMismatch(f"subset of P({a.dim}) for a label of order {label.n}")
    x = zero(label)
    x.coeffs[a.bits] = label.ring.one()
    return x


def add(x: TangentElement, y: TangentElement) -> TangentElement:
    _same_label(x, y)
    return TangentElement(x.label, x.coeffs + y.coeffs)


def sub(x: TangentElement, y: TangentElement) -> TangentElement:
    _same_label(x, y)
    return TangentElement(x.label, x.coeffs - y.coeffs)


def neg(x: TangentElement) -> TangentElement:
    return TangentElement(x.label, -x.coeffs)


def scale(x: TangentElement, k: Scalar) -> TangentElement:
    return TangentElement(x.label, x.coeffs * x.ring.coerce(k))


# --- Ring structure ---

def _mul_rec(x: np.ndarray, y: np.ndarray, t: tuple, s: tuple, m: int) -> np.ndarray:
    # Split off factor m: (v0, v1)(w0, w1) = (v0 w0 - st v1 w1, v0 w1 + v1 w0 + (s+t) v1 w1)
    if m == 0:
        return x * y
    h = 1 << (m - 1)
    x0, x1, y0, y1 = x[:h], x[h:], y[:h], y[h:]
    p00 = _mul_rec(x0, y0, t, s, m - 1)
    p11 = _mul_rec(x1, y1, t, s, m - 1)
    p01 = _mul_rec(x0, y1, t, s, m - 1)
    p10 = _mul_rec(x1, y0, t, s, m - 1)
    tm, sm = t[m - 1], s[m - 1]
    return np.concatenate([p00 - p11 * (tm * sm), p01 + p10 + p11 * (tm + sm)])


def mul(x: TangentElement, y: TangentElement) -> TangentElement:
    _same_label(x, y)
    _require_scalar(x, y)
    return TangentElement(x.label, _mul_rec(x.coeffs, y.coeffs, x.label.t, x.label.s, x.n))


def _invert_rec(x: np.ndarray, t: tuple, s: tuple, m: int, ring: Ring) -> np.ndarray:
    # K^m is a rank-2 extension of K^{m-1}; v^-1 = kappa(v) / (alpha(v) beta(v)) over K^{m-1}.
    if m == 0:
        return np.array([ring.try_invert(x[0])], dtype=object)
    h = 1 << (m - 1)
    x0, x1 = x[:h], x[h:]
    tm, sm = t[m - 1], s[m - 1]
    ab = _mul_rec(x0 + x1 * sm, x0 + x1 * tm, t, s, m - 1)
    inv_ab = _invert_rec(ab, t, s, m - 1, ring)
    k0, k1 = x0 + x1 * (sm + tm), -x1
    return np.concatenate([_mul_rec(k0, inv_ab, t, s, m - 1), _mul_rec(k1, inv_ab, t, s, m - 1)])


def try_invert_element(x: TangentElement) -> TangentElement:
    """Inverse of x, certified by multiplying back; raises NotInvertible otherwise."""
    _require_scalar(x)
    try:
        inverse = TangentElement(x.label, _invert_rec(x.coeffs, x.label.t, x.label.s, x.n, x.ring))
    except NotInvertible:
        raise NotInvertible("element is not invertible (alpha*beta criterion failed)") from None
    if mul(x, inverse) != one(x.label):
        logger.warning("inverse candidate failed the back-multiplication check")
        raise NotInvertible("inverse candidate failed the back-multiplication check")
    logger.debug(f"inverted element of order {x.n}")
    return inverse


# --- Tensor products and braiding ---

def tensor(x: TangentElement, y: TangentElement) -> TangentElement:
    """x ⊗ y over the juxtaposed label; (x ⊗ y)_{A ∪ (B+n)} = x_A y_B."""
    _require_scalar(x, y)
    coeffs = np.multiply.outer(y.coeffs, x.coeffs).reshape(-1)
    return TangentElement(oplus(x.label, y.label), coeffs)


def flip(x: TangentElement, perm: Sequence[int]) -> TangentElement:
    """Move tensor factor i to position perm[i-1]."""
    _require_scalar(x)
    check_permutation(perm, x.n)
    coeffs = np.empty_like(x.coeffs)
    for bits in range(1 << x.n):
        coeffs[SubsetIdx(bits, x.n).permute(perm).bits] = x.coeffs[bits]
    return TangentElement(x.label.permute(perm), coeffs)


# --- Source, target, inversion ---

def alpha(x: TangentElement):
    """Source: [P] -> P(s), i.e. v0 + s v1."""
    _require_first_order(x)
    return _payload_out(x.coeffs[0] + x.coeffs[1] * x.label.s[0])


def beta(x: TangentElement):
    """Target: [P] -> P(t), i.e. v0 + t v1."""
    _require_first_order(x)
    return _payload_out(x.coeffs[0] + x.coeffs[1] * x.label.t[0])


def kappa(x: TangentElement, factor: int | None = None) -> TangentElement:
    """The inversion (alpha + beta)(v) 1 - v, applied to one factor or to all of them."""
    factors = range(1, x.n + 1) if factor is None else [factor]
    coeffs = x.coeffs
    for i in factors:
        if not 1 <= i <= x.n:
            raise DimensionMismatch(f"factor {i} not in 1..{x.n}")
        split = coeffs.reshape((1 << (x.n - i), 2, 1 << (i - 1)) + coeffs.shape[1:])
        lo, hi = split[:, 0], split[:, 1]
        shift = x.label.t[i - 1] + x.label.s[i - 1]
        coeffs = np.stack([lo + hi * shift, -hi], axis=1).reshape(coeffs.shape)
    return TangentElement(x.label, coeffs)


# --- First-order groupoid ---

def groupoid_unit(lam: Scalar, label: TimeLabel) -> TangentElement:
    if label.n != 1:
        raise DimensionMismatch(f"groupoid structure is defined for n=1, got n={label.n}")
    return from_base(label, lam)


def groupoid_compose(u: TangentElement, w: TangentElement) -> TangentElement:
    """u * w = u - alpha(u) 1 + w, defined when alpha(u) = beta(w)."""
    _require_first_order(u)
    _same_label(u, w)
    _require_scalar(u, w)
    if not u.ring.equal(alpha(u), beta(w)):
        raise NotComposable(f"alpha(u) = {alpha(u)} differs from beta(w) = {beta(w)}")
    return u - from_base(u.label, alpha(u)) + w


# --- Vector payloads ---

def split_components(v: TangentElement) -> list[TangentElement]:
    if not v.is_vector:
        return [v]
    return [TangentElement(v.label, v.coeffs[:, j].copy()) for j in range(v.payload_dim)]


def stack_components(elements: Sequence[TangentElement]) -> TangentElement:
    if not elements:
        raise PayloadError("cannot stack an empty list of elements")
    first = elements[0]
    for e in elements[1:]:
        _same_label(first, e)
    _require_scalar(*elements)
    return TangentElement(first.label, np.stack([e.coeffs for e in elements], axis=1))


class TangentAlgebra(Ring):
    """K^n_{(t,s)} seen as a ring, so generic code (expressions) can run over it."""

    def __init__(self, label: TimeLabel):
        self.label = label
        self.base = label.ring
        self.name = f"tangent[n={label.n}]"

    def zero(self) -> TangentElement:
        return zero(self.label)

    def one(self) -> TangentElement:
        return one(self.label)

    def basis(self, a: SubsetIdx) -> TangentElement:
        return basis(self.label, a)

    def mul(self, a, b):
        return mul(a, b)

    def try_invert(self, a) -> TangentElement:
        return try_invert_element(self.coerce(a))

    def coerce(self, value) -> TangentElement:
        if isinstance(value, TangentElement):
            if value.label != self.label:
                raise LabelMismatch(f"element over {value.label} used in algebra over {self.label}")
            return value
        return from_base(self.label, self.base.coerce(value))

    def equal(self, a, b) -> bool:
        return a == b
