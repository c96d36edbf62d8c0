"""The anchor Υ: K^n_{(t,s)} -> K^{P(n)} and its inverse on regular labels.

Row index of the anchor matrix is the cube basis E_B, column index the
algebra basis e_A: Υ_{(B,A)} = t_{A∩B} s_{A∩B^c}. The inverse matrix is
indexed the other way round (rows e_A, columns E_B).
"""
import logging
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, NotRegular, PayloadError
from .hypercube import SubsetIdx, TimeLabel, product_table, sign
from .hyperlin import CubeMatrix, TwoByTwo, kron_n
from .ring import RATIONAL, Ring
from .talg import TangentElement

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class CubeElement:
    """A function P(n) -> K (or -> K^d), i.e. an element of the cube algebra."""

    dim: int
    values: np.ndarray
    ring: Ring = RATIONAL

    def __post_init__(self):
        if self.values.ndim not in (1, 2) or self.values.shape[0] != 1 << self.dim:
            raise DimensionMismatch(f"expected {1 << self.dim} values, got shape {self.values.shape}")

    @classmethod
    def constant(cls, dim: int, c, ring: Ring = RATIONAL) -> "CubeElement":
        values = np.empty(1 << dim, dtype=object)
        values.fill(ring.coerce(c))
        return cls(dim, values, ring)

    @classmethod
    def from_values(cls, values, ring: Ring = RATIONAL) -> "CubeElement":
        size = len(values)
        dim = size.bit_length() - 1
        if size != 1 << dim:
            raise DimensionMismatch(f"{size} values is not a power of two")
        if isinstance(values[0], (list, tuple, np.ndarray)):
            arr = np.array([[ring.coerce(x) for x in row] for row in values], dtype=object)
        else:
            arr = np.empty(size, dtype=object)
            arr[:] = [ring.coerce(x) for x in values]
        return cls(dim, arr, ring)

    def value(self, a: SubsetIdx):
        v = self.values[a.bits]
        return tuple(v) if isinstance(v, np.ndarray) else v

    def __mul__(self, other: "CubeElement") -> "CubeElement":
        if other.dim != self.dim:
            raise DimensionMismatch("cube elements of different dimension")
        if self.values.ndim == 2 or other.values.ndim == 2:
            raise PayloadError("pointwise product needs scalar-valued cube elements")
        return CubeElement(self.dim, self.values * other.values, self.ring)

    def __add__(self, other: "CubeElement") -> "CubeElement":
        if other.dim != self.dim:
            raise DimensionMismatch("cube elements of different dimension")
        return CubeElement(self.dim, self.values + other.values, self.ring)

    def __eq__(self, other):
        if not isinstance(other, CubeElement):
            return NotImplemented
        if self.dim != other.dim or self.values.shape != other.values.shape:
            return False
        return all(self.ring.equal(x, y) for x, y in zip(self.values.flat, other.values.flat))

    __hash__ = None

    def exchange(self) -> "CubeElement":
        """E_A -> E_{A^c}: the cube image of the inversion kappa."""
        full = (1 << self.dim) - 1
        return CubeElement(self.dim, self.values[[full ^ b for b in range(1 << self.dim)]], self.ring)


def first_order_anchors(label: TimeLabel) -> list[TwoByTwo]:
    ring = label.ring
    return [TwoByTwo(ring.one(), s, ring.one(), t) for t, s in zip(label.t, label.s)]


def anchor_matrix(label: TimeLabel) -> CubeMatrix:
    ring = label.ring
    n = label.n
    t_tab, s_tab = product_table(label.t, ring), product_table(label.s, ring)
    entries = np.empty((1 << n, 1 << n), dtype=object)
    for b in range(1 << n):
        for a in range(1 << n):
            entries[b, a] = ring.mul(t_tab[a & b], s_tab[a & ~b])
    return CubeMatrix(n, entries, ring)


def anchor_matrix_kron(label: TimeLabel) -> CubeMatrix:
    """The same matrix built as the tensor product of first-order anchors ((1, s), (1, t))."""
    if label.n == 0:
        return CubeMatrix.identity(0, label.ring)
    return kron_n(first_order_anchors(label), label.ring)


def _anchor_row(b: int, n: int, t_tab, s_tab, ring: Ring) -> np.ndarray:
    row = np.empty(1 << n, dtype=object)
    for a in range(1 << n):
        row[a] = ring.mul(t_tab[a & b], s_tab[a & ~b])
    return row


def anchor_apply(x: TangentElement) -> CubeElement:
    """Evaluate x at the 2^n hypercube points, one matrix row at a time."""
    ring, n = x.ring, x.n
    t_tab, s_tab = product_table(x.label.t, ring), product_table(x.label.s, ring)
    values = np.stack([_anchor_row(b, n, t_tab, s_tab, ring) @ x.coeffs for b in range(1 << n)])
    return CubeElement(n, values, ring)


def anchor_apply_dense(x: TangentElement) -> CubeElement:
    return CubeElement(x.n, anchor_matrix(x.label) @ x.coeffs, x.ring)


def evaluation_points(x: TangentElement) -> list:
    """Υ_A(x) for every A, in ascending index order."""
    y = anchor_apply(x)
    return [y.value(a) for a in (SubsetIdx(bits, x.n) for bits in range(1 << x.n))]


def _inverse_prefactor(label: TimeLabel):
    bad = label.singular_factors()
    if bad:
        logger.debug(f"anchor inverse requested for non-regular label, singular factors {bad}")
        raise NotRegular(label, bad)
    ring = label.ring
    prefactor = ring.one()
    for d in label.t_minus_s():
        prefactor = ring.mul(prefactor, ring.try_invert(d))
    return prefactor


def _inverse_row(a: int, n: int, t_tab, s_tab, prefactor, ring: Ring) -> np.ndarray:
    full = (1 << n) - 1
    out = full & ~a
    row = np.empty(1 << n, dtype=object)
    for b in range(1 << n):
        value = ring.mul(ring.mul(s_tab[out & b], t_tab[out & ~b & full]), prefactor)
        row[b] = value if sign(a ^ b) > 0 else ring.neg(value)
    return row


def anchor_inverse_matrix(label: TimeLabel) -> CubeMatrix:
    """(1/(t-s)_n) (-1)^|AΔB| s_{A^c∩B} t_{A^c∩B^c}, rows A (algebra), columns B (cube)."""
    prefactor = _inverse_prefactor(label)
    ring, n = label.ring, label.n
    t_tab, s_tab = product_table(label.t, ring), product_table(label.s, ring)
    entries = np.stack([_inverse_row(a, n, t_tab, s_tab, prefactor, ring) for a in range(1 << n)])
    return CubeMatrix(n, entries.reshape(1 << n, 1 << n), ring)


def anchor_inverse_apply(y: CubeElement, label: TimeLabel) -> TangentElement:
    if y.dim != label.n:
        raise DimensionMismatch(f"cube of dimension {y.dim} for a label of order {label.n}")
    prefactor = _inverse_prefactor(label)
    ring, n = label.ring, label.n
    t_tab, s_tab = product_table(label.t, ring), product_table(label.s, ring)
    coeffs = np.stack([_inverse_row(a, n, t_tab, s_tab, prefactor, ring) @ y.values for a in range(1 << n)])
    return TangentElement(label, coeffs)


@dataclass(frozen=True)
class Character:
    """Υ_A = E_A^* ∘ Υ, an algebra morphism K^n_{(t,s)} -> K."""

    label: TimeLabel
    subset: SubsetIdx

    def __call__(self, x: TangentElement):
        if x.label != self.label:
            raise DimensionMismatch("character applied to an element over another label")
        ring, n = x.ring, x.n
        t_tab, s_tab = product_table(self.label.t, ring), product_table(self.label.s, ring)
        value = _anchor_row(self.subset.bits, n, t_tab, s_tab, ring) @ x.coeffs
        return tuple(value) if isinstance(value, np.ndarray) else value


def character(label: TimeLabel, a: SubsetIdx) -> Character:
    if a.dim != label.n:
        raise DimensionMismatch(f"subset of P({a.dim}) for a label of order {label.n}")
    return Character(label, a)
