"""Linear algebra on hypercubic spaces K^{P(n)}.

Matrices here are n-fold Kronecker products of 2x2 blocks. Factor i acts on
element i of {1..n}, i.e. on bit i-1 of the row/column masks, so in numpy
terms kron_n([f1, ..., fn]) == np.kron(fn, ..., np.kron(f2, f1)).
"""
import logging
from collections.abc import Sequence
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import DimensionMismatch, NotInvertible
from .hypercube import MAX_DIM, SubsetIdx, product_table, sign
from .ring import RATIONAL, Ring, Scalar

logger = logging.getLogger(__name__)


def object_array(shape, fill) -> np.ndarray:
    arr = np.empty(shape, dtype=object)
    arr.fill(fill)
    return arr


@dataclass(frozen=True)
class TwoByTwo:
    """The matrix ((a, b), (c, d)): E_0 -> a E_0 + c E_1, E_1 -> b E_0 + d E_1."""

    a: Scalar
    b: Scalar
    c: Scalar
    d: Scalar

    @classmethod
    def identity(cls, ring: Ring = RATIONAL) -> "TwoByTwo":
        return cls(ring.one(), ring.zero(), ring.zero(), ring.one())

    @classmethod
    def from_rows(cls, rows, ring: Ring = RATIONAL) -> "TwoByTwo":
        (a, b), (c, d) = rows
        return cls(*(ring.coerce(x) for x in (a, b, c, d)))

    def coerce(self, ring: Ring) -> "TwoByTwo":
        return TwoByTwo(*(ring.coerce(x) for x in (self.a, self.b, self.c, self.d)))

    def det(self, ring: Ring = RATIONAL) -> Scalar:
        return ring.sub(ring.mul(self.a, self.d), ring.mul(self.b, self.c))

    def adjugate(self, ring: Ring = RATIONAL) -> "TwoByTwo":
        return TwoByTwo(self.d, ring.neg(self.b), ring.neg(self.c), self.a)

    def transpose(self) -> "TwoByTwo":
        return TwoByTwo(self.a, self.c, self.b, self.d)

    def as_rows(self) -> list[list[Scalar]]:
        return [[self.a, self.b], [self.c, self.d]]


@dataclass(frozen=True, eq=False)
class CubeMatrix:
    """A dense 2^n x 2^n matrix indexed by P(n) x P(n) (rows, columns)."""

    dim: int
    entries: np.ndarray
    ring: Ring = RATIONAL

    def __post_init__(self):
        size = 1 << self.dim
        if self.entries.shape != (size, size):
            raise DimensionMismatch(f"expected a {size}x{size} matrix, got {self.entries.shape}")

    @classmethod
    def identity(cls, dim: int, ring: Ring = RATIONAL) -> "CubeMatrix":
        size = 1 << dim
        entries = object_array((size, size), ring.zero())
        for i in range(size):
            entries[i, i] = ring.one()
        return cls(dim, entries, ring)

    @classmethod
    def from_rows(cls, rows, ring: Ring = RATIONAL) -> "CubeMatrix":
        size = len(rows)
        dim = size.bit_length() - 1
        if size != 1 << dim:
            raise DimensionMismatch(f"{size} rows is not a power of two")
        entries = np.empty((size, size), dtype=object)
        for i, row in enumerate(rows):
            if len(row) != size:
                raise DimensionMismatch(f"row {i} has {len(row)} entries, expected {size}")
            for j, x in enumerate(row):
                entries[i, j] = ring.coerce(x)
        return cls(dim, entries, ring)

    @property
    def size(self) -> int:
        return 1 << self.dim

    def entry(self, row: SubsetIdx, col: SubsetIdx) -> Scalar:
        return self.entries[row.bits, col.bits]

    def __matmul__(self, other):
        if isinstance(other, CubeMatrix):
            if other.dim != self.dim:
                raise DimensionMismatch(f"cannot multiply P({self.dim}) and P({other.dim}) matrices")
            return CubeMatrix(self.dim, self.entries @ other.entries, self.ring)
        other = np.asarray(other, dtype=object)
        if other.shape[0] != self.size:
            raise DimensionMismatch(f"vector of length {other.shape[0]} for a {self.size}-dimensional cube")
        return self.entries @ other

    def transpose(self) -> "CubeMatrix":
        return CubeMatrix(self.dim, self.entries.T.copy(), self.ring)

    def scale(self, k: Scalar) -> "CubeMatrix":
        return CubeMatrix(self.dim, self.entries * k, self.ring)

    def equals(self, other: "CubeMatrix") -> bool:
        if self.dim != other.dim:
            return False
        return all(self.ring.equal(x, y) for x, y in zip(self.entries.flat, other.entries.flat))

    def __eq__(self, other):
        if not isinstance(other, CubeMatrix):
            return NotImplemented
        return self.equals(other)

    __hash__ = None

    def to_rows(self) -> list[list[Scalar]]:
        return [list(row) for row in self.entries]


def _prepare(blocks: Sequence[TwoByTwo], ring: Ring) -> list[TwoByTwo]:
    if not blocks:
        raise DimensionMismatch("at least one 2x2 block is required")
    if len(blocks) > MAX_DIM:
        raise DimensionMismatch(f"{len(blocks)} blocks exceed the dimension cap {MAX_DIM}")
    return [b.coerce(ring) for b in blocks]


def _tables(blocks: Sequence[TwoByTwo], ring: Ring):
    return tuple(product_table([getattr(b, name) for b in blocks], ring) for name in "abcd")


# --- Kronecker products ---

def kron_entry(blocks: Sequence[TwoByTwo], row: SubsetIdx, col: SubsetIdx, ring: Ring = RATIONAL) -> Scalar:
    """f_{A,B} = a_{A^c∩B^c} b_{A^c∩B} c_{A∩B^c} d_{A∩B} without building the matrix."""
    blocks = _prepare(blocks, ring)
    result = ring.one()
    for i, block in enumerate(blocks, start=1):
        in_row, in_col = i in row, i in col
        if in_row:
            result = ring.mul(result, block.d if in_col else block.c)
        else:
            result = ring.mul(result, block.b if in_col else block.a)
    return result


def kron_n(blocks: Sequence[TwoByTwo], ring: Ring = RATIONAL) -> CubeMatrix:
    blocks = _prepare(blocks, ring)
    n = len(blocks)
    full = (1 << n) - 1
    a, b, c, d = _tables(blocks, ring)
    entries = np.empty((1 << n, 1 << n), dtype=object)
    for row in range(1 << n):
        out = full & ~row
        for col in range(1 << n):
            entries[row, col] = ring.mul(
                ring.mul(a[out & ~col & full], b[out & col]),
                ring.mul(c[row & ~col], d[row & col]),
            )
    return CubeMatrix(n, entries, ring)


def kron_apply(blocks: Sequence[TwoByTwo], vector, ring: Ring = RATIONAL) -> np.ndarray:
    """Apply kron_n(blocks) to a vector (or stack of vectors) one factor at a time."""
    blocks = _prepare(blocks, ring)
    n = len(blocks)
    x = np.asarray(vector, dtype=object)
    if x.shape[0] != 1 << n:
        raise DimensionMismatch(f"vector of length {x.shape[0]} for {n} blocks")
    trailing = x.shape[1:]
    x = x.reshape((2,) * n + trailing)
    for i, block in enumerate(blocks, start=1):
        axis = n - i
        m = np.array(block.as_rows(), dtype=object)
        x = np.moveaxis(np.tensordot(m, x, axes=([1], [axis])), 0, axis)
    return x.reshape((1 << n,) + trailing)


def kron_det(blocks: Sequence[TwoByTwo], ring: Ring = RATIONAL) -> Scalar:
    """det(f_1 ⊗ ... ⊗ f_n) = (det f_1 ... det f_n)^(2^(n-1))."""
    blocks = _prepare(blocks, ring)
    product = ring.one()
    for block in blocks:
        product = ring.mul(product, block.det(ring))
    result = ring.one()
    for _ in range(1 << (len(blocks) - 1)):
        result = ring.mul(result, product)
    return result


def symplectic_adjugate(blocks: Sequence[TwoByTwo], ring: Ring = RATIONAL) -> CubeMatrix:
    """J_n f^T J_n^-1, entrywise (-1)^|AΔB| a_{A∩B} b_{A^c∩B} c_{A∩B^c} d_{A^c∩B^c}.

    Defined for singular blocks too; f @ adj(f) is (prod det f_i) times the identity.
    """
    blocks = _prepare(blocks, ring)
    n = len(blocks)
    full = (1 << n) - 1
    a, b, c, d = _tables(blocks, ring)
    entries = np.empty((1 << n, 1 << n), dtype=object)
    for row in range(1 << n):
        out = full & ~row
        for col in range(1 << n):
            value = ring.mul(
                ring.mul(a[row & col], b[out & col]),
                ring.mul(c[row & ~col], d[out & ~col & full]),
            )
            entries[row, col] = value if sign(row ^ col) > 0 else ring.neg(value)
    return CubeMatrix(n, entries, ring)


def kron_inverse(blocks: Sequence[TwoByTwo], ring: Ring = RATIONAL) -> CubeMatrix:
    blocks = _prepare(blocks, ring)
    inv = ring.one()
    for i, block in enumerate(blocks, start=1):
        try:
            inv = ring.mul(inv, ring.try_invert(block.det(ring)))
        except NotInvertible:
            raise NotInvertible(f"block {i} has non-invertible determinant") from None
    return symplectic_adjugate(blocks, ring).scale(inv)


# --- Sign operators I_n, J_n, K_n ---

class SignOps(NamedTuple):
    I: CubeMatrix
    J: CubeMatrix
    K: CubeMatrix
    J_inv: CubeMatrix


def sign_ops(n: int, ring: Ring = RATIONAL) -> SignOps:
    """I_n E_A = (-1)^|A| E_A, K_n E_A = E_{A^c}, J_n E_A = (-1)^|A^c| E_{A^c}."""
    size = 1 << n
    full = size - 1
    zero, one, minus = ring.zero(), ring.one(), ring.neg(ring.one())
    i_m, j_m, k_m = (object_array((size, size), zero) for _ in range(3))
    for col in range(size):
        i_m[col, col] = one if sign(col) > 0 else minus
        k_m[full ^ col, col] = one
        j_m[full ^ col, col] = one if sign(full ^ col) > 0 else minus
    j_inv = j_m if n % 2 == 0 else j_m * minus
    return SignOps(
        CubeMatrix(n, i_m, ring), CubeMatrix(n, j_m, ring), CubeMatrix(n, k_m, ring), CubeMatrix(n, j_inv, ring)
    )
