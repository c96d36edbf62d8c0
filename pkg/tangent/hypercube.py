"""Index combinatorics of the hypercube P(n) and the time labels (t, s).

A subset A of {1, ..., n} is stored as a bit mask with bit i-1 set when
i is in A, so ascending mask order is the order used for every coefficient
vector and matrix in the package: (), {1}, {2}, {1,2}, {3}, ...
"""
import enum
import logging
from collections.abc import Iterator, Sequence
from dataclasses import dataclass, field

from .errors import DimensionMismatch
from .ring import RATIONAL, Ring, Scalar

logger = logging.getLogger(__name__)

MAX_DIM = 20


def _check_dim(n: int) -> None:
    if not 0 <= n <= MAX_DIM:
        raise DimensionMismatch(f"hypercube dimension {n} outside 0..{MAX_DIM}")


# --- Subsets ---

@dataclass(frozen=True, order=True)
class SubsetIdx:
    bits: int
    dim: int

    def __post_init__(self):
        _check_dim(self.dim)
        if not 0 <= self.bits < (1 << self.dim):
            raise DimensionMismatch(f"bit mask {self.bits} does not fit dimension {self.dim}")

    @classmethod
    def empty(cls, dim: int) -> "SubsetIdx":
        return cls(0, dim)

    @classmethod
    def full(cls, dim: int) -> "SubsetIdx":
        return cls((1 << dim) - 1, dim)

    @classmethod
    def from_elements(cls, elements, dim: int) -> "SubsetIdx":
        bits = 0
        for i in elements:
            if not 1 <= i <= dim:
                raise DimensionMismatch(f"element {i} not in 1..{dim}")
            bits |= 1 << (i - 1)
        return cls(bits, dim)

    def elements(self) -> list[int]:
        return [i + 1 for i in range(self.dim) if self.bits >> i & 1]

    def __contains__(self, i: int) -> bool:
        return 1 <= i <= self.dim and bool(self.bits >> (i - 1) & 1)

    def _other(self, other: "SubsetIdx") -> int:
        if other.dim != self.dim:
            raise DimensionMismatch(f"subsets of P({self.dim}) and P({other.dim}) cannot be combined")
        return other.bits

    def union(self, other: "SubsetIdx") -> "SubsetIdx":
        return SubsetIdx(self.bits | self._other(other), self.dim)

    def intersect(self, other: "SubsetIdx") -> "SubsetIdx":
        return SubsetIdx(self.bits & self._other(other), self.dim)

    def symdiff(self, other: "SubsetIdx") -> "SubsetIdx":
        return SubsetIdx(self.bits ^ self._other(other), self.dim)

    def difference(self, other: "SubsetIdx") -> "SubsetIdx":
        return SubsetIdx(self.bits & ~self._other(other), self.dim)

    def complement(self) -> "SubsetIdx":
        return SubsetIdx(self.bits ^ ((1 << self.dim) - 1), self.dim)

    def is_subset(self, other: "SubsetIdx") -> bool:
        return self.bits & ~self._other(other) == 0

    def cardinality(self) -> int:
        return self.bits.bit_count()

    def permute(self, perm: Sequence[int]) -> "SubsetIdx":
        """Image of the subset under the permutation i -> perm[i-1]."""
        check_permutation(perm, self.dim)
        return SubsetIdx.from_elements((perm[i - 1] for i in self.elements()), self.dim)

    def __str__(self):
        return "{" + ",".join(str(i) for i in self.elements()) + "}"


def union(a: SubsetIdx, b: SubsetIdx) -> SubsetIdx:
    return a.union(b)


def intersect(a: SubsetIdx, b: SubsetIdx) -> SubsetIdx:
    return a.intersect(b)


def symdiff(a: SubsetIdx, b: SubsetIdx) -> SubsetIdx:
    return a.symdiff(b)


def complement(a: SubsetIdx) -> SubsetIdx:
    return a.complement()


def cardinality(a: SubsetIdx) -> int:
    return a.cardinality()


def subsets(n: int) -> Iterator[SubsetIdx]:
    """All 2^n subsets of {1..n} in ascending bit-mask order."""
    _check_dim(n)
    for bits in range(1 << n):
        yield SubsetIdx(bits, n)


def check_permutation(perm: Sequence[int], n: int) -> None:
    if len(perm) != n or sorted(perm) != list(range(1, n + 1)):
        raise DimensionMismatch(f"{list(perm)} is not a permutation of 1..{n}")


def sign(bits: int) -> int:
    """(-1)^|A| for the subset with the given mask."""
    return -1 if bits.bit_count() & 1 else 1


# --- Products t_A, s_A, (t-s)_A ---

def product_over(vals: Sequence[Scalar], a: SubsetIdx, ring: Ring = RATIONAL) -> Scalar:
    """Product of vals[k-1] over k in A; the empty product is one."""
    if len(vals) != a.dim:
        raise DimensionMismatch(f"{len(vals)} values for a subset of P({a.dim})")
    result = ring.one()
    for k in a.elements():
        result = ring.mul(result, vals[k - 1])
    return result


def product_table(vals: Sequence[Scalar], ring: Ring = RATIONAL) -> list[Scalar]:
    """All 2^n subset products of vals, indexed by bit mask."""
    n = len(vals)
    _check_dim(n)
    table = [ring.one()] * (1 << n)
    for bits in range(1, 1 << n):
        low = bits & -bits
        table[bits] = ring.mul(table[bits ^ low], vals[low.bit_length() - 1])
    return table


# --- Time labels ---

class LabelKind(str, enum.Enum):
    REGULAR = "regular"
    SINGULAR = "singular"
    MIXED = "mixed"


class Calculus(str, enum.Enum):
    TARGET = "target"
    SOURCE = "source"
    SYMMETRIC = "symmetric"


@dataclass(frozen=True)
class TimeLabel:
    """An element (t, s) of the scaloid K^{2n}."""

    t: tuple
    s: tuple
    ring: Ring = field(default=RATIONAL, compare=False, repr=False)

    def __post_init__(self):
        if len(self.t) != len(self.s):
            raise DimensionMismatch(f"t has {len(self.t)} entries but s has {len(self.s)}")
        _check_dim(len(self.t))
        object.__setattr__(self, "t", tuple(self.ring.coerce(x) for x in self.t))
        object.__setattr__(self, "s", tuple(self.ring.coerce(x) for x in self.s))

    @property
    def n(self) -> int:
        return len(self.t)

    # Constructors for the special calculi.

    @classmethod
    def empty(cls, ring: Ring = RATIONAL) -> "TimeLabel":
        return cls((), (), ring)

    @classmethod
    def zero(cls, n: int, ring: Ring = RATIONAL) -> "TimeLabel":
        """The most singular value t = s = 0."""
        return cls((ring.zero(),) * n, (ring.zero(),) * n, ring)

    @classmethod
    def target(cls, t: Sequence, ring: Ring = RATIONAL) -> "TimeLabel":
        return cls(tuple(t), (ring.zero(),) * len(t), ring)

    @classmethod
    def source(cls, s: Sequence, ring: Ring = RATIONAL) -> "TimeLabel":
        return cls((ring.zero(),) * len(s), tuple(s), ring)

    @classmethod
    def symmetric(cls, t: Sequence, ring: Ring = RATIONAL) -> "TimeLabel":
        t = tuple(ring.coerce(x) for x in t)
        return cls(t, tuple(ring.neg(x) for x in t), ring)

    @classmethod
    def unit(cls, n: int, calculus: Calculus = Calculus.TARGET, ring: Ring = RATIONAL) -> "TimeLabel":
        ones = (ring.one(),) * n
        if calculus == Calculus.TARGET:
            return cls.target(ones, ring)
        if calculus == Calculus.SOURCE:
            return cls.source(ones, ring)
        return cls.symmetric(ones, ring)

    def t_minus_s(self) -> tuple:
        return tuple(self.ring.sub(t, s) for t, s in zip(self.t, self.s))

    def singular_factors(self) -> list[int]:
        """1-based indices i with t_i - s_i not invertible."""
        return [i + 1 for i, d in enumerate(self.t_minus_s()) if not self.ring.is_unit(d)]

    def classify(self) -> LabelKind:
        bad = len(self.singular_factors())
        if bad == 0:
            return LabelKind.REGULAR
        if bad == self.n:
            return LabelKind.SINGULAR
        return LabelKind.MIXED

    def is_regular(self) -> bool:
        return not self.singular_factors()

    def swap(self) -> "TimeLabel":
        return TimeLabel(self.s, self.t, self.ring)

    def oplus(self, other: "TimeLabel") -> "TimeLabel":
        return TimeLabel(self.t + other.t, self.s + other.s, self.ring)

    def factor(self, i: int) -> "TimeLabel":
        """The first-order label (t_i, s_i)."""
        return TimeLabel((self.t[i - 1],), (self.s[i - 1],), self.ring)

    def drop_last(self) -> "TimeLabel":
        return TimeLabel(self.t[:-1], self.s[:-1], self.ring)

    def permute(self, perm: Sequence[int]) -> "TimeLabel":
        """Move factor i to position perm[i-1]."""
        check_permutation(perm, self.n)
        t = [None] * self.n
        s = [None] * self.n
        for i, target in enumerate(perm):
            t[target - 1] = self.t[i]
            s[target - 1] = self.s[i]
        return TimeLabel(tuple(t), tuple(s), self.ring)


def classify(label: TimeLabel) -> LabelKind:
    return label.classify()


def oplus(a: TimeLabel, b: TimeLabel) -> TimeLabel:
    return a.oplus(b)
