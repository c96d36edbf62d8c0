"""Slow reference algorithms the closed forms are checked against.

Nothing here is used by the fast paths; `verify` and the test-suite compare
each closed form with the corresponding routine below.
"""
import logging
from collections.abc import Sequence

import numpy as np

from .errors import DimensionMismatch, NotInvertible
from .hyperlin import TwoByTwo
from .ring import RATIONAL, Ring
from .talg import TangentElement

logger = logging.getLogger(__name__)


def identity_entries(size: int, ring: Ring = RATIONAL) -> np.ndarray:
    entries = np.empty((size, size), dtype=object)
    entries.fill(ring.zero())
    for i in range(size):
        entries[i, i] = ring.one()
    return entries


def kron2(outer: np.ndarray, inner: np.ndarray) -> np.ndarray:
    """The textbook Kronecker product of two 2-d object arrays."""
    p, q = outer.shape
    r, s = inner.shape
    out = np.empty((p * r, q * s), dtype=object)
    for i in range(p):
        for j in range(q):
            for k in range(r):
                for l in range(s):
                    out[i * r + k, j * s + l] = outer[i, j] * inner[k, l]
    return out


def naive_kron(blocks: Sequence[TwoByTwo], ring: Ring = RATIONAL) -> np.ndarray:
    """f_n ⊗ (... ⊗ (f_2 ⊗ f_1)), so that block i acts on bit i-1."""
    result = identity_entries(1, ring)
    for block in blocks:
        block = block.coerce(ring)
        result = kron2(np.array(block.as_rows(), dtype=object), result)
    return result


def gauss_inverse(matrix: np.ndarray, ring: Ring = RATIONAL) -> np.ndarray:
    """Gauss-Jordan elimination on [X | I]; raises NotInvertible on a singular matrix."""
    matrix = np.asarray(matrix, dtype=object)
    n, m = matrix.shape
    if n != m:
        raise DimensionMismatch(f"matrix is not square (shape = {matrix.shape})")
    xi = np.hstack((matrix.copy(), identity_entries(n, ring)))
    for i in range(n):
        for j in range(i, n):
            if ring.is_unit(xi[j, i]):
                if i != j:
                    xi[[i, j]] = xi[[j, i]]
                break
        else:
            raise NotInvertible("matrix is singular")
        pivot = ring.try_invert(xi[i, i])
        xi[i, :] = xi[i, :] * pivot
        for j in range(n):
            if j != i:
                xi[j, :] = xi[j, :] - xi[j, i] * xi[i, :]
    return xi[:, n:]


def gauss_det(matrix: np.ndarray, ring: Ring = RATIONAL) -> object:
    """Determinant by row reduction, tracking swaps and pivots."""
    a = np.asarray(matrix, dtype=object).copy()
    n = a.shape[0]
    det = ring.one()
    for i in range(n):
        for j in range(i, n):
            if ring.is_unit(a[j, i]):
                if i != j:
                    a[[i, j]] = a[[j, i]]
                    det = ring.neg(det)
                break
        else:
            return ring.zero()
        det = ring.mul(det, a[i, i])
        pivot = ring.try_invert(a[i, i])
        for j in range(i + 1, n):
            a[j, :] = a[j, :] - a[i, :] * (a[j, i] * pivot)
    return det


def poly_mul(x: TangentElement, y: TangentElement) -> TangentElement:
    """Multiply as polynomials, then reduce X_i^2 -> (t_i + s_i) X_i - t_i s_i until square-free."""
    if x.label != y.label:
        raise DimensionMismatch("poly_mul needs elements over the same label")
    label, ring, n = x.label, x.ring, x.n
    # monomials are exponent tuples (e_1, ..., e_n)
    terms: dict[tuple, object] = {}
    for a, xa in enumerate(x.coeffs):
        for b, yb in enumerate(y.coeffs):
            exps = tuple((a >> i & 1) + (b >> i & 1) for i in range(n))
            terms[exps] = ring.add(terms.get(exps, ring.zero()), ring.mul(xa, yb))
    while True:
        reducible = [e for e in terms if any(k >= 2 for k in e)]
        if not reducible:
            break
        for exps in reducible:
            coef = terms.pop(exps)
            i = next(i for i, k in enumerate(exps) if k >= 2)
            t, s = label.t[i], label.s[i]
            lower = exps[:i] + (exps[i] - 1,) + exps[i + 1:]
            lowest = exps[:i] + (exps[i] - 2,) + exps[i + 1:]
            terms[lower] = ring.add(terms.get(lower, ring.zero()), ring.mul(coef, ring.add(t, s)))
            terms[lowest] = ring.sub(terms.get(lowest, ring.zero()), ring.mul(coef, ring.mul(t, s)))
    coeffs = np.empty(1 << n, dtype=object)
    coeffs.fill(ring.zero())
    for exps, coef in terms.items():
        coeffs[sum(k << i for i, k in enumerate(exps))] = coef
    return TangentElement(label, coeffs)
