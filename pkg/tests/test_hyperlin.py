from fractions import Fraction

import hypothesis
import numpy as np
import pytest

from tangent.errors import DimensionMismatch, NotInvertible
from tangent.hypercube import SubsetIdx, subsets
from tangent.hyperlin import (
    CubeMatrix, TwoByTwo, kron_apply, kron_det, kron_entry, kron_inverse, kron_n, sign_ops, symplectic_adjugate,
)
from tangent.oracles import gauss_det, gauss_inverse, naive_kron

from strategies import blocks, rationals


def _det_product(bs):
    result = Fraction(1)
    for b in bs:
        result *= b.det()
    return result


def test_single_block_is_itself():
    block = TwoByTwo.from_rows([[1, 2], [3, 4]])
    assert kron_n([block]).to_rows() == [[1, 2], [3, 4]]


def test_bit_order_matches_numpy_kron():
    f1 = TwoByTwo.from_rows([[1, 2], [3, 4]])
    f2 = TwoByTwo.from_rows([[0, 1], [1, 5]])
    expected = np.kron(np.array([[0, 1], [1, 5]]), np.array([[1, 2], [3, 4]]))
    assert kron_n([f1, f2]).to_rows() == expected.tolist()


def test_det_of_blocks_with_dets_one_and_two():
    bs = [TwoByTwo.from_rows([[1, 0], [0, 1]]), TwoByTwo.from_rows([[2, 0], [0, 1]])]
    assert kron_det(bs) == 4


def test_inverse_names_the_singular_block():
    bs = [TwoByTwo.identity(), TwoByTwo.from_rows([[1, 2], [2, 4]])]
    with pytest.raises(NotInvertible, match="block 2"):
        kron_inverse(bs)


def test_empty_block_list():
    with pytest.raises(DimensionMismatch):
        kron_n([])


@pytest.mark.parametrize("n", range(1, 6))
@hypothesis.settings(max_examples=20)
@hypothesis.given(data=hypothesis.strategies.data())
def test_closed_form_matches_naive_kronecker(n, data):
    bs = data.draw(blocks(min_n=n, max_n=n, singular_ok=True))
    assert kron_n(bs) == CubeMatrix(len(bs), naive_kron(bs))


@pytest.mark.parametrize("n", range(1, 5))
@hypothesis.settings(max_examples=20)
@hypothesis.given(data=hypothesis.strategies.data())
def test_inverse_matches_elimination(n, data):
    bs = data.draw(blocks(min_n=n, max_n=n))
    inverse = kron_inverse(bs)
    assert inverse == CubeMatrix(n, gauss_inverse(kron_n(bs).entries))
    assert kron_n(bs) @ inverse == CubeMatrix.identity(n)


@pytest.mark.parametrize("n", range(1, 5))
@hypothesis.settings(max_examples=20)
@hypothesis.given(data=hypothesis.strategies.data())
def test_det_matches_elimination(n, data):
    bs = data.draw(blocks(min_n=n, max_n=n, singular_ok=True))
    assert kron_det(bs) == gauss_det(kron_n(bs).entries)


@hypothesis.given(blocks(max_n=4, singular_ok=True))
def test_adjugate_identity(bs):
    n = len(bs)
    f = kron_n(bs)
    adj = symplectic_adjugate(bs)
    assert f @ adj == CubeMatrix.identity(n).scale(_det_product(bs))
    ops = sign_ops(n)
    assert ops.J @ f.transpose() @ ops.J_inv == adj


@hypothesis.given(blocks(max_n=4, singular_ok=True), hypothesis.strategies.data())
def test_lazy_entry_and_factorwise_apply(bs, data):
    n = len(bs)
    f = kron_n(bs)
    row = SubsetIdx(data.draw(hypothesis.strategies.integers(0, (1 << n) - 1)), n)
    col = SubsetIdx(data.draw(hypothesis.strategies.integers(0, (1 << n) - 1)), n)
    assert kron_entry(bs, row, col) == f.entry(row, col)
    v = data.draw(hypothesis.strategies.lists(rationals, min_size=1 << n, max_size=1 << n))
    assert list(kron_apply(bs, v)) == list(f @ v)


def test_apply_to_stacked_vectors():
    bs = [TwoByTwo.from_rows([[1, 1], [0, 1]]), TwoByTwo.from_rows([[2, 0], [1, 1]])]
    stacked = np.array([[Fraction(i), Fraction(i * i)] for i in range(4)], dtype=object)
    out = kron_apply(bs, stacked)
    assert out.shape == (4, 2)
    f = kron_n(bs)
    assert list(out[:, 1]) == list(f @ stacked[:, 1])


@pytest.mark.parametrize("n", [1, 2, 3])
def test_sign_operators(n):
    ops = sign_ops(n)
    identity = CubeMatrix.identity(n)
    assert ops.J @ ops.J_inv == identity
    assert ops.K @ ops.K == identity
    assert ops.I @ ops.I == identity
    assert ops.J @ ops.J == identity.scale((-1) ** n)
    full = (1 << n) - 1
    for a in subsets(n):
        expected = 1 if (full ^ a.bits).bit_count() % 2 == 0 else -1
        assert ops.J.entries[full ^ a.bits, a.bits] == expected
