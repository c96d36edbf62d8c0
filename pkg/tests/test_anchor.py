from fractions import Fraction

import hypothesis
import pytest

from tangent import talg
from tangent.anchor import (
    CubeElement, anchor_apply, anchor_apply_dense, anchor_inverse_apply, anchor_inverse_matrix, anchor_matrix,
    anchor_matrix_kron, character, evaluation_points,
)
from tangent.errors import DimensionMismatch, NotRegular, PayloadError
from tangent.hypercube import SubsetIdx, TimeLabel
from tangent.hyperlin import CubeMatrix
from tangent.talg import TangentElement

from strategies import elements, labelled, labels, rationals

TARGET_UNIT = TimeLabel((1, 1), (0, 0))


def test_second_order_anchor_at_target_unit():
    assert anchor_matrix(TARGET_UNIT).to_rows() == [
        [1, 0, 0, 0],
        [1, 1, 0, 0],
        [1, 0, 1, 0],
        [1, 1, 1, 1],
    ]


def test_second_order_inverse_at_target_unit():
    assert anchor_inverse_matrix(TARGET_UNIT).to_rows() == [
        [1, 0, 0, 0],
        [-1, 1, 0, 0],
        [-1, 0, 1, 0],
        [1, -1, -1, 1],
    ]


@hypothesis.given(rationals, rationals, rationals, rationals)
def test_second_order_anchor_rows(t1, t2, s1, s2):
    assert anchor_matrix(TimeLabel((t1, t2), (s1, s2))).to_rows() == [
        [1, s1, s2, s1 * s2],
        [1, t1, s2, t1 * s2],
        [1, s1, t2, s1 * t2],
        [1, t1, t2, t1 * t2],
    ]


@hypothesis.given(rationals)
def test_first_order_symmetric_entries(t):
    label = TimeLabel.symmetric((t,))
    s = label.s[0]
    rows = anchor_matrix(label).to_rows()
    for b in range(2):
        for a in range(2):
            assert rows[b][a] == (-1) ** (a & b) * (s if a else 1)


@pytest.mark.parametrize("n", range(1, 5))
def test_symmetric_half_entries(n):
    rows = anchor_matrix(TimeLabel.symmetric((Fraction(1, 2),) * n)).to_rows()
    for b in range(1 << n):
        for a in range(1 << n):
            outside = bin(a & ~b).count("1")
            assert rows[b][a] == Fraction(1, 2) ** bin(a).count("1") * (-1) ** outside


def test_first_order_evaluation_points():
    label = TimeLabel((3,), (-2,))
    v = TangentElement.from_coefficients(label, [1, 2])
    assert evaluation_points(v) == [1 - 4, 1 + 6]


def test_inverse_rejects_non_regular_labels():
    with pytest.raises(NotRegular, match="label not regular") as info:
        anchor_inverse_matrix(TimeLabel((0,), (0,)))
    assert info.value.factors == (1,)
    with pytest.raises(NotRegular) as info:
        anchor_inverse_matrix(TimeLabel((1, 2, 3), (0, 2, 3)))
    assert info.value.factors == (2, 3)


def test_symmetric_inverse_is_midpoint_and_half_difference():
    label = TimeLabel.symmetric((Fraction(1, 2),))
    y = CubeElement.from_values([3, 7])
    v = anchor_inverse_apply(y, label)
    assert v.coeffs.tolist() == [5, 4]


@pytest.mark.parametrize("n", range(1, 7))
@hypothesis.settings(max_examples=10)
@hypothesis.given(data=hypothesis.strategies.data())
def test_anchor_round_trip(n, data):
    label = data.draw(labels(min_n=n, max_n=n))
    identity = CubeMatrix.identity(label.n)
    assert anchor_inverse_matrix(label) @ anchor_matrix(label) == identity
    assert anchor_matrix(label) @ anchor_inverse_matrix(label) == identity


@hypothesis.given(labels(max_n=4))
def test_anchor_is_kronecker_of_first_order_anchors(label):
    assert anchor_matrix_kron(label) == anchor_matrix(label)


@hypothesis.given(labelled(count=2, max_n=4, kind="any"))
def test_anchor_is_multiplicative(case):
    _, x, y = case
    assert anchor_apply(x * y) == anchor_apply(x) * anchor_apply(y)


@hypothesis.given(labelled(count=1, max_n=4, kind="any"))
def test_lazy_matches_dense(case):
    _, x = case
    assert anchor_apply(x) == anchor_apply_dense(x)


@hypothesis.given(labelled(count=1, max_n=4))
def test_inverse_apply_recovers_element(case):
    label, x = case
    assert anchor_inverse_apply(anchor_apply(x), label) == x


@hypothesis.given(labelled(count=1, max_n=3, kind="any"))
def test_kappa_exchanges_cube_points(case):
    _, x = case
    assert anchor_apply(talg.kappa(x)) == anchor_apply(x).exchange()


@hypothesis.given(labels(max_n=3, kind="any"), rationals)
def test_constants_map_to_constant_functions(label, c):
    assert anchor_apply(talg.from_base(label, c)) == CubeElement.constant(label.n, c)


@hypothesis.given(labels(max_n=2).flatmap(lambda label: elements(label, dim=2)))
def test_vector_payloads_are_evaluated_componentwise(v):
    values = anchor_apply(v).values
    for j, part in enumerate(talg.split_components(v)):
        assert list(values[:, j]) == list(anchor_apply(part).values)


@hypothesis.given(labelled(count=2, max_n=3, kind="any"), hypothesis.strategies.data())
def test_characters_are_morphisms(case, data):
    label, x, y = case
    a = SubsetIdx(data.draw(hypothesis.strategies.integers(0, (1 << label.n) - 1)), label.n)
    upsilon = character(label, a)
    assert upsilon(x * y) == upsilon(x) * upsilon(y)
    assert upsilon(talg.one(label)) == 1
    assert upsilon(x) == anchor_apply(x).value(a)


def test_character_and_cube_checks():
    with pytest.raises(DimensionMismatch):
        character(TARGET_UNIT, SubsetIdx(0, 1))
    with pytest.raises(DimensionMismatch):
        CubeElement.from_values([1, 2, 3])
    vector = CubeElement.from_values([[1, 2], [3, 4]])
    with pytest.raises(PayloadError):
        vector * vector
