from fractions import Fraction

import hypothesis
import hypothesis.strategies as strat
import pytest

from tangent import talg
from tangent.errors import ExprSyntaxError, NotInvertible, UnboundVariable
from tangent.expr import (
    MAX_EXPONENT, Add, Const, Div, Mul, Neg, Pow, Sub, Var, compose, evaluate, parse, symbolic_derivative, to_text,
    variables,
)
from tangent.hypercube import TimeLabel
from tangent.ring import FloatRing
from tangent.talg import TangentAlgebra, TangentElement

from strategies import expressions, polynomials, rationals

x, y = Var("x"), Var("y")


def c(value):
    return Const(Fraction(value))


def test_precedence_of_sums_and_products():
    assert parse("x^2 + 3*x*y") == Add(Pow(x, 2), Mul(Mul(c(3), x), y))


def test_unary_minus_binds_looser_than_power():
    assert parse("-(x - y)^2") == Neg(Pow(Sub(x, y), 2))
    assert parse("-x^2") == Neg(Pow(x, 2))
    assert parse("-x*y") == Mul(Neg(x), y)


def test_left_associativity():
    assert parse("x - y - 1") == Sub(Sub(x, y), c(1))
    assert parse("x / y / 2") == Div(Div(x, y), c(2))


def test_power_towers_fold_right():
    assert parse("x^2^3") == Pow(x, 8)
    assert parse("(x^2)^3") == Pow(Pow(x, 2), 3)


def test_power_towers_are_capped():
    assert parse("x^2^10") == Pow(x, MAX_EXPONENT)
    assert parse(f"x^{MAX_EXPONENT}") == Pow(x, MAX_EXPONENT)
    for text in ("x^99^99", f"x^{MAX_EXPONENT + 1}", "x^12345678901234567890^99"):
        with pytest.raises(ExprSyntaxError, match="exponent exceeds the limit") as info:
            parse(text)
        assert info.value.column == 3


@pytest.mark.parametrize(
    ("text", "column"),
    [
        ("x + ", 5),
        ("(x", 3),
        ("x $ y", 3),
        ("x y", 3),
        ("x^-1", 3),
        ("x^y", 3),
        ("", 1),
    ],
)
def test_syntax_errors_report_column(text, column):
    with pytest.raises(ExprSyntaxError) as info:
        parse(text)
    assert info.value.column == column
    assert f"at column {column}" in str(info.value)


def test_decimals_only_outside_rational_mode():
    with pytest.raises(ExprSyntaxError, match="decimal"):
        parse("0.25 * x")
    assert parse("0.25 * x", allow_decimals=True) == Mul(c(Fraction(1, 4)), x)


@pytest.mark.parametrize("text", ["x^2 + 3*x*y", "-(x - y)^2", "1/(x*y) - -x", "((x))", "2^3^2"])
def test_print_parse_is_stable(text):
    ast = parse(text)
    assert parse(to_text(ast)) == ast


@hypothesis.given(expressions())
def test_printed_text_parses_back(ast):
    assert parse(to_text(ast)) == ast


def test_printer_form():
    assert to_text(parse("x^2 + 3*x*y")) == "((x ^ 2) + ((3 * x) * y))"
    assert to_text(Const(Fraction(-1, 2))) == "(-1/2)"


def test_variables_sorted():
    assert variables(parse("z*x + y - x")) == ["x", "y", "z"]
    assert variables(parse("3")) == []


@hypothesis.given(rationals, rationals)
def test_commutator_vanishes(a, b):
    assert evaluate(parse("x*y - y*x"), {"x": a, "y": b}) == 0


def test_division_by_zero_is_not_invertible():
    with pytest.raises(NotInvertible):
        evaluate(parse("1/x"), {"x": 0})
    label = TimeLabel((0,), (0,))
    with pytest.raises(NotInvertible):
        evaluate(parse("1/x"), {"x": talg.from_base(label, 0)}, TangentAlgebra(label))


def test_unbound_variable():
    with pytest.raises(UnboundVariable) as info:
        evaluate(parse("x + z"), {"x": 1})
    assert info.value.name == "z"
    assert str(info.value) == "unbound variable 'z'"


def test_evaluation_over_dual_numbers():
    label = TimeLabel.zero(1)
    arg = TangentElement.from_coefficients(label, [3, 1])
    result = evaluate(parse("x^2"), {"x": arg}, TangentAlgebra(label))
    assert result == TangentElement.from_coefficients(label, [9, 6])


def test_evaluation_over_floats():
    assert evaluate(parse("x / 4", allow_decimals=True), {"x": 1.0}, FloatRing()) == 0.25


def test_symbolic_derivative_examples():
    assert evaluate(symbolic_derivative(parse("x^3"), "x"), {"x": 2}) == 12
    assert symbolic_derivative(parse("5"), "x") == c(0)
    assert symbolic_derivative(parse("x*y"), "x") == y


def test_quotient_rule():
    d = symbolic_derivative(parse("1/x"), "x")
    assert evaluate(d, {"x": 2}) == Fraction(-1, 4)
    d = symbolic_derivative(parse("x/(x + 1)"), "x")
    assert evaluate(d, {"x": 1}) == Fraction(1, 4)


@hypothesis.given(polynomials(names=("x", "y")), rationals, rationals)
def test_symbolic_derivative_matches_difference_quotient_limit(ast, a, b):
    # polynomials: the dual-number coefficient is the exact derivative
    label = TimeLabel.zero(1)
    env = {
        "x": TangentElement.from_coefficients(label, [a, 1]),
        "y": talg.from_base(label, b),
    }
    extended = evaluate(ast, env, TangentAlgebra(label))
    assert extended.coeffs[1] == evaluate(symbolic_derivative(ast, "x"), {"x": a, "y": b})


@hypothesis.given(polynomials(names=("x",)), polynomials(names=("x",)), rationals)
def test_compose_substitutes(outer, inner, a):
    composed = compose(outer, {"x": inner})
    assert evaluate(composed, {"x": a}) == evaluate(outer, {"x": evaluate(inner, {"x": a})})


def test_operators_build_nodes():
    assert x * 2 + 1 == Add(Mul(x, c(2)), c(1))
    assert -(x ** 2) == Neg(Pow(x, 2))
    with pytest.raises(ValueError):
        Pow(x, -1)
    with pytest.raises(ValueError):
        Var("2x")


@hypothesis.given(strat.integers(0, 6), rationals)
def test_power_rule(k, a):
    d = symbolic_derivative(Pow(x, k), "x")
    expected = k * a ** (k - 1) if k else 0
    assert evaluate(d, {"x": a}) == expected
