"""Hypothesis strategies shared by the test modules."""
from fractions import Fraction

import hypothesis.strategies as strat

from tangent.expr import Add, Const, Div, Mul, Neg, Pow, Sub, Var
from tangent.hypercube import TimeLabel
from tangent.hyperlin import TwoByTwo
from tangent.talg import TangentElement

rationals = strat.fractions(min_value=-6, max_value=6, max_denominator=4)
units = rationals.filter(lambda x: x != 0)


@strat.composite
def labels(draw, min_n=1, max_n=3, kind="regular"):
    n = draw(strat.integers(min_n, max_n))
    t = draw(strat.lists(rationals, min_size=n, max_size=n))
    if kind == "regular":
        singular = [False] * n
    elif kind == "singular":
        singular = [True] * n
    else:
        singular = draw(strat.lists(strat.booleans(), min_size=n, max_size=n))
    s = [t[i] if singular[i] else t[i] - draw(units) for i in range(n)]
    return TimeLabel(tuple(t), tuple(s))


def elements(label, dim=None):
    size = 1 << label.n
    if dim is None:
        values = strat.lists(rationals, min_size=size, max_size=size)
    else:
        values = strat.lists(strat.lists(rationals, min_size=dim, max_size=dim), min_size=size, max_size=size)
    return values.map(lambda vs: TangentElement.from_coefficients(label, vs))


@strat.composite
def labelled(draw, count=2, min_n=1, max_n=3, kind="regular"):
    """A label followed by `count` scalar elements over it."""
    label = draw(labels(min_n, max_n, kind))
    return (label, *[draw(elements(label)) for _ in range(count)])


@strat.composite
def blocks(draw, min_n=1, max_n=4, singular_ok=False):
    n = draw(strat.integers(min_n, max_n))
    out = []
    for _ in range(n):
        a, b, c, d = (draw(rationals) for _ in range(4))
        if not singular_ok and a * d - b * c == 0:
            a, c, d = Fraction(1), Fraction(0), Fraction(1)
        out.append(TwoByTwo(a, b, c, d))
    return out


def polynomials(names=("x", "y", "z"), max_leaves=8):
    """Division-free expressions over the given variables with small integer constants."""
    leaves = strat.one_of(
        strat.sampled_from([Var(name) for name in names]),
        strat.integers(0, 5).map(lambda k: Const(Fraction(k))),
    )
    return strat.recursive(
        leaves,
        lambda sub: strat.one_of(
            strat.builds(Add, sub, sub),
            strat.builds(Sub, sub, sub),
            strat.builds(Mul, sub, sub),
            strat.builds(Neg, sub),
            strat.builds(Pow, sub, strat.integers(0, 3)),
        ),
        max_leaves=max_leaves,
    )


def expressions(names=("x", "y", "z"), max_leaves=8):
    """Like polynomials, but may also divide."""
    leaves = strat.one_of(
        strat.sampled_from([Var(name) for name in names]),
        strat.integers(0, 5).map(lambda k: Const(Fraction(k))),
    )
    return strat.recursive(
        leaves,
        lambda sub: strat.one_of(
            strat.builds(Add, sub, sub),
            strat.builds(Sub, sub, sub),
            strat.builds(Mul, sub, sub),
            strat.builds(Div, sub, sub),
            strat.builds(Neg, sub),
            strat.builds(Pow, sub, strat.integers(0, 3)),
        ),
        max_leaves=max_leaves,
    )
