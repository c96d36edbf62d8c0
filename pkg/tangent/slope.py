"""Slopes (generalized difference quotients) of maps f: K^d -> K^d'.

Three independent routes compute f^n_{(t,s)}(v):

- slope_n conjugates f by the anchor (regular labels, black-box f);
- slope_n_formula evaluates the explicit weighted sum (regular labels);
- extend_expr evaluates an expression with tangent-algebra arithmetic
  (every label, including the singular ones that give derivatives).
"""
import logging
from collections.abc import Callable, Mapping, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .anchor import CubeElement, anchor_inverse_apply, character, evaluation_points
from .errors import DimensionMismatch, DomainError, LabelMismatch, NotInvertible, NotRegular, PayloadError, UnboundVariable
from .expr import Expr, evaluate, variables as expr_variables
from .hypercube import SubsetIdx, TimeLabel, product_over, subsets
from .ring import RATIONAL, Ring, Scalar
from .talg import TangentAlgebra, TangentElement, basis, from_base, split_components, stack_components

logger = logging.getLogger(__name__)

Point = tuple


def as_point(value) -> Point:
    if isinstance(value, (list, tuple, np.ndarray)):
        return tuple(value)
    return (value,)


@dataclass(frozen=True)
class PointFn:
    """A black-box map K^dim_in -> K^dim_out with a domain membership test.

    Set `serial` when `fn` must not be called from several threads at once.
    """

    fn: Callable[[Point], Sequence]
    dim_in: int
    dim_out: int
    domain: Callable[[Point], bool] | None = None
    serial: bool = False
    name: str = "f"
    expressions: tuple[Expr, ...] | None = field(default=None, compare=False, repr=False)
    variables: tuple[str, ...] | None = field(default=None, compare=False, repr=False)

    @classmethod
    def from_expressions(
        cls, asts: Sequence[Expr], variables: Sequence[str], ring: Ring = RATIONAL, name: str = "f"
    ) -> "PointFn":
        """Points are bound to `variables` in order; each expression gives one output component."""
        asts, variables = tuple(asts), tuple(variables)
        missing = sorted({v for a in asts for v in expr_variables(a)} - set(variables))
        if missing:
            raise DimensionMismatch(f"expression uses variables {missing} not in {list(variables)}")

        def fn(point: Point):
            env = dict(zip(variables, point))
            return tuple(evaluate(ast, env, ring) for ast in asts)

        return cls(fn, len(variables), len(asts), name=name, expressions=asts, variables=variables)

    def __call__(self, point) -> Point:
        point = as_point(point)
        if len(point) != self.dim_in:
            raise DimensionMismatch(f"{self.name} takes {self.dim_in} coordinates, got {len(point)}")
        if self.domain is not None and not self.domain(point):
            raise DomainError(point)
        try:
            value = as_point(self.fn(point))
        except NotInvertible:
            raise DomainError(point, "makes a divisor non-invertible") from None
        if len(value) != self.dim_out:
            raise DimensionMismatch(f"{self.name} returned {len(value)} coordinates, expected {self.dim_out}")
        return value


@dataclass(frozen=True)
class SlopeResult:
    element: TangentElement
    points: list = field(default_factory=list)
    values: list = field(default_factory=list)

    @property
    def label(self) -> TimeLabel:
        return self.element.label

    @property
    def payload_dim(self) -> int:
        return self.element.payload_dim

    def component(self, a: SubsetIdx) -> Point:
        return self.element.coefficient(a)


def _require_regular(label: TimeLabel) -> None:
    bad = label.singular_factors()
    if bad:
        raise NotRegular(label, bad)


def _as_vector_element(v: TangentElement, dim: int) -> TangentElement:
    if not v.is_vector:
        v = TangentElement(v.label, v.coeffs.reshape(-1, 1))
    if v.payload_dim != dim:
        raise PayloadError(f"payload of length {v.payload_dim} for a map of {dim} variables")
    return v


def evaluate_points(f: PointFn, points: Sequence[Point], workers: int = 1) -> list[Point]:
    """f at every point, in order; runs on a thread pool unless f is serial."""
    if f.serial or workers <= 1 or len(points) <= 1:
        return [f(p) for p in points]
    logger.debug(f"evaluating {f.name} at {len(points)} points on {workers} threads")
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(f, points))


# --- First order ---

def slope1(f: PointFn, v0, v1, t, s, ring: Ring = RATIONAL) -> SlopeResult:
    """((t f(v0+s v1) - s f(v0+t v1))/(t-s), (f(v0+t v1) - f(v0+s v1))/(t-s))."""
    label = TimeLabel((t,), (s,), ring)
    _require_regular(label)
    t, s = label.t[0], label.s[0]
    v0 = tuple(ring.coerce(x) for x in as_point(v0))
    v1 = tuple(ring.coerce(x) for x in as_point(v1))
    if len(v0) != len(v1):
        raise DimensionMismatch(f"v0 has {len(v0)} coordinates but v1 has {len(v1)}")
    source = tuple(ring.add(a, ring.mul(s, b)) for a, b in zip(v0, v1))
    target = tuple(ring.add(a, ring.mul(t, b)) for a, b in zip(v0, v1))
    fs, ft = f(source), f(target)
    inv = ring.try_invert(ring.sub(t, s))
    w0 = [ring.mul(ring.sub(ring.mul(t, a), ring.mul(s, b)), inv) for a, b in zip(fs, ft)]
    w1 = [ring.mul(ring.sub(b, a), inv) for a, b in zip(fs, ft)]
    return SlopeResult(TangentElement.from_coefficients(label, [w0, w1]), [source, target], [fs, ft])


# --- n-th order, black box ---

def slope_n(f: PointFn, label: TimeLabel, v: TangentElement, workers: int = 1) -> SlopeResult:
    """Υ^-1 ∘ f^{2^n} ∘ Υ; the commuting square with the anchor holds by construction."""
    _require_regular(label)
    if v.label != label:
        raise LabelMismatch("argument is not over the requested label")
    v = _as_vector_element(v, f.dim_in)
    points = evaluation_points(v)
    values = evaluate_points(f, points, workers)
    cube = CubeElement(label.n, np.array(values, dtype=object).reshape(len(values), f.dim_out), label.ring)
    return SlopeResult(anchor_inverse_apply(cube, label), points, values)


def slope_weights(label: TimeLabel, b: SubsetIdx) -> list[Scalar]:
    """Weights of f(Υ_A(v)), A ascending, in component B of the slope.

    (1/(t-s)_n) (-1)^|AΔB| s_{B^c∩A} t_{B^c∩A^c}; they sum to 1 for B = ∅ and to 0 otherwise.
    """
    _require_regular(label)
    ring = label.ring
    prefactor = ring.one()
    for d in label.t_minus_s():
        prefactor = ring.mul(prefactor, ring.try_invert(d))
    out = b.complement()
    weights = []
    for a in subsets(label.n):
        w = ring.mul(
            product_over(label.s, out.intersect(a), ring),
            product_over(label.t, out.difference(a), ring),
        )
        w = ring.mul(w, prefactor)
        weights.append(w if a.symdiff(b).cardinality() % 2 == 0 else ring.neg(w))
    return weights


def slope_n_formula(f: PointFn, label: TimeLabel, v: TangentElement, workers: int = 1) -> SlopeResult:
    _require_regular(label)
    if v.label != label:
        raise LabelMismatch("argument is not over the requested label")
    v = _as_vector_element(v, f.dim_in)
    ring = label.ring
    points = [character(label, a)(v) for a in subsets(label.n)]
    values = evaluate_points(f, points, workers)
    rows = []
    for b in subsets(label.n):
        acc = [ring.zero()] * f.dim_out
        for w, value in zip(slope_weights(label, b), values):
            acc = [ring.add(x, ring.mul(w, y)) for x, y in zip(acc, value)]
        rows.append(acc)
    return SlopeResult(TangentElement.from_coefficients(label, rows), points, values)


# --- Expressions over the tangent algebra ---

def extend_expr(ast: Expr, label: TimeLabel, args: Mapping[str, TangentElement | Scalar]) -> TangentElement:
    """Evaluate `ast` in K^n_{(t,s)}; valid for singular and mixed labels too."""
    return evaluate(ast, args, TangentAlgebra(label))


def slope_algebra(asts: Sequence[Expr], variables: Sequence[str], label: TimeLabel, v: TangentElement) -> SlopeResult:
    """The slope of an expression-backed map, read off algebra evaluation."""
    v = _as_vector_element(v, len(variables))
    if v.label != label:
        raise LabelMismatch("argument is not over the requested label")
    args = dict(zip(variables, split_components(v)))
    return SlopeResult(stack_components([extend_expr(ast, label, args) for ast in asts]))


def derivative(ast: Expr, point: Mapping[str, Scalar], variables: Sequence[str], ring: Ring = RATIONAL) -> Scalar:
    """The k-th mixed partial d^k f / d variables[0] ... d variables[k-1] at `point`.

    Uses the most singular label t = s = 0 of order k: each listed variable
    gets its own basis direction e_m and the answer is the e_{1..k} coefficient.
    """
    k = len(variables)
    if k == 0:
        return evaluate(ast, point, ring)
    label = TimeLabel.zero(k, ring)
    args = {name: from_base(label, value) for name, value in point.items()}
    for m, name in enumerate(variables, start=1):
        if name not in args:
            raise UnboundVariable(name)
        args[name] = args[name] + basis(label, SubsetIdx.from_elements([m], k))
    result = extend_expr(ast, label, args)
    logger.debug(f"order {k} derivative along {list(variables)} evaluated")
    return result.coefficient(SubsetIdx.full(k))
