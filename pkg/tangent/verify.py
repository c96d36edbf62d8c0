"""Randomized property suites behind `tangent verify`.

Each suite draws its inputs from a Generator seeded with (seed, suite name),
so a run is reproducible suite by suite and independent of which other
suites were selected.
"""
import logging
import random
import time
from collections.abc import Callable
from dataclasses import dataclass, field
from fractions import Fraction

from . import talg
from .anchor import (
    CubeElement, anchor_apply, anchor_apply_dense, anchor_inverse_apply, anchor_inverse_matrix,
    anchor_matrix, anchor_matrix_kron, evaluation_points,
)
from .errors import NotInvertible, NotRegular, TangentError
from .expr import Add, Const, Expr, Mul, Pow, Var, compose, evaluate, symbolic_derivative
from .hypercube import SubsetIdx, TimeLabel, product_over
from .hyperlin import CubeMatrix, TwoByTwo, kron_apply, kron_det, kron_entry, kron_inverse, kron_n, sign_ops, symplectic_adjugate
from .oracles import gauss_det, gauss_inverse, naive_kron, poly_mul
from .ring import RATIONAL, Ring
from .slope import PointFn, derivative, extend_expr, slope1, slope_algebra, slope_n, slope_n_formula, slope_weights
from .talg import TangentElement

logger = logging.getLogger(__name__)

MAX_FAILURES_KEPT = 20


@dataclass
class SuiteResult:
    name: str
    passed: int = 0
    failed: int = 0
    failures: list[str] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def cases(self) -> int:
        return self.passed + self.failed

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def check(self, prop: str, fn: Callable[[], bool]) -> None:
        try:
            good = bool(fn())
            detail = ""
        except (TangentError, ArithmeticError, ValueError) as exc:
            good, detail = False, f": {type(exc).__name__}: {exc}"
        if good:
            self.passed += 1
            return
        self.failed += 1
        logger.warning(f"[{self.name}] property '{prop}' failed{detail}")
        if len(self.failures) < MAX_FAILURES_KEPT:
            self.failures.append(f"{prop}{detail}")

    def to_json(self) -> dict:
        return {
            "suite": self.name,
            "cases": self.cases,
            "passed": self.passed,
            "failed": self.failed,
            "failures": list(self.failures),
            "seconds": round(self.seconds, 3),
        }


# --- Random inputs ---

class Generator:
    """Random labels, elements, 2x2 blocks and polynomial expressions over a ring."""

    def __init__(self, rng: random.Random, ring: Ring = RATIONAL):
        self.rng = rng
        self.ring = ring

    def scalar(self, bound: int = 6):
        return self.ring.coerce(Fraction(self.rng.randint(-bound, bound), self.rng.randint(1, 3)))

    def unit(self, bound: int = 6):
        while True:
            x = self.scalar(bound)
            if self.ring.is_unit(x):
                return x

    def label(self, n: int, kind: str = "regular") -> TimeLabel:
        ring = self.ring
        if kind == "any":
            kind = self.rng.choice(["regular", "singular", "mixed"] if n >= 2 else ["regular", "singular"])
        if kind == "mixed" and n < 2:
            raise ValueError("a mixed label needs at least two factors")
        t = [self.scalar() for _ in range(n)]
        if kind == "regular":
            singular = set()
        elif kind == "singular":
            singular = set(range(n))
        else:
            singular = set(self.rng.sample(range(n), self.rng.randint(1, n - 1)))
        s = [t[i] if i in singular else ring.sub(t[i], self.unit()) for i in range(n)]
        return TimeLabel(tuple(t), tuple(s), ring)

    def element(self, label: TimeLabel, dim: int | None = None) -> TangentElement:
        size = 1 << label.n
        if dim is None:
            values = [self.scalar() for _ in range(size)]
        else:
            values = [[self.scalar() for _ in range(dim)] for _ in range(size)]
        return TangentElement.from_coefficients(label, values)

    def subset(self, n: int) -> SubsetIdx:
        return SubsetIdx(self.rng.randrange(1 << n), n)

    def block(self, singular: bool = False) -> TwoByTwo:
        if singular:
            a, b, k = self.scalar(), self.scalar(), self.scalar()
            return TwoByTwo(a, b, self.ring.mul(k, a), self.ring.mul(k, b))
        while True:
            block = TwoByTwo(*(self.scalar() for _ in range(4)))
            if self.ring.is_unit(block.det(self.ring)):
                return block

    def blocks(self, n: int, allow_singular: bool = False) -> list[TwoByTwo]:
        return [self.block(singular=allow_singular and self.rng.random() < 0.3) for _ in range(n)]

    def polynomial(self, names: list[str], degree: int = 4, terms: int = 4) -> Expr:
        expr: Expr | None = None
        for _ in range(self.rng.randint(1, terms)):
            term: Expr = Const(Fraction(self.rng.randint(-5, 5), self.rng.randint(1, 2)))
            budget = self.rng.randint(0, degree)
            while budget:
                k = self.rng.randint(1, budget)
                term = Mul(term, Pow(Var(self.rng.choice(names)), k))
                budget -= k
            expr = term if expr is None else Add(expr, term)
        return expr


# --- Suites ---

SUITES: dict[str, Callable[[Generator, SuiteResult, int, int], None]] = {}


def suite(name: str):
    def register(fn):
        SUITES[name] = fn
        return fn
    return register


@suite("algebra")
def algebra_suite(gen: Generator, result: SuiteResult, cases: int, max_n: int) -> None:
    ring = gen.ring
    for _ in range(cases):
        n = gen.rng.randint(1, max_n)
        label = gen.label(n, "any")
        x, y, z = gen.element(label), gen.element(label), gen.element(label)
        one = talg.one(label)
        result.check("mul matches reduced polynomial product", lambda: x * y == poly_mul(x, y))
        result.check("commutative", lambda: x * y == y * x)
        result.check("associative", lambda: (x * y) * z == x * (y * z))
        result.check("distributive", lambda: x * (y + z) == x * y + x * z)
        result.check("unit", lambda: one * x == x)
        result.check("power", lambda: x ** 3 == x * x * x)

        def inverse_law():
            try:
                inv = talg.try_invert_element(x)
            except NotInvertible:
                # on a regular label x is a unit exactly when every evaluation point is
                return not label.is_regular() or not all(ring.is_unit(p) for p in evaluation_points(x))
            return x * inv == one

        result.check("inverse back-multiplies", inverse_law)

        a, b = gen.subset(n), gen.subset(n)
        target = TimeLabel.target(label.t, ring)
        result.check(
            "target calculus e_A e_B = t_{A∩B} e_{A∪B}",
            lambda: talg.basis(target, a) * talg.basis(target, b)
            == talg.basis(target, a.union(b)) * product_over(target.t, a.intersect(b), ring),
        )
        sym = TimeLabel.symmetric(label.t, ring)
        squares = [ring.mul(v, v) for v in sym.t]
        result.check(
            "symmetric calculus e_A e_B = (t^2)_{A∩B} e_{AΔB}",
            lambda: talg.basis(sym, a) * talg.basis(sym, b)
            == talg.basis(sym, a.symdiff(b)) * product_over(squares, a.intersect(b), ring),
        )

        other = gen.label(gen.rng.randint(0, 2), "any") if max_n > 1 else TimeLabel.empty(ring)
        u, w = gen.element(other), gen.element(other)
        result.check(
            "tensor product is multiplicative",
            lambda: talg.tensor(x, u) * talg.tensor(y, w) == talg.tensor(x * y, u * w),
        )
        perm = list(range(1, n + 1))
        gen.rng.shuffle(perm)
        result.check("flip is an algebra morphism", lambda: talg.flip(x * y, perm) == talg.flip(x, perm) * talg.flip(y, perm))


@suite("anchor")
def anchor_suite(gen: Generator, result: SuiteResult, cases: int, max_n: int) -> None:
    ring = gen.ring
    for _ in range(cases):
        n = gen.rng.randint(1, max_n)
        label = gen.label(n, "regular")
        x, y = gen.element(label), gen.element(label)
        identity = CubeMatrix.identity(n, ring)
        upsilon = anchor_matrix(label)
        inverse = anchor_inverse_matrix(label)
        result.check("inverse anchor after anchor is the identity", lambda: inverse @ upsilon == identity)
        result.check("anchor after inverse anchor is the identity", lambda: upsilon @ inverse == identity)
        result.check("anchor is multiplicative", lambda: anchor_apply(x * y) == anchor_apply(x) * anchor_apply(y))
        result.check("lazy anchor matches dense anchor", lambda: anchor_apply(x) == anchor_apply_dense(x))
        result.check("anchor is a Kronecker product of first-order anchors", lambda: anchor_matrix_kron(label) == upsilon)
        result.check("inverse anchor recovers the element", lambda: anchor_inverse_apply(anchor_apply(x), label) == x)
        result.check("kappa is exchange on the cube", lambda: anchor_apply(talg.kappa(x)) == anchor_apply(x).exchange())
        c = gen.scalar()
        result.check(
            "anchor of a constant is constant",
            lambda: anchor_apply(talg.from_base(label, c)) == CubeElement.constant(n, c, ring),
        )

        def singular_rejected():
            try:
                anchor_inverse_matrix(gen.label(n, "singular"))
            except NotRegular:
                return True
            return False

        result.check("singular label has no inverse anchor", singular_rejected)


@suite("kron")
def kron_suite(gen: Generator, result: SuiteResult, cases: int, max_n: int) -> None:
    ring = gen.ring
    for _ in range(cases):
        n = gen.rng.randint(1, min(max_n + 1, 5))
        blocks = gen.blocks(n, allow_singular=True)
        f = kron_n(blocks, ring)
        result.check("closed form matches naive Kronecker product", lambda: f == CubeMatrix(n, naive_kron(blocks, ring), ring))
        row, col = gen.subset(n), gen.subset(n)
        result.check("lazy entry matches matrix entry", lambda: ring.equal(kron_entry(blocks, row, col, ring), f.entry(row, col)))
        v = [gen.scalar() for _ in range(1 << n)]
        result.check(
            "factor-wise application matches matrix product",
            lambda: all(ring.equal(a, b) for a, b in zip(kron_apply(blocks, v, ring), f @ v)),
        )
        det_product = ring.one()
        for block in blocks:
            det_product = ring.mul(det_product, block.det(ring))
        adj = symplectic_adjugate(blocks, ring)
        ops = sign_ops(n, ring)
        result.check(
            "f times adjugate is the determinant product times identity",
            lambda: f @ adj == CubeMatrix.identity(n, ring).scale(det_product),
        )
        result.check("adjugate is J f^T J^-1", lambda: ops.J @ f.transpose() @ ops.J_inv == adj)
        if n <= max_n:
            result.check("determinant matches elimination", lambda: ring.equal(kron_det(blocks, ring), gauss_det(f.entries, ring)))
            regular = gen.blocks(n)
            g = kron_n(regular, ring)
            result.check(
                "closed-form inverse matches elimination",
                lambda: kron_inverse(regular, ring) == CubeMatrix(n, gauss_inverse(g.entries, ring), ring),
            )


def _random_map(gen: Generator, names: list[str], outputs: int, degree: int = 4) -> list[Expr]:
    return [gen.polynomial(names, degree) for _ in range(outputs)]


@suite("slope")
def slope_suite(gen: Generator, result: SuiteResult, cases: int, max_n: int) -> None:
    ring = gen.ring
    for _ in range(cases):
        n = gen.rng.randint(1, min(max_n, 3))
        names = ["x", "y", "z"][: gen.rng.randint(1, 3)]
        outputs = gen.rng.randint(1, 2)
        asts = _random_map(gen, names, outputs)
        f = PointFn.from_expressions(asts, names, ring)
        label = gen.label(n, "regular")
        v = gen.element(label, len(names))
        anchored = slope_n(f, label, v)
        result.check("anchor path matches weighted formula", lambda: anchored.element == slope_n_formula(f, label, v).element)
        result.check("anchor path matches algebra evaluation", lambda: anchored.element == slope_algebra(asts, names, label, v).element)
        result.check(
            "slope commutes with the anchor",
            lambda: anchor_apply(anchored.element) == CubeElement.from_values(anchored.values, ring),
        )
        b = gen.subset(n)
        total = ring.zero()
        for w in slope_weights(label, b):
            total = ring.add(total, w)
        expected = ring.one() if b.bits == 0 else ring.zero()
        result.check("formula weights are affine / zero-sum", lambda: ring.equal(total, expected))
        ident = PointFn.from_expressions([Var(name) for name in names], names, ring)
        result.check("identity map has identity slope", lambda: slope_n(ident, label, v).element == v)

        # chain rule at every kind of label
        kind = gen.rng.choice(["regular", "singular", "mixed"] if n >= 2 else ["regular", "singular"])
        chain_label = gen.label(n, kind)
        inner = _random_map(gen, names, len(names), degree=2)
        outer = gen.polynomial(names, degree=2)
        args = {name: gen.element(chain_label) for name in names}
        composed = compose(outer, dict(zip(names, inner)))
        result.check(
            f"chain rule ({kind} label)",
            lambda: extend_expr(composed, chain_label, args)
            == extend_expr(outer, chain_label, {name: extend_expr(g, chain_label, args) for name, g in zip(names, inner)}),
        )

        # derivatives read off the most singular label
        p = asts[0]
        point = {name: gen.scalar() for name in names}
        first, second = names[0], names[-1]
        result.check(
            "first derivative matches symbolic derivative",
            lambda: ring.equal(derivative(p, point, [first], ring), evaluate(symbolic_derivative(p, first), point, ring)),
        )
        result.check(
            "mixed second derivative matches symbolic derivative",
            lambda: ring.equal(
                derivative(p, point, [first, second], ring),
                evaluate(symbolic_derivative(symbolic_derivative(p, first), second), point, ring),
            ),
        )


@suite("structure")
def structure_suite(gen: Generator, result: SuiteResult, cases: int, max_n: int) -> None:
    ring = gen.ring
    for _ in range(cases):
        label = gen.label(1, "any")
        t, s = label.t[0], label.s[0]
        e = talg.basis(label, SubsetIdx.full(1))
        one = talg.one(label)
        v = gen.element(label)
        a, b = gen.scalar(), gen.scalar()
        ker_alpha = TangentElement.from_coefficients(label, [ring.neg(ring.mul(s, a)), a])
        ker_beta = TangentElement.from_coefficients(label, [ring.neg(ring.mul(t, b)), b])
        result.check("ker alpha times ker beta vanishes", lambda: (ker_alpha * ker_beta).is_zero())
        result.check("fundamental relation (e - t)(e - s) = 0", lambda: ((e - one * t) * (e - one * s)).is_zero())
        result.check("kappa is an involution", lambda: talg.kappa(talg.kappa(v)) == v)
        result.check("alpha after kappa is beta", lambda: ring.equal(talg.alpha(talg.kappa(v)), talg.beta(v)))
        ab = ring.mul(talg.alpha(v), talg.beta(v))
        result.check("v kappa(v) = alpha(v) beta(v)", lambda: v * talg.kappa(v) == one * ab)

        def inversion_criterion():
            try:
                inv = talg.try_invert_element(v)
            except NotInvertible:
                return not ring.is_unit(ab)
            return ring.is_unit(ab) and v * inv == one

        result.check("invertible exactly when alpha(v) beta(v) is a unit", inversion_criterion)

        # composable triple u, w, z with alpha(u) = beta(w), alpha(w) = beta(z)
        u = gen.element(label)
        w1, z1 = gen.scalar(), gen.scalar()
        w = TangentElement.from_coefficients(label, [ring.sub(talg.alpha(u), ring.mul(t, w1)), w1])
        z = TangentElement.from_coefficients(label, [ring.sub(talg.alpha(w), ring.mul(t, z1)), z1])
        compose_ = talg.groupoid_compose
        result.check("left unit", lambda: compose_(talg.groupoid_unit(talg.beta(u), label), u) == u)
        result.check("right unit", lambda: compose_(u, talg.groupoid_unit(talg.alpha(u), label)) == u)
        result.check("groupoid associativity", lambda: compose_(compose_(u, w), z) == compose_(u, compose_(w, z)))
        result.check("kappa(u) * u is the unit at alpha(u)", lambda: compose_(talg.kappa(u), u) == one * talg.alpha(u))
        result.check("u * kappa(u) is the unit at beta(u)", lambda: compose_(u, talg.kappa(u)) == one * talg.beta(u))

        if label.is_regular():
            f = PointFn.from_expressions([gen.polynomial(["x"], degree=4)], ["x"], ring)
            v0, v1 = gen.scalar(), gen.scalar()
            forward, swapped = slope1(f, v0, v1, t, s, ring), slope1(f, v0, v1, s, t, ring)
            result.check(
                "time swap leaves the first-order slope unchanged",
                lambda: all(ring.equal(p, q) for p, q in zip(forward.element.coeffs.flat, swapped.element.coeffs.flat)),
            )
        two = ring.coerce(2)
        if ring.is_unit(two):
            sym = TimeLabel.symmetric((t,), ring)
            m = TangentElement.from_coefficients(sym, list(v.coeffs))
            lo, hi = evaluation_points(m)
            result.check(
                "symmetric calculus footpoint is the midpoint",
                lambda: ring.equal(m.coeffs[0], ring.mul(ring.add(lo, hi), ring.try_invert(two))),
            )


# --- Running ---

def run_suite(name: str, seed: int = 0, cases: int = 100, max_n: int = 4, ring: Ring = RATIONAL) -> SuiteResult:
    if name not in SUITES:
        raise ValueError(f"unknown suite '{name}' (expected one of {', '.join(SUITES)})")
    result = SuiteResult(name)
    gen = Generator(random.Random(f"{seed}:{name}"), ring)
    started = time.perf_counter()
    SUITES[name](gen, result, cases, max_n)
    result.seconds = time.perf_counter() - started
    logger.info(f"suite {name}: {result.passed} passed, {result.failed} failed in {result.seconds:.2f}s")
    return result


def run_suites(names, seed: int = 0, cases: int = 100, max_n: int = 4, ring: Ring = RATIONAL) -> list[SuiteResult]:
    """Run the named suites in order; "all" expands to every registered suite."""
    if isinstance(names, str):
        names = [names]
    expanded = []
    for name in names:
        expanded.extend(SUITES if name == "all" else [name])
    return [run_suite(name, seed, cases, max_n, ring) for name in expanded]
