import logging

from tangent.expr import parse, variables
from tangent.hypercube import TimeLabel
from tangent.ring import FloatRing
from tangent.slope import PointFn, derivative, slope1, slope_algebra, slope_n, slope_n_formula
from tangent.talg import TangentElement

from utils import (
    emit, element_json, label_json, parse_bindings, parse_coefficients, parse_point,
    parse_scalar, parse_scalar_list, scalar_json,
)

logger = logging.getLogger(__name__)


def _parse_expr(app, text: str):
    return parse(text, allow_decimals=isinstance(app.ring, FloatRing))


def _names(asts, given):
    if given:
        return [name.strip() for name in given.split(",") if name.strip()]
    names = sorted({v for ast in asts for v in variables(ast)})
    return names or ["x"]


def _unwrap(value):
    # single-output maps print a scalar, not a one-element list
    return value[0] if isinstance(value, list) and len(value) == 1 else value


# --- derive ---

def derive(app, args):
    ring = app.ring
    ast = _parse_expr(app, args.expr)
    names = list(args.var)
    if args.order is not None:
        if args.order < 1:
            raise ValueError("--order must be at least 1")
        if len(names) == 1:
            names = names * args.order
        elif len(names) != args.order:
            raise ValueError(f"--order {args.order} needs one --var or exactly {args.order} of them")
    app.check_dim(len(names))
    point = parse_bindings(args.at or [], ring)
    value = derivative(ast, point, names, ring)
    emit({"value": scalar_json(value, ring), "order": len(names), "variables": names})


# --- divdiff ---

def divdiff(app, args):
    ring = app.ring
    ast = _parse_expr(app, args.expr)
    names = _names([ast], args.vars)
    f = PointFn.from_expressions([ast], names, ring)
    v0, v1 = parse_point(args.v0, ring), parse_point(args.v1, ring)
    t, s = parse_scalar(args.t, ring), parse_scalar(args.s, ring)
    result = slope1(f, v0, v1, t, s, ring)
    w0, w1 = (scalar_json(list(result.element.coeffs[i]), ring) for i in (0, 1))
    emit({
        "w0": _unwrap(w0),
        "w1": _unwrap(w1),
        "points": [scalar_json(list(p), ring) for p in result.points],
    })


# --- slope ---

METHODS = ("auto", "anchor", "formula", "algebra")


def slope(app, args):
    ring = app.ring
    asts = [_parse_expr(app, text) for text in args.expr]
    names = _names(asts, args.vars)
    label = TimeLabel(tuple(parse_scalar_list(args.t, ring)), tuple(parse_scalar_list(args.s, ring)), ring)
    app.check_dim(label.n)
    coeffs = parse_coefficients(args.coeffs, ring)
    v = TangentElement.from_coefficients(label, coeffs)
    method = args.method
    if method == "auto":
        method = "anchor" if label.is_regular() else "algebra"
        logger.info(f"auto method picked '{method}' for a {label.classify().value} label")
    workers = app.config["workers"]
    if method == "algebra":
        result = slope_algebra(asts, names, label, v)
    else:
        f = PointFn.from_expressions(asts, names, ring)
        compute = slope_n if method == "anchor" else slope_n_formula
        result = compute(f, label, v, workers=workers)
    emit({
        "label": label_json(label),
        "method": method,
        "point": element_json(v),
        "result": element_json(result.element),
    })


def setup(app):
    parser = app.add_command("derive", derive, "k-th (mixed) partial derivative of an expression at a point")
    parser.add_argument("--expr", required=True, help="expression text, e.g. 'x^3 + x*y'")
    parser.add_argument("--var", action="append", required=True, help="differentiation variable (repeatable)")
    parser.add_argument("--order", type=int, default=None, help="derivative order (repeats a single --var)")
    parser.add_argument("--at", action="append", help="bindings name=value[,name=value...]")

    parser = app.add_command("divdiff", divdiff, "first-order slope (w0, w1) of an expression")
    parser.add_argument("--expr", required=True)
    parser.add_argument("--vars", default=None, help="comma separated variable order (default: sorted)")
    parser.add_argument("--v0", required=True, help="footpoint, comma separated coordinates")
    parser.add_argument("--v1", required=True, help="direction, comma separated coordinates")
    parser.add_argument("--t", required=True)
    parser.add_argument("--s", required=True)

    parser = app.add_command("slope", slope, "n-th order slope of an expression-backed map at a tangent element")
    parser.add_argument("--expr", action="append", required=True, help="one output component (repeatable)")
    parser.add_argument("--vars", default=None, help="comma separated variable order (default: sorted)")
    parser.add_argument("--t", required=True, help="comma separated t_1..t_n")
    parser.add_argument("--s", required=True, help="comma separated s_1..s_n")
    parser.add_argument("--coeffs", required=True, help="JSON list of 2^n coefficients (scalars or points)")
    parser.add_argument("--method", choices=METHODS, default="auto")
