"""Anchored tangent algebras K^n_{(t,s)}, divided differences and Kronecker hyperlinear algebra."""
from .errors import (
    TangentError, NotInvertible, NotRegular, DomainError, LabelMismatch, DimensionMismatch,
    PayloadError, NotComposable, ExprSyntaxError, UnboundVariable, ConfigError,
)
from .ring import Ring, RationalRing, FloatRing, RATIONAL, ring_from_name
from .hypercube import MAX_DIM, SubsetIdx, TimeLabel, LabelKind, Calculus, subsets, classify, oplus
from .hyperlin import TwoByTwo, CubeMatrix, kron_n, kron_entry, kron_apply, kron_det, kron_inverse, symplectic_adjugate, sign_ops
from .talg import TangentElement, TangentAlgebra
from .anchor import CubeElement, anchor_matrix, anchor_apply, anchor_inverse_matrix, anchor_inverse_apply, character
from .expr import parse, evaluate, to_text, symbolic_derivative
from .slope import PointFn, SlopeResult, slope1, slope_n, slope_n_formula, extend_expr, derivative

__version__ = "0.1.0"

__all__ = [
    'TangentError', 'NotInvertible', 'NotRegular', 'DomainError', 'LabelMismatch', 'DimensionMismatch',
    'PayloadError', 'NotComposable', 'ExprSyntaxError', 'UnboundVariable', 'ConfigError',
    'Ring', 'RationalRing', 'FloatRing', 'RATIONAL', 'ring_from_name',
    'MAX_DIM', 'SubsetIdx', 'TimeLabel', 'LabelKind', 'Calculus', 'subsets', 'classify', 'oplus',
    'TwoByTwo', 'CubeMatrix', 'kron_n', 'kron_entry', 'kron_apply', 'kron_det', 'kron_inverse',
    'symplectic_adjugate', 'sign_ops',
    'TangentElement', 'TangentAlgebra',
    'CubeElement', 'anchor_matrix', 'anchor_apply', 'anchor_inverse_matrix', 'anchor_inverse_apply', 'character',
    'parse', 'evaluate', 'to_text', 'symbolic_derivative',
    'PointFn', 'SlopeResult', 'slope1', 'slope_n', 'slope_n_formula', 'extend_expr', 'derivative',
]
