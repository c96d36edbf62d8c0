import logging

from tangent.anchor import anchor_inverse_matrix, anchor_matrix
from tangent.hypercube import TimeLabel
from tangent.hyperlin import kron_det, kron_inverse, kron_n, symplectic_adjugate

from utils import emit, label_json, matrix_json, parse_blocks, parse_scalar_list, scalar_json

logger = logging.getLogger(__name__)


def anchor(app, args):
    ring = app.ring
    label = TimeLabel(tuple(parse_scalar_list(args.t, ring)), tuple(parse_scalar_list(args.s, ring)), ring)
    app.check_dim(label.n)
    matrix = anchor_inverse_matrix(label) if args.inverse else anchor_matrix(label)
    emit({"label": label_json(label), "inverse": args.inverse, "matrix": matrix_json(matrix)})


def kron(app, args):
    ring = app.ring
    blocks = parse_blocks(args.blocks, ring)
    app.check_dim(len(blocks))
    if args.det:
        emit({"value": scalar_json(kron_det(blocks, ring), ring)})
        return
    if args.inverse:
        matrix = kron_inverse(blocks, ring)
    elif args.adjugate:
        matrix = symplectic_adjugate(blocks, ring)
    else:
        matrix = kron_n(blocks, ring)
    emit({"matrix": matrix_json(matrix)})


def setup(app):
    parser = app.add_command("anchor", anchor, "anchor matrix of a time label (or its inverse)")
    parser.add_argument("--t", required=True, help="comma separated t_1..t_n")
    parser.add_argument("--s", required=True, help="comma separated s_1..s_n")
    parser.add_argument("--inverse", action="store_true")

    parser = app.add_command("kron", kron, "Kronecker product of 2x2 blocks, its inverse, determinant or adjugate")
    parser.add_argument("--blocks", required=True, help='JSON list of 2x2 matrices, e.g. [[[1,0],[0,1]]]')
    mode = parser.add_mutually_exclusive_group()
    mode.add_argument("--inverse", action="store_true")
    mode.add_argument("--det", action="store_true")
    mode.add_argument("--adjugate", action="store_true")
