import json
import logging
import sys

from tangent.hypercube import SubsetIdx, TimeLabel
from tangent.hyperlin import CubeMatrix
from tangent.ring import Ring
from tangent.talg import TangentElement

logger = logging.getLogger(__name__)

# --- Encoding ---

def scalar_json(value, ring: Ring):
    """Rationals become "p" or "p/q" strings, floats stay numbers."""
    if isinstance(value, (tuple, list)):
        return [ring.to_json(v) for v in value]
    return ring.to_json(value)


def subset_json(subset: SubsetIdx) -> list[int]:
    return subset.elements()


def label_json(label: TimeLabel) -> dict:
    return {
        "n": label.n,
        "t": [label.ring.to_json(v) for v in label.t],
        "s": [label.ring.to_json(v) for v in label.s],
        "kind": label.classify().value,
    }


def element_json(element: TangentElement) -> dict:
    """Coefficients in ascending subset order, each tagged with its subset."""
    ring = element.ring
    return {
        "label": label_json(element.label),
        "coefficients": [
            {"subset": subset_json(a), "value": scalar_json(v, ring)} for a, v in element.items()
        ],
    }


def matrix_json(matrix: CubeMatrix) -> dict:
    ring = matrix.ring
    return {
        "dim": matrix.dim,
        "rows": [[ring.to_json(x) for x in row] for row in matrix.to_rows()],
    }


# --- Output ---

def emit(payload: dict, stream=None):
    """Write one JSON document to stdout (results only; logs go to stderr)."""
    stream = stream or sys.stdout
    stream.write(json.dumps(payload) + "\n")
    stream.flush()


def say(message: str):
    """Human-readable summary line on stderr."""
    sys.stderr.write(message + "\n")
