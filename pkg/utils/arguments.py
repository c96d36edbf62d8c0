import json
import logging

from tangent.hyperlin import TwoByTwo
from tangent.ring import Ring

logger = logging.getLogger(__name__)

# --- Parsing of command-line values ---

def parse_scalar(text, ring: Ring):
    try:
        return ring.coerce(text.strip() if isinstance(text, str) else text)
    except (TypeError, ValueError) as e:
        raise ValueError(f"invalid {ring.name} value {text!r}: {e}") from None


def parse_scalar_list(text: str, ring: Ring) -> list:
    """'1,1/2,-3' -> [1, 1/2, -3]; the empty string is the empty list."""
    text = text.strip()
    if not text:
        return []
    return [parse_scalar(part, ring) for part in text.split(",")]


def parse_point(text: str, ring: Ring) -> tuple:
    return tuple(parse_scalar_list(text, ring))


def parse_bindings(texts, ring: Ring) -> dict:
    """['x=1,y=2', 'z=1/2'] -> {'x': 1, 'y': 2, 'z': 1/2}."""
    if isinstance(texts, str):
        texts = [texts]
    bindings = {}
    for text in texts:
        for part in text.split(","):
            part = part.strip()
            if not part:
                continue
            name, sep, value = part.partition("=")
            if not sep or not name.strip():
                raise ValueError(f"binding '{part}' is not of the form name=value")
            bindings[name.strip()] = parse_scalar(value, ring)
    return bindings


def _load_json(text: str, what: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ValueError(f"{what} is not valid JSON: {e}") from None


def parse_blocks(text: str, ring: Ring) -> list[TwoByTwo]:
    """'[[[a,b],[c,d]], ...]' -> 2x2 blocks; entries are numbers or "p/q" strings."""
    data = _load_json(text, "--blocks")
    if not isinstance(data, list) or not data:
        raise ValueError("--blocks must be a non-empty JSON list of 2x2 matrices")
    blocks = []
    for i, block in enumerate(data, start=1):
        if (
            not isinstance(block, list) or len(block) != 2
            or any(not isinstance(row, list) or len(row) != 2 for row in block)
        ):
            raise ValueError(f"block {i} is not a 2x2 matrix")
        (a, b), (c, d) = block
        blocks.append(TwoByTwo(*(parse_scalar(x, ring) for x in (a, b, c, d))))
    return blocks


def parse_coefficients(text: str, ring: Ring) -> list:
    """'[v_0, v_1, ...]' in ascending subset order; each v is a scalar or a list (a point)."""
    data = _load_json(text, "--coeffs")
    if not isinstance(data, list) or not data:
        raise ValueError("--coeffs must be a non-empty JSON list")
    out = []
    for value in data:
        if isinstance(value, list):
            out.append([parse_scalar(x, ring) for x in value])
        else:
            out.append([parse_scalar(value, ring)])
    return out
