# tangent-calculus/utils/__init__.py
from .json_output import scalar_json, subset_json, label_json, element_json, matrix_json, emit, say
from .arguments import (
    parse_scalar, parse_scalar_list, parse_point, parse_bindings, parse_blocks, parse_coefficients
)
from .report_persistence import write_report

__all__ = [
    'scalar_json',
    'subset_json',
    'label_json',
    'element_json',
    'matrix_json',
    'emit',
    'say',
    'parse_scalar',
    'parse_scalar_list',
    'parse_point',
    'parse_bindings',
    'parse_blocks',
    'parse_coefficients',
    'write_report',
]
