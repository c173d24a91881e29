from .partial_matrix import DenseCorrMatrix, Label, PartialMatrix, validate_labels
from .io import MatrixFormat, parse_dense, parse_partial, serialize_dense, serialize_partial

__all__ = [
    'DenseCorrMatrix',
    'Label',
    'MatrixFormat',
    'PartialMatrix',
    'parse_dense',
    'parse_partial',
    'serialize_dense',
    'serialize_partial',
    'validate_labels',
]
