from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Mapping

import numpy as np

from corrcomplete.errors import InvalidInput
from corrcomplete.utils.utils import LABEL_FORBIDDEN, is_correlation_value

Label = str


def validate_labels(labels):
    labels = tuple(labels)
    if len(labels) < 1:
        raise InvalidInput("a correlation matrix needs at least one label")
    seen = set()
    for label in labels:
        if not isinstance(label, str) or not label:
            raise InvalidInput(f"labels must be non-empty strings, got {label!r}")
        if any(ch in label for ch in LABEL_FORBIDDEN):
            raise InvalidInput(f"label {label!r} contains a comma or newline")
        if label in seen:
            raise InvalidInput(f"duplicate label {label!r}")
        seen.add(label)
    return labels


def _coerce_value(value, where):
    if isinstance(value, bool):
        raise InvalidInput(f"value for {where} must be a number, got {value!r}")
    try:
        value = float(value)
    except (TypeError, ValueError):
        raise InvalidInput(f"value for {where} must be a number, got {value!r}")
    if not is_correlation_value(value):
        raise InvalidInput(
            f"value for {where} must lie strictly between -1 and 1, got {value!r}"
        )
    return value


@dataclass(frozen=True, eq=False)
class PartialMatrix:
    '''
    Unit-diagonal symmetric matrix with some off-diagonal entries specified.

    `specified` maps index pairs (i, j) to values. Keys are normalized to
    i < j; the diagonal is implicitly 1.0 and never stored.
    '''
    labels: tuple
    specified: Mapping = field(default_factory=dict)

    def __post_init__(self):
        labels = validate_labels(self.labels)
        n = len(labels)
        normalized = {}
        for key, value in dict(self.specified).items():
            try:
                i, j = key
                i, j = int(i), int(j)
            except (TypeError, ValueError):
                raise InvalidInput(f"entry key must be an index pair, got {key!r}")
            if not (0 <= i < n and 0 <= j < n):
                raise InvalidInput(f"entry ({i}, {j}) is out of range for {n} labels")
            if i == j:
                raise InvalidInput(f"diagonal entry for {labels[i]!r} cannot be specified")
            pair = (min(i, j), max(i, j))
            if pair in normalized:
                raise InvalidInput(
                    f"pair ({labels[pair[0]]}, {labels[pair[1]]}) is specified twice"
                )
            normalized[pair] = _coerce_value(value, f"({labels[pair[0]]}, {labels[pair[1]]})")
        object.__setattr__(self, 'labels', labels)
        object.__setattr__(self, 'specified', MappingProxyType(dict(sorted(normalized.items()))))
        object.__setattr__(self, '_index', {label: i for i, label in enumerate(labels)})

    @classmethod
    def from_entries(cls, labels, entries):
        '''
        Build from (row_label, col_label, value) triples.
        '''
        labels = validate_labels(labels)
        index = {label: i for i, label in enumerate(labels)}
        specified = {}
        for row, col, value in entries:
            if row not in index or col not in index:
                missing = row if row not in index else col
                raise InvalidInput(f"entry refers to unknown label {missing!r}")
            i, j = index[row], index[col]
            if i == j:
                raise InvalidInput(f"diagonal entry for {row!r} cannot be specified")
            pair = (min(i, j), max(i, j))
            if pair in specified:
                raise InvalidInput(f"pair ({row}, {col}) is specified twice")
            specified[pair] = value
        return cls(labels, specified)

    @property
    def n(self):
        return len(self.labels)

    def index(self, label):
        try:
            return self._index[label]
        except KeyError:
            raise InvalidInput(f"unknown label {label!r}")

    def is_specified(self, i, j):
        return i == j or (min(i, j), max(i, j)) in self.specified

    def value(self, i, j):
        if i == j:
            return 1.0
        return self.specified.get((min(i, j), max(i, j)))

    def unspecified_pairs(self):
        return [
            (i, j)
            for i in range(self.n)
            for j in range(i + 1, self.n)
            if (i, j) not in self.specified
        ]

    def label_pair(self, pair):
        i, j = pair
        return (self.labels[i], self.labels[j])

    def submatrix(self, vertices):
        '''
        Dense block on `vertices` (in the given order); every pair must be specified.
        '''
        vertices = list(vertices)
        block = np.eye(len(vertices))
        for a, i in enumerate(vertices):
            for b in range(a + 1, len(vertices)):
                value = self.value(i, vertices[b])
                if value is None:
                    raise InvalidInput(
                        f"pair ({self.labels[i]}, {self.labels[vertices[b]]}) is not specified"
                    )
                block[a, b] = block[b, a] = value
        return block

    def zero_fill(self):
        values = np.eye(self.n)
        for (i, j), value in self.specified.items():
            values[i, j] = values[j, i] = value
        return values

    def is_fully_specified(self):
        return len(self.specified) == self.n * (self.n - 1) // 2


@dataclass(frozen=True, eq=False)
class DenseCorrMatrix:
    labels: tuple
    values: np.ndarray

    def __post_init__(self):
        labels = validate_labels(self.labels)
        values = np.array(self.values, dtype=np.float64)
        n = len(labels)
        if values.shape != (n, n):
            raise InvalidInput(f"expected a {n}x{n} matrix, got shape {values.shape}")
        if not np.all(np.isfinite(values)):
            raise InvalidInput("matrix contains non-finite values")
        if not np.all(np.diag(values) == 1.0):
            raise InvalidInput("diagonal of a correlation matrix must be exactly 1")
        if not np.array_equal(values, values.T):
            raise InvalidInput("correlation matrix must be exactly symmetric")
        values.flags.writeable = False
        object.__setattr__(self, 'labels', labels)
        object.__setattr__(self, 'values', values)
        object.__setattr__(self, '_index', {label: i for i, label in enumerate(labels)})

    @classmethod
    def from_partial(cls, m):
        if not m.is_fully_specified():
            missing = m.label_pair(m.unspecified_pairs()[0])
            raise InvalidInput(f"matrix is not fully specified, missing {missing}")
        return cls(m.labels, m.zero_fill())

    @property
    def n(self):
        return len(self.labels)

    def index(self, label):
        try:
            return self._index[label]
        except KeyError:
            raise InvalidInput(f"unknown label {label!r}")

    def entry(self, row, col):
        return float(self.values[self.index(row), self.index(col)])

    def to_partial(self):
        specified = {
            (i, j): float(self.values[i, j])
            for i in range(self.n)
            for j in range(i + 1, self.n)
        }
        return PartialMatrix(self.labels, specified)

    def reorder(self, labels):
        labels = validate_labels(labels)
        if sorted(labels) != sorted(self.labels):
            raise InvalidInput("label sets differ")
        perm = [self.index(label) for label in labels]
        return DenseCorrMatrix(labels, self.values[np.ix_(perm, perm)])

    def equals(self, other):
        return self.labels == other.labels and np.array_equal(self.values, other.values)
