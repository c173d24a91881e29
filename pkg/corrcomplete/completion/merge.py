from dataclasses import dataclass, field

import numpy as np

from corrcomplete.errors import InvalidInput, SeparatorMismatch
from corrcomplete.linalg import DEFAULT_PIVOT_TOL, solve_spd
from corrcomplete.pattern import DenseCorrMatrix
from corrcomplete.utils.logger import logger


@dataclass(frozen=True, eq=False)
class Block:
    """Symmetric matrix whose rows and columns are the listed vertices."""
    vertices: tuple
    values: np.ndarray

    def __post_init__(self):
        vertices = tuple(int(v) for v in self.vertices)
        values = np.asarray(self.values, dtype=np.float64)
        if values.shape != (len(vertices), len(vertices)):
            raise ValueError(f"block over {len(vertices)} vertices has shape {values.shape}")
        if len(set(vertices)) != len(vertices):
            raise ValueError("block vertices must be distinct")
        object.__setattr__(self, 'vertices', vertices)
        object.__setattr__(self, 'values', values)
        object.__setattr__(self, 'position', {v: k for k, v in enumerate(vertices)})

    def rect(self, rows, cols):
        return self.values[np.ix_([self.position[v] for v in rows], [self.position[v] for v in cols])]

    def sub(self, vertices):
        return self.rect(vertices, vertices)


@dataclass(frozen=True)
class MergeStep:
    '''
    One application of W = B C^-1 D.

    new_clique plays H_X, separator the shared C, absorbed the already
    completed vertices outside C; filled holds ((i, j), value) with i < j.
    '''
    new_clique: frozenset
    separator: frozenset
    absorbed: frozenset
    filled: tuple = field(default=())

    @property
    def fresh(self):
        return self.new_clique - self.separator

    def to_dict(self, labels):
        def name(vertices):
            return [labels[v] for v in sorted(vertices)]

        return {
            'clique': name(self.new_clique),
            'separator': name(self.separator),
            'absorbed': name(self.absorbed),
            'filled': [
                {'row': labels[i], 'col': labels[j], 'value': value}
                for (i, j), value in self.filled
            ],
        }


def merge_step(acc, clique, separator, pivot_tol=DEFAULT_PIVOT_TOL, atol=0.0):
    '''
    Join a clique block onto the accumulated block through their shared separator.

    The cross block between the clique's new vertices and the accumulated
    vertices outside the separator is W = B C^-1 D; it is zero when the
    separator is empty. Entries already present in `acc` are copied unchanged.
    '''
    separator = frozenset(separator)
    shared = frozenset(acc.vertices) & frozenset(clique.vertices)
    if separator != shared:
        raise InvalidInput(
            f"separator {sorted(separator)} must equal the shared vertices {sorted(shared)}"
        )
    sep = sorted(separator)
    fresh = [v for v in clique.vertices if v not in separator]
    rest = [v for v in acc.vertices if v not in separator]

    if sep:
        difference = float(np.max(np.abs(acc.sub(sep) - clique.sub(sep))))
        if difference > atol:
            raise SeparatorMismatch(sep, difference)
        b = clique.rect(fresh, sep)
        c = clique.sub(sep)
        d = acc.rect(sep, rest)
        w = b @ solve_spd(c, d, pivot_tol)
    else:
        w = np.zeros((len(fresh), len(rest)))

    vertices = acc.vertices + tuple(fresh)
    size = len(vertices)
    k = len(acc.vertices)
    values = np.empty((size, size))
    values[:k, :k] = acc.values
    position = {v: p for p, v in enumerate(vertices)}
    fresh_pos = [position[v] for v in fresh]
    clique_pos = [position[v] for v in clique.vertices]
    rest_pos = [position[v] for v in rest]
    values[np.ix_(fresh_pos, clique_pos)] = clique.rect(fresh, clique.vertices)
    values[np.ix_(clique_pos, fresh_pos)] = clique.rect(clique.vertices, fresh)
    values[np.ix_(fresh_pos, rest_pos)] = w
    values[np.ix_(rest_pos, fresh_pos)] = w.T

    filled = tuple(
        ((min(i, j), max(i, j)), float(w[a, b]))
        for a, i in enumerate(fresh)
        for b, j in enumerate(rest)
    )
    step = MergeStep(frozenset(clique.vertices), separator, frozenset(rest), filled)
    logger.debug('Merged clique', extra={
        'clique_size': len(clique.vertices),
        'separator_size': len(sep),
        'absorbed': len(rest),
        'filled': len(filled),
    })
    return Block(vertices, values), step


def merge_models(left, right, atol=0.0, pivot_tol=DEFAULT_PIVOT_TOL):
    '''
    Combine two correlation matrices that share some labels.

    The shared labels form C; left-only labels take the H_X role and
    right-only labels the H_Y role. The result is ordered as right's labels
    followed by the left-only labels.
    '''
    labels = tuple(right.labels) + tuple(label for label in left.labels if label not in set(right.labels))
    index = {label: i for i, label in enumerate(labels)}
    acc = Block(tuple(range(right.n)), right.values)
    clique = Block(tuple(index[label] for label in left.labels), left.values)
    separator = frozenset(index[label] for label in left.labels if label in set(right.labels))
    try:
        merged, step = merge_step(acc, clique, separator, pivot_tol=pivot_tol, atol=atol)
    except SeparatorMismatch as e:
        raise SeparatorMismatch([labels[v] for v in e.labels], e.difference) from e
    logger.info('Merged two correlation matrices', extra={
        'left': left.n, 'right': right.n, 'shared': len(separator),
    })
    return DenseCorrMatrix(labels, merged.sub(tuple(range(len(labels))))), step
