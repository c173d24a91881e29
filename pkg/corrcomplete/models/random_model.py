import itertools

import networkx as nx
import numpy as np

from corrcomplete.errors import InvalidInput
from corrcomplete.linalg import symmetrize
from corrcomplete.pattern import DenseCorrMatrix, PartialMatrix
from corrcomplete.utils.logger import logger
from .base_model import BaseModel


def random_chordal_edges(n, rng, fill_probability=0.3):
    '''
    Random edges plus the fill of eliminating vertices in a random order,
    which makes that order a perfect elimination order.
    '''
    order = rng.permutation(n)
    graph = nx.Graph()
    graph.add_nodes_from(range(n))
    for a, b in itertools.combinations(order.tolist(), 2):
        if rng.random() < fill_probability:
            graph.add_edge(a, b)
    position = {int(v): k for k, v in enumerate(order)}
    for v in order.tolist():
        later = sorted((u for u in graph.neighbors(v) if position[u] > position[v]), key=position.__getitem__)
        graph.add_edges_from(itertools.combinations(later, 2))
    return sorted((min(i, j), max(i, j)) for i, j in graph.edges())


def random_correlation(n, rng):
    '''
    Normalized Gram matrix of n random unit vectors in 2n dimensions.
    '''
    vectors = rng.standard_normal((n, 2 * n))
    vectors /= np.linalg.norm(vectors, axis=1, keepdims=True)
    gram = symmetrize(vectors @ vectors.T)
    np.fill_diagonal(gram, 1.0)
    return gram


def random_instance(n, seed, fill_probability=0.3):
    '''
    Random PD correlation matrix masked to a random chordal pattern.

    Returns (pattern, source); every clique block of the pattern is a
    principal block of the PD source, so the pattern is completable.
    '''
    n = int(n)
    if n < 1:
        raise InvalidInput(f"n must be at least 1, got {n}")
    fill_probability = float(fill_probability)
    if not 0.0 <= fill_probability <= 1.0:
        raise InvalidInput(f"fill probability must lie in [0, 1], got {fill_probability}")
    rng = np.random.default_rng(seed)
    edges = random_chordal_edges(n, rng, fill_probability)
    values = random_correlation(n, rng)
    labels = tuple(f"x{i}" for i in range(n))
    pattern = PartialMatrix(labels, {(i, j): float(values[i, j]) for i, j in edges})
    logger.debug('Generated random instance', extra={'n': n, 'seed': seed, 'edges': len(edges)})
    return pattern, DenseCorrMatrix(labels, values)


def random_pattern(n, seed, fill_probability=0.3):
    pattern, _ = random_instance(n, seed, fill_probability)
    return pattern


class RandomModel(BaseModel):
    def __init__(self, n, seed, fill_probability=0.3):
        super().__init__('random')
        self.n = n
        self.seed = seed
        self.fill_probability = fill_probability
        self._pattern, self._source = random_instance(n, seed, fill_probability)

    def pattern(self):
        return self._pattern

    def source(self):
        return self._source

    def describe(self):
        return {
            'model': self.model_name,
            'n': self.n,
            'seed': self.seed,
            'fill_probability': self.fill_probability,
        }
