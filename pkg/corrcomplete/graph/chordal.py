import heapq
import itertools
from dataclasses import dataclass

import networkx as nx

from corrcomplete.errors import NotChordal
from corrcomplete.utils.logger import logger


@dataclass(frozen=True)
class EliminationOrder:
    """Visit order of maximum cardinality search; its reverse is a perfect elimination order."""
    order: tuple

    def __post_init__(self):
        order = tuple(int(v) for v in self.order)
        if sorted(order) != list(range(len(order))):
            raise ValueError(f"{order} is not a permutation of 0..{len(order) - 1}")
        object.__setattr__(self, 'order', order)

    def __len__(self):
        return len(self.order)

    def __iter__(self):
        return iter(self.order)

    @property
    def position(self):
        return {v: k for k, v in enumerate(self.order)}


@dataclass(frozen=True)
class Clique:
    vertices: frozenset

    def __post_init__(self):
        object.__setattr__(self, 'vertices', frozenset(self.vertices))

    def __len__(self):
        return len(self.vertices)

    def __iter__(self):
        return iter(sorted(self.vertices))

    def __contains__(self, v):
        return v in self.vertices

    @property
    def key(self):
        return tuple(sorted(self.vertices))

    def labels(self, labels):
        return [labels[v] for v in self.key]


@dataclass(frozen=True)
class ChordalityResult:
    chordal: bool
    order: EliminationOrder
    cycle: tuple = None

    def __bool__(self):
        return self.chordal


def maximum_cardinality_search(g):
    '''
    Visit vertices by number of already visited neighbours, lowest index on ties.
    '''
    weight = [0] * g.n
    visited = [False] * g.n
    heap = [(0, v) for v in range(g.n)]
    heapq.heapify(heap)
    order = []
    while heap:
        negative_weight, v = heapq.heappop(heap)
        if visited[v] or -negative_weight != weight[v]:
            continue
        visited[v] = True
        order.append(v)
        for u in g.graph.neighbors(v):
            if not visited[u]:
                weight[u] += 1
                heapq.heappush(heap, (-weight[u], u))
    return EliminationOrder(tuple(order))


def earlier_neighbors(g, order):
    position = order.position
    return {
        v: sorted((u for u in g.graph.neighbors(v) if position[u] < position[v]),
                  key=position.__getitem__)
        for v in order
    }


def _peo_violation(g, order):
    '''
    First vertex whose earlier neighbours are not a clique, with a non-adjacent pair.

    Checks earlier(v) minus its latest member p against earlier(p), which is
    equivalent to the full pairwise test when every earlier vertex passed.
    '''
    earlier = earlier_neighbors(g, order)
    for v in order:
        if len(earlier[v]) < 2:
            continue
        parent = earlier[v][-1]
        parent_set = set(earlier[parent])
        for u in earlier[v][:-1]:
            if u not in parent_set:
                return v, u, parent
    return None


def _cycle_through(g, v, u, w):
    # Chordless path u..w avoiding v and its other neighbours closes a chordless cycle.
    blocked = set(g.graph.neighbors(v)) - {u, w}
    blocked.add(v)
    allowed = [x for x in range(g.n) if x not in blocked]
    try:
        path = nx.shortest_path(g.graph.subgraph(allowed), u, w)
    except nx.NetworkXNoPath:
        return None
    return [v] + path


def _normalize_cycle(cycle):
    start = cycle.index(min(cycle))
    rotated = cycle[start:] + cycle[:start]
    if len(rotated) > 2 and rotated[-1] < rotated[1]:
        rotated = [rotated[0]] + rotated[:0:-1]
    return tuple(rotated)


def find_chordless_cycle(g, hint=None):
    '''
    Return a chordless cycle of length >= 4, or None if g is chordal.

    `hint` (v, u, w) names a vertex with two non-adjacent neighbours to try first.
    '''
    if hint is not None:
        cycle = _cycle_through(g, *hint)
        if cycle is not None:
            return _normalize_cycle(cycle)
    for v in range(g.n):
        for u, w in itertools.combinations(g.neighbors(v), 2):
            if g.has_edge(u, w):
                continue
            cycle = _cycle_through(g, v, u, w)
            if cycle is not None:
                return _normalize_cycle(cycle)
    return None


def is_chordal(g):
    '''
    Chordality test by maximum cardinality search.

    Returns a ChordalityResult (truthy iff chordal); on failure it carries a
    chordless cycle of length >= 4 as certificate.
    '''
    order = maximum_cardinality_search(g)
    violation = _peo_violation(g, order)
    if violation is None:
        return ChordalityResult(True, order)
    cycle = find_chordless_cycle(g, hint=violation)
    logger.debug('Pattern graph is not chordal', extra={'cycle': list(cycle)})
    return ChordalityResult(False, order, cycle)


def maximal_cliques(g, order=None):
    '''
    Maximal cliques of a chordal graph from the candidates {v} + earlier(v).

    Cliques are returned sorted by their sorted vertex tuples.
    '''
    if order is None:
        order = maximum_cardinality_search(g)
    if _peo_violation(g, order) is not None:
        result = is_chordal(g)
        if result.chordal:
            raise ValueError("order is not a perfect elimination order of the graph")
        raise NotChordal(result.cycle, [g.label(v) for v in result.cycle])

    earlier = earlier_neighbors(g, order)
    candidates = {frozenset([v, *earlier[v]]) for v in order}
    kept = []
    for candidate in sorted(candidates, key=len, reverse=True):
        if not any(candidate < other for other in kept):
            kept.append(candidate)
    cliques = sorted((Clique(c) for c in kept), key=lambda c: c.key)
    assert len(cliques) <= g.n, "a chordal graph has at most n maximal cliques"
    logger.debug('Found maximal cliques', extra={'count': len(cliques), 'largest': max(map(len, cliques), default=0)})
    return cliques
