import itertools
from dataclasses import dataclass

import networkx as nx
from networkx.utils import UnionFind

from corrcomplete.utils.logger import logger
from .chordal import Clique


@dataclass(frozen=True)
class TreeEdge:
    a: int
    b: int
    separator: frozenset


@dataclass(frozen=True, eq=False)
class CliqueTree:
    '''
    Spanning forest over maximal cliques; each edge carries the intersection
    of its two cliques as separator.
    '''
    cliques: tuple
    edges: tuple

    def __post_init__(self):
        cliques = tuple(c if isinstance(c, Clique) else Clique(c) for c in self.cliques)
        graph = nx.Graph()
        graph.add_nodes_from(range(len(cliques)))
        edges = []
        for edge in self.edges:
            a, b = (edge.a, edge.b) if isinstance(edge, TreeEdge) else edge
            a, b = min(a, b), max(a, b)
            if not (0 <= a < len(cliques) and 0 <= b < len(cliques)) or a == b:
                raise ValueError(f"tree edge ({a}, {b}) is invalid for {len(cliques)} cliques")
            separator = cliques[a].vertices & cliques[b].vertices
            graph.add_edge(a, b, separator=separator)
            edges.append(TreeEdge(a, b, separator))
        if not nx.is_forest(graph):
            raise ValueError("clique tree edges contain a cycle")
        object.__setattr__(self, 'cliques', cliques)
        object.__setattr__(self, 'edges', tuple(sorted(edges, key=lambda e: (e.a, e.b))))
        object.__setattr__(self, 'graph', nx.freeze(graph))

    def __len__(self):
        return len(self.cliques)

    def neighbors(self, i):
        return sorted(self.graph.neighbors(i))

    def separator(self, i, j):
        return self.graph.edges[i, j]['separator']

    def components(self):
        return sorted(sorted(c) for c in nx.connected_components(self.graph))

    def path(self, i, j):
        try:
            return nx.shortest_path(self.graph, i, j)
        except nx.NetworkXNoPath:
            return None

    def to_dict(self, labels=None):
        def name(vertices):
            ordered = sorted(vertices)
            return [labels[v] for v in ordered] if labels is not None else ordered

        return {
            'cliques': [name(c.vertices) for c in self.cliques],
            'edges': [
                {'a': e.a, 'b': e.b, 'separator': name(e.separator)}
                for e in self.edges
            ],
        }


def clique_graph(cliques):
    '''
    Intersection graph of the cliques: edge iff they share a vertex, weight = shared count.
    '''
    graph = nx.Graph()
    graph.add_nodes_from(range(len(cliques)))
    for i, j in itertools.combinations(range(len(cliques)), 2):
        shared = cliques[i].vertices & cliques[j].vertices
        if shared:
            graph.add_edge(i, j, weight=len(shared), separator=frozenset(shared))
    return graph


def build_clique_tree(cliques):
    '''
    Maximum-weight spanning forest of the clique graph (Kruskal).

    Ties go to the smallest clique-index pair. For the maximal cliques of a
    chordal graph the result has the intersection property.
    '''
    cliques = [c if isinstance(c, Clique) else Clique(c) for c in cliques]
    graph = clique_graph(cliques)
    candidates = sorted(graph.edges(data='weight'), key=lambda e: (-e[2], min(e[0], e[1]), max(e[0], e[1])))
    subtrees = UnionFind(range(len(cliques)))
    chosen = []
    for a, b, _ in candidates:
        if subtrees[a] != subtrees[b]:
            subtrees.union(a, b)
            chosen.append((a, b))
    tree = CliqueTree(tuple(cliques), tuple(chosen))
    logger.debug('Built clique tree', extra={'cliques': len(cliques), 'edges': len(chosen)})
    return tree


def verify_intersection_property(t):
    '''
    Check every pair of cliques in one component: their intersection lies in
    every clique on the tree path between them.
    '''
    for i, j in itertools.combinations(range(len(t.cliques)), 2):
        path = t.path(i, j)
        if path is None:
            continue
        shared = t.cliques[i].vertices & t.cliques[j].vertices
        if any(not shared <= t.cliques[k].vertices for k in path[1:-1]):
            return False
    return True


def tree_heights(t, root):
    '''
    Depth of every clique below its component's root; `root` roots its own
    component, the others are rooted at their lowest clique index.
    '''
    heights = {}
    roots = [root] + [c[0] for c in t.components() if root not in c]
    for start in roots:
        heights.update(nx.single_source_shortest_path_length(t.graph, start))
    return heights
