from dataclasses import dataclass

import networkx as nx

from corrcomplete.utils.logger import logger


@dataclass(frozen=True, eq=False)
class PatternGraph:
    """Undirected graph on vertex indices 0..n-1; vertex i is label i of the matrix."""
    n: int
    graph: nx.Graph
    labels: tuple = None

    @classmethod
    def from_edges(cls, n, edges, labels=None):
        graph = nx.Graph()
        graph.add_nodes_from(range(n))
        for i, j in edges:
            if i == j:
                raise ValueError(f"self-loop on vertex {i}")
            if not (0 <= i < n and 0 <= j < n):
                raise ValueError(f"edge ({i}, {j}) is out of range for {n} vertices")
            graph.add_edge(i, j)
        return cls(n, nx.freeze(graph), tuple(labels) if labels is not None else None)

    def has_edge(self, i, j):
        return self.graph.has_edge(i, j)

    def neighbors(self, v):
        return sorted(self.graph.neighbors(v))

    def edges(self):
        return sorted((min(i, j), max(i, j)) for i, j in self.graph.edges())

    @property
    def edge_count(self):
        return self.graph.number_of_edges()

    def non_edges(self):
        return [
            (i, j)
            for i in range(self.n)
            for j in range(i + 1, self.n)
            if not self.graph.has_edge(i, j)
        ]

    def label(self, v):
        return self.labels[v] if self.labels is not None else str(v)

    def is_complete(self, vertices):
        vertices = list(vertices)
        return all(
            self.graph.has_edge(u, w)
            for a, u in enumerate(vertices)
            for w in vertices[a + 1:]
        )


def build_pattern_graph(m):
    '''
    Graph with an edge for every specified off-diagonal entry of `m`.
    '''
    g = PatternGraph.from_edges(m.n, m.specified.keys(), labels=m.labels)
    logger.debug('Built pattern graph', extra={'n': g.n, 'edges': g.edge_count})
    return g
