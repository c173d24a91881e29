from .pattern_graph import PatternGraph, build_pattern_graph
from .chordal import (
    ChordalityResult,
    Clique,
    EliminationOrder,
    find_chordless_cycle,
    is_chordal,
    maximal_cliques,
    maximum_cardinality_search,
)
from .clique_tree import (
    CliqueTree,
    TreeEdge,
    build_clique_tree,
    clique_graph,
    tree_heights,
    verify_intersection_property,
)
from .dot import clique_tree_dot, pattern_graph_dot

__all__ = [
    'ChordalityResult',
    'Clique',
    'CliqueTree',
    'EliminationOrder',
    'PatternGraph',
    'TreeEdge',
    'build_clique_tree',
    'build_pattern_graph',
    'clique_graph',
    'clique_tree_dot',
    'find_chordless_cycle',
    'is_chordal',
    'maximal_cliques',
    'maximum_cardinality_search',
    'pattern_graph_dot',
    'tree_heights',
    'verify_intersection_property',
]
