from dataclasses import dataclass
from enum import Enum

import networkx as nx

from corrcomplete.errors import CliqueBlockNotPD, InvalidInput, NotChordal, NotPositiveDefinite
from corrcomplete.graph import (
    build_clique_tree,
    build_pattern_graph,
    is_chordal,
    maximal_cliques,
    tree_heights,
)
from corrcomplete.linalg import DEFAULT_PIVOT_TOL, cholesky, gaussian_entropy
from corrcomplete.pattern import DenseCorrMatrix
from corrcomplete.utils.logger import logger
from .merge import Block, MergeStep, merge_step
from .report import CompletionReport


class RootPolicy(str, Enum):
    LARGEST_CLIQUE = 'largest_clique'
    INDEX = 'index'
    EXPLICIT = 'explicit'


@dataclass(frozen=True, eq=False)
class MergePlan:
    graph: object
    tree: object
    root: int
    order: tuple
    steps: tuple


def resolve_root(tree, policy=RootPolicy.LARGEST_CLIQUE, root=None, labels=None):
    '''
    Pick the root clique index.

    LARGEST_CLIQUE: largest clique, lowest index on ties. INDEX: the clique
    index `root` (default 0). EXPLICIT: `root` is a label (lowest-index clique
    containing it) or a collection of labels equal to one maximal clique.
    '''
    policy = RootPolicy(policy)
    cliques = tree.cliques
    if policy == RootPolicy.LARGEST_CLIQUE:
        return min(range(len(cliques)), key=lambda i: (-len(cliques[i]), i))
    if policy == RootPolicy.INDEX:
        index = 0 if root is None else int(root)
        if not 0 <= index < len(cliques):
            raise InvalidInput(f"root clique index {index} is out of range 0..{len(cliques) - 1}")
        return index

    if root is None or labels is None:
        raise InvalidInput("an explicit root needs a label or label set")
    position = {label: i for i, label in enumerate(labels)}
    wanted = [root] if isinstance(root, str) else list(root)
    unknown = [label for label in wanted if label not in position]
    if unknown:
        raise InvalidInput(f"root refers to unknown label {unknown[0]!r}")
    vertices = frozenset(position[label] for label in wanted)
    if isinstance(root, str):
        for i, clique in enumerate(cliques):
            if vertices <= clique.vertices:
                return i
    for i, clique in enumerate(cliques):
        if clique.vertices == vertices:
            return i
    raise InvalidInput(f"root {{{', '.join(wanted)}}} is not a maximal clique of the pattern")


def _ordered_with_parents(t, root):
    roots = [root] + [component[0] for component in t.components() if root not in component]
    ordered = []
    for start in roots:
        ordered.append((start, None))
        ordered.extend((child, parent) for parent, child in nx.bfs_edges(t.graph, start, sort_neighbors=sorted))
    return ordered


def clique_order(t, root):
    '''
    Breadth-first order from `root`, neighbours by clique index; further
    components follow, each from its lowest-index clique.
    '''
    if not 0 <= root < len(t.cliques):
        raise InvalidInput(f"root clique index {root} is out of range")
    return [clique for clique, _ in _ordered_with_parents(t, root)]


def plan_merges(m, root_policy=RootPolicy.LARGEST_CLIQUE, root=None):
    '''
    Graph analysis and merge schedule for `m`, without numerics.
    '''
    g = build_pattern_graph(m)
    result = is_chordal(g)
    if not result:
        labels = [m.labels[v] for v in result.cycle]
        logger.info('Pattern is not chordal', extra={'cycle': labels})
        raise NotChordal(result.cycle, labels)
    cliques = maximal_cliques(g, result.order)
    tree = build_clique_tree(cliques)
    root_index = resolve_root(tree, root_policy, root, m.labels)

    ordered = _ordered_with_parents(tree, root_index)
    processed = set()
    steps = []
    for position, (index, parent) in enumerate(ordered):
        clique = tree.cliques[index].vertices
        if position:
            separator = frozenset(clique & processed)
            if parent is not None and not separator <= tree.cliques[parent].vertices:
                raise ValueError("clique tree lacks the intersection property")
            steps.append(MergeStep(clique, separator, frozenset(processed - separator)))
        processed |= clique
    return MergePlan(g, tree, root_index, tuple(i for i, _ in ordered), tuple(steps))


def _check_clique_blocks(m, tree, pivot_tol):
    for clique in tree.cliques:
        try:
            cholesky(m.submatrix(clique.key), pivot_tol)
        except NotPositiveDefinite as e:
            labels = clique.labels(m.labels)
            logger.info('Clique block is not positive definite', extra={'clique': labels, 'pivot': e.pivot})
            raise CliqueBlockNotPD(labels, e.pivot, e.value) from e


def _zero_fill_diagnostics(m, pivot_tol):
    try:
        factor = cholesky(m.zero_fill(), pivot_tol)
    except NotPositiveDefinite:
        return {'zero_fill_pd': False, 'zero_fill_log_det': None}
    return {'zero_fill_pd': True, 'zero_fill_log_det': factor.log_det}


def complete(m, root_policy=RootPolicy.LARGEST_CLIQUE, root=None, pivot_tol=DEFAULT_PIVOT_TOL):
    '''
    Maximum-determinant positive-definite completion of a chordal pattern.

    Merges the clique blocks along the clique tree, filling each unspecified
    entry once with W = B C^-1 D. Returns the completed matrix and a report.
    '''
    plan = plan_merges(m, root_policy, root)
    tree = plan.tree
    _check_clique_blocks(m, tree, pivot_tol)

    first = tree.cliques[plan.order[0]].key
    acc = Block(first, m.submatrix(first))
    steps = []
    step_log_dets = [cholesky(acc.values, pivot_tol).log_det]
    for index, planned in zip(plan.order[1:], plan.steps):
        key = tree.cliques[index].key
        acc, step = merge_step(acc, Block(key, m.submatrix(key)), planned.separator, pivot_tol)
        steps.append(step)
        step_log_dets.append(cholesky(acc.values, pivot_tol).log_det)

    values = acc.sub(tuple(range(m.n)))
    completed = DenseCorrMatrix(m.labels, values)
    factor = cholesky(completed.values, pivot_tol)

    fill_in = tuple(
        (m.label_pair(pair), value)
        for step in steps
        for pair, value in step.filled
    )
    diagnostics = {
        'clique_count': len(tree.cliques),
        'largest_clique': max(len(c) for c in tree.cliques),
        'separator_sizes': [len(step.separator) for step in steps],
        'min_pivot': factor.min_pivot,
        **_zero_fill_diagnostics(m, pivot_tol),
    }
    heights = tree_heights(tree, plan.root)
    clique_tree = tree.to_dict(m.labels)
    clique_tree['root'] = plan.root
    clique_tree['order'] = list(plan.order)
    clique_tree['heights'] = [heights[i] for i in range(len(tree.cliques))]
    report = CompletionReport(
        labels=m.labels,
        fill_in=fill_in,
        log_det=factor.log_det,
        entropy=gaussian_entropy(factor.log_det, m.n),
        steps=tuple(steps),
        step_log_dets=tuple(step_log_dets),
        clique_tree=clique_tree,
        diagnostics=diagnostics,
    )
    logger.info('Completed correlation matrix', extra={
        'n': m.n,
        'specified': len(m.specified),
        'filled': len(fill_in),
        'cliques': len(tree.cliques),
        'log_det': report.log_det,
    })
    return completed, report
