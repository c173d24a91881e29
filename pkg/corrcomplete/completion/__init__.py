from .merge import Block, MergeStep, merge_models, merge_step
from .report import CompletionReport
from .engine import MergePlan, RootPolicy, clique_order, complete, plan_merges, resolve_root

__all__ = [
    'Block',
    'CompletionReport',
    'MergePlan',
    'MergeStep',
    'RootPolicy',
    'clique_order',
    'complete',
    'merge_models',
    'merge_step',
    'plan_merges',
    'resolve_root',
]
