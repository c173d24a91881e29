import argparse
import json
import sys
from enum import IntEnum

from corrcomplete.completion import (
    RootPolicy,
    complete,
    merge_models,
    plan_merges,
)
from corrcomplete.errors import (
    CliqueBlockNotPD,
    InvalidInput,
    NoFeasiblePoint,
    NotChordal,
    NotPositiveDefinite,
    SeparatorMismatch,
)
from corrcomplete.graph import (
    build_pattern_graph,
    clique_tree_dot,
    is_chordal,
    pattern_graph_dot,
    tree_heights,
)
from corrcomplete.pattern import (
    MatrixFormat,
    parse_dense,
    parse_partial,
    serialize_dense,
    serialize_partial,
)
from corrcomplete.utils.config import MODEL_MAP, build_model, load_settings
from corrcomplete.utils.logger import logger, set_level
from corrcomplete.utils.utils import parse_label_set
from corrcomplete.verify import verify_completion


class ExitStatus(IntEnum):
    OK = 0
    VERIFICATION_FAILED = 1
    INVALID_INPUT = 2
    NOT_CHORDAL = 3
    NOT_POSITIVE_DEFINITE = 4
    IO_FAILURE = 5


# First match wins, so subclasses come before their bases
EXIT_CODES = (
    (NotChordal, ExitStatus.NOT_CHORDAL),
    (NotPositiveDefinite, ExitStatus.NOT_POSITIVE_DEFINITE),
    (NoFeasiblePoint, ExitStatus.NOT_POSITIVE_DEFINITE),
    (SeparatorMismatch, ExitStatus.INVALID_INPUT),
    (InvalidInput, ExitStatus.INVALID_INPUT),
    (OSError, ExitStatus.IO_FAILURE),
)

GEN_REQUIRED = {
    'xccy': ('params',),
    'ncurrency': ('params_file',),
    'random': ('n', 'seed'),
}


def read_input(path):
    if path == '-':
        return sys.stdin.buffer.read()
    with open(path, 'rb') as file:
        return file.read()


def write_output(data, path=None):
    if path is None or path == '-':
        sys.stdout.write(data.decode('utf-8'))
        sys.stdout.flush()
        return
    with open(path, 'wb') as file:
        file.write(data)
    logger.info('Wrote output', extra={'path': path, 'bytes': len(data)})


def json_bytes(document):
    return (json.dumps(document, indent=2) + '\n').encode('utf-8')


def input_format(path, fmt):
    if fmt:
        return MatrixFormat.coerce(fmt)
    return MatrixFormat.from_path(path, MatrixFormat.JSON)


def load_partial(path, fmt=None):
    return parse_partial(read_input(path), input_format(path, fmt))


def load_dense(path, fmt=None):
    return parse_dense(read_input(path), input_format(path, fmt))


def root_choice(args, settings):
    '''
    Map --root / --root-index (or the configured default) to a root policy.
    '''
    if getattr(args, 'root_index', None) is not None:
        return RootPolicy.INDEX, args.root_index
    value = args.root if args.root is not None else settings.get('root', 'auto')
    if value is None or str(value).strip().lower() == 'auto':
        return RootPolicy.LARGEST_CLIQUE, None
    labels = parse_label_set(str(value))
    if not labels:
        raise InvalidInput(f"invalid root {value!r}")
    return RootPolicy.EXPLICIT, labels[0] if len(labels) == 1 else labels


def cmd_complete(args, settings):
    fmt = input_format(args.input, args.format)
    m = parse_partial(read_input(args.input), fmt)
    policy, root = root_choice(args, settings)
    completed, report = complete(m, root_policy=policy, root=root, pivot_tol=settings['pivot_tol'])
    out_format = MatrixFormat.coerce(args.out_format) if args.out_format else fmt
    write_output(serialize_dense(completed, out_format), args.output)
    if args.report:
        write_output(json_bytes(report.to_dict()), args.report)
    return ExitStatus.OK


def cmd_check(args, settings):
    h = load_dense(args.input, args.format)
    m = load_partial(args.pattern, args.pattern_format) if args.pattern else None
    oracle_options = {
        'max_free': settings['oracle']['max_free'],
        'tol': settings['oracle']['tol'],
        'max_sweeps': settings['oracle']['max_sweeps'],
    }
    result = verify_completion(
        h,
        m,
        oracle=args.oracle and m is not None,
        pivot_tol=settings['pivot_tol'],
        oracle_options=oracle_options,
    )
    write_output(json_bytes(result.to_dict()))
    if not result.pd:
        return ExitStatus.NOT_POSITIVE_DEFINITE
    tol = args.tol if args.tol is not None else settings['verify_tol']
    if not result.passed(tol):
        logger.warning('Verification failed', extra={'tolerance': tol, **result.to_dict()})
        return ExitStatus.VERIFICATION_FAILED
    return ExitStatus.OK


def _names(labels, vertices):
    return '{' + ', '.join(labels[v] for v in sorted(vertices)) + '}'


def explain_lines(m, policy, root):
    '''
    Human-readable analysis of a pattern: chordality, cliques, tree, merge order.

    Returns (lines, plan); plan is None when the pattern is not chordal.
    '''
    labels = m.labels
    result = is_chordal(build_pattern_graph(m))
    if not result:
        cycle = ' - '.join(labels[v] for v in result.cycle)
        return ['chordal: no', f'chordless cycle: {cycle}'], None

    plan = plan_merges(m, policy, root)
    tree = plan.tree
    heights = tree_heights(tree, plan.root)
    lines = ['chordal: yes', f'cliques: {len(tree.cliques)}']
    for i, clique in enumerate(tree.cliques):
        suffix = ' (root)' if i == plan.root else ''
        lines.append(f'  c{i} {_names(labels, clique.vertices)} height {heights[i]}{suffix}')
    lines.append('clique tree edges:' if tree.edges else 'clique tree edges: none')
    for edge in tree.edges:
        lines.append(f'  c{edge.a} -- c{edge.b} separator {_names(labels, edge.separator)}')
    lines.append('merge order:')
    lines.append(f'  1. c{plan.order[0]} {_names(labels, tree.cliques[plan.order[0]].vertices)}')
    for position, (index, step) in enumerate(zip(plan.order[1:], plan.steps), start=2):
        lines.append(
            f'  {position}. c{index} {_names(labels, step.new_clique)} via {_names(labels, step.separator)}'
        )
    return lines, plan


def cmd_explain(args, settings):
    m = load_partial(args.input, args.format)
    policy, root = root_choice(args, settings)
    lines, plan = explain_lines(m, policy, root)
    write_output(('\n'.join(lines) + '\n').encode('utf-8'))
    if args.dot:
        if plan is None:
            dot = pattern_graph_dot(build_pattern_graph(m))
        else:
            dot = clique_tree_dot(plan.tree, m.labels, heights=tree_heights(plan.tree, plan.root))
        write_output(dot.encode('utf-8'), args.dot)
    return ExitStatus.OK if plan is not None else ExitStatus.NOT_CHORDAL


def cmd_gen(args, settings):
    if args.model == 'xccy':
        options = {'params': args.params}
    elif args.model == 'ncurrency':
        options = {'params_file': args.params_file, 'count': args.count}
    else:
        options = {'n': args.n, 'seed': args.seed, 'fill_probability': args.fill_probability}
    missing = [name for name in GEN_REQUIRED[args.model] if options.get(name) is None]
    if missing:
        flags = ', '.join('--' + name.replace('_', '-') for name in missing)
        raise InvalidInput(f"gen {args.model} needs {flags}")
    model = build_model(args.model, options, settings)
    write_output(serialize_partial(model.pattern(), MatrixFormat.coerce(args.format)), args.output)
    return ExitStatus.OK


def cmd_merge(args, settings):
    left = load_dense(args.left, args.format)
    right = load_dense(args.right, args.format)
    merged, _ = merge_models(left, right, atol=args.atol, pivot_tol=settings['pivot_tol'])
    out_format = args.out_format or args.format or MatrixFormat.from_path(args.left, MatrixFormat.JSON)
    write_output(serialize_dense(merged, MatrixFormat.coerce(out_format)), args.output)
    return ExitStatus.OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog='corrcomplete',
        description='Maximum-entropy completion of partially specified correlation matrices.',
    )
    parser.add_argument('--config', help='Path to a YAML settings file')
    parser.add_argument('--log-level', help='Log level (DEBUG, INFO, WARNING, ERROR)')
    subparsers = parser.add_subparsers(dest='command', required=True)
    formats = [f.value for f in MatrixFormat]

    complete_parser = subparsers.add_parser('complete', help='Complete a partial correlation matrix')
    complete_parser.add_argument('--input', required=True, help='Partial matrix file, - for stdin')
    complete_parser.add_argument('--format', choices=formats)
    complete_parser.add_argument('--output', help='Completed matrix file (default stdout)')
    complete_parser.add_argument('--out-format', choices=formats)
    complete_parser.add_argument('--report', help='Write a JSON completion report here')
    complete_parser.add_argument('--root', help="'auto', a label, or a comma-separated clique")
    complete_parser.add_argument('--root-index', type=int, help='Root the clique tree at this clique index')
    complete_parser.set_defaults(handler=cmd_complete)

    check_parser = subparsers.add_parser('check', help='Verify a dense correlation matrix')
    check_parser.add_argument('--input', required=True, help='Dense matrix file, - for stdin')
    check_parser.add_argument('--format', choices=formats)
    check_parser.add_argument('--pattern', help='The partial matrix the input should complete')
    check_parser.add_argument('--pattern-format', choices=formats)
    check_parser.add_argument('--oracle', action='store_true', help='Compare against the numeric maximizer')
    check_parser.add_argument('--tol', type=float, help='Residual tolerance')
    check_parser.set_defaults(handler=cmd_check)

    explain_parser = subparsers.add_parser('explain', help='Show cliques, clique tree and merge order')
    explain_parser.add_argument('--input', required=True)
    explain_parser.add_argument('--format', choices=formats)
    explain_parser.add_argument('--dot', help='Write a Graphviz DOT file here')
    explain_parser.add_argument('--root')
    explain_parser.add_argument('--root-index', type=int)
    explain_parser.set_defaults(handler=cmd_explain)

    gen_parser = subparsers.add_parser('gen', help='Generate a partial matrix from a model')
    gen_parser.add_argument('model', choices=sorted(MODEL_MAP))
    gen_parser.add_argument('--params', help='xccy: e_nuE,a_nuA,e_a,e_x,a_x,x_nuX')
    gen_parser.add_argument('--params-file', help='ncurrency: YAML coefficients file')
    gen_parser.add_argument('--count', type=int, help='ncurrency: number of foreign currencies')
    gen_parser.add_argument('--n', type=int, help='random: number of variables')
    gen_parser.add_argument('--seed', type=int, help='random: generator seed')
    gen_parser.add_argument('--fill-probability', type=float)
    gen_parser.add_argument('--format', choices=formats, default='json')
    gen_parser.add_argument('--output')
    gen_parser.set_defaults(handler=cmd_gen)

    merge_parser = subparsers.add_parser('merge', help='Merge two correlation matrices sharing labels')
    merge_parser.add_argument('--left', required=True)
    merge_parser.add_argument('--right', required=True)
    merge_parser.add_argument('--format', choices=formats)
    merge_parser.add_argument('--out-format', choices=formats)
    merge_parser.add_argument('--atol', type=float, default=0.0, help='Allowed shared-block difference')
    merge_parser.add_argument('--output')
    merge_parser.set_defaults(handler=cmd_merge)
    return parser


def _report_error(e):
    if isinstance(e, NotChordal):
        shown = e.labels if e.labels is not None else e.cycle
        print(f"error: pattern is not chordal; chordless cycle: {' - '.join(map(str, shown))}", file=sys.stderr)
    elif isinstance(e, CliqueBlockNotPD):
        print(f"error: clique {{{', '.join(e.labels)}}} is not positive definite", file=sys.stderr)
    else:
        print(f"error: {e}", file=sys.stderr)


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.log_level:
        try:
            set_level(args.log_level)
        except ValueError:
            parser.error(f"unknown log level {args.log_level!r}")
    try:
        settings = load_settings(args.config)
        return int(args.handler(args, settings))
    except tuple(error for error, _ in EXIT_CODES) as e:
        status = next(code for error, code in EXIT_CODES if isinstance(e, error))
        logger.error(f"Command '{args.command}' failed", extra={
            'error': str(e), 'exit_code': int(status),
        }, exc_info=isinstance(e, OSError))
        _report_error(e)
        return int(status)


if __name__ == '__main__':
    sys.exit(main())
