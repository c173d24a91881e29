def _escape(text):
    return str(text).replace('\\', '\\\\').replace('"', '\\"')


def _quote(text):
    return f'"{_escape(text)}"'


def _clique_name(clique, labels):
    return '{' + ', '.join(labels[v] for v in clique.key) + '}'


def pattern_graph_dot(g, name='pattern'):
    lines = [f'graph {name} {{']
    for v in range(g.n):
        lines.append(f'  {_quote(g.label(v))};')
    for i, j in g.edges():
        lines.append(f'  {_quote(g.label(i))} -- {_quote(g.label(j))};')
    lines.append('}')
    return '\n'.join(lines) + '\n'


def clique_tree_dot(t, labels, name='clique_tree', heights=None):
    '''
    Clique tree as an undirected DOT graph; edges are labelled with their separators.
    '''
    lines = [f'graph {name} {{', '  node [shape=box];']
    for i, clique in enumerate(t.cliques):
        caption = _escape(_clique_name(clique, labels))
        if heights is not None and i in heights:
            # DOT line break
            caption += f'\\nheight {heights[i]}'
        lines.append(f'  c{i} [label="{caption}"];')
    for edge in t.edges:
        separator = ', '.join(labels[v] for v in sorted(edge.separator))
        lines.append(f'  c{edge.a} -- c{edge.b} [label={_quote(separator)}];')
    lines.append('}')
    return '\n'.join(lines) + '\n'
