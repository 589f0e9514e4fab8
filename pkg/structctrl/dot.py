"""Graphviz DOT rendering of network graphs."""

from typing import Dict, List
import collections

from structctrl.network import SystemGraph


def _quote(text: str) -> str:
    return '"' + text.replace('\\', '\\\\').replace('"', '\\"') + '"'


def _state(k: int) -> str:
    return f'"x{k + 1}"'


def _input(s: int) -> str:
    return f'"u{s + 1}"'


def _node(g: SystemGraph, k: int) -> str:
    return f'{_state(k)} [label={_quote(g.labels[k])}, shape=circle];'


def export_dot(g: SystemGraph, name: str = 'network') -> str:
    """Render a graph as DOT text.

    The output is deterministic: nodes and edges are emitted in index
    order. State nodes are identified by their index, "x<k>", and carry
    their display label as an attribute, so repeated labels never merge
    two nodes. Input nodes are drawn as boxes, copies of a subsystem of
    order greater than one are grouped in a cluster "subsys_<i>".

    Args:
      g: The graph to render.
      name: The graph identifier.
    Returns:
      The DOT document.
    """
    groups: Dict[int, List[int]] = collections.defaultdict(list)
    for k, (i, _) in enumerate(g.copies):
        groups[i].append(k)

    lines = [f'digraph {_quote(name)} {{', '  rankdir=LR;']
    for s in range(g.m):
        lines.append(f'  {_input(s)} [shape=box, style=filled, fillcolor=lightgray];')
    for i in sorted(groups):
        members = groups[i]
        if len(members) == 1:
            lines.append(f'  {_node(g, members[0])}')
            continue
        lines.append(f'  subgraph "cluster_subsys_{i + 1}" {{')
        lines.append(f'    label="subsys_{i + 1}";')
        lines.append('    style=rounded; color=red;')
        for k in members:
            lines.append(f'    {_node(g, k)}')
        lines.append('  }')
    for s, i in sorted(g.input_edges):
        lines.append(f'  {_input(s)} -> {_state(i)};')
    for j, i in sorted(g.state_edges):
        lines.append(f'  {_state(j)} -> {_state(i)};')
    lines.append('}')
    return '\n'.join(lines) + '\n'
