"""Input accessibility, structural controllability and the X / Y classes.

An input accessible network that is not structurally controllable is

  X  if some cover of its state nodes has stems originating from
     pairwise distinct inputs; homogeneous higher-order subsystems
     then suffice to make it controllable;

  Y  if every cover has two stems from one input and no cover has a
     stem or cycle meeting another path at a state node.

Y is decided without enumerating covers. When the graph is acyclic no
cover contains a cycle, and when the reachable sets of distinct inputs
are disjoint no two stems from distinct inputs meet. A cover of an
uncontrollable network cannot be vertex-disjoint, so the only way its
paths can meet is two stems from the same input. Conversely a cycle,
or a node reachable from two inputs, yields a cover with one of the
excluded intersections (add the cycle, or the two stems, to any
cover).
"""

from typing import Dict, FrozenSet, List, NamedTuple, Optional, Tuple
import enum
import logging

import networkx

from structctrl import cover
from structctrl import exceptions
from structctrl import utils
from structctrl.cover import PathCycleCover, Stem
from structctrl.network import SystemGraph


MAX_SEARCH_NODES = 24

log = logging.getLogger(__name__)


class Label(enum.Enum):
    NOT_INPUT_ACCESSIBLE = 'NotInputAccessible'
    STRUCTURALLY_CONTROLLABLE = 'StructurallyControllable'
    X = 'X'
    Y = 'Y'
    MIXED = 'Mixed'


class Diagnostics(NamedTuple):
    inaccessible: Tuple[int, ...]
    # Pairs of inputs whose reachable sets intersect, with the shared nodes.
    overlaps: Tuple[Tuple[int, int, Tuple[int, ...]], ...]
    cycle_nodes: Tuple[int, ...]
    acyclic: bool


class ClassLabel(NamedTuple):
    label: Label
    d_c: Optional[int]
    witness: Optional[PathCycleCover]
    diagnostics: Diagnostics


def is_input_accessible(g: SystemGraph) -> Tuple[bool, FrozenSet[int]]:
    """Check that every state node is reachable from some input.

    Returns:
      A flag and the set of inaccessible state nodes.
    """
    inaccessible = frozenset(g.inaccessible())
    return not inaccessible, inaccessible


def cycle_nodes(g: SystemGraph) -> FrozenSet[int]:
    """State nodes lying on some elementary cycle."""
    graph = g.state_digraph()
    nodes = set()
    for component in networkx.strongly_connected_components(graph):
        if len(component) > 1:
            nodes.update(component)
        else:
            (k,) = component
            if graph.has_edge(k, k):
                nodes.add(k)
    return frozenset(nodes)


def diagnostics(g: SystemGraph) -> Diagnostics:
    reach = [g.reachable(s) for s in range(g.m)]
    overlaps = []
    for s in range(g.m):
        for t in range(s + 1, g.m):
            shared = reach[s] & reach[t]
            if shared:
                overlaps.append((s, t, tuple(sorted(shared))))
    return Diagnostics(g.inaccessible(), tuple(overlaps), tuple(sorted(cycle_nodes(g))), g.is_acyclic())


def _maximal_chains(members: List[int], below: Dict[int, FrozenSet[int]]) -> List[Tuple[int, ...]]:
    """Maximal chains of the reachability order restricted to members.

    Args:
      members: The elements of the order.
      below: For every element, the elements it reaches.
    """
    pool = set(members)
    ups = {x: below[x] & pool for x in members}
    # Immediate successors: reached, and not through another member.
    covers = {x: sorted(y for y in ups[x] if not any(y in ups[z] for z in ups[x] if z != y)) for x in members}
    minimal = sorted(x for x in members if not any(x in ups[y] for y in members if y != x))
    chains = []
    stack = [(x,) for x in reversed(minimal)]
    while stack:
        chain = stack.pop()
        nexts = covers[chain[-1]]
        if not nexts:
            chains.append(chain)
            continue
        for y in reversed(nexts):
            stack.append((*chain, y))
    return chains


def _walk_to_stem(g: SystemGraph, s: int, chain: Tuple[int, ...]) -> Tuple[int, ...]:
    """Realize a chain of non-cycle nodes as a stem from input s.

    Consecutive chain nodes are joined by shortest paths and the loops
    of the resulting walk erased. A repeated node lies on a closed walk,
    so the erased loops only contain cycle nodes.
    """
    graph = g.state_digraph()
    first = min((i for i in g.input_successors[s] if networkx.has_path(graph, i, chain[0])),
                key=lambda i: (networkx.shortest_path_length(graph, i, chain[0]), i))
    walk = list(networkx.shortest_path(graph, first, chain[0]))
    for a, b in zip(chain, chain[1:]):
        walk.extend(networkx.shortest_path(graph, a, b)[1:])
    nodes: List[int] = []
    for k in walk:
        if k in nodes:
            del nodes[nodes.index(k) + 1:]
        else:
            nodes.append(k)
    return tuple(nodes)


def shortest_cycle(graph: networkx.DiGraph, k: int) -> Tuple[int, ...]:
    """Shortest elementary cycle through k, starting at k. Ties go to the smallest."""
    if graph.has_edge(k, k):
        return (k,)
    best = None
    for t in sorted(graph.successors(k)):
        if networkx.has_path(graph, t, k):
            path = tuple(networkx.shortest_path(graph, t, k))
            cycle = (k, *path[:-1])
            if best is None or (len(cycle), cycle) < (len(best), best):
                best = cycle
    return best


def exists_distinct_input_cover(g: SystemGraph, max_nodes: int = MAX_SEARCH_NODES) -> Optional[PathCycleCover]:
    """Search a cover of all state nodes with at most one stem per input.

    Nodes on cycles can always be covered by a cycle, so only the set R
    of the remaining state nodes must be covered by stems. A single stem
    can visit a subset of R exactly when it is a chain of the
    reachability order reachable from the stem input, so the search
    assigns one maximal chain per input, memoizing on the bitset of the
    nodes of R still uncovered.

    Args:
      g: An input accessible graph, not structurally controllable.
      max_nodes: Size guard on the number of state nodes.
    Returns:
      A witness cover or None.
    Raises:
      NotInputAccessibleError, PreconditionError: Precondition violated.
      SizeLimitError: The graph exceeds max_nodes.
    """
    if g.n > max_nodes:
        raise exceptions.SizeLimitError('Graph too large for the distinct input cover search.',
                                        f'{g.n} > {max_nodes} state nodes')
    report = cover.generic_dimension(g)
    if report.is_structurally_controllable:
        raise exceptions.PreconditionError('The network is structurally controllable.')

    graph = g.state_digraph()
    on_cycles = cycle_nodes(g)
    rest = [k for k in range(g.n) if k not in on_cycles]
    position = {k: index for index, k in enumerate(rest)}
    below = {k: frozenset(networkx.descendants(graph, k)) for k in rest}
    reach = [g.reachable(s) for s in range(g.m)]

    memo: Dict[Tuple[int, int], Optional[Tuple[int, ...]]] = {}

    def solve(s: int, mask: int) -> bool:
        if mask == 0:
            return True
        if s == g.m:
            return False
        key = (s, mask)
        if key in memo:
            return memo[key] is not None
        members = [rest[index] for index in utils.bits(mask) if rest[index] in reach[s]]
        chains = _maximal_chains(members, below) if members else [()]
        memo[key] = None
        for chain in chains:
            if solve(s + 1, mask & ~utils.bitmask(position[k] for k in chain)):
                memo[key] = chain
                break
        return memo[key] is not None

    full = (1 << len(rest)) - 1
    found = solve(0, full)
    log.debug('distinct input cover search: %d states memoized', len(memo))
    if not found:
        return None

    stems = []
    mask = full
    for s in range(g.m):
        if mask == 0:
            break
        chain = memo[(s, mask)]
        if chain:
            stems.append(Stem(s, _walk_to_stem(g, s, chain)))
            mask &= ~utils.bitmask(position[k] for k in chain)
    covered = {k for stem in stems for k in stem.nodes}
    cycles = []
    for k in sorted(on_cycles):
        if k not in covered:
            cycle = shortest_cycle(graph, k)
            cycles.append(cycle)
            covered.update(cycle)
    witness = PathCycleCover(tuple(stems), tuple(cycles))
    if witness.covered != frozenset(range(g.n)) or witness.vertex_disjoint:
        raise exceptions.VerificationError('Distinct input cover witness is inconsistent.')
    return witness


def classify(g: SystemGraph, max_nodes: int = MAX_SEARCH_NODES) -> ClassLabel:
    """Assign exactly one class label to a network graph."""
    diag = diagnostics(g)
    if diag.inaccessible:
        return ClassLabel(Label.NOT_INPUT_ACCESSIBLE, None, None, diag)
    report = cover.generic_dimension(g)
    if report.is_structurally_controllable:
        return ClassLabel(Label.STRUCTURALLY_CONTROLLABLE, report.d_c, report.witness, diag)
    if diag.acyclic and not diag.overlaps:
        return ClassLabel(Label.Y, report.d_c, None, diag)
    witness = exists_distinct_input_cover(g, max_nodes)
    if witness is not None:
        return ClassLabel(Label.X, report.d_c, witness, diag)
    return ClassLabel(Label.MIXED, report.d_c, None, diag)
