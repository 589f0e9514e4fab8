"""Stem and cycle covers, generic dimension of the controllable subspace.

The generic dimension of the controllable subspace of an input
accessible network is the maximum number of state nodes covered by
vertex-disjoint stems and elementary cycles. It is computed as a
minimum cost circulation on a transformed network:

  S -> u_s           capacity 1, cost 0     one stem per input
  u_s -> v_in        capacity 1, cost 0     input edges
  v_in -> v_out      capacity 1, cost -1    each state node used once
  w_out -> v_in      capacity 1, cost 0     state edges
  v_out -> T         capacity 1, cost 0     stems end anywhere
  T -> S             capacity m, cost 0

State nodes only pass on flow they received, so flow enters the
state nodes at inputs only (stems) or circulates among them (cycles).
A maximum matching would also admit chains starting at unmatched
state nodes, which are not stems.
"""

from typing import Dict, FrozenSet, Iterator, List, NamedTuple, Optional, Tuple
import dataclasses
import functools

import networkx

from structctrl import exceptions
from structctrl import flow
from structctrl import utils
from structctrl.network import SystemGraph


MAX_ENUMERATION_NODES = 12


class Stem(NamedTuple):
    input: int
    nodes: Tuple[int, ...]


def _rotate(cycle: Tuple[int, ...]) -> Tuple[int, ...]:
    """Rotate a cycle to start at its smallest node."""
    k = cycle.index(min(cycle))
    return tuple(cycle[k:] + cycle[:k])


@dataclasses.dataclass(frozen=True)
class PathCycleCover:
    """A family of stems and elementary cycles.

    Stems are sequences of distinct state nodes, the first of which is
    driven by the stem input. Cycles are sequences of distinct state
    nodes, the closing edge from the last to the first node implied.
    Paths are kept in canonical order: stems by decreasing length then
    lexicographically, cycles rotated to start at their smallest node
    and sorted.
    """
    stems: Tuple[Stem, ...] = ()
    cycles: Tuple[Tuple[int, ...], ...] = ()

    def __post_init__(self):
        stems = tuple(Stem(int(s), tuple(nodes)) for s, nodes in self.stems)
        cycles = tuple(_rotate(tuple(c)) for c in self.cycles)
        object.__setattr__(self, 'stems', tuple(sorted(stems, key=lambda p: (-len(p.nodes), p.nodes, p.input))))
        object.__setattr__(self, 'cycles', tuple(sorted(cycles)))

    @property
    def paths(self) -> Tuple[Tuple[int, ...], ...]:
        """State node sequences of all the paths, stems first."""
        return tuple(stem.nodes for stem in self.stems) + self.cycles

    @functools.cached_property
    def covered(self) -> FrozenSet[int]:
        return frozenset(k for path in self.paths for k in path)

    @property
    def vertex_disjoint(self) -> bool:
        inputs = [stem.input for stem in self.stems]
        if len(set(inputs)) != len(inputs):
            return False
        return sum(len(path) for path in self.paths) == len(self.covered)

    def validate(self, g: SystemGraph):
        """Check the path invariants against a graph.

        Raises:
          ValidationError: If some path is not a stem or a cycle of g.
        """
        for stem in self.stems:
            if not 0 <= stem.input < g.m:
                raise exceptions.ValidationError('Stem input out of range.', f'u{stem.input + 1}')
            if not stem.nodes or (stem.input, stem.nodes[0]) not in g.input_edges:
                raise exceptions.ValidationError(
                    'Stem does not start at an out-neighbor of its input.', _describe(g, stem.nodes))
            self._check_path(g, stem.nodes, closed=False)
        for cycle in self.cycles:
            self._check_path(g, cycle, closed=True)

    @staticmethod
    def _check_path(g: SystemGraph, nodes: Tuple[int, ...], closed: bool):
        if not nodes or not all(0 <= k < g.n for k in nodes):
            raise exceptions.ValidationError('Path node out of range.', str(nodes))
        if len(set(nodes)) != len(nodes):
            raise exceptions.ValidationError('Path repeats a node.', _describe(g, nodes))
        pairs = list(zip(nodes, nodes[1:]))
        if closed:
            pairs.append((nodes[-1], nodes[0]))
        for edge in pairs:
            if edge not in g.state_edges:
                raise exceptions.ValidationError('Path uses a missing edge.', _describe(g, nodes))


def _describe(g: SystemGraph, nodes: Tuple[int, ...]) -> str:
    return ' -> '.join(g.labels[k] if 0 <= k < g.n else '?' for k in nodes)


class GenericDimensionReport(NamedTuple):
    d_c: int
    witness: PathCycleCover
    is_structurally_controllable: bool


def _require_accessible(g: SystemGraph):
    inaccessible = g.inaccessible()
    if inaccessible:
        raise exceptions.NotInputAccessibleError(
            'The network is not input accessible.', [g.labels[k] for k in inaccessible])


def _optimal_cover(g: SystemGraph) -> PathCycleCover:
    circulation = flow.Circulation()
    source = circulation.add_node()
    sink = circulation.add_node()
    inputs = [circulation.add_node() for _ in range(g.m)]
    node_in = [circulation.add_node() for _ in range(g.n)]
    node_out = [circulation.add_node() for _ in range(g.n)]

    through = [circulation.add_arc(node_in[k], node_out[k], cap=1, cost=-1) for k in range(g.n)]
    starts = [circulation.add_arc(source, inputs[s], cap=1) for s in range(g.m)]
    input_arcs = {(s, i): circulation.add_arc(inputs[s], node_in[i], cap=1) for s, i in sorted(g.input_edges)}
    state_arcs = {(j, i): circulation.add_arc(node_out[j], node_in[i], cap=1) for j, i in sorted(g.state_edges)}
    for k in range(g.n):
        circulation.add_arc(node_out[k], sink, cap=1)
    circulation.add_arc(sink, source, cap=g.m)

    circulation.minimize()

    nexts: Dict[int, int] = {j: i for (j, i), arc in state_arcs.items() if circulation.flow(arc) > 0}
    firsts: Dict[int, int] = {s: i for (s, i), arc in input_arcs.items() if circulation.flow(arc) > 0}
    used = {k for k in range(g.n) if circulation.flow(through[k]) > 0}

    stems = []
    on_stem = set()
    for s in range(g.m):
        if circulation.flow(starts[s]) == 0:
            continue
        nodes = [firsts[s]]
        while nodes[-1] in nexts:
            nodes.append(nexts[nodes[-1]])
        stems.append(Stem(s, tuple(nodes)))
        on_stem.update(nodes)
    cycles = []
    remaining = sorted(used - on_stem)
    seen = set()
    for k in remaining:
        if k in seen:
            continue
        cycle = [k]
        while nexts[cycle[-1]] != k:
            cycle.append(nexts[cycle[-1]])
        seen.update(cycle)
        cycles.append(tuple(cycle))
    return PathCycleCover(tuple(stems), tuple(cycles))


def generic_dimension(g: SystemGraph) -> GenericDimensionReport:
    """Compute the generic dimension of the controllable subspace.

    Args:
      g: An input accessible network graph.
    Returns:
      The dimension, a vertex-disjoint witness cover attaining it, and
      whether the network is structurally controllable.
    Raises:
      NotInputAccessibleError: If some state node is not reachable from
        an input.
    """
    _require_accessible(g)
    witness = _optimal_cover(g)
    d_c = len(witness.covered)
    return GenericDimensionReport(d_c, witness, d_c == g.n)


def max_disjoint_stems(g: SystemGraph) -> PathCycleCover:
    """Vertex-disjoint stems covering the most state nodes.

    Raises:
      NotAcyclicError: If the graph has a cycle.
    """
    if not g.is_acyclic():
        raise exceptions.NotAcyclicError('Disjoint stem families are computed for acyclic graphs only.')
    return _optimal_cover(g)


def enumerate_paths(g: SystemGraph) -> Tuple[List[Stem], List[Tuple[int, ...]]]:
    """Return all the stems and elementary cycles of a graph."""
    stems = []
    for s in range(g.m):
        stack = [(i,) for i in reversed(g.input_successors[s])]
        while stack:
            nodes = stack.pop()
            stems.append(Stem(s, nodes))
            for i in reversed(g.successors[nodes[-1]]):
                if i not in nodes:
                    stack.append((*nodes, i))
    cycles = sorted(_rotate(tuple(c)) for c in networkx.simple_cycles(g.state_digraph()))
    return stems, cycles


class _Path(NamedTuple):
    stem: Optional[Stem]
    cycle: Optional[Tuple[int, ...]]
    mask: int

    @property
    def input(self) -> Optional[int]:
        return self.stem.input if self.stem is not None else None


def _cover(paths: List[_Path]) -> PathCycleCover:
    return PathCycleCover(tuple(p.stem for p in paths if p.stem is not None),
                          tuple(p.cycle for p in paths if p.cycle is not None))


def enumerate_covers(g: SystemGraph,
                     vertex_disjoint_only: bool = False,
                     max_nodes: int = MAX_ENUMERATION_NODES,
                     distinct_inputs: bool = False) -> Iterator[PathCycleCover]:
    """Enumerate covers exhaustively, for small graphs.

    Without vertex_disjoint_only, yields every irredundant cover of the
    coverable state nodes: families of stems and cycles covering every
    state node that lies on some stem or cycle, in which no path can be
    dropped without uncovering a node. Any other cover is one of these
    plus extra paths. With vertex_disjoint_only, yields the pairwise
    vertex-disjoint families (input nodes included) of maximum
    coverage. Each cover is yielded once.

    Args:
      g: The graph.
      vertex_disjoint_only: Restrict to disjoint families.
      max_nodes: Size guard on the number of state nodes.
      distinct_inputs: Only consider covers whose stems originate from
        pairwise distinct inputs.
    Raises:
      SizeLimitError: If the graph has more than max_nodes state nodes.
    """
    if g.n > max_nodes:
        raise exceptions.SizeLimitError(
            'Graph too large for exhaustive cover enumeration.', f'{g.n} > {max_nodes} state nodes')
    stems, cycles = enumerate_paths(g)
    paths = [_Path(stem, None, utils.bitmask(stem.nodes)) for stem in stems]
    paths.extend(_Path(None, cycle, utils.bitmask(cycle)) for cycle in cycles)
    coverable = 0
    for path in paths:
        coverable |= path.mask
    if not coverable:
        return
    if vertex_disjoint_only:
        yield from _disjoint_families(g.n, paths)
    else:
        yield from _irredundant_covers(coverable, paths, distinct_inputs)


def _disjoint_families(n: int, paths: List[_Path]) -> Iterator[PathCycleCover]:
    by_lowest: Dict[int, List[_Path]] = {k: [] for k in range(n)}
    for path in paths:
        by_lowest[(path.mask & -path.mask).bit_length() - 1].append(path)

    def search(k, used, inputs, count, chosen, best, emit):
        # Nodes below k are decided: covered by a chosen path or skipped.
        if count + (n - k) < best[0]:
            return
        if k == n:
            if count > best[0]:
                best[0] = count
            if emit and count == best[0]:
                yield _cover(chosen)
            return
        if used >> k & 1:
            yield from search(k + 1, used, inputs, count, chosen, best, emit)
            return
        for path in by_lowest[k]:
            if path.mask & used or (path.input is not None and path.input in inputs):
                continue
            chosen.append(path)
            yield from search(k + 1, used | path.mask,
                              inputs | ({path.input} if path.input is not None else set()),
                              count + bin(path.mask).count('1'), chosen, best, emit)
            chosen.pop()
        yield from search(k + 1, used, inputs, count, chosen, best, emit)

    best = [1]
    for _ in search(0, 0, frozenset(), 0, [], best, False):
        pass
    yield from search(0, 0, frozenset(), 0, [], best, True)


def _irredundant_covers(coverable: int, paths: List[_Path], distinct_inputs: bool) -> Iterator[PathCycleCover]:
    containing: Dict[int, List[int]] = {}
    for index, path in enumerate(paths):
        for k in utils.bits(path.mask):
            containing.setdefault(k, []).append(index)
    seen = set()

    def irredundant(chosen):
        for index in chosen:
            others = 0
            for other in chosen:
                if other != index:
                    others |= paths[other].mask
            if not paths[index].mask & ~others:
                return False
        return True

    def search(chosen, covered, inputs):
        if covered == coverable:
            key = tuple(sorted(chosen))
            if key not in seen:
                seen.add(key)
                yield _cover([paths[index] for index in key])
            return
        # Branch on the uncovered node with the fewest candidate paths.
        uncovered = utils.bits(coverable & ~covered)
        k = min(uncovered, key=lambda v: (len(containing[v]), v))
        for index in containing[k]:
            path = paths[index]
            if distinct_inputs and path.input is not None and path.input in inputs:
                continue
            extended = [*chosen, index]
            if not irredundant(extended):
                continue
            yield from search(extended, covered | path.mask,
                              inputs | ({path.input} if path.input is not None else set()))

    yield from search([], 0, frozenset())
