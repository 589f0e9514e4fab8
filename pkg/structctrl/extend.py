"""Higher-order extensions that make a network structurally controllable.

Given a cover of the state nodes, every node shared by q >= 2 paths is
replaced by a subsystem of order q, one copy per sharing path, and each
path is rewritten to go through its own copy. Since copies of adjacent
subsystems are fully connected the rewritten paths are valid and
vertex-disjoint, except for stems that originate from the same input.
When stems share an input, all but one of them are given up, and the
subsystems they traverse receive generic internal dynamics so that
their copies are covered by self-loops.
"""

from typing import Dict, List, NamedTuple, Optional, Tuple
import logging

import networkx

from structctrl import classify
from structctrl import cover
from structctrl import exceptions
from structctrl import utils
from structctrl.cover import PathCycleCover, Stem
from structctrl.network import ExtendedNetwork, StructuredNetwork, SystemGraph
from structctrl.network import expanded_graph, identity_extension, system_graph


log = logging.getLogger(__name__)


class ExtensionPlan(NamedTuple):
    """An extension with its accounting and controllability certificate.

    Attributes:
      result: The extended network.
      modified_subsystems: Subsystems of order greater than one or
        with generic internal dynamics.
      S_hat: Number of modified subsystems.
      S_first_order: Minimum number of first-order heterogeneous
        subsystems making the network controllable.
      delta: S_first_order - S_hat.
      certificate: Vertex-disjoint cover of the expanded graph.
      cover: The cover of the base network the extension was built from.
    """
    result: ExtendedNetwork
    modified_subsystems: Tuple[int, ...]
    S_hat: int
    S_first_order: int
    delta: int
    certificate: PathCycleCover
    cover: Optional[PathCycleCover]


class HeterogeneityBounds(NamedTuple):
    lower: int
    upper: int
    n_hat_max: int
    z_size: int
    # Extension attaining the upper bound.
    plan: ExtensionPlan


def _plan(net: StructuredNetwork, ext: ExtendedNetwork, certificate: PathCycleCover,
          source: Optional[PathCycleCover], s_first_order: int) -> ExtensionPlan:
    """Verify an extension and account for it."""
    graph = expanded_graph(ext)
    try:
        certificate.validate(graph)
    except exceptions.ValidationError as exc:
        raise exceptions.VerificationError('Extension certificate is not a cover of the expanded graph.',
                                           str(exc)) from exc
    if not certificate.vertex_disjoint or len(certificate.covered) != graph.n:
        raise exceptions.VerificationError('Extension certificate is not a disjoint full cover.')
    report = cover.generic_dimension(graph)
    if not report.is_structurally_controllable:
        raise exceptions.VerificationError(
            'Extended network is not structurally controllable.', f'd_c = {report.d_c} < {graph.n}')
    modified = ext.modified()
    log.debug('extension of order %d modifies %d subsystems', ext.n_hat, len(modified))
    return ExtensionPlan(ext, modified, len(modified), s_first_order, s_first_order - len(modified),
                         certificate, source)


def _check_cover(g: SystemGraph, source: PathCycleCover):
    source.validate(g)
    missing = sorted(set(range(g.n)) - source.covered)
    if missing:
        raise exceptions.ValidationError(
            'Cover leaves state nodes uncovered.', ', '.join(g.labels[k] for k in missing))


def _rewrite(net: StructuredNetwork, source: PathCycleCover) -> Tuple[ExtendedNetwork, PathCycleCover]:
    """Split shared nodes into one copy per sharing path.

    Copies of node z are ordered by the indices of the paths sharing it,
    in the canonical path order of the cover, stems first.
    """
    paths = source.paths
    sharing: Dict[int, List[int]] = {k: [] for k in range(net.n)}
    for index, path in enumerate(paths):
        for k in path:
            sharing[k].append(index)
    orders = tuple(max(1, len(sharing[k])) for k in range(net.n))
    tags = tuple(tuple(sharing[k]) if len(sharing[k]) > 1 else () for k in range(net.n))
    ext = ExtendedNetwork(net, orders, (False,) * net.n, copy_tags=tags)

    def copy(k, index):
        return ext.index(k, sharing[k].index(index) if orders[k] > 1 else 0)

    stems = tuple(Stem(stem.input, tuple(copy(k, index) for k in stem.nodes))
                  for index, stem in enumerate(source.stems))
    offset = len(source.stems)
    cycles = tuple(tuple(copy(k, offset + index) for k in cycle) for index, cycle in enumerate(source.cycles))
    return ext, PathCycleCover(stems, cycles)


def synthesize_cover(g: SystemGraph) -> PathCycleCover:
    """Choose a cover of an input accessible graph greedily.

    One longest shortest-path stem per input first, ties broken by the
    smallest end node. Then, for every node still uncovered in
    ascending order, a shortest cycle through it if it lies on a cycle,
    otherwise a shortest stem reaching it from the first input that
    can, extended along uncovered successors.
    """
    digraph = g.digraph()
    states = g.state_digraph()
    on_cycles = classify.cycle_nodes(g)
    stems: List[Stem] = []
    cycles: List[Tuple[int, ...]] = []
    covered = set()
    for s in range(g.m):
        paths = networkx.single_source_shortest_path(digraph, ('u', s))
        targets = [k for k in paths if k != ('u', s)]
        if not targets:
            continue
        target = min(targets, key=lambda k: (-len(paths[k]), k))
        nodes = tuple(paths[target][1:])
        stems.append(Stem(s, nodes))
        covered.update(nodes)
    for k in range(g.n):
        if k in covered:
            continue
        if k in on_cycles:
            cycle = classify.shortest_cycle(states, k)
            cycles.append(cycle)
            covered.update(cycle)
            continue
        for s in range(g.m):
            if k in g.reachable(s):
                break
        nodes = list(networkx.shortest_path(digraph, ('u', s), k)[1:])
        while True:
            nexts = [i for i in g.successors[nodes[-1]] if i not in covered and i not in nodes]
            if not nexts:
                break
            nodes.append(min(nexts))
        stems.append(Stem(s, tuple(nodes)))
        covered.update(nodes)
    return PathCycleCover(tuple(stems), tuple(cycles))


def extend_x_network(net: StructuredNetwork, source: PathCycleCover) -> ExtensionPlan:
    """Make an X-network controllable with homogeneous subsystems.

    Args:
      net: An input accessible network.
      source: A cover of all state nodes whose stems originate from
        pairwise distinct inputs.
    Returns:
      The verified extension plan.
    Raises:
      ValidationError: The cover is not a cover of the network.
      PreconditionError: Two stems of the cover share an input.
      VerificationError: The construction failed verification.
    """
    g = system_graph(net)
    report = cover.generic_dimension(g)
    _check_cover(g, source)
    inputs = [stem.input for stem in source.stems]
    if len(set(inputs)) != len(inputs):
        raise exceptions.PreconditionError('Cover has two stems originating from the same input.')
    ext, certificate = _rewrite(net, source)
    return _plan(net, ext, certificate, source, net.n - report.d_c)


def extend_general(net: StructuredNetwork, source: Optional[PathCycleCover] = None) -> ExtensionPlan:
    """Make any input accessible network structurally controllable.

    First every node shared by paths of the cover is split as for
    X-networks. Then, among the rewritten stems, one of maximum length
    is kept for every input; the subsystems owning the copies of the
    other stems become heterogeneous, their copies covered by
    self-loops.

    Args:
      net: An input accessible network, not structurally controllable.
      source: The cover to start from, synthesized when omitted.
    Returns:
      The verified extension plan.
    """
    g = system_graph(net)
    report = cover.generic_dimension(g)
    if report.is_structurally_controllable:
        raise exceptions.PreconditionError('The network is already structurally controllable.')
    if source is None:
        source = synthesize_cover(g)
    _check_cover(g, source)
    ext, rewritten = _rewrite(net, source)

    kept: List[Stem] = []
    dropped: List[Stem] = []
    inputs = set()
    # Stems are in canonical order, longest first.
    for stem in rewritten.stems:
        if stem.input in inputs:
            dropped.append(stem)
        else:
            inputs.add(stem.input)
            kept.append(stem)
    heterogeneous = list(ext.heterogeneous)
    copies = expanded_graph(ext).copies
    loops = []
    for stem in dropped:
        for k in stem.nodes:
            heterogeneous[copies[k][0]] = True
            loops.append((k,))
    ext = ext.replace(heterogeneous=tuple(heterogeneous))
    certificate = PathCycleCover(tuple(kept), rewritten.cycles + tuple(loops))
    return _plan(net, ext, certificate, source, net.n - report.d_c)


def extend_first_order(net: StructuredNetwork) -> ExtensionPlan:
    """Make the nodes outside a maximum disjoint cover heterogeneous.

    This uses the least possible number of first-order heterogeneous
    subsystems, n - d_c.
    """
    g = system_graph(net)
    report = cover.generic_dimension(g)
    loops = tuple((k,) for k in range(net.n) if k not in report.witness.covered)
    heterogeneous = tuple(k not in report.witness.covered for k in range(net.n))
    ext = identity_extension(net).replace(heterogeneous=heterogeneous)
    certificate = PathCycleCover(report.witness.stems, report.witness.cycles + loops)
    return _plan(net, ext, certificate, report.witness, net.n - report.d_c)


def extend_all_heterogeneous(net: StructuredNetwork) -> ExtensionPlan:
    """Give every subsystem first-order generic dynamics."""
    g = system_graph(net)
    report = cover.generic_dimension(g)
    ext = identity_extension(net).replace(heterogeneous=(True,) * net.n)
    certificate = PathCycleCover((), tuple((k,) for k in range(net.n)))
    return _plan(net, ext, certificate, None, net.n - report.d_c)


def first_order_minimum(net: StructuredNetwork) -> int:
    """Minimum number of first-order heterogeneous subsystems needed.

    Raises:
      NotInputAccessibleError: If the network is not input accessible.
    """
    return net.n - cover.generic_dimension(system_graph(net)).d_c


def heterogeneity_bounds(net: StructuredNetwork, n_hat_max: int) -> HeterogeneityBounds:
    """Bounds on the number of heterogeneous subsystems of a Y-network.

    With subsystems of order at most n_hat_max, at least
    ceil((n - |Z|) / n_hat_max) and at most n - |Z| subsystems must be
    made heterogeneous, where |Z| is the coverage of a maximum family of
    disjoint stems.

    Raises:
      ParameterError: n_hat_max < 1.
      PreconditionError: The network is not a Y-network.
    """
    if n_hat_max < 1:
        raise exceptions.ParameterError('Maximum subsystem order must be at least 1.', f'n_hat_max = {n_hat_max}')
    g = system_graph(net)
    label = classify.classify(g)
    if label.label is not classify.Label.Y:
        raise exceptions.PreconditionError('Heterogeneity bounds apply to Y-networks only.',
                                           f'label = {label.label.value}')
    z_size = len(cover.max_disjoint_stems(g).covered)
    upper = net.n - z_size
    return HeterogeneityBounds(utils.ceildiv(upper, n_hat_max), upper, n_hat_max, z_size, extend_first_order(net))


def delta_index(plan: ExtensionPlan) -> int:
    return plan.delta
