import random
from typing import Optional

from structctrl import cover
from structctrl.network import ExtendedNetwork, StructuredNetwork, SystemGraph, system_graph


def random_network(rng: random.Random, max_n: int = 8, max_m: int = 3,
                   density: Optional[float] = None, accessible: bool = True) -> StructuredNetwork:
    """Draw a random network.

    When accessible is set, every state node not reachable from an
    input receives an input edge from a random input.
    """
    n = rng.randint(1, max_n)
    m = rng.randint(1, max_m)
    if density is None:
        density = rng.uniform(0.1, 0.35)
    state_edges = {(j, i) for j in range(n) for i in range(n) if j != i and rng.random() < density}
    input_edges = {(s, i) for s in range(m) for i in range(n) if rng.random() < 0.2}
    if not accessible:
        return StructuredNetwork(n, m, state_edges, input_edges)
    while True:
        net = StructuredNetwork(n, m, state_edges, input_edges)
        inaccessible = system_graph(net).inaccessible()
        if not inaccessible:
            return net
        input_edges.add((rng.randrange(m), rng.choice(inaccessible)))


def random_homogeneous_extension(rng: random.Random, net: StructuredNetwork, max_order: int = 3) -> ExtendedNetwork:
    orders = tuple(rng.randint(1, max_order) for _ in range(net.n))
    return ExtendedNetwork(net, orders, (False,) * net.n)


def oracle_dimension(g: SystemGraph) -> int:
    """Maximum coverage of disjoint stems and cycles, by enumeration."""
    best = 0
    for family in cover.enumerate_covers(g, vertex_disjoint_only=True):
        best = max(best, len(family.covered))
    return best


def oracle_x(g: SystemGraph) -> bool:
    """Whether some cover has stems from pairwise distinct inputs."""
    for _ in cover.enumerate_covers(g, distinct_inputs=True):
        return True
    return False


def oracle_intersections(g: SystemGraph) -> bool:
    """Whether two paths meet at a state node, other than stems of one input.

    Every stem and cycle extends to a cover of an input accessible
    graph, so this is whether some cover exhibits such a meeting.
    """
    stems, cycles = cover.enumerate_paths(g)
    for index, cycle in enumerate(cycles):
        if any(set(cycle) & set(stem.nodes) for stem in stems):
            return True
        if any(set(cycle) & set(other) for other in cycles[index + 1:]):
            return True
    for a in stems:
        for b in stems:
            if a.input < b.input and set(a.nodes) & set(b.nodes):
                return True
    return False
