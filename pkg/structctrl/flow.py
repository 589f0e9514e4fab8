"""
Minimum cost circulation by successive negative cycle canceling.

Arcs are stored in pairs: the arc at an even index is the forward arc
and the one at the following odd index its residual reverse arc, with
zero capacity and opposite cost. Starting from the zero circulation,
negative cost cycles of the residual network are found with
Bellman-Ford and saturated until none is left.
"""

from typing import List, NewType, Optional
import logging


NodeId = NewType('NodeId', int)
ArcId = NewType('ArcId', int)

log = logging.getLogger(__name__)


class Arc:
    __slots__ = ('src', 'dst', 'cap', 'cost', 'flow')

    src: NodeId
    dst: NodeId
    cap: int
    cost: int
    flow: int

    def __init__(self, src: NodeId, dst: NodeId, cap: int, cost: int):
        self.src = src
        self.dst = dst
        self.cap = cap
        self.cost = cost
        self.flow = 0

    @property
    def residual(self) -> int:
        return self.cap - self.flow


class Circulation:
    nodes: int
    arcs: List[Arc]

    def __init__(self):
        self.nodes = 0
        self.arcs = []

    def add_node(self) -> NodeId:
        node = NodeId(self.nodes)
        self.nodes += 1
        return node

    def add_arc(self, src: NodeId, dst: NodeId, *, cap: int, cost: int = 0) -> ArcId:
        """Add an arc and its residual twin, return the forward arc id."""
        arc = ArcId(len(self.arcs))
        self.arcs.append(Arc(src, dst, cap, cost))
        self.arcs.append(Arc(dst, src, 0, -cost))
        return arc

    def flow(self, arc: ArcId) -> int:
        return self.arcs[arc].flow

    def cost(self) -> int:
        return sum(arc.cost * arc.flow for arc in self.arcs[::2])

    def push(self, arc: ArcId, amount: int):
        self.arcs[arc].flow += amount
        self.arcs[arc ^ 1].flow -= amount

    def find_negative_cycle(self) -> Optional[List[ArcId]]:
        """Return the arcs of a negative cost residual cycle, or None.

        Bellman-Ford from a virtual source connected to every node
        with zero cost arcs, that is, with all distances starting at 0.
        """
        if not self.nodes:
            return None
        dist = [0] * self.nodes
        pred: List[Optional[ArcId]] = [None] * self.nodes
        updated = None
        for _ in range(self.nodes):
            updated = None
            for index, arc in enumerate(self.arcs):
                if arc.residual > 0 and dist[arc.src] + arc.cost < dist[arc.dst]:
                    dist[arc.dst] = dist[arc.src] + arc.cost
                    pred[arc.dst] = ArcId(index)
                    updated = arc.dst
            if updated is None:
                return None

        # Relaxed on the last pass: walking back along predecessors
        # for as many steps as there are nodes lands on the cycle.
        node = updated
        for _ in range(self.nodes):
            node = self.arcs[pred[node]].src
        cycle = []
        current = node
        while True:
            arc = pred[current]
            cycle.append(arc)
            current = self.arcs[arc].src
            if current == node:
                break
        cycle.reverse()
        return cycle

    def minimize(self) -> int:
        """Cancel negative cycles until the circulation is optimal.

        Returns:
          The minimum cost.
        """
        cancelled = 0
        while True:
            cycle = self.find_negative_cycle()
            if cycle is None:
                break
            amount = min(self.arcs[arc].residual for arc in cycle)
            for arc in cycle:
                self.push(arc, amount)
            cancelled += 1
        cost = self.cost()
        log.debug('cancelled %d negative cycles, cost %d', cancelled, cost)
        return cost
