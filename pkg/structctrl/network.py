"""Structured and extended network models.

A StructuredNetwork is the sparsity pattern of a linear network system
x' = A x + B u where every state node is a first-order subsystem with
trivial internal dynamics: state_edges hold the pairs (j, i) for which
a_ij may be nonzero, input_edges the pairs (s, i) for which b_is may
be nonzero. The output matrix is the identity and is not stored.

An ExtendedNetwork replaces subsystem i with n_i copies ("higher
order" dynamics). Copies of a homogeneous subsystem are mutually
unconnected; copies of a heterogeneous subsystem are fully
interconnected, self-loops included. Inter-subsystem edges between
copies are allowed only where the base network has an edge.

Indices are 0-based in memory and 1-based in serialized documents.
"""

from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple, Union
import dataclasses
import functools
import json
import os

import networkx

from structctrl import exceptions
from structctrl import schemas


Edge = Tuple[int, int]
Copy = Tuple[int, int]
CopyEdge = Tuple[Copy, Copy]
CopyInputEdge = Tuple[int, Copy]


def _pairs(edges: Iterable[Iterable[int]]) -> FrozenSet[Edge]:
    return frozenset((int(a), int(b)) for a, b in edges)


@dataclasses.dataclass(frozen=True)
class StructuredNetwork:
    """Sparsity-level model of a network of first-order subsystems.

    Attributes:
      n: Number of state nodes.
      m: Number of input nodes.
      state_edges: Pairs (j, i), the state of j drives the state of i.
      input_edges: Pairs (s, i), input s drives the state of i.
      labels: Optional display names of the state nodes.
    """
    n: int
    m: int
    state_edges: FrozenSet[Edge] = frozenset()
    input_edges: FrozenSet[Edge] = frozenset()
    labels: Optional[Tuple[str, ...]] = None

    def __post_init__(self):
        object.__setattr__(self, 'state_edges', _pairs(self.state_edges))
        object.__setattr__(self, 'input_edges', _pairs(self.input_edges))
        if self.labels is not None:
            object.__setattr__(self, 'labels', tuple(str(label) for label in self.labels))
        self.validate()

    def validate(self):
        if self.n < 1:
            raise exceptions.ValidationError('At least one state node is required.', f'n = {self.n}')
        if self.m < 1:
            raise exceptions.ValidationError('At least one input node is required.', f'm = {self.m}')
        for j, i in sorted(self.state_edges):
            if not (0 <= j < self.n and 0 <= i < self.n):
                raise exceptions.ValidationError('State edge index out of range.', f'edge {j + 1} -> {i + 1}')
            if j == i:
                raise exceptions.ValidationError('State edge is a self-loop.', f'edge {j + 1} -> {i + 1}')
        for s, i in sorted(self.input_edges):
            if not (0 <= s < self.m and 0 <= i < self.n):
                raise exceptions.ValidationError('Input edge index out of range.', f'edge u{s + 1} -> {i + 1}')
        if self.labels is not None and len(self.labels) != self.n:
            raise exceptions.ValidationError('Labels do not match the number of state nodes.')

    def label(self, i: int) -> str:
        return self.labels[i] if self.labels is not None else str(i + 1)


@dataclasses.dataclass(frozen=True)
class SystemGraph:
    """Directed graph of a (possibly extended) network.

    State nodes are the integers 0..n-1 and each corresponds to one
    copy (subsystem, copy index) of a subsystem. Input nodes are the
    integers 0..m-1 in their own namespace: they only appear as the
    first element of input_edges and have no incoming edges.
    """
    copies: Tuple[Copy, ...]
    m: int
    state_edges: FrozenSet[Edge]
    input_edges: FrozenSet[Edge]
    labels: Tuple[str, ...]

    @property
    def n(self) -> int:
        return len(self.copies)

    def subsystem(self, k: int) -> int:
        return self.copies[k][0]

    @functools.cached_property
    def successors(self) -> Tuple[Tuple[int, ...], ...]:
        succ: List[List[int]] = [[] for _ in range(self.n)]
        for j, i in sorted(self.state_edges):
            succ[j].append(i)
        return tuple(tuple(s) for s in succ)

    @functools.cached_property
    def input_successors(self) -> Tuple[Tuple[int, ...], ...]:
        succ: List[List[int]] = [[] for _ in range(self.m)]
        for s, i in sorted(self.input_edges):
            succ[s].append(i)
        return tuple(tuple(s) for s in succ)

    def digraph(self) -> networkx.DiGraph:
        """Return the graph as a networkx.DiGraph.

        State nodes are the integers k, input nodes the tuples ('u', s).
        """
        graph = networkx.DiGraph()
        graph.add_nodes_from(range(self.n))
        graph.add_nodes_from(('u', s) for s in range(self.m))
        graph.add_edges_from(self.state_edges)
        graph.add_edges_from((('u', s), i) for s, i in self.input_edges)
        return graph

    def state_digraph(self) -> networkx.DiGraph:
        graph = networkx.DiGraph()
        graph.add_nodes_from(range(self.n))
        graph.add_edges_from(self.state_edges)
        return graph

    def reachable(self, s: int) -> FrozenSet[int]:
        """State nodes reachable from input s."""
        graph = self.state_digraph()
        reached = set()
        for i in self.input_successors[s]:
            if i not in reached:
                reached.add(i)
                reached.update(networkx.descendants(graph, i))
        return frozenset(reached)

    def inaccessible(self) -> Tuple[int, ...]:
        """State nodes not reachable from any input, ascending."""
        graph = self.digraph()
        reached = set()
        for s in range(self.m):
            reached.update(networkx.descendants(graph, ('u', s)))
        return tuple(k for k in range(self.n) if k not in reached)

    def is_acyclic(self) -> bool:
        return networkx.is_directed_acyclic_graph(self.state_digraph())


@dataclasses.dataclass(frozen=True)
class ExtendedNetwork:
    """Block-structured model of a network with higher-order subsystems.

    Attributes:
      base: The original network.
      orders: Number of copies of every subsystem.
      heterogeneous: Whether the internal dynamics of a subsystem is
        generic (True) or zero (False).
      copy_edges: Optional explicit set of inter-subsystem copy edges
        ((j, a), (i, b)). When None, every base edge (j, i) connects
        all copies of j to all copies of i.
      copy_input_edges: Optional explicit set of copy input edges
        (s, (i, b)). When None, every base input edge drives all the
        copies of the subsystem.
      copy_tags: Optional per-subsystem tuple of tags naming the copies,
        for example the indices of the cover paths sharing the node.
        Metadata only, not part of the identity.
    """
    base: StructuredNetwork
    orders: Tuple[int, ...]
    heterogeneous: Tuple[bool, ...]
    copy_edges: Optional[FrozenSet[CopyEdge]] = None
    copy_input_edges: Optional[FrozenSet[CopyInputEdge]] = None
    copy_tags: Optional[Tuple[Tuple[int, ...], ...]] = dataclasses.field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, 'orders', tuple(int(q) for q in self.orders))
        object.__setattr__(self, 'heterogeneous', tuple(bool(h) for h in self.heterogeneous))
        if self.copy_edges is not None:
            object.__setattr__(self, 'copy_edges', frozenset(
                ((int(j), int(a)), (int(i), int(b))) for (j, a), (i, b) in self.copy_edges))
        if self.copy_input_edges is not None:
            object.__setattr__(self, 'copy_input_edges', frozenset(
                (int(s), (int(i), int(b))) for s, (i, b) in self.copy_input_edges))
        self.validate()

    def validate(self):
        n = self.base.n
        if len(self.orders) != n or len(self.heterogeneous) != n:
            raise exceptions.ValidationError(
                'Orders and heterogeneous flags must have one entry per subsystem.',
                f'n = {n}, orders = {len(self.orders)}, heterogeneous = {len(self.heterogeneous)}')
        for i, q in enumerate(self.orders):
            if q < 1:
                raise exceptions.ValidationError('Subsystem order must be at least 1.', f'subsystem {i + 1}')
        if self.copy_edges is not None:
            for (j, a), (i, b) in sorted(self.copy_edges):
                if not self._has_copy(j, a) or not self._has_copy(i, b):
                    raise exceptions.ValidationError(
                        'Copy edge index out of range.', f'edge {j + 1}.{a + 1} -> {i + 1}.{b + 1}')
                if (j, i) not in self.base.state_edges:
                    raise exceptions.ValidationError(
                        'Copy edge violates locality.', f'edge {j + 1}.{a + 1} -> {i + 1}.{b + 1}')
        if self.copy_input_edges is not None:
            for s, (i, b) in sorted(self.copy_input_edges):
                if not self._has_copy(i, b) or (s, i) not in self.base.input_edges:
                    raise exceptions.ValidationError(
                        'Copy input edge violates locality.', f'edge u{s + 1} -> {i + 1}.{b + 1}')

    def _has_copy(self, i: int, a: int) -> bool:
        return 0 <= i < self.base.n and 0 <= a < self.orders[i]

    @property
    def n(self) -> int:
        return self.base.n

    @property
    def m(self) -> int:
        return self.base.m

    @property
    def n_hat(self) -> int:
        return sum(self.orders)

    @functools.cached_property
    def offsets(self) -> Tuple[int, ...]:
        """Index of the first copy of every subsystem in the expanded graph."""
        offsets = []
        total = 0
        for q in self.orders:
            offsets.append(total)
            total += q
        return tuple(offsets)

    def index(self, i: int, a: int) -> int:
        return self.offsets[i] + a

    def modified(self) -> Tuple[int, ...]:
        """Subsystems of order greater than one or with generic dynamics."""
        return tuple(i for i in range(self.n) if self.orders[i] > 1 or self.heterogeneous[i])

    def replace(self, **changes) -> 'ExtendedNetwork':
        return dataclasses.replace(self, **changes)


def identity_extension(net: StructuredNetwork) -> ExtendedNetwork:
    return ExtendedNetwork(net, (1,) * net.n, (False,) * net.n)


def expanded_graph(net: ExtendedNetwork) -> SystemGraph:
    """Build the graph of an extended network.

    Every base edge (j, i) connects each copy of j to each copy of i
    unless an explicit copy pattern restricts it. Heterogeneous
    subsystems get all the ordered pairs of their copies, self-loops
    included. Input edges reach every copy of a driven subsystem
    unless an explicit copy input pattern restricts them.
    """
    base = net.base
    copies = tuple((i, a) for i in range(base.n) for a in range(net.orders[i]))
    edges = set()
    if net.copy_edges is None:
        for j, i in base.state_edges:
            for a in range(net.orders[j]):
                for b in range(net.orders[i]):
                    edges.add((net.index(j, a), net.index(i, b)))
    else:
        for (j, a), (i, b) in net.copy_edges:
            edges.add((net.index(j, a), net.index(i, b)))
    for i in range(base.n):
        if net.heterogeneous[i]:
            for a in range(net.orders[i]):
                for b in range(net.orders[i]):
                    edges.add((net.index(i, a), net.index(i, b)))
    if net.copy_input_edges is None:
        inputs = {(s, net.index(i, b)) for s, i in base.input_edges for b in range(net.orders[i])}
    else:
        inputs = {(s, net.index(i, b)) for s, (i, b) in net.copy_input_edges}
    labels = tuple(
        base.label(i) if net.orders[i] == 1 else f'{base.label(i)}.{a + 1}' for i, a in copies)
    return SystemGraph(copies, base.m, frozenset(edges), frozenset(inputs), labels)


def system_graph(net: Union[StructuredNetwork, ExtendedNetwork]) -> SystemGraph:
    """Return the graph of a structured or extended network."""
    if isinstance(net, StructuredNetwork):
        net = identity_extension(net)
    return expanded_graph(net)


def to_document(net: Union[StructuredNetwork, ExtendedNetwork]) -> Dict:
    """Convert a network to its JSON document, 1-based indices."""
    ext = net if isinstance(net, ExtendedNetwork) else None
    base = ext.base if ext is not None else net
    doc: Dict = {
        'n': base.n,
        'm': base.m,
        'state_edges': [[j + 1, i + 1] for j, i in sorted(base.state_edges)],
        'input_edges': [[s + 1, i + 1] for s, i in sorted(base.input_edges)],
    }
    if base.labels is not None:
        doc['labels'] = {str(i + 1): label for i, label in enumerate(base.labels)}
    if ext is not None:
        doc['orders'] = list(ext.orders)
        doc['heterogeneous'] = list(ext.heterogeneous)
        if ext.copy_edges is not None:
            doc['copy_edges'] = [[j + 1, a + 1, i + 1, b + 1] for (j, a), (i, b) in sorted(ext.copy_edges)]
        if ext.copy_input_edges is not None:
            doc['copy_input_edges'] = [[s + 1, i + 1, b + 1] for s, (i, b) in sorted(ext.copy_input_edges)]
    return doc


def dumps(net: Union[StructuredNetwork, ExtendedNetwork]) -> str:
    return json.dumps(to_document(net), indent=2, sort_keys=True)


def _indices(items: List[Tuple[int, ...]], key: str) -> List[Tuple[int, ...]]:
    """Convert 1-based index tuples into 0-based tuples, rejecting repeats."""
    out = [tuple(x - 1 for x in item) for item in items]
    if len(set(out)) != len(out):
        duplicates = sorted({t for t in out if out.count(t) > 1})
        raise exceptions.ValidationError(
            f'Duplicate entry in "{key}".', ' '.join(str([x + 1 for x in t]) for t in duplicates))
    return out


def from_document(doc: Dict) -> Union[StructuredNetwork, ExtendedNetwork]:
    """Build a network from a parsed JSON document.

    Documents with an "orders" field describe extended networks.

    Raises:
      ValidationError: The document violates the schema or the network invariants.
    """
    extended = isinstance(doc, dict) and 'orders' in doc
    model = schemas.ExtendedDocument if extended else schemas.NetworkDocument
    parsed = schemas.validate(model, doc, 'network document')
    n = parsed.n
    labels = None
    if parsed.labels is not None:
        labels = tuple(parsed.labels.get(str(i + 1), str(i + 1)) for i in range(max(n, 0)))
    base = StructuredNetwork(
        n, parsed.m,
        _indices(parsed.state_edges, 'state_edges'),
        _indices(parsed.input_edges, 'input_edges'),
        labels)
    if not extended:
        return base
    heterogeneous = parsed.heterogeneous if parsed.heterogeneous is not None else [False] * n
    copy_edges = None
    if parsed.copy_edges is not None:
        copy_edges = [((j, a), (i, b)) for j, a, i, b in _indices(parsed.copy_edges, 'copy_edges')]
    copy_input_edges = None
    if parsed.copy_input_edges is not None:
        copy_input_edges = [(s, (i, b)) for s, i, b in _indices(parsed.copy_input_edges, 'copy_input_edges')]
    return ExtendedNetwork(base, tuple(parsed.orders), tuple(heterogeneous), copy_edges, copy_input_edges)


def parse(text: str) -> Dict:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise exceptions.ValidationError('Malformed network document.', str(exc)) from exc


def _read(path_or_text: str) -> str:
    """Return the document text: the argument itself when it is inline JSON, else the file contents."""
    if path_or_text.lstrip().startswith('{'):
        return path_or_text
    if not os.path.isfile(path_or_text):
        raise exceptions.ValidationError('Network document not found.', path_or_text)
    with open(path_or_text) as fd:
        return fd.read()


def load_network(path_or_text: str) -> StructuredNetwork:
    """Load and validate a network document.

    Args:
      path_or_text: A file path or the JSON text itself.
    Returns:
      The validated StructuredNetwork.
    Raises:
      ValidationError: Malformed document or invariant violation.
    """
    net = from_document(parse(_read(path_or_text)))
    if isinstance(net, ExtendedNetwork):
        raise exceptions.ValidationError('Expected a network document, found an extended network.')
    return net


def load_extended(path_or_text: str) -> ExtendedNetwork:
    """Load an extended network document.

    Plain network documents load as the identity extension.
    """
    net = from_document(parse(_read(path_or_text)))
    if isinstance(net, StructuredNetwork):
        net = identity_extension(net)
    return net
