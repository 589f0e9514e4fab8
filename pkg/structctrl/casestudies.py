"""Network families and figure fixtures.

Families:

  binary_tree   complete binary tree of height h, root driven by the
                single input, nodes numbered breadth first (node k has
                children 2k and 2k+1).
  bifurcation   root driven by the input and two chains of h nodes:
                1 -> 2 -> ... -> h+1 and 1 -> h+2 -> ... -> 2h+1.
                h must be even.
  stem_cycle    a stem u -> 1 -> ... -> l and a cycle 1 -> l+1 -> ...
                -> n -> 1 meeting only at node 1, l = n // 2.
  fig1a..fig3c  small fixtures: fig1* a star and its heterogeneous
                extensions, fig2a..fig2c X-networks, fig2d a Y-network,
                fig3a..fig3c the homogeneous extensions of fig2a..fig2c.

The extended tree gives every internal node two heterogeneous copies.
The first child of a node is driven from copy 1 of its parent, the
second child from copy 2, always into copy 1 of the child. In the
extended bifurcation the nodes h+2, h+4, ... of the right branch get
two heterogeneous copies. The incoming edge reaches copy 2, and copy 2
drives the following node of the chain.

Numbering is 1-based in this docstring and 0-based in the code.
"""

from typing import Dict, NamedTuple, Optional, Union

from structctrl import exceptions
from structctrl.cover import PathCycleCover, Stem
from structctrl.network import ExtendedNetwork, StructuredNetwork


FAMILIES = ('binary_tree', 'bifurcation', 'stem_cycle',
            'fig1a', 'fig1b', 'fig1c', 'fig2a', 'fig2b', 'fig2c', 'fig2d', 'fig3a', 'fig3b', 'fig3c')

PARAMETRIC = ('binary_tree', 'bifurcation', 'stem_cycle')


class CaseStudyId(NamedTuple):
    family: str
    # Height for trees and bifurcations, number of nodes for stem_cycle.
    parameter: Optional[int] = None
    extended: bool = False


class Metrics(NamedTuple):
    d_c: int
    S: int
    S_hat: int
    delta: int


def _check(cid: CaseStudyId):
    if cid.family not in FAMILIES:
        raise exceptions.ParameterError('Unknown case study family.', cid.family)
    if cid.family not in PARAMETRIC:
        return
    h = cid.parameter
    if h is None or h < 0:
        raise exceptions.ParameterError('A non-negative parameter is required.', f'{cid.family}: {h}')
    if cid.family == 'bifurcation' and h % 2:
        raise exceptions.ParameterError('Bifurcation height must be even.', f'h = {h}')
    if cid.family == 'stem_cycle' and h < 4:
        raise exceptions.ParameterError('Stem and cycle network needs at least 4 nodes.', f'n = {h}')


def binary_tree(h: int) -> StructuredNetwork:
    n = 2 ** (h + 1) - 1
    edges = [(p, c) for p in range(2 ** h - 1) for c in (2 * p + 1, 2 * p + 2)]
    return StructuredNetwork(n, 1, edges, [(0, 0)])


def extended_binary_tree(h: int) -> ExtendedNetwork:
    net = binary_tree(h)
    internal = 2 ** h - 1
    orders = tuple(2 if i < internal else 1 for i in range(net.n))
    heterogeneous = tuple(i < internal for i in range(net.n))
    copy_edges = []
    for p in range(internal):
        copy_edges.append(((p, 0), (2 * p + 1, 0)))
        copy_edges.append(((p, 1), (2 * p + 2, 0)))
    return ExtendedNetwork(net, orders, heterogeneous, frozenset(copy_edges))


def bifurcation(h: int) -> StructuredNetwork:
    n = 2 * h + 1
    edges = []
    if h:
        edges.append((0, 1))
        edges.append((0, h + 1))
    for k in range(1, h):
        edges.append((k, k + 1))
        edges.append((h + k, h + k + 1))
    return StructuredNetwork(n, 1, edges, [(0, 0)])


def extended_bifurcation(h: int) -> ExtendedNetwork:
    net = bifurcation(h)
    doubled = [h + 1 + 2 * k for k in range(h // 2)]
    orders = tuple(2 if i in doubled else 1 for i in range(net.n))
    heterogeneous = tuple(i in doubled for i in range(net.n))
    copy_edges = [((k, 0), (k + 1, 0)) for k in range(h)]
    previous = (0, 0)
    for e in doubled:
        copy_edges.append((previous, (e, 1)))
        copy_edges.append(((e, 1), (e + 1, 0)))
        previous = (e + 1, 0)
    return ExtendedNetwork(net, orders, heterogeneous, frozenset(copy_edges))


def stem_cycle(n: int) -> StructuredNetwork:
    length = n // 2
    edges = [(k, k + 1) for k in range(length - 1)]
    ring = [0, *range(length, n)]
    edges.extend(zip(ring, ring[1:] + ring[:1]))
    return StructuredNetwork(n, 1, edges, [(0, 0)])


_FIXTURES: Dict[str, StructuredNetwork] = {
    'fig1a': StructuredNetwork(3, 1, [(0, 1), (0, 2)], [(0, 0)]),
    'fig2a': StructuredNetwork(
        7, 2, [(0, 2), (1, 2), (2, 3), (2, 4), (3, 5), (4, 6)], [(0, 0), (1, 1)],
        ('e1', 'e2', 'z', 'a', 'b', 'd1', 'd2')),
    'fig2b': StructuredNetwork(
        6, 1, [(0, 1), (1, 2), (2, 3), (1, 4), (4, 5), (5, 1)], [(0, 0)],
        ('e1', 'z', '2', 'd1', '3', '4')),
    'fig2c': StructuredNetwork(
        7, 1, [(0, 1), (0, 2), (2, 3), (3, 4), (4, 2), (6, 4), (4, 5), (5, 6)], [(0, 0)],
        ('1', '2', '3', '4', 'z', '5', '7')),
    'fig2d': StructuredNetwork(
        7, 1, [(0, 1), (1, 2), (2, 3), (0, 4), (4, 5), (5, 6)], [(0, 0)],
        ('z', '2', '3', '4', 'h2', 'h3', 'h4')),
}

# The shared node of each X fixture.
_SHARED = {'fig2a': 2, 'fig2b': 1, 'fig2c': 4}

_COVERS = {
    'fig2a': PathCycleCover((Stem(0, (0, 2, 3, 5)), Stem(1, (1, 2, 4, 6)))),
    'fig2b': PathCycleCover((Stem(0, (0, 1, 2, 3)),), ((1, 4, 5),)),
    'fig2c': PathCycleCover((Stem(0, (0, 1)),), ((2, 3, 4), (4, 5, 6))),
}


def _fixture(family: str) -> Union[StructuredNetwork, ExtendedNetwork]:
    if family in _FIXTURES:
        return _FIXTURES[family]
    if family == 'fig1b':
        return ExtendedNetwork(_FIXTURES['fig1a'], (1, 1, 1), (False, False, True))
    if family == 'fig1c':
        return ExtendedNetwork(_FIXTURES['fig1a'], (1, 1, 3), (False, False, True))
    source = 'fig2' + family[-1]
    net = _FIXTURES[source]
    orders = tuple(2 if i == _SHARED[source] else 1 for i in range(net.n))
    return ExtendedNetwork(net, orders, (False,) * net.n)


def generate(cid: CaseStudyId) -> Union[StructuredNetwork, ExtendedNetwork]:
    """Build the network of a case study.

    Raises:
      ParameterError: Unknown family or invalid parameter.
    """
    _check(cid)
    h = cid.parameter
    if cid.family == 'binary_tree':
        return extended_binary_tree(h) if cid.extended else binary_tree(h)
    if cid.family == 'bifurcation':
        return extended_bifurcation(h) if cid.extended else bifurcation(h)
    if cid.family == 'stem_cycle':
        return stem_cycle(h)
    return _fixture(cid.family)


def paper_cover(family: str) -> PathCycleCover:
    """The cover drawn for an X-network fixture."""
    if family not in _COVERS:
        raise exceptions.ParameterError('No cover recorded for this fixture.', family)
    return _COVERS[family]


def expected_metrics(cid: CaseStudyId) -> Metrics:
    """Closed-form metrics of the parametric families.

    Raises:
      ParameterError: The family has no closed form.
    """
    _check(cid)
    h = cid.parameter
    if cid.family == 'binary_tree':
        return Metrics(h + 1, 2 ** (h + 1) - (h + 2), 2 ** h - 1, 2 ** h - (h + 1))
    if cid.family == 'bifurcation':
        return Metrics(h + 1, h, h // 2, h // 2)
    if cid.family == 'stem_cycle':
        d_c = max(h // 2, h - h // 2 + 1)
        return Metrics(d_c, h - d_c, 1, h - d_c - 1)
    raise exceptions.ParameterError('No closed form for this fixture.', cid.family)
