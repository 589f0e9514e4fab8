"""Numerical realizations and randomized generic rank tests.

Structural (output) controllability is a property of almost every
realization of the free entries: the minors of the controllability
matrix are polynomials of degree below n^2 in the free entries. Ranks
are computed over GF(p), p = 2^31 - 1, with free entries drawn
uniformly from the nonzero residues. A nonzero minor vanishes at a
random point with probability at most deg/p (Schwartz-Zippel), so a
single trial underestimates the generic rank of an extended network
of order n with probability below n^2 * n / p, and the maximum over
trials never overestimates it.
"""

from typing import Any, List, NamedTuple, Optional, Sequence, Tuple
import concurrent.futures
import logging

import numpy
import sympy

from structctrl import casestudies
from structctrl import cover
from structctrl import exceptions
from structctrl import modular
from structctrl.network import ExtendedNetwork, expanded_graph


FLOAT_MIN_MAGNITUDE = 0.05

log = logging.getLogger(__name__)


class Field(NamedTuple):
    kind: str
    p: Optional[int] = None


PRIME_FIELD = Field('prime', modular.PRIME)
FLOAT64 = Field('float64')
RATIONAL = Field('rational')


def field(name: str) -> Field:
    """Field by command line name."""
    fields = {'prime': PRIME_FIELD, 'float': FLOAT64, 'float64': FLOAT64, 'rational': RATIONAL}
    if name not in fields:
        raise exceptions.ParameterError('Unknown field.', name)
    return fields[name]


class Pattern(NamedTuple):
    """Positions of the free entries of A, B and C, as (row, column)."""
    a: Tuple[Tuple[int, int], ...]
    b: Tuple[Tuple[int, int], ...]
    c: Tuple[Tuple[int, int], ...]
    # Entries of C fixed to one.
    c_fixed: Tuple[Tuple[int, int], ...]
    shape: Tuple[int, int, int]


def pattern(net: ExtendedNetwork) -> Pattern:
    g = expanded_graph(net)
    a = tuple(sorted((i, j) for j, i in g.state_edges))
    b = tuple(sorted((i, s) for s, i in g.input_edges))
    c = []
    c_fixed = []
    for i in range(net.n):
        if net.orders[i] == 1:
            c_fixed.append((i, net.index(i, 0)))
        else:
            c.extend((i, net.index(i, k)) for k in range(net.orders[i]))
    return Pattern(a, b, tuple(c), tuple(c_fixed), (g.n, net.m, net.n))


class RealizationSample(NamedTuple):
    """A numerical instance of an extended network pattern.

    Matrices are lists of lists of residues over the prime field,
    numpy arrays in float64, and sympy matrices over the rationals.
    """
    field: Field
    A: Any
    B: Any
    C: Any
    seed: Optional[int]


def _draw(rng: numpy.random.Generator, kind: Field, count: int) -> List:
    if kind.kind == 'prime':
        return [int(x) for x in rng.integers(1, kind.p, size=count)]
    signs = rng.choice([-1, 1], size=count)
    if kind.kind == 'float64':
        return list(signs * rng.uniform(FLOAT_MIN_MAGNITUDE, 1.0, size=count))
    return [sympy.Integer(int(x)) for x in signs * rng.integers(1, 10, size=count)]


def _assemble(kind: Field, shape: Tuple[int, int], entries) -> Any:
    rows, cols = shape
    if kind.kind == 'prime':
        matrix = [[0] * cols for _ in range(rows)]
        for (i, j), x in entries:
            matrix[i][j] = x
        return matrix
    if kind.kind == 'float64':
        matrix = numpy.zeros((rows, cols))
        for (i, j), x in entries:
            matrix[i, j] = x
        return matrix
    matrix = sympy.zeros(rows, cols)
    for (i, j), x in entries:
        matrix[i, j] = x
    return matrix


def sample_realization(net: ExtendedNetwork, kind: Field, seed: int) -> RealizationSample:
    """Draw the free entries of an extended network pattern.

    Prime field entries are uniform over the nonzero residues, float
    entries uniform over [-1, -0.05] U [0.05, 1], rational entries
    uniform over the nonzero integers in [-9, 9].
    """
    pat = pattern(net)
    rng = numpy.random.default_rng(seed)
    n_hat, m, n = pat.shape
    a = _draw(rng, kind, len(pat.a))
    b = _draw(rng, kind, len(pat.b))
    c = _draw(rng, kind, len(pat.c))
    one = 1 if kind.kind == 'prime' else (1.0 if kind.kind == 'float64' else sympy.Integer(1))
    return RealizationSample(
        kind,
        _assemble(kind, (n_hat, n_hat), zip(pat.a, a)),
        _assemble(kind, (n_hat, m), zip(pat.b, b)),
        _assemble(kind, (n, n_hat), [*zip(pat.c, c), *((pos, one) for pos in pat.c_fixed)]),
        seed)


class RankEstimate(NamedTuple):
    rank: int
    target: int
    ranks: Tuple[int, ...]
    seeds: Tuple[int, ...]
    p: int

    @property
    def full(self) -> bool:
        return self.rank == self.target


def trial_seeds(seed: int, trials: int) -> Tuple[int, ...]:
    """Independent per-trial seeds derived from one seed."""
    return tuple(int(x) for x in numpy.random.SeedSequence(seed).generate_state(trials))


def _trial(net: ExtendedNetwork, seed: int, output: bool) -> int:
    sample = sample_realization(net, PRIME_FIELD, seed)
    columns = modular.krylov(sample.A, sample.B)
    if output:
        columns = [modular.matvec(sample.C, v) for v in columns]
    return modular.rank(columns)


def _estimate(net: ExtendedNetwork, trials: int, seed: int, jobs: int, output: bool) -> RankEstimate:
    if trials < 1:
        raise exceptions.ParameterError('At least one trial is required.', f'trials = {trials}')
    seeds = trial_seeds(seed, trials)
    if jobs > 1:
        with concurrent.futures.ProcessPoolExecutor(max_workers=jobs) as pool:
            ranks = tuple(pool.map(_trial, [net] * trials, seeds, [output] * trials))
    else:
        ranks = tuple(_trial(net, s, output) for s in seeds)
    log.debug('per-trial ranks %s', ranks)
    target = net.n if output else net.n_hat
    return RankEstimate(max(ranks), target, ranks, seeds, modular.PRIME)


def generic_rank_controllability(net: ExtendedNetwork, trials: int = 5, seed: int = 0, jobs: int = 1) -> RankEstimate:
    """Generic rank of [B AB ... A^(n-1)B], estimated over GF(p)."""
    return _estimate(net, trials, seed, jobs, output=False)


def generic_rank_output_controllability(net: ExtendedNetwork, trials: int = 5, seed: int = 0,
                                        jobs: int = 1) -> RankEstimate:
    """Generic rank of C[B AB ... A^(n-1)B], estimated over GF(p).

    Full row rank is rank n, the number of subsystems.
    """
    return _estimate(net, trials, seed, jobs, output=True)


def output_controllability_necessary(net: ExtendedNetwork) -> bool:
    """Whether the generic controllable subspace is at least n dimensional.

    Structural output controllability requires it. Networks that are
    not input accessible fail it.
    """
    g = expanded_graph(net)
    if g.inaccessible():
        return False
    return cover.generic_dimension(g).d_c >= net.n


def _witness(net: ExtendedNetwork, intra, b, c) -> RealizationSample:
    """Exact realization with all free entries 1 except the given ones."""
    pat = pattern(net)
    n_hat, m, n = pat.shape
    a = sympy.zeros(n_hat, n_hat)
    for i, j in pat.a:
        a[i, j] = intra.get((i, j), 1)
    return RealizationSample(RATIONAL, a, sympy.Matrix(n_hat, m, b), sympy.Matrix(n, n_hat, c), None)


def _antidiagonal_blocks(net: ExtendedNetwork, subsystems: Sequence[int]):
    # Block k has eigenvalues +-sqrt(k + 1): distinct and nonzero.
    entries = {}
    for k, i in enumerate(subsystems, start=1):
        first, second = net.index(i, 0), net.index(i, 1)
        entries[(first, first)] = 0
        entries[(second, second)] = 0
        entries[(first, second)] = k + 1
        entries[(second, first)] = 1
    return entries


def proposition3_witness(h: int) -> RealizationSample:
    """Output controllable realization of the extended binary tree.

    Internal blocks [[0, k+1], [1, 0]], input into copy 1 of the root
    only, outputs reading copy 1 of every internal node.
    """
    if h < 1:
        raise exceptions.ParameterError('Tree witness requires h >= 1.', f'h = {h}')
    net = casestudies.extended_binary_tree(h)
    internal = [i for i in range(net.n) if net.orders[i] == 2]
    n_hat = net.n_hat
    b = [1 if k == 0 else 0 for k in range(n_hat)]
    c = [0] * (net.n * n_hat)
    for i in range(net.n):
        c[i * n_hat + net.index(i, 0)] = 1
    return _witness(net, _antidiagonal_blocks(net, internal), b, c)


def proposition4_witness(h: int) -> RealizationSample:
    """Output controllable realization of the extended bifurcation.

    Doubled blocks [[0, k+1], [1, 0]], outputs reading copy 2 of the
    doubled nodes.
    """
    if h < 2 or h % 2:
        raise exceptions.ParameterError('Bifurcation witness requires an even h >= 2.', f'h = {h}')
    net = casestudies.extended_bifurcation(h)
    doubled = [i for i in range(net.n) if net.orders[i] == 2]
    n_hat = net.n_hat
    b = [1 if k == 0 else 0 for k in range(n_hat)]
    c = [0] * (net.n * n_hat)
    for i in range(net.n):
        c[i * n_hat + net.index(i, 1 if net.orders[i] == 2 else 0)] = 1
    return _witness(net, _antidiagonal_blocks(net, doubled), b, c)


class TriangularCertificate(NamedTuple):
    matrix: sympy.Matrix
    columns: Tuple[int, ...]
    triangular: bool


def triangular_certificate(sample: RealizationSample, family: str, h: int) -> TriangularCertificate:
    """Square triangular submatrix of C[B A] for the witnesses.

    For the tree, the leading n columns form an upper triangular block
    and the remaining columns vanish. For the bifurcation, deleting the
    columns h+2+3k (1-based) and the final column, which belongs to the
    leaf of the right branch and vanishes, leaves a lower triangular
    block.
    """
    m = sample.C * sympy.Matrix.hstack(sample.B, sample.A)
    n = m.rows
    if family == 'binary_tree':
        columns = tuple(range(n))
        t = m.extract(list(range(n)), list(columns))
        rest_zero = m[:, n:].is_zero_matrix if m.cols > n else True
        ok = bool(t.is_upper and rest_zero)
    elif family == 'bifurcation':
        deleted = {h + 1 + 3 * k for k in range(h // 2)} | {m.cols - 1}
        columns = tuple(j for j in range(m.cols) if j not in deleted)
        t = m.extract(list(range(n)), list(columns))
        ok = bool(t.is_lower)
    else:
        raise exceptions.ParameterError('No triangular certificate for this family.', family)
    ok = ok and t.rows == t.cols and all(t[k, k] != 0 for k in range(t.rows))
    return TriangularCertificate(t, columns, ok)
