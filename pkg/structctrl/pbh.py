"""Eigenvalue-wise (PBH) output controllability tests.

The eigenvalues at which rank [lI - A, B] < n are the uncontrollable
eigenvalues l_1, ..., l_r. Under the hypothesis that N, the span of the
eigenvectors of A^T heading Jordan chains of length two or more,
satisfies N & ker B^T <= Im C^T, the system is output controllable iff

  [ l_1 I - A   B                               K ]
  [                 ...                         : ]
  [                     l_r I - A   B           K ]

has full row rank r n, where the columns of K span ker C. Blocks of
controllable eigenvalues have full row rank and may be left out. With a
single uncontrollable eigenvalue l the condition reduces to
rank C [lI - A, B] = p, and with none to rank C R = p.

Two modes are supported. In rational mode all the computations are
exact over the rationals with sympy; N is the sum over the repeated
irreducible factors f of the characteristic polynomial of
ker f(A^T) & Im f(A^T). The uncontrollable eigenvalues must be
rational, otherwise the verdict is inconclusive. In float mode ranks
are SVD ranks with a relative tolerance, and only numerically
diagonalizable matrices (N = 0) are decided.
"""

from typing import Any, List, NamedTuple, Optional, Sequence, Tuple
import enum
import logging

import numpy
import scipy.linalg
import sympy

from structctrl import exceptions


RANK_TOL_EXPONENT = 40
CONDITION_LIMIT = 1e10
EIGENVALUE_TOL = 1e-8

log = logging.getLogger(__name__)


class Verdict(enum.Enum):
    OUTPUT_CONTROLLABLE = 'output-controllable'
    NOT_OUTPUT_CONTROLLABLE = 'not-output-controllable'
    INCONCLUSIVE = 'inconclusive'


class RankCertificate(NamedTuple):
    test: str
    rank: int
    target: int

    @property
    def passed(self) -> bool:
        return self.rank == self.target


class PbhReport(NamedTuple):
    """Outcome of the PBH output controllability test.

    Attributes:
      mode: 'rational' or 'float64'.
      eigenvalues: Distinct eigenvalues with their algebraic multiplicity.
      uncontrollable_eigenvalues: The eigenvalues l with rank [lI - A, B] < n,
        None when they could not be determined exactly.
      diagonalizable: Whether A is diagonalizable.
      condition: Condition number of the eigenvector matrix, float mode only.
      n_basis: Basis of N, None when unavailable.
      hypothesis_ok: Whether N & ker B^T <= Im C^T, None when unknown.
      verdict: The verdict.
      which_test: 'direct_rank', 'corollary2' or 'theorem4_iii'.
      certificate: The rank test outcome backing the verdict.
      reason: Why the verdict is inconclusive.
    """
    mode: str
    eigenvalues: Tuple[Tuple[Any, int], ...]
    uncontrollable_eigenvalues: Optional[Tuple[Any, ...]]
    diagonalizable: bool
    condition: Optional[float]
    n_basis: Optional[Tuple[Tuple[Any, ...], ...]]
    hypothesis_ok: Optional[bool]
    verdict: Verdict
    which_test: Optional[str]
    certificate: Optional[RankCertificate]
    reason: Optional[str] = None


class NaiveReport(NamedTuple):
    ranks: Tuple[Tuple[Any, int], ...]
    target: int
    passed: bool


def _check_mode(mode: str):
    if mode not in ('rational', 'float64'):
        raise exceptions.ParameterError('Unknown PBH mode.', mode)


def _check_output(n: int, p: int, rank: int):
    if p >= n:
        raise exceptions.PreconditionError('The output matrix must have fewer rows than states.', f'p = {p}, n = {n}')
    if rank != p:
        raise exceptions.PreconditionError('The output matrix must have full row rank.', f'rank C = {rank} < {p}')


def _test_name(count: int) -> str:
    if count == 0:
        return 'direct_rank'
    if count == 1:
        return 'corollary2'
    return 'theorem4_iii'


def _verdict(certificate: RankCertificate) -> Verdict:
    return Verdict.OUTPUT_CONTROLLABLE if certificate.passed else Verdict.NOT_OUTPUT_CONTROLLABLE


# Rational mode.


def _polyval(f: sympy.Poly, m: sympy.Matrix) -> sympy.Matrix:
    identity = sympy.eye(m.rows)
    out = sympy.zeros(m.rows, m.rows)
    for c in f.all_coeffs():
        out = out * m + c * identity
    return out


def _hstack(columns: Sequence[sympy.Matrix], rows: int) -> sympy.Matrix:
    return sympy.Matrix.hstack(*columns) if columns else sympy.zeros(rows, 0)


def _intersection(u: sympy.Matrix, v: sympy.Matrix) -> List[sympy.Matrix]:
    """Basis of the intersection of the column spaces of u and v."""
    if u.cols == 0 or v.cols == 0:
        return []
    vectors = [u * z[:u.cols, :] for z in sympy.Matrix.hstack(u, -v).nullspace()]
    return _hstack(vectors, u.rows).columnspace() if vectors else []


def _controllability_matrix(a: sympy.Matrix, b: sympy.Matrix) -> sympy.Matrix:
    blocks = [b]
    for _ in range(a.rows - 1):
        blocks.append(a * blocks[-1])
    return sympy.Matrix.hstack(*blocks)


def _stacked(a, b, k, eigenvalues, eye, diag):
    """The block matrix of the multiple eigenvalue test."""
    n = a.shape[0]
    blocks = [_hstack_any(l * eye(n) - a, b) for l in eigenvalues]
    left = diag(*blocks)
    right = _vstack_any(*([k] * len(eigenvalues)))
    return left, right


def _hstack_any(*blocks):
    if isinstance(blocks[0], sympy.MatrixBase):
        return sympy.Matrix.hstack(*blocks)
    return numpy.hstack(blocks)


def _vstack_any(*blocks):
    if isinstance(blocks[0], sympy.MatrixBase):
        return sympy.Matrix.vstack(*blocks)
    return numpy.vstack(blocks)


def _rational_test(a: sympy.Matrix, b: sympy.Matrix, c: sympy.Matrix) -> PbhReport:
    n, p = a.rows, c.rows
    _check_output(n, p, c.rank())
    x = sympy.Symbol('x')
    charpoly = sympy.Poly(a.charpoly(x).as_expr(), x)
    _, factors = charpoly.factor_list()

    eigenvalues = []
    n_vectors: List[sympy.Matrix] = []
    diagonalizable = True
    for f, k in factors:
        eigenvalues.extend((root, k) for root in f.all_roots())
        if k == 1:
            continue
        fa = _polyval(f, a)
        if n - fa.rank() != k * f.degree():
            diagonalizable = False
            ft = fa.T
            n_vectors.extend(_intersection(_hstack(ft.nullspace(), n), _hstack(ft.columnspace(), n)))
    eigenvalues.sort(key=lambda item: sympy.default_sort_key(item[0]))

    hypothesis_ok = True
    if n_vectors:
        basis = _hstack(n_vectors, n)
        rank_ct = c.rank()
        for z in (b.T * basis).nullspace():
            if sympy.Matrix.hstack(c.T, basis * z).rank() != rank_ct:
                hypothesis_ok = False
                break
    n_basis = tuple(tuple(v) for v in n_vectors)

    r = _controllability_matrix(a, b)
    spanning = r.columnspace()
    if len(spanning) == n:
        uncontrollable_poly = sympy.Poly(1, x)
    elif not spanning:
        uncontrollable_poly = charpoly
    else:
        v = sympy.Matrix.hstack(*spanning)
        restricted = (v.T * v).inv() * v.T * a * v
        uncontrollable_poly, remainder = charpoly.div(sympy.Poly(restricted.charpoly(x).as_expr(), x))
        if not remainder.is_zero:
            raise exceptions.VerificationError('Controllable subspace is not invariant.')
    _, uncontrollable_factors = uncontrollable_poly.factor_list()
    if any(f.degree() > 1 for f, _ in uncontrollable_factors):
        return PbhReport('rational', tuple(eigenvalues), None, diagonalizable, None, n_basis, hypothesis_ok,
                         Verdict.INCONCLUSIVE, None, None, 'uncontrollable eigenvalues are not rational')
    uncontrollable = tuple(sorted(-f.all_coeffs()[1] / f.all_coeffs()[0] for f, _ in uncontrollable_factors))
    log.debug('uncontrollable eigenvalues %s', uncontrollable)

    test = _test_name(len(uncontrollable))
    if test == 'direct_rank':
        certificate = RankCertificate(test, (c * r).rank(), p)
    elif test == 'corollary2':
        (l,) = uncontrollable
        certificate = RankCertificate(test, (c * sympy.Matrix.hstack(l * sympy.eye(n) - a, b)).rank(), p)
    else:
        left, right = _stacked(a, b, _hstack(c.nullspace(), n), uncontrollable, sympy.eye, sympy.diag)
        certificate = RankCertificate(test, sympy.Matrix.hstack(left, right).rank(), len(uncontrollable) * n)

    if not hypothesis_ok:
        return PbhReport('rational', tuple(eigenvalues), uncontrollable, diagonalizable, None, n_basis, False,
                         Verdict.INCONCLUSIVE, test, certificate, 'hypothesis on N does not hold')
    return PbhReport('rational', tuple(eigenvalues), uncontrollable, diagonalizable, None, n_basis, True,
                     _verdict(certificate), test, certificate)


# Float mode.


def numeric_rank(m: numpy.ndarray) -> int:
    """SVD rank with tolerance max(shape) * s_1 * 2^-40."""
    if m.size == 0:
        return 0
    s = numpy.linalg.svd(m, compute_uv=False)
    if not s.size or s[0] == 0:
        return 0
    return int(numpy.sum(s > max(m.shape) * s[0] * 2.0 ** -RANK_TOL_EXPONENT))


def _group(values: numpy.ndarray) -> List[Tuple[complex, int]]:
    groups: List[List] = []
    for value in sorted(values, key=lambda z: (z.real, z.imag)):
        for group in groups:
            if abs(group[0] - value) <= EIGENVALUE_TOL * max(1.0, abs(value)):
                group[1] += 1
                break
        else:
            groups.append([value, 1])
    return [(complex(value), count) for value, count in groups]


def _float_test(a: numpy.ndarray, b: numpy.ndarray, c: numpy.ndarray) -> PbhReport:
    n, p = a.shape[0], c.shape[0]
    _check_output(n, p, numeric_rank(c))
    values, vectors = numpy.linalg.eig(a)
    condition = float(numpy.linalg.cond(vectors))
    eigenvalues = tuple(_group(values))
    if not condition < CONDITION_LIMIT:
        return PbhReport('float64', eigenvalues, None, False, condition, None, None,
                         Verdict.INCONCLUSIVE, None, None, 'matrix is not numerically diagonalizable')
    identity = numpy.eye(n)
    uncontrollable = tuple(l for l, _ in eigenvalues if numeric_rank(numpy.hstack([l * identity - a, b])) < n)
    test = _test_name(len(uncontrollable))
    if test == 'direct_rank':
        blocks = [b]
        for _ in range(n - 1):
            blocks.append(a @ blocks[-1])
        certificate = RankCertificate(test, numeric_rank(c @ numpy.hstack(blocks)), p)
    elif test == 'corollary2':
        (l,) = uncontrollable
        certificate = RankCertificate(test, numeric_rank(c @ numpy.hstack([l * identity - a, b])), p)
    else:
        k = scipy.linalg.null_space(c)
        left, right = _stacked(a.astype(complex), b.astype(complex), k.astype(complex), uncontrollable,
                               numpy.eye, scipy.linalg.block_diag)
        certificate = RankCertificate(test, numeric_rank(numpy.hstack([left, right])), len(uncontrollable) * n)
    return PbhReport('float64', eigenvalues, uncontrollable, True, condition, (), True,
                     _verdict(certificate), test, certificate)


def _as_rational(m) -> sympy.Matrix:
    return sympy.Matrix(m).applyfunc(sympy.nsimplify)


def pbh_output_test(a, b, c, mode: str = 'rational') -> PbhReport:
    """Decide output controllability of (A, B, C) eigenvalue by eigenvalue.

    Args:
      a: The n x n state matrix.
      b: The n x m input matrix.
      c: The p x n output matrix, full row rank with p < n.
      mode: 'rational' for exact arithmetic, 'float64' for numerical.
    Returns:
      A PbhReport. The verdict is conclusive only when a rank
      certificate backs it.
    Raises:
      PreconditionError: The output matrix is degenerate.
    """
    _check_mode(mode)
    if mode == 'rational':
        return _rational_test(_as_rational(a), _as_rational(b), _as_rational(c))
    return _float_test(numpy.asarray(a, dtype=float), numpy.asarray(b, dtype=float), numpy.asarray(c, dtype=float))


def naive_eigenvalue_test(a, b, c, mode: str = 'rational') -> NaiveReport:
    """Check rank C [lI - A, B] >= p at every eigenvalue l.

    This condition is necessary but not sufficient for output
    controllability when there are several uncontrollable eigenvalues.
    """
    _check_mode(mode)
    if mode == 'rational':
        a, b, c = _as_rational(a), _as_rational(b), _as_rational(c)
        n, p = a.rows, c.rows
        eigenvalues = sorted(a.eigenvals(), key=sympy.default_sort_key)
        ranks = tuple((l, (c * sympy.Matrix.hstack(l * sympy.eye(n) - a, b)).rank()) for l in eigenvalues)
    else:
        a, b, c = (numpy.asarray(m, dtype=float) for m in (a, b, c))
        n, p = a.shape[0], c.shape[0]
        ranks = tuple((l, numeric_rank(c @ numpy.hstack([l * numpy.eye(n) - a, b])))
                      for l, _ in _group(numpy.linalg.eigvals(a)))
    return NaiveReport(ranks, p, all(rank >= p for _, rank in ranks))
