"""Dense linear algebra over the prime field GF(p)."""

from typing import List, Sequence

# Mersenne prime 2^31 - 1: products of two residues fit in 62 bits.
PRIME = 2**31 - 1

Matrix = List[List[int]]


def reduce(rows: Sequence[Sequence[int]], p: int = PRIME) -> Matrix:
    return [[x % p for x in row] for row in rows]


def matvec(a: Sequence[Sequence[int]], x: Sequence[int], p: int = PRIME) -> List[int]:
    return [sum(aij * xj for aij, xj in zip(row, x) if aij) % p for row in a]


def rank(rows: Sequence[Sequence[int]], p: int = PRIME) -> int:
    """Rank of a matrix over GF(p) by Gaussian elimination.

    Args:
      rows: The matrix, as a sequence of rows. Since row and column
        rank agree, a list of column vectors works as well.
      p: The field characteristic, a prime.
    Returns:
      The rank.
    """
    rows = reduce(rows, p)
    if not rows:
        return 0
    ncols = len(rows[0])
    r = 0
    for col in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][col]), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inverse = pow(rows[r][col], p - 2, p)
        rows[r] = [x * inverse % p for x in rows[r]]
        for i in range(r + 1, len(rows)):
            factor = rows[i][col]
            if factor:
                rows[i] = [(x - factor * y) % p for x, y in zip(rows[i], rows[r])]
        r += 1
        if r == len(rows):
            break
    return r


def krylov(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]], p: int = PRIME) -> Matrix:
    """Columns of the controllability matrix [B AB ... A^(n-1)B].

    Args:
      a: Square n x n matrix.
      b: n x m matrix.
    Returns:
      The n*m columns, each a list of n residues.
    """
    n = len(a)
    m = len(b[0]) if b else 0
    columns = []
    for s in range(m):
        v = [row[s] % p for row in b]
        for _ in range(n):
            columns.append(v)
            v = matvec(a, v, p)
    return columns
