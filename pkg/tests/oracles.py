"""Independent oracles used to freeze expected values.

Everything here recomputes results from first principles, sharing only type
definitions with the package: dense rational elimination for ranks, dense
matrix products for braid lifts, and an alternative reduced-word generator.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from racktwist.rack import Permutation


def rank_over_rationals(rows) -> int:
    """Dense Gaussian elimination with Fractions; unconditional exact rank."""
    mat = [[Fraction(v) for v in row] for row in rows]
    nrows = len(mat)
    ncols = len(mat[0]) if nrows else 0
    rank = 0
    for c in range(ncols):
        piv = next((i for i in range(rank, nrows) if mat[i][c] != 0), None)
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        pv = mat[rank][c]
        for i in range(rank + 1, nrows):
            f = mat[i][c] / pv
            if f:
                for j in range(c, ncols):
                    mat[i][j] -= f * mat[rank][j]
        rank += 1
        if rank == nrows:
            break
    return rank


def largest_descent_word(sigma: Permutation) -> tuple[int, ...]:
    """A reduced word built by always taking the largest left descent."""
    word = []
    cur = sigma
    while True:
        ds = cur.left_descents()
        if not ds:
            break
        i = ds[-1]
        word.append(i)
        cur = Permutation.adjacent(cur.n, i) * cur
    return tuple(word)


def dense_strand_matrix(q, degree: int, letter: int) -> np.ndarray:
    """Dense signed permutation matrix of the strand-local braiding (order <= 2 only)."""
    assert q.order <= 2
    k = q.rack.size
    dim = k**degree
    mat = np.zeros((dim, dim), dtype=np.int64)
    for v in range(dim):
        digits = []
        rem = v
        for _ in range(degree):
            digits.append(rem % k)
            rem //= k
        digits.reverse()
        x, y = digits[letter - 1], digits[letter]
        digits[letter - 1], digits[letter] = q.rack.op[x][y], x
        w = 0
        for d in digits:
            w = w * k + d
        sign = -1 if (q.order == 2 and q.exp[x][y] % 2) else 1
        mat[w, v] = sign
    return mat


def brute_force_symmetrizer(q, degree: int) -> np.ndarray:
    """Dense symmetrizer: sum dense lift matrices over independently reduced words.

    Words come from largest_descent_word and every lift is a fresh chain of
    dense matrix products, so no prefix reuse or monomial bookkeeping from
    the package is involved.
    """
    import itertools

    k = q.rack.size
    dim = k**degree
    gens = {i: dense_strand_matrix(q, degree, i) for i in range(1, degree)}
    total = np.zeros((dim, dim), dtype=np.int64)
    for img in itertools.permutations(range(1, degree + 1)):
        sigma = Permutation(tuple(img))
        lift = np.eye(dim, dtype=np.int64)
        for i in largest_descent_word(sigma):
            lift = lift @ gens[i]
        total += lift
    return total
