"""Exact integer and rational linear algebra.

Integer matrices are numpy arrays of dtype ``object`` holding python ints, so
entries never overflow and never become floats. Rational matrices are plain
lists of lists of :class:`fractions.Fraction`.
"""
import logging
from fractions import Fraction

import numpy as np

from ellfan.errors import DimensionMismatchError


def int_matrix(rows, ncols=None):
    if isinstance(rows, np.ndarray):
        if rows.ndim != 2:
            logging.log(logging.ERROR, "Integer matrices must be two dimensional, got shape " + str(rows.shape))
            raise DimensionMismatchError("expected a 2-dimensional array, got shape " + str(rows.shape))
        if ncols is None:
            ncols = rows.shape[1]
    rows = [list(row) for row in rows]
    if ncols is None:
        if not rows:
            raise DimensionMismatchError("cannot infer the column count of an empty matrix")
        ncols = len(rows[0])
    matrix = np.zeros((len(rows), ncols), dtype=object)
    for i, row in enumerate(rows):
        if len(row) != ncols:
            logging.log(logging.ERROR, "Row " + str(i) + " has " + str(len(row)) + " entries, expected " + str(ncols))
            raise DimensionMismatchError("ragged integer matrix")
        for j, x in enumerate(row):
            if int(x) != x:
                raise DimensionMismatchError("non-integer entry " + repr(x))
            matrix[i, j] = int(x)
    return matrix


def identity(n):
    return np.eye(n, dtype=object)


def as_lists(matrix):
    return [[int(x) for x in row] for row in matrix.tolist()]


def matmul(a, b):
    if a.shape[1] != b.shape[0]:
        logging.log(logging.ERROR, "Cannot multiply " + str(a.shape) + " by " + str(b.shape))
        raise DimensionMismatchError("inner dimensions differ")
    if a.shape[1] == 0:
        return np.zeros((a.shape[0], b.shape[1]), dtype=object)
    return a.dot(b)


def stack(a, b):
    if a.shape[1] != b.shape[1]:
        raise DimensionMismatchError("cannot stack matrices with different column counts")
    return np.vstack((a, b))


def is_zero_row(row):
    return all(x == 0 for x in row)


def sign_normalized(rows):
    """Flip each row so its first nonzero entry is positive."""
    normalized = []
    for row in rows:
        row = list(row)
        lead = next((x for x in row if x != 0), 0)
        normalized.append([-x for x in row] if lead < 0 else row)
    return normalized


class SmithDecomposition(object):
    """U * A * V = D with U, V unimodular and d_1 | d_2 | ... on the diagonal of D.

    The inverses of U and V are kept as well because subgroup coordinates need
    both directions of the change of basis.
    """

    def __init__(self, source, U, D, V, U_inv, V_inv, invariant_factors):
        self.source = source
        self.U = U
        self.D = D
        self.V = V
        self.U_inv = U_inv
        self.V_inv = V_inv
        self.invariant_factors = list(invariant_factors)

    @property
    def rank(self):
        return len(self.invariant_factors)

    @property
    def shape(self):
        return self.source.shape

    def diagonal(self):
        m, n = self.shape
        return [self.D[t, t] for t in range(min(m, n))]

    def __repr__(self):
        return "SmithDecomposition(shape=" + str(self.shape) + ", factors=" + str(self.invariant_factors) + ")"


def _swap_rows(m, i, j):
    m[[i, j]] = m[[j, i]]


def _swap_cols(m, i, j):
    m[:, [i, j]] = m[:, [j, i]]


def _find_pivot(D, t):
    # smallest absolute value, ties broken by lowest row then lowest column
    nonzero = np.argwhere(D[t:, t:] != 0)
    if len(nonzero) == 0:
        return None
    i, j = min(nonzero.tolist(), key=lambda ij: abs(D[t + ij[0], t + ij[1]]))
    return t + i, t + j


def smith_normal_form(a):
    source = int_matrix(a)
    m, n = source.shape
    D = source.copy()
    U, U_inv = identity(m), identity(m)
    V, V_inv = identity(n), identity(n)

    for t in range(min(m, n)):
        pivot = _find_pivot(D, t)
        if pivot is None:
            break
        while pivot is not None:
            i, j = pivot
            if i != t:
                _swap_rows(D, t, i)
                _swap_rows(U, t, i)
                _swap_cols(U_inv, t, i)
            if j != t:
                _swap_cols(D, t, j)
                _swap_cols(V, t, j)
                _swap_rows(V_inv, t, j)
            p = D[t, t]
            for i in range(t + 1, m):
                q = D[i, t] // p
                if q:
                    D[i] -= q * D[t]
                    U[i] -= q * U[t]
                    U_inv[:, t] += q * U_inv[:, i]
            for j in range(t + 1, n):
                q = D[t, j] // p
                if q:
                    D[:, j] -= q * D[:, t]
                    V[:, j] -= q * V[:, t]
                    V_inv[t] += q * V_inv[j]
            if (D[t + 1:, t] != 0).any() or (D[t, t + 1:] != 0).any():
                pivot = _find_pivot(D, t)
                continue
            offenders = np.argwhere(D[t + 1:, t + 1:] % p != 0)
            if len(offenders) == 0:
                pivot = None
                continue
            # pull the offending row into row t; the next pass sees a smaller remainder
            offender = t + 1 + int(offenders[0][0])
            D[t] += D[offender]
            U[t] += U[offender]
            U_inv[:, offender] -= U_inv[:, t]
            pivot = _find_pivot(D, t)
        if D[t, t] < 0:
            D[t] = -D[t]
            U[t] = -U[t]
            U_inv[:, t] = -U_inv[:, t]

    factors = []
    for t in range(min(m, n)):
        if D[t, t] == 0:
            break
        factors.append(D[t, t])
    return SmithDecomposition(source, U, D, V, U_inv, V_inv, factors)


def row_lattice_contains(a, w):
    a = a if isinstance(a, np.ndarray) else int_matrix(a, ncols=len(w))
    n = a.shape[1]
    if len(w) != n:
        logging.log(logging.ERROR, "Vector of length " + str(len(w)) + " tested against a lattice in Z^" + str(n))
        raise DimensionMismatchError("vector length does not match the column count")
    if n == 0:
        return True
    snf = smith_normal_form(a)
    factors = snf.invariant_factors
    x = int_matrix([w], ncols=n).dot(snf.V)[0]
    for j in range(n):
        d = factors[j] if j < len(factors) else 0
        if d == 0:
            if x[j] != 0:
                return False
        elif x[j] % d != 0:
            return False
    return True


def row_lattice_contains_all(a, b):
    return all(row_lattice_contains(a, row) for row in as_lists(b))


def integer_kernel(a):
    """Rows form a Z-basis of the saturated lattice {x : a x = 0}."""
    a = a if isinstance(a, np.ndarray) else int_matrix(a)
    n = a.shape[1]
    snf = smith_normal_form(a)
    return int_matrix(sign_normalized(as_lists(snf.V[:, snf.rank:].T)), ncols=n)


def row_basis(a):
    """A Z-basis of the lattice generated by the rows of a."""
    a = a if isinstance(a, np.ndarray) else int_matrix(a)
    n = a.shape[1]
    snf = smith_normal_form(a)
    factors = np.array(snf.invariant_factors, dtype=object).reshape(-1, 1)
    return int_matrix(sign_normalized(as_lists(factors * snf.V_inv[:snf.rank])), ncols=n)


def lattices_equal(a, b):
    return row_lattice_contains_all(a, b) and row_lattice_contains_all(b, a)


def rational_rref(rows, ncols):
    """Reduced row echelon form over Q; returns (nonzero rows, pivot columns)."""
    work = [[Fraction(x) for x in row] for row in rows]
    for row in work:
        if len(row) != ncols:
            raise DimensionMismatchError("ragged rational matrix")
    pivots = []
    r = 0
    for c in range(ncols):
        pivot_row = None
        for i in range(r, len(work)):
            if work[i][c] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        work[r], work[pivot_row] = work[pivot_row], work[r]
        p = work[r][c]
        work[r] = [x / p for x in work[r]]
        for i in range(len(work)):
            if i != r and work[i][c] != 0:
                f = work[i][c]
                work[i] = [x - f * y for x, y in zip(work[i], work[r])]
        pivots.append(c)
        r += 1
    return work[:r], pivots


def rational_nullspace(rows, ncols=None):
    rows = [list(row) for row in rows]
    if ncols is None:
        if not rows:
            raise DimensionMismatchError("cannot infer the column count of an empty matrix")
        ncols = len(rows[0])
    rref, pivots = rational_rref(rows, ncols)
    basis = []
    for free in range(ncols):
        if free in pivots:
            continue
        vector = [Fraction(0)] * ncols
        vector[free] = Fraction(1)
        for row, p in zip(rref, pivots):
            vector[p] = -row[free]
        basis.append(vector)
    return basis


def rref_coordinates(vector, rref, pivots):
    """Coordinates of a vector of the row space in the RREF basis."""
    coords = [Fraction(vector[p]) for p in pivots]
    check = [sum((c * row[j] for c, row in zip(coords, rref)), Fraction(0)) for j in range(len(vector))]
    if check != [Fraction(x) for x in vector]:
        raise DimensionMismatchError("vector is not in the row space")
    return coords


def rational_det(square):
    size = len(square)
    work = [[Fraction(x) for x in row] for row in square]
    det = Fraction(1)
    for c in range(size):
        pivot_row = None
        for i in range(c, size):
            if work[i][c] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            return Fraction(0)
        if pivot_row != c:
            work[c], work[pivot_row] = work[pivot_row], work[c]
            det = -det
        p = work[c][c]
        det *= p
        for i in range(c + 1, size):
            if work[i][c] != 0:
                f = work[i][c] / p
                work[i] = [x - f * y for x, y in zip(work[i], work[c])]
    return det
