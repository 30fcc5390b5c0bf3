"""Sparse exact matrices for the chain complexes of the cech module."""
import logging
from fractions import Fraction
from math import gcd

from ellfan.errors import DimensionMismatchError
from ellfan.utils import lcm_all


class SparseMatrix(object):
    def __init__(self, nrows, ncols):
        self.nrows = nrows
        self.ncols = ncols
        self.rows = [{} for _ in range(nrows)]

    def add(self, i, j, value):
        if value == 0:
            return
        row = self.rows[i]
        total = row.get(j, 0) + value
        if total == 0:
            row.pop(j, None)
        else:
            row[j] = total

    def get(self, i, j):
        return self.rows[i].get(j, 0)

    def nnz(self):
        return sum(len(row) for row in self.rows)

    def is_zero(self):
        return all(not row for row in self.rows)

    def matmul(self, other):
        if self.ncols != other.nrows:
            logging.log(logging.ERROR, "Cannot compose " + str((self.nrows, self.ncols)) +
                        " with " + str((other.nrows, other.ncols)))
            raise DimensionMismatchError("inner dimensions differ")
        product = SparseMatrix(self.nrows, other.ncols)
        for i, row in enumerate(self.rows):
            for k, a in row.items():
                for j, b in other.rows[k].items():
                    product.add(i, j, a * b)
        return product

    def rank(self):
        """Exact rank over Q by fraction-free incremental echelon reduction."""
        pivots = {}
        work = []
        for row in self.rows:
            if not row:
                continue
            scale = lcm_all(Fraction(v).denominator for v in row.values())
            work.append({j: int(Fraction(v) * scale) for j, v in row.items()})
        work.sort(key=len)
        for row in work:
            while row:
                c = min(row)
                pivot = pivots.get(c)
                if pivot is None:
                    pivots[c] = row
                    break
                a, b = pivot[c], row[c]
                reduced = {}
                for j in set(row) | set(pivot):
                    value = a * row.get(j, 0) - b * pivot.get(j, 0)
                    if value != 0:
                        reduced[j] = value
                content = 0
                for value in reduced.values():
                    content = gcd(content, value)
                    if content == 1:
                        break
                if content > 1:
                    reduced = {j: value // content for j, value in reduced.items()}
                row = reduced
        return len(pivots)

    def __repr__(self):
        return "SparseMatrix(" + str(self.nrows) + "x" + str(self.ncols) + ", nnz=" + str(self.nnz()) + ")"
