"""Elliptic Hochschild homology of a weighted chart [A^l x G_m^k / T].

Each affine coordinate with a nonzero weight contributes O_{E_T}, each torus
coordinate with weight w contributes O_{ker w} (or O_{E_T} in degrees 0 and 1
when w = 0), and a chart is the Kunneth product of its coordinates.
"""
import logging

from ellfan.errors import DimensionMismatchError, InfiniteRankError
from ellfan.lattice import as_lists, int_matrix, is_zero_row
from ellfan.subgroups import SubgroupScheme


class SheafTerm(object):
    """A free O_Z-module with graded ranks; Z is a subgroup scheme of E_T."""
    is_zero = False

    def __init__(self, support, multiplicity):
        self.support = support
        self.multiplicity = dict((int(i), int(m)) for i, m in multiplicity.items() if m)
        if self.multiplicity.get(0, 0) < 1:
            logging.log(logging.ERROR, "Sheaf term with no degree 0 part: " + str(self.multiplicity))
            raise ValueError("a nonzero sheaf term has rank >= 1 in degree 0")

    @property
    def ambient_rank(self):
        return self.support.ambient_rank

    def total_rank(self):
        return sum(self.multiplicity.values())

    def __eq__(self, other):
        if not isinstance(other, SheafTerm) or other.is_zero:
            return False
        return self.support == other.support and self.multiplicity == other.multiplicity

    def __ne__(self, other):
        return not self == other

    __hash__ = None

    def as_dict(self):
        return {"zero": False,
                "support": self.support.as_dict(),
                "multiplicity": dict((str(i), m) for i, m in sorted(self.multiplicity.items()))}

    def __repr__(self):
        return "SheafTerm(" + repr(self.support) + ", " + str(self.multiplicity) + ")"


class ZeroTerm(object):
    is_zero = True
    support = None
    multiplicity = {}

    def __init__(self, ambient_rank):
        self.ambient_rank = int(ambient_rank)

    def total_rank(self):
        return 0

    def __eq__(self, other):
        return isinstance(other, ZeroTerm) and other.ambient_rank == self.ambient_rank

    def __ne__(self, other):
        return not self == other

    __hash__ = None

    def as_dict(self):
        return {"zero": True, "support": None, "multiplicity": {}}

    def __repr__(self):
        return "ZeroTerm(" + str(self.ambient_rank) + ")"


def structure_sheaf(n):
    return SheafTerm(SubgroupScheme.full(n), {0: 1})


def hh_affine_factor(w):
    n = len(w)
    if is_zero_row(w):
        logging.log(logging.DEBUG, "Affine coordinate with trivial weight: HH of A^1 is not of finite rank.")
        raise InfiniteRankError("affine factor with zero weight has infinite rank")
    return structure_sheaf(n)


def hh_torus_factor(w):
    n = len(w)
    if is_zero_row(w):
        return SheafTerm(SubgroupScheme.full(n), {0: 1, 1: 1})
    return SheafTerm(SubgroupScheme(int_matrix([w], ncols=n), n), {0: 1})


def kunneth_tensor(t1, t2):
    if t1.ambient_rank != t2.ambient_rank:
        logging.log(logging.ERROR, "Kunneth product of terms over E^" + str(t1.ambient_rank) +
                    " and E^" + str(t2.ambient_rank))
        raise DimensionMismatchError("terms live over different ranks")
    if t1.is_zero or t2.is_zero:
        return ZeroTerm(t1.ambient_rank)
    multiplicity = {}
    for a, m1 in t1.multiplicity.items():
        for b, m2 in t2.multiplicity.items():
            multiplicity[a + b] = multiplicity.get(a + b, 0) + m1 * m2
    return SheafTerm(t1.support.intersect(t2.support), multiplicity)


def _column_count(weights):
    if hasattr(weights, "shape"):
        return weights.shape[1]
    weights = list(weights)
    return len(weights[0]) if weights else None


def hh_chart(W_A, W_G, n=None):
    if n is None:
        n = _column_count(W_A)
        if n is None:
            n = _column_count(W_G)
        if n is None:
            logging.log(logging.ERROR, "Cannot infer the rank of a chart with no weights.")
            raise DimensionMismatchError("rank must be given for a chart without weights")
    for weights in (W_A, W_G):
        if hasattr(weights, "shape") and weights.shape[1] != n:
            logging.log(logging.ERROR, "Chart weights with " + str(weights.shape[1]) + " columns in rank " + str(n))
            raise DimensionMismatchError("chart weight matrices have different column counts")
    W_A = int_matrix(W_A, ncols=n)
    W_G = int_matrix(W_G, ncols=n)
    term = structure_sheaf(n)
    for row in as_lists(W_A):
        term = kunneth_tensor(term, hh_affine_factor(row))
    for row in as_lists(W_G):
        term = kunneth_tensor(term, hh_torus_factor(row))
    return term
