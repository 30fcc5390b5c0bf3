"""Subgroup schemes of E^n cut out by integer characters.

A subgroup is stored by its defining characters W; the Smith form U W V = D
gives the second view Z = V (E[d_1] x ... x E[d_r] x E^(n-r)).
"""
import itertools
import logging
from fractions import Fraction

from ellfan.epoints import EllipticPoint, TorusPoint, apply_matrix, evaluate_character
from ellfan.errors import DimensionMismatchError, PointNotInSubgroupError
from ellfan.lattice import (as_lists, identity, int_matrix, rational_rref, row_lattice_contains_all,
                            smith_normal_form, stack)


class SubgroupScheme(object):
    def __init__(self, characters, ambient_rank):
        self.ambient_rank = int(ambient_rank)
        self.characters = int_matrix(characters, ncols=self.ambient_rank)
        self.canonical = smith_normal_form(self.characters)
        self.invariant_factors = list(self.canonical.invariant_factors)

    @classmethod
    def full(cls, n):
        return cls(int_matrix([], ncols=n), n)

    @classmethod
    def trivial(cls, n):
        return cls(identity(n), n)

    @property
    def rank(self):
        return len(self.invariant_factors)

    @property
    def dimension(self):
        return self.ambient_rank - self.rank

    @property
    def codimension(self):
        return self.rank

    def is_connected(self):
        return all(d == 1 for d in self.invariant_factors)

    def _check_rank(self, n):
        if n != self.ambient_rank:
            logging.log(logging.ERROR, "Rank mismatch: subgroup of E^" + str(self.ambient_rank) +
                        " used with rank " + str(n))
            raise DimensionMismatchError("ambient ranks differ")

    def contains_point(self, e):
        self._check_rank(e.rank)
        return all(evaluate_character(w, e).is_identity() for w in as_lists(self.characters))

    def contains(self, other):
        """True iff other is a subgroup of self."""
        self._check_rank(other.ambient_rank)
        return row_lattice_contains_all(other.characters, self.characters)

    def intersect(self, other):
        self._check_rank(other.ambient_rank)
        return SubgroupScheme(stack(self.characters, other.characters), self.ambient_rank)

    def component_count(self):
        count = 1
        for d in self.invariant_factors:
            count *= d * d
        return count

    def smith_coordinates(self, e):
        """f = V^-1 e, the point in the coordinates where Z is a product."""
        self._check_rank(e.rank)
        return apply_matrix(self.canonical.V_inv, e.coords)

    def from_smith_coordinates(self, f):
        return TorusPoint(apply_matrix(self.canonical.V, f))

    def component_index(self, e):
        if not self.contains_point(e):
            logging.log(logging.ERROR, "Point " + repr(e) + " is not in the subgroup.")
            raise PointNotInSubgroupError("point is not in the subgroup")
        f = self.smith_coordinates(e)
        label = []
        for l, d in enumerate(self.invariant_factors):
            a, b = f[l].torsion
            label.append((int(a * d) % d, int(b * d) % d))
        return tuple(label)

    def component_labels(self):
        factors = [list(itertools.product(range(d), range(d))) for d in self.invariant_factors]
        return [tuple(label) for label in itertools.product(*factors)]

    def component_representative(self, label, symbols):
        """A point of the labelled component with fresh generic free coordinates."""
        r = self.rank
        f = []
        for l, d in enumerate(self.invariant_factors):
            x, y = label[l]
            f.append(EllipticPoint((Fraction(x, d), Fraction(y, d))))
        for _ in range(r, self.ambient_rank):
            f.append(EllipticPoint.from_symbol(symbols.request_symbol()))
        return self.from_smith_coordinates(f)

    def generic_point_of_identity_component(self, symbols):
        return self.component_representative(tuple((0, 0) for _ in self.invariant_factors), symbols)

    def torsion_generators(self):
        generators = []
        n = self.ambient_rank
        for l, d in enumerate(self.invariant_factors):
            if d == 1:
                continue
            for torsion in ((Fraction(1, d), 0), (0, Fraction(1, d))):
                f = [EllipticPoint() for _ in range(n)]
                f[l] = EllipticPoint(torsion)
                generators.append(self.from_smith_coordinates(f))
        return generators

    def generators(self, symbols):
        """Points generating the group: the identity component plus torsion generators."""
        return [self.generic_point_of_identity_component(symbols)] + self.torsion_generators()

    def conormal_rref(self):
        return rational_rref(as_lists(self.characters), self.ambient_rank)

    def conormal_space(self):
        return self.conormal_rref()[0]

    def __eq__(self, other):
        if not isinstance(other, SubgroupScheme) or other.ambient_rank != self.ambient_rank:
            return False
        return self.contains(other) and other.contains(self)

    def __ne__(self, other):
        return not self == other

    __hash__ = None

    def as_dict(self):
        return {"ambient_rank": self.ambient_rank,
                "characters": as_lists(self.characters),
                "rank": self.rank,
                "invariant_factors": list(self.invariant_factors),
                "dimension": self.dimension,
                "components": self.component_count(),
                "connected": self.is_connected()}

    def __repr__(self):
        return ("SubgroupScheme(n=" + str(self.ambient_rank) + ", characters=" + str(as_lists(self.characters)) +
                ", factors=" + str(self.invariant_factors) + ")")


def kernel_of_characters(W, n):
    return SubgroupScheme(W, n)


def contains_point(Z, e):
    return Z.contains_point(e)


def contains(Z1, Z2):
    return Z1.contains(Z2)


def intersect(Z1, Z2):
    return Z1.intersect(Z2)


def component_count(Z):
    return Z.component_count()


def component_index(Z, e):
    return Z.component_index(e)


def conormal_space(Z):
    return Z.conormal_space()


def generic_point_of_identity_component(Z, symbols):
    return Z.generic_point_of_identity_component(symbols)
