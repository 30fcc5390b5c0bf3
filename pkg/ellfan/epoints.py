"""Points of E and of E_T = E^n in the divisible-group model.

A point of E is a torsion part in (Q/Z)^2 plus a finite Q-linear combination
of independent generic symbols. Symbols are treated as Q-linearly independent
from each other and from every torsion point.
"""
import logging
from fractions import Fraction

import numpy as np

from ellfan.errors import DimensionMismatchError, PointNotInSubgroupError
from ellfan.lattice import identity, int_matrix, integer_kernel, matmul, row_basis, sign_normalized, as_lists
from ellfan.utils import lcm_all, to_fraction, fraction_to_str

INFINITE = "infinite"


class EllipticPoint(object):
    __slots__ = ("torsion", "generic")

    def __init__(self, torsion=(0, 0), generic=None):
        a, b = torsion
        self.torsion = (to_fraction(a) % 1, to_fraction(b) % 1)
        items = []
        for symbol, coefficient in (generic or {}).items():
            coefficient = to_fraction(coefficient)
            if coefficient != 0:
                items.append((str(symbol), coefficient))
        self.generic = tuple(sorted(items))

    @classmethod
    def identity(cls):
        return cls()

    @classmethod
    def from_symbol(cls, symbol, coefficient=1):
        return cls(generic={symbol: coefficient})

    def generic_map(self):
        return dict(self.generic)

    def symbols(self):
        return set(symbol for symbol, _ in self.generic)

    def is_torsion(self):
        return not self.generic

    def is_identity(self):
        return self.is_torsion() and self.torsion == (0, 0)

    def __add__(self, other):
        generic = self.generic_map()
        for symbol, coefficient in other.generic:
            generic[symbol] = generic.get(symbol, 0) + coefficient
        return EllipticPoint((self.torsion[0] + other.torsion[0], self.torsion[1] + other.torsion[1]), generic)

    def __neg__(self):
        return self * -1

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, k):
        k = int(k)
        return EllipticPoint((self.torsion[0] * k, self.torsion[1] * k),
                             dict((symbol, coefficient * k) for symbol, coefficient in self.generic))

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, EllipticPoint) and self.torsion == other.torsion and self.generic == other.generic

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash((self.torsion, self.generic))

    def as_dict(self):
        return {"torsion": [fraction_to_str(x) for x in self.torsion],
                "generic": dict((symbol, fraction_to_str(c)) for symbol, c in self.generic)}

    def __repr__(self):
        parts = []
        if self.torsion != (0, 0):
            parts.append("(" + fraction_to_str(self.torsion[0]) + "," + fraction_to_str(self.torsion[1]) + ")")
        for symbol, coefficient in self.generic:
            parts.append(fraction_to_str(coefficient) + "*" + symbol if coefficient != 1 else symbol)
        return " + ".join(parts) if parts else "0"


class TorusPoint(object):
    __slots__ = ("coords",)

    def __init__(self, coords):
        self.coords = tuple(coords)
        for c in self.coords:
            if not isinstance(c, EllipticPoint):
                raise TypeError("coordinates of a TorusPoint must be EllipticPoints")

    @classmethod
    def identity(cls, n):
        return cls([EllipticPoint() for _ in range(n)])

    @property
    def rank(self):
        return len(self.coords)

    def __len__(self):
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def symbols(self):
        found = set()
        for c in self.coords:
            found |= c.symbols()
        return found

    def is_identity(self):
        return all(c.is_identity() for c in self.coords)

    def _check_rank(self, other):
        if self.rank != other.rank:
            logging.log(logging.ERROR, "Adding points of E^" + str(self.rank) + " and E^" + str(other.rank))
            raise DimensionMismatchError("points live in different ranks")

    def __add__(self, other):
        self._check_rank(other)
        return TorusPoint([a + b for a, b in zip(self.coords, other.coords)])

    def __neg__(self):
        return TorusPoint([-a for a in self.coords])

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        return isinstance(other, TorusPoint) and self.coords == other.coords

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash(self.coords)

    def as_dict(self):
        return [c.as_dict() for c in self.coords]

    def __repr__(self):
        return "TorusPoint(" + ", ".join(repr(c) for c in self.coords) + ")"


def evaluate_character(w, e):
    """The point sum_i w_i e_i of E."""
    if len(w) != e.rank:
        logging.log(logging.ERROR, "Character of length " + str(len(w)) + " evaluated on a point of E^" + str(e.rank))
        raise DimensionMismatchError("character and point have different ranks")
    total = EllipticPoint()
    for k, coord in zip(w, e.coords):
        if k:
            total = total + coord * int(k)
    return total


def point_vector(points):
    """An object array of EllipticPoints that integer matrices act on with ``dot``."""
    vector = np.empty(len(points), dtype=object)
    for i, p in enumerate(points):
        vector[i] = p
    return vector


def apply_matrix(matrix, points):
    """The points sum_k matrix[l, k] * points[k], one for each row l."""
    if matrix.shape[1] != len(points):
        logging.log(logging.ERROR, "Matrix of shape " + str(matrix.shape) + " applied to " + str(len(points)) +
                    " points")
        raise DimensionMismatchError("matrix and point vector have different lengths")
    if matrix.shape[1] == 0:
        return [EllipticPoint() for _ in range(matrix.shape[0])]
    return list(matrix.dot(point_vector(points)))


def annihilator_lattice(e):
    """Rows form a Z-basis of A(e) = {w : evaluate_character(w, e) = 0}."""
    n = e.rank
    symbols = sorted(e.symbols())
    if symbols:
        constraints = []
        for symbol in symbols:
            coefficients = [c.generic_map().get(symbol, Fraction(0)) for c in e.coords]
            scale = lcm_all(x.denominator for x in coefficients)
            constraints.append([int(x * scale) for x in coefficients])
        generic_kernel = integer_kernel(int_matrix(constraints, ncols=n))
    else:
        generic_kernel = identity(n)
    k = generic_kernel.shape[0]
    if k == 0:
        return generic_kernel

    torsion = np.array([[Fraction(a), Fraction(b)] for a, b in (c.torsion for c in e.coords)], dtype=object)
    residues = generic_kernel.dot(torsion)
    modulus = lcm_all(Fraction(x).denominator for x in residues.flat)
    if modulus == 1:
        return generic_kernel

    # u with u . residues integral <=> (u, v) in the integer kernel of [M*residues; M*I]^T
    relations = np.vstack((residues * modulus, modulus * identity(2)))
    solutions = integer_kernel(int_matrix(relations.T))
    basis = row_basis(solutions[:, :k])
    return int_matrix(sign_normalized(as_lists(matmul(basis, generic_kernel))), ncols=n)


def perturb(e, subgroup, symbols):
    """e plus a generic point of the identity component of ``subgroup``.

    ``symbols`` is the session's SymbolGenerator; symbols of e are reserved so
    the new directions never collide with it.
    """
    if not subgroup.contains_point(e):
        logging.log(logging.ERROR, "Cannot perturb " + repr(e) + " inside a subgroup not containing it.")
        raise PointNotInSubgroupError("point is not in the subgroup")
    symbols.reserve(e.symbols())
    return e + subgroup.generic_point_of_identity_component(symbols)


def torsion_order(p):
    if not p.is_torsion():
        return INFINITE
    return lcm_all(x.denominator for x in p.torsion)
