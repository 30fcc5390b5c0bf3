"""Smooth fans: validation, faces, chart weights and the Betti-number oracle."""
import itertools
import logging

from ellfan.errors import CompletenessError, FanError, NotAFaceError
from ellfan.lattice import identity, int_matrix, integer_kernel, rational_nullspace, smith_normal_form
from ellfan.utils import binomial, gcd_all


class Cone(object):
    __slots__ = ("ray_indices",)

    def __init__(self, ray_indices):
        self.ray_indices = tuple(sorted(set(int(i) for i in ray_indices)))

    @property
    def dim(self):
        return len(self.ray_indices)

    def is_face_of(self, other):
        return set(self.ray_indices) <= set(other.ray_indices)

    def __eq__(self, other):
        return isinstance(other, Cone) and self.ray_indices == other.ray_indices

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash(self.ray_indices)

    def __lt__(self, other):
        return (self.dim, self.ray_indices) < (other.dim, other.ray_indices)

    def as_list(self):
        return list(self.ray_indices)

    def __repr__(self):
        return "Cone(" + str(list(self.ray_indices)) + ")"


class ValidationReport(object):
    def __init__(self, fan):
        self.fan = fan
        self.violations = []
        self.primitive = True
        self.smooth = True
        self.face_intersections = True
        self.pairwise_non_contained = True
        self.wall_check = True

    @property
    def valid(self):
        return self.primitive and self.smooth and self.face_intersections and self.pairwise_non_contained

    @property
    def complete(self):
        return self.valid and self.wall_check and self.fan.assume_complete

    def add(self, kind, message):
        logging.log(logging.WARNING, "Fan " + str(self.fan.name) + ": " + message)
        self.violations.append({"kind": kind, "message": message})

    def as_dict(self):
        return {"name": self.fan.name,
                "valid": self.valid,
                "primitive": self.primitive,
                "smooth": self.smooth,
                "face_intersections": self.face_intersections,
                "wall_check": self.wall_check,
                "complete": self.complete,
                "violations": list(self.violations)}


class Fan(object):
    def __init__(self, rays, max_cones, rank=None, name=None, assume_complete=False):
        self.name = name
        self.rays = [tuple(int(x) for x in ray) for ray in rays]
        if rank is None:
            if not self.rays:
                logging.log(logging.ERROR, "Cannot infer the rank of a fan without rays.")
                raise FanError("rank must be given for a fan without rays")
            rank = len(self.rays[0])
        self.ambient_rank = int(rank)
        self.max_cones = [Cone(c) for c in max_cones]
        self.assume_complete = bool(assume_complete)
        self._check_structure()
        self._report = None
        self._faces = None

    def _check_structure(self):
        for i, ray in enumerate(self.rays):
            if len(ray) != self.ambient_rank:
                logging.log(logging.ERROR, "Ray " + str(i) + " of fan " + str(self.name) + " has the wrong length.")
                raise FanError("ray " + str(i) + " does not live in Z^" + str(self.ambient_rank))
            if all(x == 0 for x in ray):
                logging.log(logging.ERROR, "Ray " + str(i) + " of fan " + str(self.name) + " is zero.")
                raise FanError("ray " + str(i) + " is the zero vector")
        for cone in self.max_cones:
            for i in cone.ray_indices:
                if i < 0 or i >= len(self.rays):
                    logging.log(logging.ERROR, "Cone " + repr(cone) + " refers to a missing ray " + str(i))
                    raise FanError("cone " + str(cone.as_list()) + " has a bad ray index " + str(i))

    @property
    def flags(self):
        report = self.validate()
        return {"simplicial": report.smooth, "smooth": report.smooth, "complete_wall_check": report.wall_check}

    def ray_matrix(self, cone):
        return int_matrix([self.rays[i] for i in cone.ray_indices], ncols=self.ambient_rank)

    def faces(self):
        """Every face of every maximal cone, origin included, sorted by dimension."""
        if self._faces is None:
            found = set()
            for cone in self.max_cones:
                for k in range(cone.dim + 1):
                    for subset in itertools.combinations(cone.ray_indices, k):
                        found.add(Cone(subset))
            self._faces = sorted(found)
        return list(self._faces)

    def is_face(self, cone):
        return any(cone.is_face_of(m) for m in self.max_cones)

    def cones_of_dim(self, k):
        return [c for c in self.faces() if c.dim == k]

    def validate(self):
        if self._report is None:
            self._report = validate(self)
        return self._report

    def is_complete(self):
        return self.validate().complete

    def as_dict(self):
        return {"name": self.name, "rank": self.ambient_rank, "rays": [list(r) for r in self.rays],
                "max_cones": [c.as_list() for c in self.max_cones], "assume_complete": self.assume_complete}

    def __repr__(self):
        return ("Fan(" + str(self.name) + ", rank=" + str(self.ambient_rank) +
                ", cones=" + str(len(self.max_cones)) + ")")


def _is_smooth(fan, cone):
    if cone.dim == 0:
        return True
    snf = smith_normal_form(fan.ray_matrix(cone))
    return snf.rank == cone.dim and all(d == 1 for d in snf.invariant_factors)


def _overlap_outside_common(fan, sigma, tau):
    """True if cone(sigma) and cone(tau) meet outside the cone on their common rays.

    Searches the circuits of [rays(sigma) | -rays(tau)] for a nonnegative
    relation with weight on a ray that is not shared; such a relation exists iff
    some circuit is one.
    """
    common = set(sigma.ray_indices) & set(tau.ray_indices)
    columns = [(i, 1, i in common) for i in sigma.ray_indices] + [(j, -1, j in common) for j in tau.ray_indices]
    n = fan.ambient_rank
    for size in range(2, min(len(columns), n + 1) + 1):
        for subset in itertools.combinations(range(len(columns)), size):
            matrix = [[columns[c][1] * fan.rays[columns[c][0]][k] for c in subset] for k in range(n)]
            kernel = rational_nullspace(matrix, ncols=size)
            if len(kernel) != 1:
                continue
            relation = kernel[0]
            if any(x == 0 for x in relation):
                continue
            if not (all(x > 0 for x in relation) or all(x < 0 for x in relation)):
                continue
            if any(not columns[c][2] for c in subset):
                return True
    return False


def validate(fan):
    report = ValidationReport(fan)
    for i, ray in enumerate(fan.rays):
        if gcd_all(ray) != 1:
            report.primitive = False
            report.add("primitive", "ray " + str(i) + " " + str(list(ray)) + " is not primitive")
    for cone in fan.max_cones:
        if not _is_smooth(fan, cone):
            report.smooth = False
            factors = smith_normal_form(fan.ray_matrix(cone)).invariant_factors
            report.add("smooth", "cone " + str(cone.as_list()) + " is not smooth (invariant factors " +
                       str(factors) + ")")
    for a, b in itertools.combinations(range(len(fan.max_cones)), 2):
        sigma, tau = fan.max_cones[a], fan.max_cones[b]
        if sigma.is_face_of(tau) or tau.is_face_of(sigma):
            report.pairwise_non_contained = False
            report.add("containment", "maximal cones " + str(sigma.as_list()) + " and " + str(tau.as_list()) +
                       " are nested")
            continue
        if _overlap_outside_common(fan, sigma, tau):
            report.face_intersections = False
            report.add("intersection", "cones " + str(sigma.as_list()) + " and " + str(tau.as_list()) +
                       " do not meet in a common face")

    n = fan.ambient_rank
    if any(cone.dim != n for cone in fan.max_cones):
        report.wall_check = False
    else:
        walls = {}
        for cone in fan.max_cones:
            for wall in itertools.combinations(cone.ray_indices, n - 1):
                walls[wall] = walls.get(wall, 0) + 1
        bad = sorted(wall for wall, count in walls.items() if count != 2)
        if bad:
            report.wall_check = False
        for wall in bad:
            logging.log(logging.DEBUG, "Wall " + str(list(wall)) + " of fan " + str(fan.name) +
                        " lies on " + str(walls[wall]) + " maximal cone(s).")
    if not fan.max_cones:
        report.wall_check = False
    return report


def require_valid(fan):
    report = fan.validate()
    if not report.valid:
        logging.log(logging.ERROR, "Fan " + str(fan.name) + " failed validation.")
        raise FanError("fan " + str(fan.name) + " is invalid: " +
                       "; ".join(v["message"] for v in report.violations))
    return report


def _require_face(fan, cone):
    if not fan.is_face(cone):
        logging.log(logging.ERROR, "Cone " + repr(cone) + " is not a face of fan " + str(fan.name))
        raise NotAFaceError("cone " + str(cone.as_list()) + " is not a face of the fan")


def chart_weights(fan, cone):
    """(W_A, W_G): the dual basis of an extension of the cone's rays to a basis of Z^n.

    With U R V = [I 0] for the ray matrix R, the first l rows of V^-1 can be
    replaced by R to get a basis B of Z^n, and the columns of
    B^-1 = V diag(U, I) are the dual vectors.
    """
    _require_face(fan, cone)
    n = fan.ambient_rank
    l = cone.dim
    snf = smith_normal_form(fan.ray_matrix(cone))
    if snf.rank != l or any(d != 1 for d in snf.invariant_factors):
        logging.log(logging.ERROR, "Cone " + repr(cone) + " is not smooth.")
        raise FanError("cone " + str(cone.as_list()) + " is not smooth")
    B = identity(n)
    B[:l, :l] = snf.U
    dual = snf.V.dot(B).T
    return dual[:l].copy(), dual[l:].copy()


def cone_intersection(fan, sigma, tau):
    _require_face(fan, sigma)
    _require_face(fan, tau)
    require_valid(fan)
    return Cone(set(sigma.ray_indices) & set(tau.ray_indices))


def orbit_perp_lattice(fan, cone):
    """Rows form a Z-basis of the orthogonal of the cone in the character lattice."""
    _require_face(fan, cone)
    if cone.dim == 0:
        return identity(fan.ambient_rank)
    return integer_kernel(fan.ray_matrix(cone))


def cone_counts(fan, cones=None):
    cones = fan.faces() if cones is None else cones
    counts = [0] * (fan.ambient_rank + 1)
    for cone in cones:
        counts[cone.dim] += 1
    return counts


def betti_from_counts(counts, n):
    """b_2k = sum_i (-1)^(i-k) C(i,k) d_(n-i)."""
    betti = []
    for k in range(n + 1):
        total = 0
        for i in range(k, n + 1):
            total += (-1) ** (i - k) * binomial(i, k) * counts[n - i]
        betti.append(total)
    return betti


def betti_numbers(fan):
    if not fan.is_complete():
        logging.log(logging.ERROR, "Betti numbers requested for fan " + str(fan.name) + " not flagged complete.")
        raise CompletenessError("fan " + str(fan.name) + " is not flagged complete")
    return betti_from_counts(cone_counts(fan), fan.ambient_rank)


def star_betti_numbers(fan, cone):
    """Betti numbers of the orbit closure V(cone), from the star of the cone."""
    if not fan.is_complete():
        raise CompletenessError("fan " + str(fan.name) + " is not flagged complete")
    star = [c for c in fan.faces() if cone.is_face_of(c)]
    n = fan.ambient_rank - cone.dim
    counts = [0] * (n + 1)
    for c in star:
        counts[c.dim - cone.dim] += 1
    return betti_from_counts(counts, n)
