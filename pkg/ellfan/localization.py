"""Grojnowski subgroups T(e), fixed loci and the localization/completion checks.

The character group of T(e) is Z^n / A(e), A(e) the annihilator lattice of e.
A coordinate of a chart with weight w is fixed by T(e) iff w lies in A(e), so
on a chart U_sigma = A^l x G_m^(n-l) the fixed locus is the coordinate subspace
of the affine coordinates with weight in A(e), or empty as soon as a torus
weight falls outside A(e).
"""
import logging

from ellfan import fans, settings
from ellfan.cech import (SheafComplex, build_complex, fiber_complex, intersection_cone, nerve,
                         support_stratification)
from ellfan.epoints import TorusPoint, annihilator_lattice, perturb
from ellfan.errors import CompletenessError, ConeLimitError
from ellfan.lattice import as_lists, int_matrix, row_lattice_contains, row_lattice_contains_all, smith_normal_form
from ellfan.local_model import ZeroTerm, hh_chart
from ellfan.subgroups import SubgroupScheme
from ellfan.symbol_generators import SymbolGenerator


class DiagonalizableGroup(object):
    def __init__(self, ambient_rank, relations):
        self.ambient_rank = ambient_rank
        self.relations = relations
        self.presentation = smith_normal_form(relations)
        factors = self.presentation.invariant_factors
        self.rank = ambient_rank - len(factors)
        self.invariant_factors = [d for d in factors if d > 1]

    def is_trivial(self):
        return self.rank == 0 and not self.invariant_factors

    def describe(self):
        parts = ["mu_" + str(d) for d in self.invariant_factors]
        if self.rank:
            parts.append("G_m" if self.rank == 1 else "G_m^" + str(self.rank))
        return " x ".join(parts) if parts else "1"

    def as_dict(self):
        return {"rank": self.rank, "invariant_factors": list(self.invariant_factors),
                "relations": as_lists(self.relations), "group": self.describe()}

    def __repr__(self):
        return "DiagonalizableGroup(" + self.describe() + ")"


def t_of_e(e):
    return DiagonalizableGroup(e.rank, annihilator_lattice(e))


def fixed_chart(fan, cone, lattice):
    """(W_A restricted to weights in the lattice, W_G), or None when the fixed chart is empty."""
    W_A, W_G = fans.chart_weights(fan, cone)
    if not row_lattice_contains_all(lattice, W_G):
        return None
    kept = [row for row in as_lists(W_A) if row_lattice_contains(lattice, row)]
    return int_matrix(kept, ncols=fan.ambient_rank), W_G


class FixedLocusReport(object):
    def __init__(self, fan, point, lattice, fixed_cones, face_charts):
        self.fan = fan
        self.point = point
        self.lattice = lattice
        self.fixed_cones = fixed_cones
        self.face_charts = face_charts

    @property
    def fixed_charts(self):
        return [self.face_charts[cone] for cone in self.fan.max_cones]

    def is_fixed(self, cone):
        return cone in self.fixed_cones

    def minimal_fixed_cones(self):
        fixed = set(self.fixed_cones)
        return [c for c in self.fixed_cones
                if not any(other != c and other.is_face_of(c) for other in fixed)]

    def component_summary(self):
        """One component V(gamma) per minimal fixed cone gamma; they are pairwise disjoint."""
        n = self.fan.ambient_rank
        return [{"cone": c.as_list(), "dimension": n - c.dim} for c in self.minimal_fixed_cones()]

    def as_dict(self):
        charts = []
        for cone, chart in zip(self.fan.max_cones, self.fixed_charts):
            entry = {"cone": cone.as_list(), "empty": chart is None}
            if chart is not None:
                entry["aweights"] = as_lists(chart[0])
                entry["gweights"] = as_lists(chart[1])
            charts.append(entry)
        return {"point": self.point.as_dict(),
                "annihilator": as_lists(self.lattice),
                "fixed_cones": [c.as_list() for c in self.fixed_cones],
                "fixed_charts": charts,
                "components": self.component_summary()}


def fixed_subfan(fan, e):
    fans.require_valid(fan)
    lattice = annihilator_lattice(e)
    fixed = []
    charts = {}
    for cone in fan.faces():
        if row_lattice_contains_all(lattice, fans.orbit_perp_lattice(fan, cone)):
            fixed.append(cone)
        charts[cone] = fixed_chart(fan, cone, lattice)
    logging.log(logging.DEBUG, "Fan " + str(fan.name) + " at " + repr(e) + ": " + str(len(fixed)) + " fixed cones.")
    return FixedLocusReport(fan, e, lattice, fixed, charts)


def fixed_complex(fan, e, max_cones=None):
    """The Cech complex of the fixed charts, on the same nerve as build_complex."""
    fans.require_valid(fan)
    cap = settings.max_cones(max_cones)
    count = len(fan.max_cones)
    if count > cap:
        logging.log(logging.ERROR, "Fan " + str(fan.name) + " has " + str(count) + " maximal cones, cap is " + str(cap))
        raise ConeLimitError("fan has " + str(count) + " maximal cones, more than the cap " + str(cap))
    lattice = annihilator_lattice(e)
    n = fan.ambient_rank
    by_cone = {}
    terms = {}
    cones = {}
    index_sets = nerve(count)
    for subset in index_sets:
        cone = intersection_cone(fan, subset)
        if cone not in by_cone:
            chart = fixed_chart(fan, cone, lattice)
            by_cone[cone] = ZeroTerm(n) if chart is None else hh_chart(chart[0], chart[1], n)
        terms[subset] = by_cone[cone]
        cones[subset] = cone
    return SheafComplex(n, {"fan": fan.name, "fixed_at": e.as_dict()}, index_sets, terms, cones)


class LocalizationReport(object):
    def __init__(self, fan, point, checks):
        self.fan = fan
        self.point = point
        self.checks = checks

    @property
    def passed(self):
        return all(check["passed"] for check in self.checks)

    def as_dict(self):
        return {"fan": self.fan.name, "point": self.point.as_dict(), "passed": self.passed,
                "checks": [{"label": c["label"], "point": c["point"].as_dict(),
                            "ambient": dict((str(t), h) for t, h in c["ambient"].items()),
                            "fixed": dict((str(t), h) for t, h in c["fixed"].items()),
                            "passed": c["passed"]} for c in self.checks]}


def verify_localization(fan, e, max_cones=None, symbols=None):
    """Compare fibers of the ambient and fixed complexes at e and at stratum-generic points through e."""
    symbols = symbols or SymbolGenerator()
    symbols.reserve(e.symbols())
    ambient = build_complex(fan, max_cones)
    fixed = fixed_complex(fan, e, max_cones)
    n = fan.ambient_rank
    full = SubgroupScheme.full(n)
    strata = [full] + [z for z in support_stratification(ambient).supports_containing(e) if z != full]
    points = [("e", e)]
    for z in strata:
        points.append(("generic in " + str(as_lists(z.characters)), perturb(e, z, symbols)))
    checks = []
    for label, x in points:
        a = fiber_complex(ambient, x).cohomology
        b = fiber_complex(fixed, x).cohomology
        checks.append({"label": label, "point": x, "ambient": a, "fixed": b, "passed": a == b})
        if a != b:
            logging.log(logging.WARNING, "Localization mismatch for " + str(fan.name) + " at " + repr(x) +
                        ": " + str(a) + " vs " + str(b))
    return LocalizationReport(fan, e, checks)


def _require_complete(fan):
    if not fan.is_complete():
        logging.log(logging.ERROR, "Fan " + str(fan.name) + " is not flagged complete.")
        raise CompletenessError("fan " + str(fan.name) + " is not flagged complete")


def identity_fiber_check(fan, max_cones=None):
    _require_complete(fan)
    identity = TorusPoint.identity(fan.ambient_rank)
    fiber = fiber_complex(build_complex(fan, max_cones), identity)
    betti = fans.betti_numbers(fan)
    total = fiber.total_dimension()
    return {"fan": fan.name, "fiber_cohomology": dict((str(t), h) for t, h in fiber.cohomology.items()),
            "fiber_total": total, "betti": betti, "betti_total": sum(betti), "passed": total == sum(betti)}


def fixed_components(fan, e):
    """Minimal fixed cones; the fixed locus is the disjoint union of their orbit closures."""
    return fixed_subfan(fan, e).minimal_fixed_cones()


def fixed_locus_betti(fan, e):
    """Betti numbers of each component V(gamma) of the fixed locus of T(e)."""
    _require_complete(fan)
    return [(cone, fans.star_betti_numbers(fan, cone)) for cone in fixed_components(fan, e)]


def fixed_fiber_check(fan, e, max_cones=None):
    """Fiber dimension at e against the total Betti number of the fixed locus."""
    components = fixed_locus_betti(fan, e)
    fiber = fiber_complex(build_complex(fan, max_cones), e)
    expected = sum(sum(betti) for _, betti in components)
    return {"fan": fan.name, "point": e.as_dict(),
            "components": [{"cone": c.as_list(), "betti": betti} for c, betti in components],
            "fiber_total": fiber.total_dimension(), "fixed_locus_total": expected,
            "passed": fiber.total_dimension() == expected}
