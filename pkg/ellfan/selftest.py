"""The built-in acceptance battery.

Each criterion is a function returning ``(passed, detail)``; ``run_battery``
runs them in order and times each one.
"""
import itertools
import logging
import time
from collections import OrderedDict
from fractions import Fraction

import numpy as np

from ellfan import fans, settings
from ellfan.cech import build_complex, chart_complex, fiber_complex, fold_periodic, global_sections_complex
from ellfan.epoints import EllipticPoint, TorusPoint, evaluate_character
from ellfan.errors import InfiniteRankError
from ellfan.generators import RandomMatrixGenerator
from ellfan.json_parser import bundled_fan, bundled_fan_names
from ellfan.lattice import (as_lists, identity, int_matrix, lattices_equal, matmul, rational_det,
                            row_lattice_contains, smith_normal_form)
from ellfan.local_model import hh_affine_factor, hh_chart, hh_torus_factor, structure_sheaf
from ellfan.localization import (fixed_fiber_check, fixed_subfan, identity_fiber_check, t_of_e,
                                 verify_localization)
from ellfan.subgroups import SubgroupScheme
from ellfan.symbol_generators import SymbolGenerator

PERFORMANCE_FANS = ("surface12",)


def point_battery(n):
    """Named test points of E^n: identity, torsion of orders 2, 3, 6 in the first coordinate,
    all-generic, mixed torsion/generic and diagonal."""
    battery = [("identity", TorusPoint.identity(n))]
    for order in (2, 3, 6):
        coords = [EllipticPoint((Fraction(1, order), 0))] + [EllipticPoint() for _ in range(n - 1)]
        battery.append(("order" + str(order), TorusPoint(coords)))
    battery.append(("generic", TorusPoint([EllipticPoint.from_symbol("g" + str(i + 1)) for i in range(n)])))
    if n == 1:
        battery.append(("mixed", TorusPoint([EllipticPoint((Fraction(1, 2), 0), {"g1": 1})])))
    else:
        coords = [EllipticPoint((Fraction(1, 2), 0))] + [EllipticPoint.from_symbol("g1") for _ in range(n - 1)]
        battery.append(("mixed", TorusPoint(coords)))
        battery.append(("diagonal", TorusPoint([EllipticPoint.from_symbol("g1") for _ in range(n)])))
    return battery


def bundled_fans():
    return [bundled_fan(name) for name in bundled_fan_names()]


def battery_fans():
    return [fan for fan in bundled_fans() if fan.name not in PERFORMANCE_FANS]


def generic_point(n):
    return TorusPoint([EllipticPoint.from_symbol(s) for s in SymbolGenerator().request_symbols(n)])


def random_point(generator, n):
    coords = []
    for _ in range(n):
        torsion = (Fraction(generator.get_random_integer(0, 5), 6), Fraction(generator.get_random_integer(0, 5), 6))
        generic = {}
        if generator.get_random_integer(0, 2) == 0:
            generic["g" + str(generator.get_random_integer(1, n))] = generator.get_random_integer(1, 2)
        coords.append(EllipticPoint(torsion, generic))
    return TorusPoint(coords)


def check_local_affine():
    for n in (1, 2):
        for w in (1, -1, 3):
            if hh_affine_factor([w] + [0] * (n - 1)) != structure_sheaf(n):
                return False, "affine factor with weight " + str(w) + " in rank " + str(n)
        try:
            hh_affine_factor([0] * n)
            return False, "zero weight did not raise"
        except InfiniteRankError:
            pass
    return True, "weights 1, -1, 3 in ranks 1 and 2; zero weight rejected"


def check_local_torus():
    for w in (1, 2, 3):
        term = hh_torus_factor([w])
        gamma = global_sections_complex(chart_complex([], [[w]], 1)).cohomology
        if term.support.component_count() != w * w or gamma != {0: w * w}:
            return False, "weight " + str(w) + ": " + str(term.support.component_count()) + " components, " + \
                str(gamma)
    return True, "E[1], E[2], E[3] have 1, 4, 9 components"


def check_kunneth():
    term = hh_chart([[1, 0]], [[0, 2]])
    expected = SubgroupScheme([[0, 2]], 2)
    if term.support != expected or term.support.component_count() != 4 or term.multiplicity != {0: 1}:
        return False, repr(term)
    return True, "support E x E[2] with 4 components"


def check_p1_pipeline():
    p1 = bundled_fan("p1")
    complex_ = build_complex(p1)
    full, point = SubgroupScheme.full(1), SubgroupScheme.trivial(1)
    supports = [complex_.term(s).support for s in complex_.index_sets]
    if supports != [full, full, point]:
        return False, "terms " + str(supports)
    gamma = global_sections_complex(complex_).cohomology
    if gamma != {0: 1}:
        return False, "gamma " + str(gamma)
    for name, e in point_battery(1):
        if name in ("identity", "order3", "generic"):
            fiber = fiber_complex(complex_, e)
            if fiber.cohomology != {0: 2}:
                return False, "fiber at " + name + " " + str(fiber.cohomology)
    bigraded = fiber_complex(complex_, TorusPoint.identity(1)).chain_dimensions()
    if bigraded != {(0, 0, 0): 2, (1, 0, 0): 1, (1, 1, 0): 1}:
        return False, "identity bigraded table " + str(bigraded)
    return True, "terms, gamma and fibers of P^1"


def check_generic_rank():
    checked = []
    for fan in battery_fans():
        if not fan.is_complete():
            continue
        count = len(fan.max_cones)
        fiber = fiber_complex(build_complex(fan), generic_point(fan.ambient_rank)).cohomology
        if fiber != {0: count} or sum(fans.betti_numbers(fan)) != count:
            return False, fan.name + ": fiber " + str(fiber) + ", betti " + str(fans.betti_numbers(fan))
        checked.append(fan.name)
    return True, "generic fiber rank = #maximal cones for " + ", ".join(checked)


def check_localization():
    pairs = 0
    for fan in battery_fans():
        for name, e in point_battery(fan.ambient_rank):
            report = verify_localization(fan, e)
            pairs += 1
            if not report.passed:
                return False, fan.name + " at " + name
    return pairs >= 30, str(pairs) + " (fan, point) pairs"


def check_identity():
    checked = []
    for fan in battery_fans():
        if not fan.is_complete():
            continue
        report = identity_fiber_check(fan)
        if not report["passed"]:
            return False, fan.name + ": fiber total " + str(report["fiber_total"]) + " vs betti total " + \
                str(report["betti_total"])
        checked.append(fan.name)
    return True, "fiber total = sum of Betti numbers for " + ", ".join(checked)


def check_tsub():
    for order in (2, 3, 6):
        group = t_of_e(TorusPoint([EllipticPoint((Fraction(1, order), 0))]))
        if group.rank != 0 or group.invariant_factors != [order]:
            return False, "order " + str(order) + " gave " + group.describe()
    if t_of_e(generic_point(1)).describe() != "G_m":
        return False, "generic point"
    diagonal = t_of_e(TorusPoint([EllipticPoint.from_symbol("g1"), EllipticPoint.from_symbol("g1")]))
    if diagonal.rank != 1 or diagonal.invariant_factors:
        return False, "diagonal point gave " + diagonal.describe()
    if not t_of_e(TorusPoint.identity(2)).is_trivial():
        return False, "identity"
    return True, "mu_2, mu_3, mu_6, G_m and the diagonal G_m"


def _smith_contract(generator, cases):
    for _ in range(cases):
        rows, cols = generator.get_random_shape(4, 4)
        a = generator.get_random_matrix(rows, cols, -6, 6)
        snf = smith_normal_form(a)
        if as_lists(matmul(matmul(snf.U, a), snf.V)) != as_lists(snf.D):
            return False
        if abs(rational_det(as_lists(snf.U))) != 1 or abs(rational_det(as_lists(snf.V))) != 1:
            return False
        if as_lists(matmul(snf.U, snf.U_inv)) != as_lists(identity(rows)):
            return False
        factors = snf.invariant_factors
        if any(d < 1 for d in factors) or any(factors[i + 1] % factors[i] for i in range(len(factors) - 1)):
            return False
    return True


def _vanishes_on_torsion(W, w, n):
    """w kills every point of ker W of order dividing some N <= 8, read off one real coordinate."""
    for N in range(2, 9):
        grid = np.array(list(itertools.product(range(N), repeat=n)), dtype=np.int64)
        in_kernel = (grid.dot(np.array(W, dtype=np.int64).T) % N == 0).all(axis=1)
        if (grid[in_kernel].dot(np.array(w, dtype=np.int64)) % N != 0).any():
            return False
    return True


def _kills_generators(W, w, n):
    """w kills the generic point of the identity component of ker W and each of its torsion generators."""
    Z = SubgroupScheme(W, n)
    generators = Z.generators(SymbolGenerator())
    if not all(Z.contains_point(g) for g in generators):
        return False
    return all(evaluate_character(w, g).is_identity() for g in generators)


def _subgroup_duality(generator, cases):
    for _ in range(cases):
        n = generator.get_random_integer(1, 3)
        W = [generator.get_random_vector(n, -2, 2) for _ in range(generator.get_random_integer(1, min(2, n)))]
        if generator.get_random_integer(0, 1):
            coefficients = generator.get_random_vector(len(W), -2, 2)
            w = as_lists(int_matrix([coefficients]).dot(int_matrix(W, ncols=n)))[0]
        else:
            w = generator.get_random_vector(n, -3, 3)
        expected = row_lattice_contains(int_matrix(W, ncols=n), w)
        if expected != _vanishes_on_torsion(W, w, n) or expected != _kills_generators(W, w, n):
            logging.log(logging.WARNING, "Duality fails for W=" + str(W) + ", w=" + str(w))
            return False
    return True


def _chart_weight_invariance(generator, cases):
    pool = battery_fans()
    for _ in range(cases):
        fan = pool[generator.get_random_integer(0, len(pool) - 1)]
        faces = fan.faces()
        cone = faces[generator.get_random_integer(0, len(faces) - 1)]
        order = generator.get_random_permutation(len(fan.rays))
        permuted = fans.Fan([fan.rays[i] for i in order],
                            [[order.index(i) for i in c.ray_indices] for c in fan.max_cones],
                            rank=fan.ambient_rank)
        image = fans.Cone([order.index(i) for i in cone.ray_indices])
        W_A, W_G = fans.chart_weights(fan, cone)
        P_A, P_G = fans.chart_weights(permuted, image)
        perp = fans.orbit_perp_lattice(fan, cone)
        if not lattices_equal(W_G, perp) or not lattices_equal(P_G, perp):
            return False
        if SubgroupScheme(W_G, fan.ambient_rank) != SubgroupScheme(P_G, fan.ambient_rank):
            return False
        pairing = as_lists(matmul(W_A, fan.ray_matrix(cone).T))
        if pairing != as_lists(identity(cone.dim)):
            return False
    return True


def _d_squared(generator, cases):
    pool = battery_fans()
    complexes = dict((fan.name, build_complex(fan)) for fan in pool)
    for fan in pool:
        if not global_sections_complex(complexes[fan.name]).check_d_squared():
            return False
    for _ in range(cases):
        fan = pool[generator.get_random_integer(0, len(pool) - 1)]
        if not fiber_complex(complexes[fan.name], random_point(generator, fan.ambient_rank)).check_d_squared():
            return False
    return True


def _face_closure(generator, cases):
    pool = battery_fans()
    for _ in range(cases):
        fan = pool[generator.get_random_integer(0, len(pool) - 1)]
        e = random_point(generator, fan.ambient_rank)
        report = fixed_subfan(fan, e)
        fixed = set(report.fixed_cones)
        for cone in fixed:
            if any(cone.is_face_of(other) and other not in fixed for other in fan.faces()):
                return False
        multiple = TorusPoint([c * 2 for c in e])
        if not fixed <= set(fixed_subfan(fan, multiple).fixed_cones):
            return False
    return True


def check_properties():
    cases = settings.PROPERTY_CASES
    suites = OrderedDict([("smith", _smith_contract), ("duality", _subgroup_duality),
                          ("chart-weights", _chart_weight_invariance), ("d-squared", _d_squared),
                          ("face-closure", _face_closure)])
    failed = []
    for name, suite in suites.items():
        generator = RandomMatrixGenerator(settings.PROPERTY_SEED)
        if not suite(generator, cases):
            failed.append(name)
    if failed:
        return False, "failed: " + ", ".join(failed)
    return True, str(len(suites)) + " suites x " + str(cases) + " cases"


def check_periodic():
    for fan in battery_fans():
        if not fan.is_complete():
            continue
        complex_ = build_complex(fan)
        tables = [global_sections_complex(complex_).cohomology,
                  fiber_complex(complex_, TorusPoint.identity(fan.ambient_rank)).cohomology,
                  fiber_complex(complex_, generic_point(fan.ambient_rank)).cohomology]
        for table in tables:
            if fold_periodic(table)[1] != 0:
                return False, fan.name + ": odd part of " + str(table)
    return True, "odd totals vanish"


def check_fixed_fiber():
    pairs = 0
    for fan in battery_fans():
        if not fan.is_complete():
            continue
        for name, e in point_battery(fan.ambient_rank):
            report = fixed_fiber_check(fan, e)
            pairs += 1
            if not report["passed"]:
                return False, fan.name + " at " + name + ": " + str(report["fiber_total"]) + " vs " + \
                    str(report["fixed_locus_total"])
    return True, str(pairs) + " (fan, point) pairs"


def _p2_end_to_end():
    p2 = bundled_fan("p2")
    complex_ = build_complex(p2)
    battery = point_battery(2)
    for _, e in battery[:6]:
        fiber_complex(complex_, e)
    global_sections_complex(complex_)
    for _, e in battery[:4]:
        verify_localization(p2, e)


def _large_end_to_end(name):
    fan = bundled_fan(name)
    complex_ = build_complex(fan)
    fiber_complex(complex_, generic_point(fan.ambient_rank))
    global_sections_complex(complex_)
    return identity_fiber_check(fan)["passed"]


def check_performance():
    start = time.perf_counter()
    _p2_end_to_end()
    p2_seconds = time.perf_counter() - start
    details = ["p2 " + "%.2f" % p2_seconds + "s"]
    passed = p2_seconds < settings.P2_BUDGET_SECONDS
    for name in PERFORMANCE_FANS:
        start = time.perf_counter()
        correct = _large_end_to_end(name)
        seconds = time.perf_counter() - start
        details.append(name + " " + "%.2f" % seconds + "s")
        passed = passed and correct and seconds < settings.LARGE_FAN_BUDGET_SECONDS
    return passed, ", ".join(details)


CRITERIA = OrderedDict([
    ("local-affine", check_local_affine),
    ("local-torus", check_local_torus),
    ("kunneth", check_kunneth),
    ("p1-pipeline", check_p1_pipeline),
    ("generic-rank", check_generic_rank),
    ("localization", check_localization),
    ("identity", check_identity),
    ("tsub", check_tsub),
    ("properties", check_properties),
    ("periodic", check_periodic),
    ("fixed-fiber", check_fixed_fiber),
    ("performance", check_performance),
])


def run_battery(only=None):
    names = list(CRITERIA) if not only else list(only)
    for name in names:
        if name not in CRITERIA:
            logging.log(logging.ERROR, "Unknown selftest criterion " + name)
            raise KeyError(name)
    results = []
    for name in names:
        logging.log(logging.INFO, "Running criterion " + name)
        start = time.perf_counter()
        try:
            passed, detail = CRITERIA[name]()
        except Exception as error:
            logging.log(logging.ERROR, "Criterion " + name + " raised " + repr(error))
            passed, detail = False, "raised " + type(error).__name__ + ": " + str(error)
        results.append({"name": name, "passed": bool(passed), "detail": detail,
                        "seconds": time.perf_counter() - start})
    return results


def format_table(results):
    width = max([len(r["name"]) for r in results] + [9])
    lines = ["criterion".ljust(width) + "  result  seconds  detail"]
    for r in results:
        lines.append(r["name"].ljust(width) + "  " + ("PASS" if r["passed"] else "FAIL").ljust(6) + "  " +
                     ("%.2f" % r["seconds"]).rjust(7) + "  " + r["detail"])
    return "\n".join(lines)
