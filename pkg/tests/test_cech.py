import unittest

from tests.test_utils import a2_fan, a2_minus_origin_fan, generic_point, p1_fan, p2_fan, torsion_point

from ellfan import cech
from ellfan.cech import SheafComplex, build_complex, chart_complex, fiber_complex
from ellfan.epoints import TorusPoint
from ellfan.errors import ComplexError, ConeLimitError, DimensionMismatchError, FanError
from ellfan.fans import Cone, Fan
from ellfan.local_model import SheafTerm, ZeroTerm, structure_sheaf
from ellfan.subgroups import SubgroupScheme


class TestBuildComplex(unittest.TestCase):
    def setUp(self):
        self.p1 = build_complex(p1_fan())
        self.p2 = build_complex(p2_fan())

    def test_nerve(self):
        self.assertEqual(cech.nerve(3), [(0,), (1,), (2,), (0, 1), (0, 2), (1, 2), (0, 1, 2)])
        self.assertEqual(cech.intersection_cone(p2_fan(), (0, 1)), Cone([1]))
        self.assertEqual(cech.intersection_cone(p2_fan(), (0, 1, 2)), Cone([]))

    def test_p1_terms(self):
        self.assertEqual(self.p1.index_sets, [(0,), (1,), (0, 1)])
        self.assertEqual(self.p1.term((0,)), structure_sheaf(1))
        self.assertEqual(self.p1.term((1,)), structure_sheaf(1))
        self.assertEqual(self.p1.term((0, 1)), SheafTerm(SubgroupScheme.trivial(1), {0: 1}))
        self.assertEqual(self.p1.cones[(0, 1)], Cone([]))
        self.assertEqual(len(self.p1.as_dict()["terms"]), 3)
        self.assertEqual(self.p1.as_dict()["origin"], {"fan": "p1"})

    def test_p2_terms(self):
        self.assertEqual(len(self.p2.index_sets), 7)
        for subset in [(0,), (1,), (2,)]:
            self.assertEqual(self.p2.term(subset), structure_sheaf(2))
        for subset in [(0, 1), (0, 2), (1, 2)]:
            self.assertEqual(self.p2.term(subset).support.dimension, 1)
        self.assertEqual(self.p2.term((0, 1, 2)).support, SubgroupScheme.trivial(2))
        self.assertTrue(self.p2.check_invariants())

    def test_cone_cap(self):
        self.assertRaises(ConeLimitError, build_complex, p2_fan(), 2)
        self.assertEqual(len(build_complex(p2_fan(), 3).index_sets), 7)

    def test_invalid_fan(self):
        self.assertRaises(FanError, build_complex, Fan([[1, 1], [1, -1]], [[0, 1]]))

    def test_chart_complex(self):
        complex_ = chart_complex([], [[2]], 1)
        self.assertEqual(complex_.index_sets, [(0,)])
        self.assertEqual(complex_.origin, {"chart": {"aweights": [], "gweights": [[2]]}})

    def tearDown(self):
        pass


class TestCheckInvariants(unittest.TestCase):
    def setUp(self):
        self.index_sets = [(0,), (1,), (0, 1)]

    def test_missing_restriction(self):
        terms = {(0,): SheafTerm(SubgroupScheme.trivial(1), {0: 1}),
                 (1,): structure_sheaf(1),
                 (0, 1): structure_sheaf(1)}
        complex_ = SheafComplex(1, {}, self.index_sets, terms)
        self.assertRaises(ComplexError, complex_.check_invariants)

    def test_zero_terms_are_skipped(self):
        terms = {(0,): structure_sheaf(1), (1,): structure_sheaf(1), (0, 1): ZeroTerm(1)}
        complex_ = SheafComplex(1, {}, self.index_sets, terms)
        self.assertTrue(complex_.check_invariants())
        self.assertEqual(complex_.nonzero_index_sets(), [(0,), (1,)])

    def test_mismatched_multiplicities(self):
        terms = {(0,): SheafTerm(SubgroupScheme.full(1), {0: 1, 1: 1}),
                 (1,): structure_sheaf(1),
                 (0, 1): SheafTerm(SubgroupScheme.full(1), {0: 1, 1: 2})}
        complex_ = SheafComplex(1, {}, self.index_sets, terms)
        self.assertRaises(ComplexError, fiber_complex, complex_, TorusPoint.identity(1))

    def tearDown(self):
        pass


class TestFibers(unittest.TestCase):
    def setUp(self):
        self.p1 = build_complex(p1_fan())
        self.p2 = build_complex(p2_fan())

    def test_p1_fibers(self):
        fiber = fiber_complex(self.p1, TorusPoint.identity(1))
        self.assertEqual(fiber.chain_dimensions(), {(0, 0, 0): 2, (1, 0, 0): 1, (1, 1, 0): 1})
        self.assertEqual(fiber.cohomology, {0: 2})
        self.assertEqual(fiber.columns, [(0,), (1,), (0, 1)])
        self.assertEqual(len(fiber.bigraded()), 3)
        self.assertEqual(fiber_complex(self.p1, generic_point("g1")).cohomology, {0: 2})
        self.assertEqual(fiber_complex(self.p1, torsion_point("1/3")).cohomology, {0: 2})
        self.assertEqual(fiber_complex(self.p1, torsion_point("1/3")).columns, [(0,), (1,)])

    def test_p2_fibers(self):
        self.assertEqual(fiber_complex(self.p2, TorusPoint.identity(2)).cohomology, {0: 3})
        self.assertEqual(fiber_complex(self.p2, generic_point("g1", "g2")).cohomology, {0: 3})
        # (1/2, 0) lies on the support of the chart along the first ray only
        fiber = fiber_complex(self.p2, torsion_point("1/2", "0"))
        self.assertEqual(fiber.cohomology, {0: 3})
        self.assertEqual(fiber.columns, [(0,), (1,), (2,), (0, 2)])

    def test_chart_fibers(self):
        complex_ = chart_complex([], [[2]], 1)
        self.assertEqual(fiber_complex(complex_, torsion_point("1/2")).cohomology, {-1: 1, 0: 1})
        self.assertEqual(fiber_complex(complex_, torsion_point("1/3")).cohomology, {})

    def test_d_squared(self):
        for complex_, point in ((self.p1, TorusPoint.identity(1)), (self.p2, TorusPoint.identity(2)),
                                (build_complex(a2_minus_origin_fan()), TorusPoint.identity(2))):
            self.assertTrue(fiber_complex(complex_, point).check_d_squared())

    def test_euler_characteristic(self):
        for fan in (p1_fan(), p2_fan(), a2_fan(), a2_minus_origin_fan()):
            complex_ = build_complex(fan)
            half = torsion_point(*(["1/2"] + ["0"] * (fan.ambient_rank - 1)))
            for point in (TorusPoint.identity(fan.ambient_rank), half):
                fiber = fiber_complex(complex_, point)
                self.assertEqual(fiber.euler_characteristic(), cech.expected_euler_characteristic(complex_, point))

    def test_rank_mismatch(self):
        self.assertRaises(DimensionMismatchError, fiber_complex, self.p1, TorusPoint.identity(2))

    def test_fold_periodic(self):
        self.assertEqual(cech.fold_periodic({0: 3, -1: 1}), {0: 3, 1: 1})
        self.assertEqual(cech.fold_periodic({}), {0: 0, 1: 0})

    def tearDown(self):
        pass


class TestGlobalSections(unittest.TestCase):
    def setUp(self):
        pass

    def test_global_sections(self):
        self.assertEqual(cech.global_sections_cohomology(build_complex(p1_fan())), {0: 1})
        self.assertEqual(cech.global_sections_cohomology(build_complex(p2_fan())), {0: 1})
        self.assertEqual(cech.global_sections_cohomology(chart_complex([], [[2]], 1)), {0: 4})
        self.assertTrue(cech.global_sections_complex(build_complex(p2_fan())).check_d_squared())

    def tearDown(self):
        pass


class TestStratification(unittest.TestCase):
    def setUp(self):
        pass

    def test_p1_strata(self):
        report = cech.support_stratification(build_complex(p1_fan()))
        self.assertEqual(report.supports, [SubgroupScheme.full(1), SubgroupScheme.trivial(1)])
        self.assertEqual(report.members, [[(0,), (1,)], [(0, 1)]])
        self.assertEqual(report.containments, [(1, 0)])

    def test_strata_counts(self):
        self.assertEqual(len(cech.support_stratification(build_complex(p2_fan())).supports), 5)
        self.assertEqual(len(cech.support_stratification(build_complex(a2_fan())).supports), 1)

    def test_strata_through_a_point(self):
        report = cech.support_stratification(build_complex(p2_fan()), torsion_point("1/2", "0"))
        self.assertEqual(report.through_point, [(0,), (1,), (2,), (0, 2)])
        self.assertEqual(len(report.supports_containing(torsion_point("1/2", "0"))), 2)
        self.assertIn("through_point", report.as_dict())

    def tearDown(self):
        pass
