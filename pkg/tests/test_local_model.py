import unittest

from ellfan.errors import DimensionMismatchError, InfiniteRankError
from ellfan.generators import RandomMatrixGenerator
from ellfan.lattice import as_lists, int_matrix
from ellfan.local_model import (SheafTerm, ZeroTerm, hh_affine_factor, hh_chart, hh_torus_factor, kunneth_tensor,
                                structure_sheaf)
from ellfan.subgroups import SubgroupScheme


class TestLocalFactors(unittest.TestCase):
    def setUp(self):
        self.full_1 = SubgroupScheme.full(1)

    def test_affine_factor(self):
        term = hh_affine_factor([5])
        self.assertEqual(term.support, self.full_1)
        self.assertEqual(term.multiplicity, {0: 1})
        self.assertEqual(hh_affine_factor([1, 0]), structure_sheaf(2))
        self.assertRaises(InfiniteRankError, hh_affine_factor, [0])

    def test_zero_weight_rejection_logs_at_debug(self):
        with self.assertLogs(level="DEBUG") as captured:
            self.assertRaises(InfiniteRankError, hh_affine_factor, [0, 0])
        self.assertEqual([record.levelname for record in captured.records], ["DEBUG"])

    def test_torus_factor(self):
        term = hh_torus_factor([2])
        self.assertEqual(term.support, SubgroupScheme([[2]], 1))
        self.assertEqual(term.support.component_count(), 4)
        self.assertEqual(term.multiplicity, {0: 1})
        self.assertEqual(hh_torus_factor([0, 1]).support, SubgroupScheme([[0, 1]], 2))
        trivial = hh_torus_factor([0])
        self.assertEqual(trivial.support, self.full_1)
        self.assertEqual(trivial.multiplicity, {0: 1, 1: 1})

    def test_kunneth(self):
        term = kunneth_tensor(structure_sheaf(1), hh_torus_factor([2]))
        self.assertEqual(term.support, SubgroupScheme([[2]], 1))
        self.assertEqual(term.multiplicity, {0: 1})
        square = kunneth_tensor(hh_torus_factor([0]), hh_torus_factor([0]))
        self.assertEqual(square.support, self.full_1)
        self.assertEqual(square.multiplicity, {0: 1, 1: 2, 2: 1})
        self.assertTrue(kunneth_tensor(structure_sheaf(1), ZeroTerm(1)).is_zero)
        self.assertRaises(DimensionMismatchError, kunneth_tensor, structure_sheaf(1), structure_sheaf(2))

    def test_sheaf_term_needs_degree_zero(self):
        self.assertRaises(ValueError, SheafTerm, self.full_1, {1: 1})

    def tearDown(self):
        pass


class TestCharts(unittest.TestCase):
    def setUp(self):
        pass

    def test_hh_chart(self):
        term = hh_chart(int_matrix([[1, 0], [0, 1]]), int_matrix([], ncols=2))
        self.assertEqual(term, structure_sheaf(2))
        term = hh_chart([], [[1, 0], [0, 1]], 2)
        self.assertEqual(term.support, SubgroupScheme.trivial(2))
        self.assertEqual(term.multiplicity, {0: 1})
        term = hh_chart([[1, 0]], [[0, 2]])
        self.assertEqual(term.support, SubgroupScheme([[0, 2]], 2))
        self.assertEqual(term.support.component_count(), 4)

    def test_chart_with_zero_weight(self):
        self.assertRaises(InfiniteRankError, hh_chart, [[0]], [])

    def test_dimension_checks(self):
        self.assertRaises(DimensionMismatchError, hh_chart, int_matrix([[1, 0]]), int_matrix([[1]]))
        self.assertRaises(DimensionMismatchError, hh_chart, [], [])
        self.assertEqual(hh_chart([], [], 3), structure_sheaf(3))

    def tearDown(self):
        pass


class TestKunnethProperties(unittest.TestCase):
    def setUp(self):
        self.seed = 99

    def random_term(self, generator, n):
        term = structure_sheaf(n)
        for _ in range(generator.get_random_integer(1, 2)):
            term = kunneth_tensor(term, hh_torus_factor(generator.get_random_vector(n, -2, 2)))
        return term

    def test_kunneth_laws(self):
        generator = RandomMatrixGenerator(self.seed)
        for _ in range(25):
            n = generator.get_random_integer(1, 3)
            t1, t2, t3 = [self.random_term(generator, n) for _ in range(3)]
            self.assertEqual(kunneth_tensor(t1, t2), kunneth_tensor(t2, t1))
            self.assertEqual(kunneth_tensor(kunneth_tensor(t1, t2), t3), kunneth_tensor(t1, kunneth_tensor(t2, t3)))
            self.assertEqual(kunneth_tensor(t1, structure_sheaf(n)), t1)
            self.assertEqual(kunneth_tensor(t1, t2).total_rank(), t1.total_rank() * t2.total_rank())

    def test_chart_rank_counts_trivial_torus_weights(self):
        generator = RandomMatrixGenerator(self.seed)
        for _ in range(25):
            n = generator.get_random_integer(1, 3)
            W_A = []
            for _ in range(generator.get_random_integer(0, n)):
                row = generator.get_random_vector(n, -2, 2)
                W_A.append(row if any(row) else [1] + [0] * (n - 1))
            W_G = as_lists(generator.get_random_matrix(generator.get_random_integer(0, 3), n, -1, 1))
            trivial = len([row for row in W_G if not any(row)])
            self.assertEqual(hh_chart(W_A, W_G, n).total_rank(), 2 ** trivial)

    def tearDown(self):
        pass
