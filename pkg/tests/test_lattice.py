import unittest
from fractions import Fraction

from ellfan.errors import DimensionMismatchError
from ellfan.generators import RandomMatrixGenerator
from ellfan.lattice import (as_lists, identity, int_matrix, integer_kernel, lattices_equal, matmul, rational_det,
                            rational_nullspace, rational_rref, row_basis, row_lattice_contains, smith_normal_form)
from ellfan.sparse import SparseMatrix


class TestSmithNormalForm(unittest.TestCase):
    def setUp(self):
        self.seed = 666

    def assertContract(self, a):
        snf = smith_normal_form(a)
        self.assertEqual(as_lists(matmul(matmul(snf.U, a), snf.V)), as_lists(snf.D))
        self.assertEqual(abs(rational_det(as_lists(snf.U))), 1)
        self.assertEqual(abs(rational_det(as_lists(snf.V))), 1)
        self.assertEqual(as_lists(matmul(snf.U, snf.U_inv)), as_lists(identity(a.shape[0])))
        self.assertEqual(as_lists(matmul(snf.V, snf.V_inv)), as_lists(identity(a.shape[1])))
        factors = snf.invariant_factors
        for i in range(len(factors) - 1):
            self.assertEqual(factors[i + 1] % factors[i], 0)
        return snf

    def test_examples(self):
        self.assertEqual(self.assertContract(identity(2)).invariant_factors, [1, 1])
        self.assertEqual(as_lists(smith_normal_form(identity(2)).D), [[1, 0], [0, 1]])
        self.assertEqual(self.assertContract(int_matrix([[2, 0], [0, 3]])).invariant_factors, [1, 6])
        self.assertEqual(self.assertContract(int_matrix([[2]])).invariant_factors, [2])
        self.assertEqual(self.assertContract(int_matrix([[2, 4], [6, 8]])).invariant_factors, [2, 4])

    def test_degenerate_shapes(self):
        snf = self.assertContract(int_matrix([], ncols=3))
        self.assertEqual(snf.invariant_factors, [])
        self.assertEqual(snf.rank, 0)
        self.assertEqual(self.assertContract(int_matrix([[0, 0], [0, 0]])).invariant_factors, [])
        self.assertEqual(self.assertContract(int_matrix([[1, 1]])).invariant_factors, [1])

    def test_deterministic(self):
        a = int_matrix([[3, 5, 7], [2, -4, 6]])
        self.assertEqual(as_lists(smith_normal_form(a).U), as_lists(smith_normal_form(a).U))
        self.assertEqual(as_lists(smith_normal_form(a).V), as_lists(smith_normal_form(a).V))

    def test_large_entries(self):
        big = 10 ** 30
        snf = self.assertContract(int_matrix([[big, 0], [0, big * 3]]))
        self.assertEqual(snf.invariant_factors, [big, 3 * big])

    def test_random_contract(self):
        generator = RandomMatrixGenerator(self.seed)
        for _ in range(50):
            rows, cols = generator.get_random_shape(4, 4)
            self.assertContract(generator.get_random_matrix(rows, cols, -6, 6))

    def tearDown(self):
        pass


class TestLattices(unittest.TestCase):
    def setUp(self):
        self.seed = 7

    def test_row_lattice_contains(self):
        self.assertTrue(row_lattice_contains(int_matrix([[2]]), [4]))
        self.assertFalse(row_lattice_contains(int_matrix([[2]]), [1]))
        self.assertTrue(row_lattice_contains(int_matrix([[1, 1], [0, 2]]), [1, -1]))
        self.assertFalse(row_lattice_contains(int_matrix([[1, 1], [0, 2]]), [1, 0]))
        self.assertTrue(row_lattice_contains(int_matrix([], ncols=2), [0, 0]))
        self.assertFalse(row_lattice_contains(int_matrix([], ncols=2), [0, 1]))
        self.assertRaises(DimensionMismatchError, row_lattice_contains, int_matrix([[2]]), [1, 2])

    def test_integer_kernel(self):
        self.assertEqual(as_lists(integer_kernel(int_matrix([[1, 1]]))), [[1, -1]])
        kernel = as_lists(integer_kernel(int_matrix([[2, 4]])))
        self.assertEqual(kernel, [[2, -1]])
        self.assertEqual(integer_kernel(identity(2)).shape, (0, 2))
        self.assertEqual(integer_kernel(int_matrix([], ncols=3)).shape, (3, 3))

    def test_row_basis(self):
        basis = row_basis(int_matrix([[2, 0], [0, 2], [2, 2]]))
        self.assertEqual(basis.shape, (2, 2))
        self.assertTrue(lattices_equal(basis, int_matrix([[2, 0], [0, 2]])))
        self.assertFalse(lattices_equal(basis, identity(2)))

    def test_rational_nullspace(self):
        self.assertEqual(rational_nullspace([[1, 0], [0, 1]]), [])
        basis = rational_nullspace([[1, 1]])
        self.assertEqual(len(basis), 1)
        self.assertEqual(basis[0][0], -basis[0][1])
        self.assertEqual(len(rational_nullspace([[0, 0, 0]])), 3)
        self.assertEqual(rational_nullspace([[Fraction(1, 2), 1]]), [[Fraction(-2), Fraction(1)]])

    def test_nullspace_complements_the_row_space(self):
        generator = RandomMatrixGenerator(self.seed)
        for _ in range(30):
            rows, cols = generator.get_random_shape(4, 4, min_rows=1)
            a = as_lists(generator.get_random_matrix(rows, cols))
            basis = rational_nullspace(a, cols)
            row_space = rational_rref(a, cols)[0]
            self.assertEqual(len(rational_rref(row_space + basis, cols)[0]), cols)
            for vector in basis:
                for row in a:
                    self.assertEqual(sum(x * y for x, y in zip(row, vector)), 0)

    def test_rational_det(self):
        self.assertEqual(rational_det([[0, 1], [1, 0]]), -1)
        self.assertEqual(rational_det([[2, 1], [1, 1]]), 1)
        self.assertEqual(rational_det([]), 1)

    def test_ragged_matrix(self):
        self.assertRaises(DimensionMismatchError, int_matrix, [[1, 2], [3]])

    def tearDown(self):
        pass


class TestSparseMatrix(unittest.TestCase):
    def setUp(self):
        self.matrix = SparseMatrix(3, 3)
        for i in range(3):
            self.matrix.add(i, i, 1)
            self.matrix.add(i, (i + 1) % 3, -1)

    def test_rank(self):
        # the boundary of a triangle has rank 2
        self.assertEqual(self.matrix.rank(), 2)
        self.assertEqual(SparseMatrix(2, 5).rank(), 0)
        rational = SparseMatrix(2, 2)
        rational.add(0, 0, Fraction(1, 2))
        rational.add(1, 1, Fraction(2, 3))
        self.assertEqual(rational.rank(), 2)

    def test_add_cancels(self):
        self.matrix.add(0, 0, -1)
        self.assertEqual(self.matrix.get(0, 0), 0)
        self.assertEqual(self.matrix.nnz(), 5)

    def test_matmul(self):
        ones = SparseMatrix(1, 3)
        for j in range(3):
            ones.add(0, j, 1)
        self.assertTrue(ones.matmul(self.matrix).is_zero())
        self.assertRaises(DimensionMismatchError, self.matrix.matmul, ones)
        self.assertEqual([self.matrix.get(2, j) for j in range(3)], [-1, 0, 1])

    def tearDown(self):
        pass
