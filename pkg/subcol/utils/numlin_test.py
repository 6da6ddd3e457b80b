"""Unit tests for numlin.py."""

import unittest
import numpy
from subcol.utils import numlin
from subcol.utils import error_checking

TOLERANCE = 1e-10

# The following constants are used to test svd.
DIAGONAL_MATRIX = numpy.diag(numpy.array([3., 2., 1.]))
UNSORTED_DIAGONAL_MATRIX = numpy.diag(numpy.array([1., 3., 2.]))
RANK_ONE_MATRIX = numpy.outer(
    numpy.array([1., 2., 2.]), numpy.array([0., 3., 4.])
)

# The following constants are used to test sigma_min_space.
SWAP_MATRIX = numpy.array([[0., 1.],
                           [1., 0.]])
SWAP_MINUS_IDENTITY = SWAP_MATRIX - numpy.eye(2)
SWAP_BASIS_VECTOR = numpy.array([1., 1.]) / numpy.sqrt(2.)
REPEATED_DIAGONAL_MATRIX = numpy.diag(numpy.array([2., 2., 5.]))


def _reconstruct(svd_dict):
    """Multiplies SVD factors back together.

    :param svd_dict: See output doc for `numlin.svd`.
    :return: reconstructed_matrix: Product u * diag(s) * vt.
    """

    left_matrix = svd_dict[numlin.LEFT_VECTORS_KEY]
    singular_values = svd_dict[numlin.SINGULAR_VALUES_KEY]

    return numpy.dot(
        left_matrix * singular_values,
        svd_dict[numlin.RIGHT_VECTORS_TRANSPOSED_KEY]
    )


def _check_svd(test_object, input_matrix):
    """Checks reconstruction, orthogonality and sorting of SVD.

    :param test_object: Instance of `unittest.TestCase`.
    :param input_matrix: Input to `numlin.svd`.
    """

    svd_dict = numlin.svd(input_matrix)
    left_matrix = svd_dict[numlin.LEFT_VECTORS_KEY]
    singular_values = svd_dict[numlin.SINGULAR_VALUES_KEY]
    right_matrix_transposed = svd_dict[numlin.RIGHT_VECTORS_TRANSPOSED_KEY]
    num_values = len(singular_values)

    relative_error = (
        numpy.linalg.norm(_reconstruct(svd_dict) - input_matrix) /
        max([numpy.linalg.norm(input_matrix), 1e-300])
    )
    test_object.assertTrue(relative_error <= TOLERANCE)

    test_object.assertTrue(numpy.max(numpy.absolute(
        numpy.dot(left_matrix.T, left_matrix) - numpy.eye(num_values)
    )) <= TOLERANCE)

    test_object.assertTrue(numpy.max(numpy.absolute(
        numpy.dot(right_matrix_transposed, right_matrix_transposed.T) -
        numpy.eye(num_values)
    )) <= TOLERANCE)

    test_object.assertTrue(numpy.all(numpy.diff(singular_values) <= 0))
    test_object.assertTrue(numpy.all(singular_values >= 0))


class NumlinTests(unittest.TestCase):
    """Each method is a unit test for numlin.py."""

    def test_svd_identity(self):
        """Ensures correct output from svd.

        In this case, input is the 3-by-3 identity matrix.
        """

        this_svd_dict = numlin.svd(numpy.eye(3))
        self.assertTrue(numpy.allclose(
            this_svd_dict[numlin.SINGULAR_VALUES_KEY], numpy.ones(3),
            atol=TOLERANCE))

    def test_svd_diagonal(self):
        """Ensures correct output from svd.

        In this case, input is diag(3, 2, 1), so u and vt should be the
        identity after sign canonicalization.
        """

        this_svd_dict = numlin.svd(DIAGONAL_MATRIX)

        self.assertTrue(numpy.allclose(
            this_svd_dict[numlin.SINGULAR_VALUES_KEY],
            numpy.array([3., 2., 1.]), atol=TOLERANCE))
        self.assertTrue(numpy.allclose(
            this_svd_dict[numlin.LEFT_VECTORS_KEY], numpy.eye(3),
            atol=TOLERANCE))
        self.assertTrue(numpy.allclose(
            this_svd_dict[numlin.RIGHT_VECTORS_TRANSPOSED_KEY], numpy.eye(3),
            atol=TOLERANCE))

    def test_svd_unsorted_diagonal(self):
        """Ensures correct output from svd.

        In this case, diagonal entries are not sorted.
        """

        this_svd_dict = numlin.svd(UNSORTED_DIAGONAL_MATRIX)
        self.assertTrue(numpy.allclose(
            this_svd_dict[numlin.SINGULAR_VALUES_KEY],
            numpy.array([3., 2., 1.]), atol=TOLERANCE))
        _check_svd(self, UNSORTED_DIAGONAL_MATRIX)

    def test_svd_random_5by4(self):
        """Ensures correct output from svd.

        In this case, input is a seeded random 5-by-4 matrix.
        """

        this_matrix = numlin.create_rng(7).standard_normal((5, 4))
        _check_svd(self, this_matrix)

    def test_svd_wide(self):
        """Ensures correct output from svd.

        In this case, input has more columns than rows.
        """

        this_matrix = numlin.create_rng(8).standard_normal((3, 7))
        this_svd_dict = numlin.svd(this_matrix)

        self.assertTrue(
            this_svd_dict[numlin.LEFT_VECTORS_KEY].shape == (3, 3))
        self.assertTrue(
            this_svd_dict[numlin.RIGHT_VECTORS_TRANSPOSED_KEY].shape == (3, 7))
        _check_svd(self, this_matrix)

    def test_svd_rank_one(self):
        """Ensures correct output from svd.

        In this case, input has rank one, so missing left singular vectors
        must be completed.
        """

        this_svd_dict = numlin.svd(RANK_ONE_MATRIX)
        these_singular_values = this_svd_dict[numlin.SINGULAR_VALUES_KEY]

        self.assertTrue(numpy.isclose(these_singular_values[0], 15.))
        self.assertTrue(numpy.all(these_singular_values[1:] == 0.))
        _check_svd(self, RANK_ONE_MATRIX)

    def test_svd_zero_matrix(self):
        """Ensures correct output from svd.

        In this case, input is all zeros.
        """

        this_svd_dict = numlin.svd(numpy.zeros((3, 3)))
        self.assertTrue(numpy.all(
            this_svd_dict[numlin.SINGULAR_VALUES_KEY] == 0.))
        self.assertTrue(numpy.allclose(
            this_svd_dict[numlin.LEFT_VECTORS_KEY], numpy.eye(3),
            atol=TOLERANCE))

    def test_svd_many_random(self):
        """Ensures correct output from svd.

        In this case, inputs are 200 seeded random matrices of sizes up to
        50 x 50.
        """

        this_rng = numlin.create_rng(2024)

        for _ in range(200):
            these_dimensions = this_rng.integers(1, 51, size=2)
            this_matrix = this_rng.standard_normal(tuple(these_dimensions))
            _check_svd(self, this_matrix)

    def test_svd_deterministic(self):
        """Ensures that svd gives byte-identical output for the same input."""

        this_matrix = numlin.create_rng(11).standard_normal((20, 12))
        first_svd_dict = numlin.svd(this_matrix)
        second_svd_dict = numlin.svd(this_matrix.copy())

        for this_key in first_svd_dict:
            self.assertTrue(numpy.array_equal(
                first_svd_dict[this_key], second_svd_dict[this_key]))

    def test_svd_nan(self):
        """Ensures that svd errors out on non-finite input."""

        with self.assertRaises(ValueError):
            numlin.svd(numpy.array([[1., numpy.nan], [0., 1.]]))

    def test_sigma_min_space_swap(self):
        """Ensures correct output from sigma_min_space.

        In this case, input is C - I with C = [[0, 1], [1, 0]].
        """

        this_sigma_min, this_multiplicity, this_basis_matrix = (
            numlin.sigma_min_space(SWAP_MINUS_IDENTITY)
        )

        self.assertTrue(numpy.isclose(this_sigma_min, 0., atol=TOLERANCE))
        self.assertTrue(this_multiplicity == 1)
        self.assertTrue(numpy.allclose(
            this_basis_matrix[:, 0], SWAP_BASIS_VECTOR, atol=TOLERANCE))

    def test_sigma_min_space_zero(self):
        """Ensures correct output from sigma_min_space.

        In this case, input is the 3-by-3 zero matrix.
        """

        this_sigma_min, this_multiplicity, this_basis_matrix = (
            numlin.sigma_min_space(numpy.eye(3) - numpy.eye(3))
        )

        self.assertTrue(this_sigma_min == 0.)
        self.assertTrue(this_multiplicity == 3)
        self.assertTrue(numpy.allclose(
            numpy.dot(this_basis_matrix.T, this_basis_matrix), numpy.eye(3),
            atol=TOLERANCE))

    def test_sigma_min_space_repeated(self):
        """Ensures correct output from sigma_min_space.

        In this case, input is diag(2, 2, 5).
        """

        this_sigma_min, this_multiplicity, this_basis_matrix = (
            numlin.sigma_min_space(REPEATED_DIAGONAL_MATRIX)
        )

        self.assertTrue(numpy.isclose(this_sigma_min, 2., atol=TOLERANCE))
        self.assertTrue(this_multiplicity == 2)
        self.assertTrue(numpy.allclose(
            numpy.absolute(this_basis_matrix[2, :]), 0., atol=TOLERANCE))

    def test_solve_spd_identity(self):
        """Ensures correct output from solve_spd.

        In this case, left-hand side is the identity.
        """

        this_rhs_matrix = numlin.create_rng(3).standard_normal((4, 2))
        this_solution = numlin.solve_spd(numpy.eye(4), this_rhs_matrix)
        self.assertTrue(numpy.allclose(
            this_solution, this_rhs_matrix, atol=TOLERANCE))

    def test_solve_spd_scaled_identity(self):
        """Ensures correct output from solve_spd.

        In this case, a = 2I and b = I.
        """

        this_solution = numlin.solve_spd(2 * numpy.eye(3), numpy.eye(3))
        self.assertTrue(numpy.allclose(
            this_solution, 0.5 * numpy.eye(3), atol=TOLERANCE))

    def test_solve_spd_random(self):
        """Ensures correct output from solve_spd.

        In this case, a is a random 6-by-6 SPD matrix.
        """

        this_rng = numlin.create_rng(4)
        this_factor = this_rng.standard_normal((6, 6))
        this_lhs_matrix = (
            numpy.dot(this_factor, this_factor.T) + 0.1 * numpy.eye(6)
        )
        this_rhs_matrix = this_rng.standard_normal((6, 3))

        this_solution = numlin.solve_spd(this_lhs_matrix, this_rhs_matrix)
        this_residual = numpy.linalg.norm(
            numpy.dot(this_lhs_matrix, this_solution) - this_rhs_matrix
        ) / numpy.linalg.norm(this_rhs_matrix)

        self.assertTrue(this_residual <= 1e-9)

    def test_solve_spd_indefinite(self):
        """Ensures that solve_spd errors out on an indefinite matrix."""

        with self.assertRaises(error_checking.NotPositiveDefiniteError):
            numlin.solve_spd(
                numpy.diag(numpy.array([1., -1.])), numpy.ones(2))

    def test_solve_spd_asymmetric(self):
        """Ensures that solve_spd errors out on an asymmetric matrix."""

        with self.assertRaises(ValueError):
            numlin.solve_spd(
                numpy.array([[2., 1.], [0., 2.]]), numpy.ones(2))

    def test_symmetric_eigh(self):
        """Ensures correct output from symmetric_eigh."""

        these_eigenvalues, this_eigenvector_matrix = numlin.symmetric_eigh(
            SWAP_MATRIX)

        self.assertTrue(numpy.allclose(
            these_eigenvalues, numpy.array([-1., 1.]), atol=TOLERANCE))
        self.assertTrue(numpy.allclose(
            this_eigenvector_matrix[:, 1], SWAP_BASIS_VECTOR, atol=TOLERANCE))
        self.assertTrue(this_eigenvector_matrix[0, 0] >= 0)

    def test_largest_eigenvalue(self):
        """Ensures correct output from largest_eigenvalue."""

        self.assertTrue(numpy.isclose(
            numlin.largest_eigenvalue(REPEATED_DIAGONAL_MATRIX), 5.))

    def test_create_rng_same_seed(self):
        """Ensures that create_rng gives identical streams for one seed."""

        first_values = numlin.create_rng(99).standard_normal(10)
        second_values = numlin.create_rng(99).standard_normal(10)
        self.assertTrue(numpy.array_equal(first_values, second_values))

    def test_create_rng_negative_seed(self):
        """Ensures that create_rng errors out on a negative seed."""

        with self.assertRaises(ValueError):
            numlin.create_rng(-1)


if __name__ == '__main__':
    unittest.main()
