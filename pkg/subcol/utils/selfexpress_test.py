"""Unit tests for selfexpress.py."""

import copy
import unittest
import warnings
import numpy
from subcol.utils import numlin
from subcol.utils import selfexpress

TOLERANCE = 1e-9

# The following constants are used to test evaluate_f.
RANDOM_EMBEDDING_MATRIX = numlin.create_rng(1).standard_normal((3, 5))
UNIT_VECTOR = numpy.array([0.6, 0.8])
DUPLICATE_EMBEDDING_MATRIX = numpy.transpose(
    numpy.vstack((UNIT_VECTOR, UNIT_VECTOR))
)
SWAP_MATRIX = numpy.array([[0., 1.],
                           [1., 0.]])

SSC_DICT = selfexpress.create_regularizer(selfexpress.SSC_KIND, 1.)
FROBENIUS_DICT = selfexpress.create_regularizer(
    selfexpress.FROBENIUS_KIND, 1.)
NUCLEAR_DICT = selfexpress.create_regularizer(selfexpress.NUCLEAR_KIND, 1.)
ENSC_DICT = selfexpress.create_regularizer(
    selfexpress.ENSC_KIND, 1., tau_en=0.5)

# The following constants are used to test evaluate_regularizer.
RANK_ONE_VECTOR = numpy.array([1., -2., 2.]) / 3
RANK_ONE_MATRIX = numpy.outer(RANK_ONE_VECTOR, RANK_ONE_VECTOR)
SCHATTEN_EXPONENTS = numpy.array([1., 1.5, 2., 3.])

# The following constants are used to test prox.
L1_PROX_INPUT_MATRIX = numpy.array([[0., 1.2],
                                    [-0.3, 0.]])
L1_PROX_OUTPUT_MATRIX = numpy.array([[0., 0.7],
                                     [0., 0.]])
NUCLEAR_PROX_INPUT_MATRIX = numpy.diag(numpy.array([3., 1.]))
NUCLEAR_PROX_OUTPUT_MATRIX = numpy.diag(numpy.array([1., 0.]))


def _schatten_dict(exponent):
    """Creates Schatten-p regularizer with lambda = 1.

    :param exponent: p.
    :return: regularizer_dict: See doc for `selfexpress.create_regularizer`.
    """

    return selfexpress.create_regularizer(
        selfexpress.SCHATTEN_KIND, 1., schatten_p=exponent)


def _prox_objective(new_matrix, old_matrix, step_size, regularizer_dict):
    """Evaluates objective minimized by the prox.

    :param new_matrix: Candidate W.
    :param old_matrix: Input C.
    :param step_size: Step size.
    :param regularizer_dict: Regularizer.
    :return: objective_value: 0.5 * ||W - C||^2 + step * lambda * theta(W).
    """

    return (
        0.5 * numpy.sum((new_matrix - old_matrix) ** 2) +
        step_size * regularizer_dict[selfexpress.LAMBDA_KEY] *
        selfexpress.evaluate_regularizer(new_matrix, regularizer_dict)
    )


class SelfexpressTests(unittest.TestCase):
    """Each method is a unit test for selfexpress.py."""

    def test_create_regularizer_forced_zero_diag(self):
        """Ensures correct output from create_regularizer.

        In this case, SSC must force the zero-diagonal constraint.
        """

        this_dict = selfexpress.create_regularizer(
            selfexpress.SSC_KIND, 0.1, zero_diag=False)
        self.assertTrue(this_dict[selfexpress.ZERO_DIAG_KEY])

    def test_create_regularizer_bad_kind(self):
        """Ensures that create_regularizer errors out on unknown kind."""

        with self.assertRaises(ValueError):
            selfexpress.create_regularizer('lasso', 1.)

    def test_create_regularizer_bad_lambda(self):
        """Ensures that create_regularizer errors out on lambda <= 0."""

        with self.assertRaises(ValueError):
            selfexpress.create_regularizer(selfexpress.NUCLEAR_KIND, 0.)

    def test_evaluate_f_zero_coeffs(self):
        """Ensures correct output from evaluate_f.

        In this case, C = 0, so the total is 0.5 * ||Z||_F^2.
        """

        for this_dict in [SSC_DICT, FROBENIUS_DICT, NUCLEAR_DICT, ENSC_DICT]:
            this_total, this_residual, this_penalty = selfexpress.evaluate_f(
                RANDOM_EMBEDDING_MATRIX, numpy.zeros((5, 5)), this_dict)

            self.assertTrue(numpy.isclose(
                this_total, 0.5 * numpy.sum(RANDOM_EMBEDDING_MATRIX ** 2),
                atol=TOLERANCE))
            self.assertTrue(this_penalty == 0.)
            self.assertTrue(this_residual == this_total)

    def test_evaluate_f_identity_coeffs(self):
        """Ensures correct output from evaluate_f.

        In this case, C = I with Frobenius regularizer and no diagonal
        constraint, so the residual is zero and the penalty is N / 2.
        """

        this_total, this_residual, this_penalty = selfexpress.evaluate_f(
            RANDOM_EMBEDDING_MATRIX, numpy.eye(5), FROBENIUS_DICT)

        self.assertTrue(numpy.isclose(this_residual, 0., atol=TOLERANCE))
        self.assertTrue(numpy.isclose(this_penalty, 2.5, atol=TOLERANCE))
        self.assertTrue(numpy.isclose(this_total, 2.5, atol=TOLERANCE))

    def test_evaluate_f_duplicate_columns(self):
        """Ensures correct output from evaluate_f.

        In this case, Z has two identical columns and C swaps them.
        """

        this_total, this_residual, this_penalty = selfexpress.evaluate_f(
            DUPLICATE_EMBEDDING_MATRIX, SWAP_MATRIX, SSC_DICT)

        self.assertTrue(numpy.isclose(this_residual, 0., atol=TOLERANCE))
        self.assertTrue(numpy.isclose(this_penalty, 2., atol=TOLERANCE))
        self.assertTrue(numpy.isclose(this_total, 2., atol=TOLERANCE))

    def test_evaluate_f_trace_form(self):
        """Ensures that evaluate_f matches the trace form of the residual."""

        this_coeff_matrix = numlin.create_rng(2).standard_normal((5, 5))
        this_total = selfexpress.evaluate_f(
            RANDOM_EMBEDDING_MATRIX, this_coeff_matrix, NUCLEAR_DICT)[0]

        this_difference_matrix = this_coeff_matrix - numpy.eye(5)
        this_expected_total = 0.5 * numpy.sum(
            numpy.dot(RANDOM_EMBEDDING_MATRIX.T, RANDOM_EMBEDDING_MATRIX) *
            numpy.dot(this_difference_matrix, this_difference_matrix.T)
        ) + selfexpress.evaluate_regularizer(this_coeff_matrix, NUCLEAR_DICT)

        self.assertTrue(numpy.isclose(
            this_total, this_expected_total, atol=TOLERANCE))

    def test_evaluate_f_mismatch(self):
        """Ensures that evaluate_f errors out on mismatched dimensions."""

        with self.assertRaises(TypeError):
            selfexpress.evaluate_f(
                RANDOM_EMBEDDING_MATRIX, numpy.zeros((4, 4)), SSC_DICT)

    def test_evaluate_regularizer_rank_one(self):
        """Ensures correct output from evaluate_regularizer.

        In this case, C = q q^T with unit q, so every Schatten norm is 1.
        """

        for this_exponent in SCHATTEN_EXPONENTS:
            this_value = selfexpress.evaluate_regularizer(
                RANK_ONE_MATRIX, _schatten_dict(this_exponent))
            self.assertTrue(numpy.isclose(this_value, 1., atol=1e-10))

    def test_evaluate_regularizer_zero(self):
        """Ensures correct output from evaluate_regularizer.

        In this case, C = 0.
        """

        these_dicts = [
            SSC_DICT, FROBENIUS_DICT, NUCLEAR_DICT, ENSC_DICT,
            _schatten_dict(1.5)
        ]

        for this_dict in these_dicts:
            self.assertTrue(selfexpress.evaluate_regularizer(
                numpy.zeros((3, 3)), this_dict) == 0.)

    def test_evaluate_regularizer_ensc(self):
        """Ensures correct output from evaluate_regularizer.

        In this case, regularizer is elastic net with tau = 0.5.
        """

        this_value = selfexpress.evaluate_regularizer(SWAP_MATRIX, ENSC_DICT)
        self.assertTrue(numpy.isclose(this_value, 3., atol=TOLERANCE))

    def test_evaluate_regularizer_diag_violated(self):
        """Ensures correct output from evaluate_regularizer.

        In this case, C has a nonzero diagonal but the regularizer requires
        zero diagonal.
        """

        this_value = selfexpress.evaluate_regularizer(numpy.eye(2), SSC_DICT)
        self.assertTrue(numpy.isinf(this_value))

    def test_evaluate_regularizer_schatten_special_cases(self):
        """Ensures that Schatten-1 is nuclear and Schatten-2 is Frobenius."""

        this_coeff_matrix = numlin.create_rng(5).standard_normal((6, 6))

        self.assertTrue(numpy.isclose(
            selfexpress.evaluate_regularizer(
                this_coeff_matrix, _schatten_dict(1.)),
            selfexpress.evaluate_regularizer(this_coeff_matrix, NUCLEAR_DICT),
            rtol=0., atol=1e-12 * numpy.sum(numpy.absolute(this_coeff_matrix))
        ))

        this_frobenius_value = selfexpress.evaluate_regularizer(
            this_coeff_matrix, FROBENIUS_DICT)
        self.assertTrue(numpy.isclose(
            selfexpress.evaluate_regularizer(
                this_coeff_matrix, _schatten_dict(2.)),
            numpy.sqrt(2 * this_frobenius_value), rtol=1e-12, atol=0.
        ))

    def test_prox_l1(self):
        """Ensures correct output from prox.

        In this case, regularizer is SSC with step * lambda = 0.5.
        """

        this_matrix = selfexpress.prox(L1_PROX_INPUT_MATRIX, 0.5, SSC_DICT)
        self.assertTrue(numpy.allclose(
            this_matrix, L1_PROX_OUTPUT_MATRIX, atol=TOLERANCE))

    def test_prox_l1_zero(self):
        """Ensures correct output from prox.

        In this case, input is all zeros.
        """

        this_matrix = selfexpress.prox(numpy.zeros((3, 3)), 0.5, SSC_DICT)
        self.assertTrue(numpy.all(this_matrix == 0.))

    def test_prox_nuclear(self):
        """Ensures correct output from prox.

        In this case, regularizer is nuclear norm with step * lambda = 2.
        """

        this_matrix = selfexpress.prox(
            NUCLEAR_PROX_INPUT_MATRIX, 2., NUCLEAR_DICT)
        self.assertTrue(numpy.allclose(
            this_matrix, NUCLEAR_PROX_OUTPUT_MATRIX, atol=TOLERANCE))

    def test_prox_zero_diag(self):
        """Ensures that prox output has an exactly zero diagonal."""

        this_input_matrix = numlin.create_rng(6).standard_normal((4, 4))
        these_dicts = [
            SSC_DICT, ENSC_DICT,
            selfexpress.create_regularizer(
                selfexpress.NUCLEAR_KIND, 0.1, zero_diag=True),
            selfexpress.create_regularizer(
                selfexpress.FROBENIUS_KIND, 0.1, zero_diag=True)
        ]

        for this_dict in these_dicts:
            this_matrix = selfexpress.prox(this_input_matrix, 0.3, this_dict)
            self.assertTrue(numpy.all(numpy.diag(this_matrix) == 0.))

    def test_prox_optimality(self):
        """Ensures that no small perturbation improves the prox objective."""

        these_dicts = [
            SSC_DICT, ENSC_DICT, FROBENIUS_DICT, NUCLEAR_DICT,
            _schatten_dict(1.5), _schatten_dict(2.), _schatten_dict(3.)
        ]
        this_rng = numlin.create_rng(7)

        for this_dict in these_dicts:
            for _ in range(10):
                this_input_matrix = this_rng.standard_normal((4, 4))
                this_step_size = this_rng.uniform(0.05, 1.5)

                this_output_matrix = selfexpress.prox(
                    this_input_matrix, this_step_size, this_dict)
                this_objective = _prox_objective(
                    this_output_matrix, this_input_matrix, this_step_size,
                    this_dict)

                for _ in range(20):
                    this_perturbation = 1e-3 * this_rng.standard_normal((4, 4))
                    if this_dict[selfexpress.ZERO_DIAG_KEY]:
                        numpy.fill_diagonal(this_perturbation, 0.)

                    this_perturbed_objective = _prox_objective(
                        this_output_matrix + this_perturbation,
                        this_input_matrix, this_step_size, this_dict)

                    self.assertTrue(
                        this_perturbed_objective >= this_objective - 1e-10)

    def test_solve_c_fixed_z_orthonormal_frobenius(self):
        """Ensures correct output from solve_c_fixed_z.

        In this case, Z^T Z = I with Frobenius regularizer and lambda = 1, so
        C* = I / 2.
        """

        this_solution_dict = selfexpress.solve_c_fixed_z(
            numpy.eye(3), FROBENIUS_DICT)

        self.assertTrue(numpy.allclose(
            this_solution_dict[selfexpress.COEFF_MATRIX_KEY],
            0.5 * numpy.eye(3), atol=TOLERANCE))
        self.assertTrue(this_solution_dict[selfexpress.CONVERGED_KEY])

    def test_solve_c_fixed_z_duplicate_ssc(self):
        """Ensures correct output from solve_c_fixed_z.

        In this case, Z has two identical columns with SSC and tiny lambda.
        """

        this_dict = selfexpress.create_regularizer(selfexpress.SSC_KIND, 1e-4)
        this_solution_dict = selfexpress.solve_c_fixed_z(
            DUPLICATE_EMBEDDING_MATRIX, this_dict)

        self.assertTrue(numpy.allclose(
            this_solution_dict[selfexpress.COEFF_MATRIX_KEY], SWAP_MATRIX,
            atol=1e-3))

    def test_solve_c_fixed_z_orthogonal_ssc(self):
        """Ensures correct output from solve_c_fixed_z.

        In this case, Z has orthogonal columns and lambda is large, so the
        solution is C = 0.
        """

        this_dict = selfexpress.create_regularizer(selfexpress.SSC_KIND, 10.)
        this_solution_dict = selfexpress.solve_c_fixed_z(
            numpy.eye(2), this_dict)

        self.assertTrue(numpy.allclose(
            this_solution_dict[selfexpress.COEFF_MATRIX_KEY], 0.,
            atol=TOLERANCE))

    def test_solve_c_fixed_z_closed_form_vs_iterative(self):
        """Ensures that Frobenius closed form matches proximal gradient."""

        this_embedding_matrix = numlin.create_rng(8).standard_normal((10, 20))
        this_option_dict = selfexpress.create_solver_options(
            max_iterations=50000, tolerance=1e-14, use_closed_form=False)

        for this_zero_diag in [False, True]:
            this_dict = selfexpress.create_regularizer(
                selfexpress.FROBENIUS_KIND, 1., zero_diag=this_zero_diag)

            this_closed_form_dict = selfexpress.solve_c_fixed_z(
                this_embedding_matrix, this_dict)
            this_iterative_dict = selfexpress.solve_c_fixed_z(
                this_embedding_matrix, this_dict, this_option_dict)

            this_closed_form_value = this_closed_form_dict[
                selfexpress.OBJECTIVE_KEY]
            this_iterative_value = this_iterative_dict[
                selfexpress.OBJECTIVE_KEY]

            self.assertTrue(
                this_iterative_value >= this_closed_form_value - 1e-9)
            self.assertTrue(
                (this_iterative_value - this_closed_form_value) /
                this_closed_form_value <= 1e-6
            )

    def test_solve_c_fixed_z_monotone(self):
        """Ensures that proximal-gradient iterations never increase F."""

        this_embedding_matrix = numlin.create_rng(9).standard_normal((4, 12))

        for this_dict in [SSC_DICT, ENSC_DICT, NUCLEAR_DICT]:
            this_solution_dict = selfexpress.solve_c_fixed_z(
                this_embedding_matrix, this_dict,
                selfexpress.create_solver_options(max_iterations=300))

            these_values = this_solution_dict[
                selfexpress.OBJECTIVE_HISTORY_KEY]
            self.assertTrue(numpy.all(
                numpy.diff(these_values) <=
                1e-12 * max([1., these_values[0]])
            ))

    def test_solve_c_fixed_z_not_converged(self):
        """Ensures correct output from solve_c_fixed_z.

        In this case, the iteration cap is hit, so the result is flagged.
        """

        this_option_dict = selfexpress.create_solver_options(
            max_iterations=1, tolerance=1e-15)

        with warnings.catch_warnings():
            warnings.simplefilter('ignore')
            this_solution_dict = selfexpress.solve_c_fixed_z(
                RANDOM_EMBEDDING_MATRIX, SSC_DICT, this_option_dict)

        self.assertFalse(this_solution_dict[selfexpress.CONVERGED_KEY])
        self.assertTrue(this_solution_dict[selfexpress.NUM_ITERATIONS_KEY] == 1)
        self.assertTrue(numpy.all(numpy.diag(
            this_solution_dict[selfexpress.COEFF_MATRIX_KEY]
        ) == 0.))

    def test_solve_c_fixed_z_does_not_modify_input(self):
        """Ensures that solve_c_fixed_z leaves its inputs unchanged."""

        this_embedding_matrix = copy.deepcopy(RANDOM_EMBEDDING_MATRIX)
        selfexpress.solve_c_fixed_z(this_embedding_matrix, SSC_DICT)
        self.assertTrue(numpy.array_equal(
            this_embedding_matrix, RANDOM_EMBEDDING_MATRIX))


if __name__ == '__main__':
    unittest.main()
