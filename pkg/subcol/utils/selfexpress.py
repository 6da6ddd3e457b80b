"""Self-expressive objective, regularizers and solvers for C.

The objective is

F(Z, C) = 0.5 * ||Z C - Z||_F^2 + lambda * theta(C)

where theta is one of the regularizers below and C may be constrained to have
a zero diagonal.

d = number of embedding dimensions
N = number of points
"""

import logging
import warnings
import numpy
from subcol.utils import numlin
from subcol.utils import general_utils
from subcol.utils import error_checking

LOGGER = logging.getLogger(__name__)

SSC_KIND = 'ssc'
ENSC_KIND = 'ensc'
FROBENIUS_KIND = 'frobenius'
NUCLEAR_KIND = 'nuclear'
SCHATTEN_KIND = 'schatten'
VALID_REGULARIZER_KINDS = [
    SSC_KIND, ENSC_KIND, FROBENIUS_KIND, NUCLEAR_KIND, SCHATTEN_KIND
]
ZERO_DIAG_KINDS = [SSC_KIND, ENSC_KIND]

KIND_KEY = 'kind'
LAMBDA_KEY = 'lambda'
TAU_EN_KEY = 'tau_en'
SCHATTEN_P_KEY = 'schatten_p'
ZERO_DIAG_KEY = 'zero_diag'

COEFF_MATRIX_KEY = 'coeff_matrix'
CONVERGED_KEY = 'converged'
NUM_ITERATIONS_KEY = 'num_iterations'
OBJECTIVE_KEY = 'objective'
OBJECTIVE_HISTORY_KEY = 'objective_history'

MAX_ITERATIONS_KEY = 'max_iterations'
TOLERANCE_KEY = 'tolerance'
STEP_SIZE_KEY = 'step_size'
USE_CLOSED_FORM_KEY = 'use_closed_form'

DEFAULT_TAU_EN = 1.
DEFAULT_MAX_ITERATIONS = 5000
DEFAULT_TOLERANCE = 1e-10

NEWTON_TOLERANCE = 1e-12
MAX_NEWTON_ITERATIONS = 200
MAX_BISECTION_ITERATIONS = 200
MAX_BRACKET_DOUBLINGS = 1000


def create_regularizer(kind, lambda_value, tau_en=DEFAULT_TAU_EN,
                       schatten_p=1., zero_diag=False):
    """Creates regularizer.

    :param kind: Kind of regularizer (must be in `VALID_REGULARIZER_KINDS`).
    :param lambda_value: Weight (lambda > 0).
    :param tau_en: Weight of squared Frobenius term inside the elastic net.
        Used only if kind = "ensc".
    :param schatten_p: Exponent p >= 1 of Schatten-p norm.  Used only if kind =
        "schatten".
    :param zero_diag: Boolean flag.  If True, C is constrained to have a zero
        diagonal.  Forced to True for "ssc" and "ensc".
    :return: regularizer_dict: Dictionary with keys listed at top of module.
    """

    error_checking.assert_is_string_in_set(kind, VALID_REGULARIZER_KINDS)
    error_checking.assert_is_greater(lambda_value, 0.)
    error_checking.assert_is_geq(tau_en, 0.)
    error_checking.assert_is_geq(schatten_p, 1.)
    error_checking.assert_is_boolean(zero_diag)

    return {
        KIND_KEY: kind,
        LAMBDA_KEY: float(lambda_value),
        TAU_EN_KEY: float(tau_en),
        SCHATTEN_P_KEY: float(schatten_p),
        ZERO_DIAG_KEY: bool(zero_diag) or kind in ZERO_DIAG_KINDS
    }


def _check_embedding_and_coeffs(embedding_matrix, coeff_matrix):
    """Error-checks embedding and coefficient matrices.

    :param embedding_matrix: d-by-N numpy array.
    :param coeff_matrix: N-by-N numpy array.
    """

    error_checking.assert_is_matrix(embedding_matrix)
    num_points = embedding_matrix.shape[1]
    error_checking.assert_is_matrix(
        coeff_matrix, num_rows=num_points, num_columns=num_points)


def _spectral_prox(coeff_matrix, shrink_function):
    """Applies function to singular values, keeping singular vectors.

    :param coeff_matrix: N-by-N numpy array.
    :param shrink_function: Function mapping 1-D array of singular values to
        1-D array of new singular values.
    :return: new_coeff_matrix: N-by-N numpy array.
    """

    svd_dict = numlin.svd(coeff_matrix)
    new_singular_values = shrink_function(svd_dict[numlin.SINGULAR_VALUES_KEY])

    return numpy.dot(
        svd_dict[numlin.LEFT_VECTORS_KEY] * new_singular_values,
        svd_dict[numlin.RIGHT_VECTORS_TRANSPOSED_KEY]
    )


def _solve_power_equation(target_values, multiplier, exponent):
    """Solves x + multiplier * x^(exponent - 1) = target for each target.

    Uses Newton's method, safeguarded by a bracket [0, target] and bisection
    whenever a Newton step leaves the bracket.

    :param target_values: 1-D numpy array of non-negative targets.
    :param multiplier: Positive multiplier.
    :param exponent: Exponent p > 1.
    :return: solution_values: 1-D numpy array with same length as targets.
    """

    lower_values = numpy.zeros(target_values.shape)
    upper_values = target_values.copy()
    solution_values = target_values / (1. + multiplier)

    for _ in range(MAX_NEWTON_ITERATIONS):
        residuals = (
            solution_values + multiplier * solution_values ** (exponent - 1) -
            target_values
        )

        if numpy.max(numpy.absolute(residuals)) <= NEWTON_TOLERANCE * max([
                numpy.max(target_values), 1.
        ]):
            break

        positive_flags = residuals > 0
        upper_values = numpy.where(
            positive_flags, solution_values, upper_values)
        lower_values = numpy.where(
            positive_flags, lower_values, solution_values)

        with numpy.errstate(divide='ignore', invalid='ignore'):
            derivatives = 1. + multiplier * (exponent - 1) * (
                solution_values ** (exponent - 2)
            )
            newton_values = solution_values - residuals / derivatives

        bisection_values = 0.5 * (lower_values + upper_values)
        good_flags = numpy.logical_and(
            numpy.isfinite(newton_values),
            numpy.logical_and(
                newton_values > lower_values, newton_values < upper_values)
        )
        solution_values = numpy.where(
            good_flags, newton_values, bisection_values)

    return solution_values


def _prox_lp_norm(input_values, threshold, exponent):
    """Proximal operator of threshold * ||x||_p for non-negative vector.

    :param input_values: 1-D numpy array of non-negative values.
    :param threshold: Non-negative threshold.
    :param exponent: Exponent p > 1.
    :return: output_values: 1-D numpy array.
    """

    if threshold == 0:
        return input_values.copy()

    dual_exponent = exponent / (exponent - 1.)
    dual_norm = numpy.sum(input_values ** dual_exponent) ** (1. / dual_exponent)
    if dual_norm <= threshold:
        return numpy.zeros(input_values.shape)

    def _scaled_norm(multiplier):
        these_values = _solve_power_equation(
            target_values=input_values, multiplier=multiplier,
            exponent=exponent)
        this_norm = numpy.sum(these_values ** exponent) ** (1. / exponent)
        return multiplier * this_norm ** (exponent - 1), these_values

    lower_multiplier = 1.
    upper_multiplier = 1.
    for _ in range(MAX_BRACKET_DOUBLINGS):
        if _scaled_norm(upper_multiplier)[0] >= threshold:
            break
        upper_multiplier *= 2
    for _ in range(MAX_BRACKET_DOUBLINGS):
        if _scaled_norm(lower_multiplier)[0] <= threshold:
            break
        lower_multiplier *= 0.5

    output_values = None
    for _ in range(MAX_BISECTION_ITERATIONS):
        middle_multiplier = numpy.sqrt(lower_multiplier * upper_multiplier)
        this_scaled_norm, output_values = _scaled_norm(middle_multiplier)

        if this_scaled_norm > threshold:
            upper_multiplier = middle_multiplier
        else:
            lower_multiplier = middle_multiplier

        if upper_multiplier / lower_multiplier - 1. <= 1e-15:
            break

    return output_values


def evaluate_regularizer(coeff_matrix, regularizer_dict):
    """Evaluates theta(C) (without the weight lambda).

    :param coeff_matrix: N-by-N numpy array.
    :param regularizer_dict: Dictionary created by `create_regularizer`.
    :return: regularizer_value: theta(C).  If C violates the zero-diagonal
        constraint, this is infinity.
    """

    error_checking.assert_is_square_matrix(coeff_matrix)

    if regularizer_dict[ZERO_DIAG_KEY] and numpy.any(
            numpy.diag(coeff_matrix) != 0
    ):
        return numpy.inf

    kind = regularizer_dict[KIND_KEY]
    if kind == SSC_KIND:
        return float(numpy.sum(numpy.absolute(coeff_matrix)))

    if kind == ENSC_KIND:
        return float(
            numpy.sum(numpy.absolute(coeff_matrix)) +
            regularizer_dict[TAU_EN_KEY] * numpy.sum(coeff_matrix ** 2)
        )

    if kind == FROBENIUS_KIND:
        return float(0.5 * numpy.sum(coeff_matrix ** 2))

    singular_values = numlin.svd(coeff_matrix)[numlin.SINGULAR_VALUES_KEY]
    if kind == NUCLEAR_KIND:
        return float(numpy.sum(singular_values))

    exponent = regularizer_dict[SCHATTEN_P_KEY]
    return float(numpy.sum(singular_values ** exponent) ** (1. / exponent))


def evaluate_f(embedding_matrix, coeff_matrix, regularizer_dict):
    """Evaluates self-expressive objective F(Z, C).

    :param embedding_matrix: d-by-N numpy array (Z).
    :param coeff_matrix: N-by-N numpy array (C).
    :param regularizer_dict: Dictionary created by `create_regularizer`.
    :return: total_value: residual_value + penalty_value.
    :return: residual_value: 0.5 * ||Z C - Z||_F^2.
    :return: penalty_value: lambda * theta(C).
    """

    _check_embedding_and_coeffs(embedding_matrix, coeff_matrix)

    residual_matrix = (
        numpy.dot(embedding_matrix, coeff_matrix) - embedding_matrix
    )
    residual_value = 0.5 * float(numpy.sum(residual_matrix ** 2))
    penalty_value = regularizer_dict[LAMBDA_KEY] * evaluate_regularizer(
        coeff_matrix, regularizer_dict)

    return residual_value + penalty_value, residual_value, penalty_value


def prox(coeff_matrix, step_size, regularizer_dict):
    """Proximal operator of step_size * lambda * theta.

    Returns argmin_W 0.5 * ||W - C||_F^2 + step_size * lambda * theta(W), with
    the zero-diagonal constraint if the regularizer has one.  For nuclear and
    Schatten-p regularizers with the zero-diagonal constraint, the spectral
    prox is followed by projection onto the zero-diagonal set.

    :param coeff_matrix: N-by-N numpy array.
    :param step_size: Positive step size.
    :param regularizer_dict: Dictionary created by `create_regularizer`.
    :return: new_coeff_matrix: N-by-N numpy array.
    """

    error_checking.assert_is_square_matrix(coeff_matrix)
    error_checking.assert_is_greater(step_size, 0.)

    kind = regularizer_dict[KIND_KEY]
    threshold = step_size * regularizer_dict[LAMBDA_KEY]

    if kind == SSC_KIND:
        new_coeff_matrix = general_utils.soft_threshold(coeff_matrix, threshold)
    elif kind == ENSC_KIND:
        new_coeff_matrix = general_utils.soft_threshold(
            coeff_matrix, threshold
        ) / (1. + 2 * threshold * regularizer_dict[TAU_EN_KEY])
    elif kind == FROBENIUS_KIND:
        new_coeff_matrix = coeff_matrix / (1. + threshold)
    else:
        exponent = regularizer_dict[SCHATTEN_P_KEY]
        if kind == NUCLEAR_KIND or exponent == 1:
            shrink_function = lambda s: numpy.maximum(s - threshold, 0.)
        elif exponent == 2:
            shrink_function = lambda s: s * max([
                1. - threshold / max([numpy.linalg.norm(s), 1e-300]), 0.
            ])
        else:
            shrink_function = lambda s: _prox_lp_norm(s, threshold, exponent)

        new_coeff_matrix = _spectral_prox(coeff_matrix, shrink_function)

    if regularizer_dict[ZERO_DIAG_KEY]:
        numpy.fill_diagonal(new_coeff_matrix, 0.)

    return new_coeff_matrix


def create_solver_options(max_iterations=DEFAULT_MAX_ITERATIONS,
                          tolerance=DEFAULT_TOLERANCE, step_size=None,
                          use_closed_form=True):
    """Creates options for `solve_c_fixed_z`.

    :param max_iterations: Max number of proximal-gradient iterations.
    :param tolerance: Stopping tolerance on relative change in objective.
    :param step_size: Step size.  If None, will use 1 / lambda_max(Z^T Z),
        the exact Lipschitz constant of the residual gradient.
    :param use_closed_form: Boolean flag.  If True, the squared-Frobenius
        regularizer is solved in closed form instead of iteratively.
    :return: option_dict: Dictionary with keys listed at top of module.
    """

    error_checking.assert_is_integer(max_iterations)
    error_checking.assert_is_greater(max_iterations, 0)
    error_checking.assert_is_greater(tolerance, 0.)
    error_checking.assert_is_boolean(use_closed_form)
    if step_size is not None:
        error_checking.assert_is_greater(step_size, 0.)

    return {
        MAX_ITERATIONS_KEY: max_iterations,
        TOLERANCE_KEY: tolerance,
        STEP_SIZE_KEY: step_size,
        USE_CLOSED_FORM_KEY: use_closed_form
    }


def _solve_frobenius(gram_matrix, regularizer_dict):
    """Closed-form minimizer for the squared-Frobenius regularizer.

    :param gram_matrix: N-by-N numpy array (Z^T Z).
    :param regularizer_dict: Dictionary created by `create_regularizer`.
    :return: coeff_matrix: N-by-N numpy array.
    """

    num_points = gram_matrix.shape[0]
    lambda_value = regularizer_dict[LAMBDA_KEY]

    if not regularizer_dict[ZERO_DIAG_KEY]:
        return numlin.solve_spd(
            gram_matrix + lambda_value * numpy.eye(num_points), gram_matrix)

    coeff_matrix = numpy.zeros((num_points, num_points))
    all_indices = numpy.linspace(0, num_points - 1, num=num_points, dtype=int)

    for i in range(num_points):
        other_indices = all_indices[all_indices != i]
        this_lhs_matrix = (
            gram_matrix[numpy.ix_(other_indices, other_indices)] +
            lambda_value * numpy.eye(num_points - 1)
        )
        coeff_matrix[other_indices, i] = numlin.solve_spd(
            this_lhs_matrix, gram_matrix[other_indices, i])

    return coeff_matrix


def solve_c_fixed_z(embedding_matrix, regularizer_dict, option_dict=None,
                    initial_coeff_matrix=None):
    """Minimizes F(Z, C) over C for fixed Z.

    For the squared-Frobenius regularizer, the minimizer is found in closed
    form.  Otherwise, this method runs proximal gradient descent until the
    relative change in objective drops below the tolerance.

    :param embedding_matrix: d-by-N numpy array (Z).
    :param regularizer_dict: Dictionary created by `create_regularizer`.
    :param option_dict: Dictionary created by `create_solver_options`.  If
        None, defaults are used.
    :param initial_coeff_matrix: N-by-N numpy array to start from.  If None,
        starts from zero.
    :return: solution_dict: Dictionary with the following keys.
    solution_dict['coeff_matrix']: N-by-N numpy array (best iterate).
    solution_dict['zero_diag']: Boolean flag.
    solution_dict['converged']: Boolean flag.
    solution_dict['num_iterations']: Number of iterations run.
    solution_dict['objective']: F at the returned C.
    solution_dict['objective_history']: 1-D numpy array of F after each
        iteration.
    """

    error_checking.assert_is_matrix(embedding_matrix)
    if option_dict is None:
        option_dict = create_solver_options()

    num_points = embedding_matrix.shape[1]
    gram_matrix = numpy.dot(embedding_matrix.T, embedding_matrix)

    if (regularizer_dict[KIND_KEY] == FROBENIUS_KIND and
            option_dict[USE_CLOSED_FORM_KEY]):
        coeff_matrix = _solve_frobenius(gram_matrix, regularizer_dict)
        objective_value = evaluate_f(
            embedding_matrix, coeff_matrix, regularizer_dict)[0]

        return {
            COEFF_MATRIX_KEY: coeff_matrix,
            ZERO_DIAG_KEY: regularizer_dict[ZERO_DIAG_KEY],
            CONVERGED_KEY: True,
            NUM_ITERATIONS_KEY: 0,
            OBJECTIVE_KEY: objective_value,
            OBJECTIVE_HISTORY_KEY: numpy.array([objective_value])
        }

    if initial_coeff_matrix is None:
        coeff_matrix = numpy.zeros((num_points, num_points))
    else:
        error_checking.assert_is_matrix(
            initial_coeff_matrix, num_rows=num_points, num_columns=num_points)
        coeff_matrix = initial_coeff_matrix.copy()
        if regularizer_dict[ZERO_DIAG_KEY]:
            numpy.fill_diagonal(coeff_matrix, 0.)

    step_size = option_dict[STEP_SIZE_KEY]
    if step_size is None:
        lipschitz_constant = numlin.largest_eigenvalue(gram_matrix)
        step_size = 1. / max([lipschitz_constant, 1e-300])

    tolerance = option_dict[TOLERANCE_KEY]
    objective_value = evaluate_f(
        embedding_matrix, coeff_matrix, regularizer_dict)[0]
    best_coeff_matrix = coeff_matrix.copy()
    best_objective_value = objective_value

    objective_values = []
    converged = False
    num_iterations = 0

    for num_iterations in range(1, option_dict[MAX_ITERATIONS_KEY] + 1):
        gradient_matrix = numpy.dot(
            gram_matrix, coeff_matrix - numpy.eye(num_points))
        coeff_matrix = prox(
            coeff_matrix - step_size * gradient_matrix, step_size,
            regularizer_dict)

        new_objective_value = evaluate_f(
            embedding_matrix, coeff_matrix, regularizer_dict)[0]
        objective_values.append(new_objective_value)

        if new_objective_value < best_objective_value:
            best_objective_value = new_objective_value
            best_coeff_matrix = coeff_matrix.copy()

        change = numpy.absolute(objective_value - new_objective_value)
        objective_value = new_objective_value

        if change <= tolerance * max([numpy.absolute(objective_value), 1e-300]):
            converged = True
            break

    LOGGER.debug(
        'Proximal gradient ({0:s}) stopped after {1:d} iterations with '
        'objective {2:.6e}.'.format(
            regularizer_dict[KIND_KEY], num_iterations, best_objective_value)
    )

    if not converged:
        warnings.warn(
            'Solver for C did not converge in {0:d} iterations.  Returning '
            'best iterate.'.format(num_iterations)
        )

    return {
        COEFF_MATRIX_KEY: best_coeff_matrix,
        ZERO_DIAG_KEY: regularizer_dict[ZERO_DIAG_KEY],
        CONVERGED_KEY: converged,
        NUM_ITERATIONS_KEY: num_iterations,
        OBJECTIVE_KEY: best_objective_value,
        OBJECTIVE_HISTORY_KEY: numpy.array(objective_values)
    }
