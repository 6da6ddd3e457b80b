"""Constructions and checkers for the degenerate optima of the self-expressive
objective F(Z, C) = 0.5 * ||Z C - Z||_F^2 + lambda * theta(C).

Norm constraints on Z come in two flavours:

- "P1": bound on ||Z||_F^2 (dataset normalization).
- "P2": bound on each squared row norm ||Z^i||^2 (channel normalization).

d = number of embedding dimensions
N = number of points
"""

import itertools
import logging
import numpy
import pandas
import scipy.optimize
from subcol.utils import general_utils
from subcol.utils import numlin
from subcol.utils import selfexpress
from subcol.utils import error_checking

LOGGER = logging.getLogger(__name__)

P1_SCHEME = 'P1'
P2_SCHEME = 'P2'
VALID_SCHEMES = [P1_SCHEME, P2_SCHEME]

THM1_TAG = 'T1'
THM2_TAG = 'T2'
THM3_TAG = 'T3'
THM4_TAG = 'T4'

Z_STAR_KEY = 'z_star'
C_STAR_KEY = 'c_star'
OBJECTIVE_KEY = 'objective'
THEOREM_TAG_KEY = 'theorem_tag'
SIGNED_PERMUTATION_KEY = 'signed_permutation'
Q_VECTOR_KEY = 'q_vector'

NORM_CONCENTRATION_KEY = 'norm_concentration'
TOP1_SV_RATIO_KEY = 'top1_sv_ratio'
MIN_PAIR_GAP_KEY = 'min_pair_gap'
C_TOP2_MASS_KEY = 'c_top2_mass'
METRIC_KEYS = [
    NORM_CONCENTRATION_KEY, TOP1_SV_RATIO_KEY, MIN_PAIR_GAP_KEY,
    C_TOP2_MASS_KEY
]

BEST_L1_KEY = 'best_l1'
BEST_COEFF_MATRIX_KEY = 'best_coeff_matrix'
BEST_EMBEDDING_KEY = 'best_embedding_matrix'
NUM_CANDIDATES_KEY = 'num_candidates'
NUM_PATTERNS_KEY = 'num_patterns'
BEST_SCORE_KEY = 'best_score'

FEASIBLE_KEY = 'feasible'
EXPRESSION_RESIDUAL_KEY = 'expression_residual'
DIAGONAL_RESIDUAL_KEY = 'diagonal_residual'
NORM_SLACK_KEY = 'norm_slack'

DUPLICATE_FRACTION_KEY = 'duplicate_fraction'
L1_BAND_FRACTION_KEY = 'l1_band_fraction'
PASSED_KEY = 'passed'
SECOND_NORM_RATIO_KEY = 'second_norm_ratio'
MAX_OTHER_NORM_RATIO_KEY = 'max_other_norm_ratio'
SURVIVOR_COSINE_KEY = 'survivor_cosine'

FEASIBILITY_TOLERANCE = 1e-10
REAL_EIGENVALUE_TOLERANCE = 1e-9
HOMOTOPY_LAMBDAS = numpy.logspace(-2, -8, num=7)
MAX_LASSO_ITERATIONS = 20000
LASSO_TOLERANCE = 1e-15
SUPPORT_TOLERANCE = 1e-10
BASIS_PURSUIT_TOLERANCE = 1e-8
DEFAULT_SAMPLES_PER_PATTERN = 128
DEFAULT_MAX_REFINE_ITERATIONS = 200
DEFAULT_RANDOM_BATCH_SIZE = 10000


def _check_scheme_and_tau(scheme, tau):
    """Error-checks norm-constraint scheme and budget.

    :param scheme: Scheme (must be in `VALID_SCHEMES`).
    :param tau: Budget (> 0).
    """

    error_checking.assert_is_string_in_set(scheme, VALID_SCHEMES)
    error_checking.assert_is_greater(tau, 0.)


def check_feasibility(embedding_matrix, coeff_matrix, tau, scheme=P1_SCHEME,
                      zero_diag=False, equality=False,
                      tolerance=FEASIBILITY_TOLERANCE):
    """Checks whether (Z, C) satisfies Z = Z C and the norm constraint.

    :param embedding_matrix: d-by-N numpy array (Z).
    :param coeff_matrix: N-by-N numpy array (C).
    :param tau: Norm budget.
    :param scheme: Norm-constraint scheme ("P1" or "P2").
    :param zero_diag: Boolean flag.  If True, diag(C) must be zero.
    :param equality: Boolean flag.  If True, norm constraint must hold with
        equality.  If False, norms must be at least the budget.
    :param tolerance: Tolerance for all checks (scaled by norm of Z for the
        expression residual).
    :return: result_dict: Dictionary with the following keys.
    result_dict['feasible']: Boolean flag.
    result_dict['expression_residual']: max |Z C - Z|.
    result_dict['diagonal_residual']: max |diag(C)|.
    result_dict['norm_slack']: Worst violation of the norm constraint
        (<= 0 means satisfied).
    """

    _check_scheme_and_tau(scheme, tau)
    error_checking.assert_is_matrix(embedding_matrix)
    num_points = embedding_matrix.shape[1]
    error_checking.assert_is_matrix(
        coeff_matrix, num_rows=num_points, num_columns=num_points)

    expression_residual = float(numpy.max(numpy.absolute(
        numpy.dot(embedding_matrix, coeff_matrix) - embedding_matrix
    )))
    diagonal_residual = float(numpy.max(numpy.absolute(
        numpy.diag(coeff_matrix))))

    if scheme == P1_SCHEME:
        actual_norms = numpy.array([numpy.sum(embedding_matrix ** 2)])
        target_norm = tau
    else:
        actual_norms = numpy.sum(embedding_matrix ** 2, axis=1)
        target_norm = tau / embedding_matrix.shape[0]

    if equality:
        norm_slack = float(numpy.max(numpy.absolute(
            actual_norms - target_norm)))
    else:
        norm_slack = float(numpy.max(target_norm - actual_norms))

    scale = max([1., float(numpy.max(numpy.absolute(embedding_matrix)))])
    feasible = (
        expression_residual <= tolerance * scale and
        norm_slack <= tolerance * max([1., tau]) and
        (diagonal_residual <= tolerance or not zero_diag)
    )

    return {
        FEASIBLE_KEY: bool(feasible),
        EXPRESSION_RESIDUAL_KEY: expression_residual,
        DIAGONAL_RESIDUAL_KEY: diagonal_residual,
        NORM_SLACK_KEY: norm_slack
    }


def thm1_objective_value(coeff_matrix, tau, regularizer_dict):
    """Evaluates reduced objective 0.5 * sigma_min(C - I)^2 * tau +
    lambda * theta(C).

    This is the minimum of F(Z, C) over Z with ||Z||_F^2 = tau.

    :param coeff_matrix: N-by-N numpy array (C).
    :param tau: Norm budget.
    :param regularizer_dict: See doc for `selfexpress.evaluate_regularizer`.
    :return: objective_value: Reduced objective.
    """

    error_checking.assert_is_square_matrix(coeff_matrix)
    error_checking.assert_is_greater(tau, 0.)

    sigma_min = numlin.sigma_min_space(
        coeff_matrix - numpy.eye(coeff_matrix.shape[0]))[0]

    return 0.5 * sigma_min ** 2 * tau + (
        regularizer_dict[selfexpress.LAMBDA_KEY] *
        selfexpress.evaluate_regularizer(coeff_matrix, regularizer_dict)
    )


def thm1_optimal_z(coeff_matrix, tau, b_matrix, scheme=P1_SCHEME,
                   tolerance=1e-9):
    """Builds optimal embedding Z* = B Q^T for fixed C.

    Q holds left singular vectors of C - I for the smallest singular value,
    and B is any matrix in the constraint set.

    :param coeff_matrix: N-by-N numpy array (C).
    :param tau: Norm budget.
    :param b_matrix: d-by-r numpy array, where r = multiplicity of smallest
        singular value of C - I.
    :param scheme: Norm-constraint scheme ("P1" or "P2").
    :param tolerance: Relative tolerance for the norm constraint.
    :return: embedding_matrix: d-by-N numpy array (Z*).
    :raises: ValueError: if B violates the constraint set.
    """

    _check_scheme_and_tau(scheme, tau)
    error_checking.assert_is_square_matrix(coeff_matrix)

    sigma_min, multiplicity, q_matrix = numlin.sigma_min_space(
        coeff_matrix - numpy.eye(coeff_matrix.shape[0]))
    error_checking.assert_is_matrix(b_matrix, num_columns=multiplicity)

    if scheme == P1_SCHEME:
        actual_norms = numpy.array([numpy.sum(b_matrix ** 2)])
        target_norm = tau
    else:
        actual_norms = numpy.sum(b_matrix ** 2, axis=1)
        target_norm = tau / b_matrix.shape[0]

    absolute_tolerance = tolerance * max([1., target_norm])
    if sigma_min > 0:
        violated = numpy.any(
            numpy.absolute(actual_norms - target_norm) > absolute_tolerance)
    else:
        violated = numpy.any(actual_norms < target_norm - absolute_tolerance)

    if violated:
        error_string = (
            'B violates the {0:s} constraint (norms {1:s}, budget {2:.4g}, '
            'sigma_min = {3:.4g}).'
        ).format(scheme, str(actual_norms), target_norm, sigma_min)

        raise ValueError(error_string)

    return numpy.dot(b_matrix, q_matrix.T)


def _signed_permutation(num_points, perm_seed):
    """Creates random signed-permutation matrix.

    :param num_points: N.
    :param perm_seed: Random seed.  If None, returns identity.
    :return: permutation_matrix: N-by-N numpy array.
    """

    if perm_seed is None:
        return numpy.eye(num_points)

    rng_object = numlin.create_rng(perm_seed)
    permuted_indices = rng_object.permutation(num_points)
    signs = rng_object.choice(numpy.array([-1., 1.]), size=num_points)

    permutation_matrix = numpy.zeros((num_points, num_points))
    permutation_matrix[numpy.arange(num_points), permuted_indices] = signs
    return permutation_matrix


def thm2_canonical(num_points, embedding_dim, tau, scheme=P1_SCHEME,
                   perm_seed=None):
    """Builds canonical optimum for the l1 regularizer with zero diagonal.

    Z* = [z z 0 ... 0] P and C* = P^T (S + 0) P, where S = [[0, 1], [1, 0]]
    and P is a signed permutation.  Each entry of z is sqrt(tau / (2d)), so
    both the P1 and P2 constraints hold with equality.

    :param num_points: N (>= 2).
    :param embedding_dim: d (>= 1).
    :param tau: Norm budget.
    :param scheme: Norm-constraint scheme ("P1" or "P2").
    :param perm_seed: Seed for signed permutation (None for identity).
    :return: solution_dict: Dictionary with keys "z_star", "c_star",
        "objective" (= ||C*||_1 = 2), "theorem_tag", "signed_permutation".
    """

    _check_scheme_and_tau(scheme, tau)
    error_checking.assert_is_integer(num_points)
    error_checking.assert_is_geq(num_points, 2)
    error_checking.assert_is_integer(embedding_dim)
    error_checking.assert_is_geq(embedding_dim, 1)

    z_vector = numpy.full(embedding_dim, numpy.sqrt(tau / (2 * embedding_dim)))
    base_embedding_matrix = numpy.zeros((embedding_dim, num_points))
    base_embedding_matrix[:, 0] = z_vector
    base_embedding_matrix[:, 1] = z_vector

    base_coeff_matrix = numpy.zeros((num_points, num_points))
    base_coeff_matrix[0, 1] = 1.
    base_coeff_matrix[1, 0] = 1.

    permutation_matrix = _signed_permutation(num_points, perm_seed)
    coeff_matrix = numpy.dot(
        permutation_matrix.T, numpy.dot(base_coeff_matrix, permutation_matrix)
    )

    return {
        Z_STAR_KEY: numpy.dot(base_embedding_matrix, permutation_matrix),
        C_STAR_KEY: coeff_matrix,
        OBJECTIVE_KEY: float(numpy.sum(numpy.absolute(coeff_matrix))),
        THEOREM_TAG_KEY: THM2_TAG,
        SIGNED_PERMUTATION_KEY: permutation_matrix
    }


def _largest_real_eigenvalues(matrix_stack):
    """Finds largest positive real eigenvalue of each matrix.

    :param matrix_stack: S-by-N-by-N numpy array.
    :return: eigenvalues: length-S numpy array.  -inf where a matrix has no
        positive real eigenvalue.
    """

    all_eigenvalues = numpy.linalg.eigvals(matrix_stack)
    real_flags = numpy.logical_and(
        numpy.absolute(numpy.imag(all_eigenvalues)) <=
        REAL_EIGENVALUE_TOLERANCE * numpy.maximum(
            1., numpy.absolute(all_eigenvalues)),
        numpy.real(all_eigenvalues) > 0
    )

    return numpy.max(
        numpy.where(real_flags, numpy.real(all_eigenvalues), -numpy.inf),
        axis=-1
    )


def _pattern_matrices(magnitude_matrix, row_indices, column_indices,
                      num_points):
    """Places signed magnitudes on a support pattern and normalizes to unit l1.

    :param magnitude_matrix: S-by-K numpy array.
    :param row_indices: length-K numpy array of row indices.
    :param column_indices: length-K numpy array of column indices.
    :param num_points: N.
    :return: matrix_stack: S-by-N-by-N numpy array, each with ||C||_1 = 1 (or
        zero if all magnitudes are zero).
    """

    l1_norms = numpy.sum(numpy.absolute(magnitude_matrix), axis=1)
    l1_norms[l1_norms == 0] = 1.

    matrix_stack = numpy.zeros((magnitude_matrix.shape[0], num_points,
                                num_points))
    matrix_stack[:, row_indices, column_indices] = (
        magnitude_matrix / l1_norms[:, None]
    )
    return matrix_stack


def thm2_brute_force(
        num_points, embedding_dim, tau=1., max_support_size=4,
        samples_per_pattern=DEFAULT_SAMPLES_PER_PATTERN,
        max_refine_iterations=DEFAULT_MAX_REFINE_ITERATIONS, seed=0):
    """Searches for feasible (Z, C) with zero-diagonal C and small ||C||_1.

    A nonzero Z with Z = Z C exists iff 1 is an eigenvalue of C, and the norm
    budget only rescales Z.  So, for a direction C with ||C||_1 = 1 and
    largest positive real eigenvalue mu, the smallest feasible l1 norm along
    that direction is 1 / mu.  This method enumerates every off-diagonal
    support pattern with <= `max_support_size` entries, samples signed
    magnitudes on each, and refines the best sample with Nelder-Mead.

    :param num_points: N.
    :param embedding_dim: d (used only to build the witness Z).
    :param tau: Norm budget.
    :param max_support_size: Max number of nonzeros in C.
    :param samples_per_pattern: Number of random magnitude vectors per pattern.
    :param max_refine_iterations: Max Nelder-Mead iterations per pattern (0 to
        skip refinement).
    :param seed: Random seed.
    :return: result_dict: Dictionary with the following keys.
    result_dict['best_l1']: Smallest feasible ||C||_1 found.
    result_dict['best_coeff_matrix']: Corresponding C (with eigenvalue 1).
    result_dict['best_embedding_matrix']: Witness Z with Z = Z C and
        ||Z||_F^2 = tau.
    result_dict['num_candidates']: Number of candidates evaluated.
    result_dict['num_patterns']: Number of support patterns.
    """

    error_checking.assert_is_integer(num_points)
    error_checking.assert_is_geq(num_points, 2)
    error_checking.assert_is_integer(embedding_dim)
    error_checking.assert_is_geq(embedding_dim, 1)
    error_checking.assert_is_greater(tau, 0.)
    error_checking.assert_is_integer(max_support_size)
    error_checking.assert_is_geq(max_support_size, 1)
    error_checking.assert_is_integer(samples_per_pattern)
    error_checking.assert_is_greater(samples_per_pattern, 0)

    rng_object = numlin.create_rng(seed)
    off_diagonal_positions = [
        (i, j) for i in range(num_points) for j in range(num_points) if i != j
    ]

    best_l1 = numpy.inf
    best_direction_matrix = None
    num_candidates = 0
    num_patterns = 0

    for this_size in range(1, max_support_size + 1):
        for this_pattern in itertools.combinations(
                off_diagonal_positions, this_size):
            num_patterns += 1
            these_rows = numpy.array([p[0] for p in this_pattern], dtype=int)
            these_columns = numpy.array(
                [p[1] for p in this_pattern], dtype=int)

            this_magnitude_matrix = rng_object.standard_normal(
                (samples_per_pattern, this_size))
            these_eigenvalues = _largest_real_eigenvalues(_pattern_matrices(
                this_magnitude_matrix, these_rows, these_columns, num_points
            ))
            num_candidates += samples_per_pattern

            this_best_index = int(numpy.argmax(these_eigenvalues))
            if not numpy.isfinite(these_eigenvalues[this_best_index]):
                continue

            this_best_magnitudes = this_magnitude_matrix[this_best_index, :]

            if max_refine_iterations > 0:
                def _negative_eigenvalue(magnitudes):
                    this_value = _largest_real_eigenvalues(_pattern_matrices(
                        magnitudes[None, :], these_rows, these_columns,
                        num_points
                    ))[0]
                    return -this_value if numpy.isfinite(this_value) else 0.

                this_result = scipy.optimize.minimize(
                    _negative_eigenvalue, this_best_magnitudes,
                    method='Nelder-Mead',
                    options={'maxiter': max_refine_iterations}
                )
                num_candidates += int(this_result.nfev)

                if this_result.fun < -these_eigenvalues[this_best_index]:
                    this_best_magnitudes = this_result.x

            this_direction_matrix = _pattern_matrices(
                this_best_magnitudes[None, :], these_rows, these_columns,
                num_points
            )[0, ...]
            this_eigenvalue = _largest_real_eigenvalues(
                this_direction_matrix[None, ...])[0]

            if (numpy.isfinite(this_eigenvalue) and
                    1. / this_eigenvalue < best_l1):
                best_l1 = 1. / this_eigenvalue
                best_direction_matrix = this_direction_matrix / this_eigenvalue

    LOGGER.debug(
        'Brute force over %d patterns and %d candidates: best l1 = %.10f',
        num_patterns, num_candidates, best_l1)

    best_embedding_matrix = None

    if best_direction_matrix is not None:
        these_eigenvalues, these_vectors = numpy.linalg.eig(
            best_direction_matrix.T)
        this_index = int(numpy.argmin(numpy.absolute(these_eigenvalues - 1.)))
        left_vector = numpy.real(these_vectors[:, this_index])
        left_vector = left_vector / numpy.linalg.norm(left_vector)

        best_embedding_matrix = numpy.outer(
            numpy.full(embedding_dim, numpy.sqrt(tau / embedding_dim)),
            left_vector
        )

    return {
        BEST_L1_KEY: float(best_l1),
        BEST_COEFF_MATRIX_KEY: best_direction_matrix,
        BEST_EMBEDDING_KEY: best_embedding_matrix,
        NUM_CANDIDATES_KEY: num_candidates,
        NUM_PATTERNS_KEY: num_patterns
    }


def thm3_canonical(num_points, embedding_dim, tau, schatten_p,
                   scheme=P1_SCHEME, q_seed=None, q_vector=None):
    """Builds canonical rank-one optimum for Schatten-p regularizers.

    C* = q q^T for a unit vector q, and Z* = z q^T with each entry of z equal
    to sqrt(tau / d), so both the P1 and P2 constraints hold with equality.

    :param num_points: N (>= 1).
    :param embedding_dim: d (>= 1).
    :param tau: Norm budget.
    :param schatten_p: Exponent p >= 1.
    :param scheme: Norm-constraint scheme ("P1" or "P2").
    :param q_seed: Seed for random unit q.  Used only if `q_vector is None`.
    :param q_vector: length-N numpy array (normalized here).  If None, drawn
        from `q_seed`.
    :return: solution_dict: Dictionary with keys "z_star", "c_star",
        "objective" (= ||C*||_{S_p} = 1), "theorem_tag", "q_vector".
    """

    _check_scheme_and_tau(scheme, tau)
    error_checking.assert_is_integer(num_points)
    error_checking.assert_is_geq(num_points, 1)
    error_checking.assert_is_integer(embedding_dim)
    error_checking.assert_is_geq(embedding_dim, 1)
    error_checking.assert_is_geq(schatten_p, 1.)

    if q_vector is None:
        q_vector = numlin.create_rng(
            0 if q_seed is None else q_seed
        ).standard_normal(num_points)

    error_checking.assert_is_numpy_array(
        q_vector, exact_dimensions=numpy.array([num_points]))
    q_vector = q_vector / numpy.linalg.norm(q_vector)

    coeff_matrix = numpy.outer(q_vector, q_vector)
    embedding_matrix = numpy.outer(
        numpy.full(embedding_dim, numpy.sqrt(tau / embedding_dim)), q_vector)

    regularizer_dict = selfexpress.create_regularizer(
        selfexpress.SCHATTEN_KIND, lambda_value=1., schatten_p=schatten_p)

    return {
        Z_STAR_KEY: embedding_matrix,
        C_STAR_KEY: coeff_matrix,
        OBJECTIVE_KEY: selfexpress.evaluate_regularizer(
            coeff_matrix, regularizer_dict),
        THEOREM_TAG_KEY: THM3_TAG,
        Q_VECTOR_KEY: q_vector
    }


def thm3_random_search(num_points, schatten_p, num_candidates, seed=0,
                       batch_size=DEFAULT_RANDOM_BATCH_SIZE):
    """Scores random feasible C under the Schatten-p norm.

    Each random C is projected onto the feasible set by subtracting
    sigma_min * u * v^T from C - I, which makes C - I singular, so some nonzero
    Z satisfies Z = Z C.

    :param num_points: N.
    :param schatten_p: Exponent p >= 1.
    :param num_candidates: Number of random candidates.
    :param seed: Random seed.
    :param batch_size: Number of candidates per batch.
    :return: result_dict: Dictionary with keys "best_score" (smallest Schatten
        norm found) and "num_candidates".
    """

    error_checking.assert_is_integer(num_points)
    error_checking.assert_is_geq(num_points, 1)
    error_checking.assert_is_geq(schatten_p, 1.)
    error_checking.assert_is_integer(num_candidates)
    error_checking.assert_is_greater(num_candidates, 0)
    error_checking.assert_is_integer(batch_size)
    error_checking.assert_is_greater(batch_size, 0)

    rng_object = numlin.create_rng(seed)
    identity_matrix = numpy.eye(num_points)
    best_score = numpy.inf
    num_done = 0

    while num_done < num_candidates:
        this_batch_size = min([batch_size, num_candidates - num_done])
        this_coeff_stack = rng_object.standard_normal(
            (this_batch_size, num_points, num_points))

        these_u, these_s, these_vt = numpy.linalg.svd(
            this_coeff_stack - identity_matrix)
        this_coeff_stack = this_coeff_stack - (
            these_s[:, -1, None, None] *
            these_u[:, :, -1][:, :, None] * these_vt[:, -1, :][:, None, :]
        )

        these_singular_values = numlin.batched_singular_values(
            this_coeff_stack)
        these_scores = numpy.sum(
            these_singular_values ** schatten_p, axis=1
        ) ** (1. / schatten_p)

        best_score = min([best_score, float(numpy.min(these_scores))])
        num_done += this_batch_size

    return {
        BEST_SCORE_KEY: best_score,
        NUM_CANDIDATES_KEY: num_done
    }


def _solve_lasso(dictionary_matrix, target_vector, lambda_value,
                 initial_coeffs, step_size):
    """Minimizes 0.5 * ||D c - z||^2 + lambda * ||c||_1 with FISTA.

    :param dictionary_matrix: d-by-K numpy array (D).
    :param target_vector: length-d numpy array (z).
    :param lambda_value: lambda.
    :param initial_coeffs: length-K numpy array (warm start).
    :param step_size: Step size (1 / Lipschitz constant).
    :return: coeffs: length-K numpy array.
    """

    coeffs = initial_coeffs.copy()
    momentum_coeffs = coeffs.copy()
    momentum_weight = 1.

    for _ in range(MAX_LASSO_ITERATIONS):
        this_gradient = numpy.dot(
            dictionary_matrix.T,
            numpy.dot(dictionary_matrix, momentum_coeffs) - target_vector
        )
        new_coeffs = general_utils.soft_threshold(
            momentum_coeffs - step_size * this_gradient,
            step_size * lambda_value)

        new_momentum_weight = 0.5 * (
            1 + numpy.sqrt(1 + 4 * momentum_weight ** 2)
        )
        momentum_coeffs = new_coeffs + (
            (momentum_weight - 1) / new_momentum_weight
        ) * (new_coeffs - coeffs)

        change = numpy.max(numpy.absolute(new_coeffs - coeffs))
        coeffs = new_coeffs
        momentum_weight = new_momentum_weight

        coeff_scale = max([1., numpy.max(numpy.absolute(coeffs))])
        if change <= LASSO_TOLERANCE * coeff_scale:
            break

    return coeffs


def lemma1_min_l1(dictionary_matrix, target_vector):
    """Computes min ||c||_1 subject to z = D c (basis pursuit).

    Uses a homotopy over lambda (1e-2 down to 1e-8) on the lasso, then
    re-fits the final support by least squares so that z = D c holds to
    1e-8.  For columns of equal norm, the result is 1 iff D contains z or -z
    and > 1 otherwise.

    :param dictionary_matrix: d-by-K numpy array (D).
    :param target_vector: length-d numpy array (z).
    :return: min_l1: Minimum l1 norm, or inf if z is not in the span of D.
    """

    error_checking.assert_is_matrix(dictionary_matrix)
    error_checking.assert_is_numpy_array(
        target_vector,
        exact_dimensions=numpy.array([dictionary_matrix.shape[0]]))
    error_checking.assert_is_finite_numpy_array(target_vector)

    num_columns = dictionary_matrix.shape[1]
    lipschitz_constant = numlin.largest_eigenvalue(
        numpy.dot(dictionary_matrix.T, dictionary_matrix))
    if lipschitz_constant <= 0:
        return 0. if numpy.all(target_vector == 0) else numpy.inf

    step_size = 1. / lipschitz_constant
    scale = max([1., float(numpy.linalg.norm(target_vector))])
    coeffs = numpy.zeros(num_columns)

    for this_lambda in HOMOTOPY_LAMBDAS:
        coeffs = _solve_lasso(
            dictionary_matrix, target_vector, this_lambda * scale, coeffs,
            step_size)

    candidate_l1_norms = []

    if numpy.any(coeffs != 0):
        support_flags = (
            numpy.absolute(coeffs) >
            SUPPORT_TOLERANCE * numpy.max(numpy.absolute(coeffs))
        )
        polished_coeffs = numpy.zeros(num_columns)
        polished_coeffs[support_flags] = numpy.dot(
            numpy.linalg.pinv(dictionary_matrix[:, support_flags]),
            target_vector)

        for this_coeffs in [polished_coeffs, coeffs]:
            this_residual = numpy.linalg.norm(
                numpy.dot(dictionary_matrix, this_coeffs) - target_vector)
            if this_residual <= BASIS_PURSUIT_TOLERANCE * scale:
                candidate_l1_norms.append(
                    float(numpy.sum(numpy.absolute(this_coeffs))))

    elif numpy.linalg.norm(target_vector) <= BASIS_PURSUIT_TOLERANCE:
        candidate_l1_norms.append(0.)

    if len(candidate_l1_norms) == 0:
        LOGGER.debug('Target vector is not in the span of the dictionary.')
        return numpy.inf

    return min(candidate_l1_norms)


def _pair_distance_matrix(embedding_matrix):
    """Finds min over signs of ||Z_i -/+ Z_j|| for every pair of columns.

    :param embedding_matrix: d-by-N numpy array.
    :return: distance_matrix: N-by-N numpy array, with inf on the diagonal.
    """

    gram_matrix = numpy.dot(embedding_matrix.T, embedding_matrix)
    squared_norms = numpy.diag(gram_matrix)

    squared_distance_matrix = (
        squared_norms[:, None] + squared_norms[None, :] -
        2 * numpy.absolute(gram_matrix)
    )
    distance_matrix = numpy.sqrt(numpy.maximum(squared_distance_matrix, 0.))
    numpy.fill_diagonal(distance_matrix, numpy.inf)
    return distance_matrix


def thm4_check(embedding_matrix, coeff_matrix, tau, tolerance):
    """Checks the paired-duplicate structure of instance-normalized optima.

    Passes iff, for every column i: ||Z_i||^2 is within tolerance of tau; some
    other column equals +/- Z_i within tolerance * sqrt(tau); ||C_i||_1 lies in
    [1 - tolerance, 1 + tolerance]; and every j with |C_ji| > tolerance has
    Z_j = +/- Z_i within tolerance * sqrt(tau).

    :param embedding_matrix: d-by-N numpy array (Z).
    :param coeff_matrix: N-by-N numpy array (C).
    :param tau: Norm budget.
    :param tolerance: Tolerance.
    :return: is_degenerate: Boolean flag.
    :return: report_table: pandas DataFrame with one row per column and the
        following columns: "column", "norm_sq", "norm_ok", "duplicate_index",
        "has_duplicate", "l1_norm", "l1_ok", "support_ok", "passed".
    """

    error_checking.assert_is_matrix(embedding_matrix)
    num_points = embedding_matrix.shape[1]
    error_checking.assert_is_matrix(
        coeff_matrix, num_rows=num_points, num_columns=num_points)
    error_checking.assert_is_greater(tau, 0.)
    error_checking.assert_is_greater(tolerance, 0.)

    distance_tolerance = tolerance * numpy.sqrt(tau)
    distance_matrix = _pair_distance_matrix(embedding_matrix)
    squared_norms = numpy.sum(embedding_matrix ** 2, axis=0)
    l1_norms = numpy.sum(numpy.absolute(coeff_matrix), axis=0)

    duplicate_indices = numpy.argmin(distance_matrix, axis=1)
    has_duplicate = (
        distance_matrix[numpy.arange(num_points), duplicate_indices] <=
        distance_tolerance
    )

    numpy.fill_diagonal(distance_matrix, 0.)
    support_ok = numpy.all(
        numpy.logical_or(
            numpy.absolute(coeff_matrix) <= tolerance,
            distance_matrix <= distance_tolerance
        ),
        axis=0
    )

    report_table = pandas.DataFrame({
        'column': numpy.arange(num_points),
        'norm_sq': squared_norms,
        'norm_ok': numpy.absolute(squared_norms - tau) <= tolerance,
        'duplicate_index': duplicate_indices,
        'has_duplicate': has_duplicate,
        'l1_norm': l1_norms,
        'l1_ok': numpy.absolute(l1_norms - 1.) <= tolerance,
        'support_ok': support_ok
    })
    report_table['passed'] = (
        report_table['norm_ok'] & report_table['has_duplicate'] &
        report_table['l1_ok'] & report_table['support_ok']
    )

    return bool(report_table['passed'].all()), report_table


def degeneracy_metrics(embedding_matrix, coeff_matrix):
    """Computes scalar measures of collapse.

    :param embedding_matrix: d-by-N numpy array (Z).
    :param coeff_matrix: N-by-N numpy array (C).
    :return: metric_dict: Dictionary with the following keys.
    metric_dict['norm_concentration']: Fraction of sum_i ||Z_i||^2 carried by
        the two largest columns.
    metric_dict['top1_sv_ratio']: sigma_1^2 / sum_i sigma_i^2 for Z.
    metric_dict['min_pair_gap']: min over nonzero columns i of
        min_{j != i, sign} ||Z_i -/+ Z_j|| / ||Z_i||.
    metric_dict['c_top2_mass']: Fraction of ||C||_1 carried by the two
        largest entries of |C| (0 if C = 0).
    :raises: ValueError: if Z is all zeros.
    """

    error_checking.assert_is_matrix(embedding_matrix)
    num_points = embedding_matrix.shape[1]
    error_checking.assert_is_matrix(
        coeff_matrix, num_rows=num_points, num_columns=num_points)

    squared_norms = numpy.sum(embedding_matrix ** 2, axis=0)
    total_squared_norm = numpy.sum(squared_norms)
    if total_squared_norm == 0:
        raise ValueError('Embedding is all zeros, so metrics are undefined.')

    norm_concentration = float(
        numpy.sum(numpy.sort(squared_norms)[-2:]) / total_squared_norm)

    singular_values = numlin.svd(embedding_matrix)[numlin.SINGULAR_VALUES_KEY]
    top1_sv_ratio = float(
        singular_values[0] ** 2 / numpy.sum(singular_values ** 2))

    nonzero_flags = squared_norms > 0
    if num_points < 2:
        min_pair_gap = 0.
    else:
        distance_matrix = _pair_distance_matrix(embedding_matrix)
        min_pair_gap = float(numpy.min(
            numpy.min(distance_matrix[nonzero_flags, :], axis=1) /
            numpy.sqrt(squared_norms[nonzero_flags])
        ))

    absolute_coeffs = numpy.absolute(coeff_matrix).ravel()
    total_coeff_mass = numpy.sum(absolute_coeffs)
    if total_coeff_mass == 0:
        c_top2_mass = 0.
    else:
        c_top2_mass = float(
            numpy.sum(numpy.sort(absolute_coeffs)[-2:]) / total_coeff_mass)

    return {
        NORM_CONCENTRATION_KEY: min([norm_concentration, 1.]),
        TOP1_SV_RATIO_KEY: min([top1_sv_ratio, 1.]),
        MIN_PAIR_GAP_KEY: min_pair_gap,
        C_TOP2_MASS_KEY: min([c_top2_mass, 1.])
    }


def thm2_structure_check(embedding_matrix, max_norm_fraction=0.05,
                         min_cosine=0.999):
    """Checks whether a trained embedding has collapsed onto two points.

    :param embedding_matrix: d-by-N numpy array (Z).
    :param max_norm_fraction: All columns other than the two largest must have
        norm <= this fraction of the largest norm.
    :param min_cosine: The two largest columns must have |cosine| >= this.
    :return: passed: Boolean flag.
    :return: detail_dict: Dictionary with keys "max_other_norm_ratio",
        "second_norm_ratio", "survivor_cosine".
    """

    error_checking.assert_is_matrix(embedding_matrix)
    error_checking.assert_is_geq(embedding_matrix.shape[1], 2)

    column_norms = numpy.linalg.norm(embedding_matrix, axis=0)
    sort_indices = numpy.argsort(-column_norms, kind='stable')
    largest_norm = column_norms[sort_indices[0]]
    if largest_norm == 0:
        raise ValueError('Embedding is all zeros.')

    if embedding_matrix.shape[1] > 2:
        max_other_norm_ratio = float(
            column_norms[sort_indices[2]] / largest_norm)
    else:
        max_other_norm_ratio = 0.

    second_norm = column_norms[sort_indices[1]]
    if second_norm == 0:
        survivor_cosine = 0.
    else:
        survivor_cosine = float(numpy.absolute(numpy.dot(
            embedding_matrix[:, sort_indices[0]],
            embedding_matrix[:, sort_indices[1]]
        )) / (largest_norm * second_norm))

    passed = (
        max_other_norm_ratio <= max_norm_fraction and
        survivor_cosine >= min_cosine
    )

    return passed, {
        MAX_OTHER_NORM_RATIO_KEY: max_other_norm_ratio,
        SECOND_NORM_RATIO_KEY: float(second_norm / largest_norm),
        SURVIVOR_COSINE_KEY: survivor_cosine
    }


def instance_pairing_check(embedding_matrix, coeff_matrix, tau,
                           duplicate_tolerance=0.05, l1_band=(0.8, 1.2),
                           min_fraction=0.9):
    """Relaxed version of `thm4_check` for trained models.

    :param embedding_matrix: d-by-N numpy array (Z).
    :param coeff_matrix: N-by-N numpy array (C).
    :param tau: Norm budget.
    :param duplicate_tolerance: A column has a near-duplicate if some other
        column equals +/- it within duplicate_tolerance * sqrt(tau).
    :param l1_band: Length-2 tuple with allowed range of ||C_i||_1.
    :param min_fraction: Min fraction of columns that must pass each test.
    :return: passed: Boolean flag.
    :return: detail_dict: Dictionary with keys "duplicate_fraction" and
        "l1_band_fraction".
    """

    error_checking.assert_is_matrix(embedding_matrix)
    num_points = embedding_matrix.shape[1]
    error_checking.assert_is_matrix(
        coeff_matrix, num_rows=num_points, num_columns=num_points)
    error_checking.assert_is_greater(tau, 0.)

    distance_matrix = _pair_distance_matrix(embedding_matrix)
    duplicate_fraction = float(numpy.mean(
        numpy.min(distance_matrix, axis=1) <=
        duplicate_tolerance * numpy.sqrt(tau)
    ))

    l1_norms = numpy.sum(numpy.absolute(coeff_matrix), axis=0)
    l1_band_fraction = float(numpy.mean(numpy.logical_and(
        l1_norms >= l1_band[0], l1_norms <= l1_band[1]
    )))

    passed = (
        duplicate_fraction >= min_fraction and l1_band_fraction >= min_fraction
    )

    return passed, {
        DUPLICATE_FRACTION_KEY: duplicate_fraction,
        L1_BAND_FRACTION_KEY: l1_band_fraction
    }
