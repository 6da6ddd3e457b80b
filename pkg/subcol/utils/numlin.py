"""Dense linear algebra for small matrices (up to a few hundred rows).

The SVD is one-sided (Hestenes) Jacobi, so that results are deterministic and
accurate to machine precision at these sizes.  Outputs are canonical: singular
values sorted in descending order, and the first nonzero entry of each left
singular vector made non-negative.
"""

import logging
import numpy
import scipy.linalg
from subcol.utils import error_checking

LOGGER = logging.getLogger(__name__)

MACHINE_EPSILON = numpy.finfo(float).eps
MAX_NUM_SWEEPS = 60
ROTATION_TOLERANCE_FACTOR = 10.
DEFAULT_MULTIPLICITY_TOLERANCE = 1e-8
SYMMETRY_TOLERANCE = 1e-10
SIGN_TOLERANCE = 1e-12

LEFT_VECTORS_KEY = 'u'
SINGULAR_VALUES_KEY = 's'
RIGHT_VECTORS_TRANSPOSED_KEY = 'vt'


def _round_robin_schedule(num_columns):
    """Creates round-robin schedule of column pairs.

    Within each round, pairs are disjoint, so all rotations in a round can be
    applied at once.  Over all rounds, every pair (i, j) with i < j appears
    exactly once.

    :param num_columns: Number of columns.
    :return: round_list: List of tuples (first_indices, second_indices), each
        containing two 1-D numpy arrays of equal length with
        first_indices < second_indices elementwise.
    """

    player_indices = list(range(num_columns))
    if num_columns % 2 == 1:
        player_indices.append(-1)

    num_players = len(player_indices)
    round_list = []

    for _ in range(num_players - 1):
        first_indices = []
        second_indices = []

        for k in range(num_players // 2):
            i = player_indices[k]
            j = player_indices[num_players - 1 - k]
            if i < 0 or j < 0:
                continue

            first_indices.append(min([i, j]))
            second_indices.append(max([i, j]))

        round_list.append((
            numpy.array(first_indices, dtype=int),
            numpy.array(second_indices, dtype=int)
        ))

        player_indices = (
            [player_indices[0], player_indices[-1]] + player_indices[1:-1]
        )

    return round_list


def _jacobi_sweeps(work_matrix):
    """Runs Jacobi sweeps until columns are mutually orthogonal.

    M = number of rows
    N = number of columns

    :param work_matrix: M-by-N numpy array (M >= N).  Will be modified in
        place; on output, columns are orthogonal.
    :return: rotation_matrix: N-by-N orthogonal matrix V, such that
        input_matrix * V = output work matrix.
    :raises: NumericalError: if columns are not orthogonal after
        `MAX_NUM_SWEEPS` sweeps.
    """

    num_rows, num_columns = work_matrix.shape
    rotation_matrix = numpy.eye(num_columns)
    if num_columns < 2:
        return rotation_matrix

    round_list = _round_robin_schedule(num_columns)
    rotation_tolerance = (
        ROTATION_TOLERANCE_FACTOR * MACHINE_EPSILON * num_rows
    )
    negligible_norm_squared = (
        MACHINE_EPSILON * numpy.linalg.norm(work_matrix)
    ) ** 2

    for sweep_index in range(MAX_NUM_SWEEPS):
        num_rotations = 0

        for first_indices, second_indices in round_list:
            first_columns = work_matrix[:, first_indices]
            second_columns = work_matrix[:, second_indices]

            alphas = numpy.sum(first_columns ** 2, axis=0)
            betas = numpy.sum(second_columns ** 2, axis=0)
            gammas = numpy.sum(first_columns * second_columns, axis=0)

            rotate_flags = numpy.logical_and(
                numpy.absolute(gammas) >
                rotation_tolerance * numpy.sqrt(alphas * betas),
                numpy.minimum(alphas, betas) > negligible_norm_squared
            )
            if not numpy.any(rotate_flags):
                continue

            num_rotations += numpy.sum(rotate_flags)
            safe_gammas = numpy.where(rotate_flags, gammas, 1.)
            zetas = (betas - alphas) / (2 * safe_gammas)
            signs = numpy.where(zetas >= 0, 1., -1.)
            tangents = signs / (
                numpy.absolute(zetas) + numpy.sqrt(1. + zetas ** 2)
            )

            cosines = numpy.where(
                rotate_flags, 1. / numpy.sqrt(1. + tangents ** 2), 1.)
            sines = numpy.where(rotate_flags, cosines * tangents, 0.)

            work_matrix[:, first_indices] = (
                cosines * first_columns - sines * second_columns
            )
            work_matrix[:, second_indices] = (
                sines * first_columns + cosines * second_columns
            )

            first_rotations = rotation_matrix[:, first_indices]
            second_rotations = rotation_matrix[:, second_indices]
            rotation_matrix[:, first_indices] = (
                cosines * first_rotations - sines * second_rotations
            )
            rotation_matrix[:, second_indices] = (
                sines * first_rotations + cosines * second_rotations
            )

        LOGGER.debug('Jacobi sweep {0:d}: {1:d} rotations.'.format(
            sweep_index + 1, int(num_rotations)))

        if num_rotations == 0:
            return rotation_matrix

    raise error_checking.NumericalError(
        'One-sided Jacobi SVD did not converge in {0:d} sweeps.'.format(
            MAX_NUM_SWEEPS)
    )


def _complete_orthonormal_columns(basis_matrix, missing_flags):
    """Fills missing columns so that the whole matrix is orthonormal.

    Each missing column is the standard basis vector with the largest residual
    after projecting out the columns already filled, then normalized.

    :param basis_matrix: M-by-K numpy array.  Columns not flagged as missing
        must be orthonormal.
    :param missing_flags: length-K numpy array of Boolean flags.
    :return: basis_matrix: Same as input but with missing columns filled.
    """

    num_rows = basis_matrix.shape[0]
    filled_indices = numpy.where(numpy.invert(missing_flags))[0].tolist()

    for k in numpy.where(missing_flags)[0]:
        filled_matrix = basis_matrix[:, filled_indices]
        residual_matrix = numpy.eye(num_rows)

        for _ in range(2):
            residual_matrix = residual_matrix - numpy.dot(
                filled_matrix, numpy.dot(filled_matrix.T, residual_matrix))

        residual_norms = numpy.sqrt(numpy.sum(residual_matrix ** 2, axis=0))
        best_index = int(numpy.argmax(residual_norms))

        basis_matrix[:, k] = (
            residual_matrix[:, best_index] / residual_norms[best_index]
        )
        filled_indices.append(k)

    return basis_matrix


def create_rng(seed):
    """Creates seeded random-number generator.

    The bit generator is PCG64, whose streams are identical across platforms
    for a given seed.

    :param seed: Non-negative integer.
    :return: generator_object: Instance of `numpy.random.Generator`.
    """

    error_checking.assert_is_integer(seed)
    error_checking.assert_is_geq(seed, 0)

    return numpy.random.Generator(numpy.random.PCG64(seed))


def svd(input_matrix):
    """Computes economy-size singular-value decomposition.

    M = number of rows
    N = number of columns
    K = min(M, N)

    :param input_matrix: M-by-N numpy array of finite values.
    :return: svd_dict: Dictionary with the following keys.
    svd_dict['u']: M-by-K numpy array with orthonormal columns.
    svd_dict['s']: length-K numpy array of singular values, sorted in
        descending order.
    svd_dict['vt']: K-by-N numpy array with orthonormal rows.
    :raises: NumericalError: if Jacobi iterations do not converge.
    """

    error_checking.assert_is_matrix(input_matrix)
    num_rows, num_columns = input_matrix.shape
    error_checking.assert_is_geq(min([num_rows, num_columns]), 1)

    if num_rows < num_columns:
        transposed_dict = svd(numpy.transpose(input_matrix))
        return _canonicalize_signs({
            LEFT_VECTORS_KEY: transposed_dict[RIGHT_VECTORS_TRANSPOSED_KEY].T,
            SINGULAR_VALUES_KEY: transposed_dict[SINGULAR_VALUES_KEY],
            RIGHT_VECTORS_TRANSPOSED_KEY: transposed_dict[LEFT_VECTORS_KEY].T
        })

    work_matrix = numpy.array(input_matrix, dtype=float)
    rotation_matrix = _jacobi_sweeps(work_matrix)

    singular_values = numpy.sqrt(numpy.sum(work_matrix ** 2, axis=0))
    sort_indices = numpy.argsort(-singular_values, kind='stable')
    singular_values = singular_values[sort_indices]
    work_matrix = work_matrix[:, sort_indices]
    rotation_matrix = rotation_matrix[:, sort_indices]

    zero_threshold = (
        max([num_rows, num_columns]) * MACHINE_EPSILON * singular_values[0]
    )
    zero_flags = singular_values <= zero_threshold
    singular_values[zero_flags] = 0.

    left_matrix = numpy.zeros(work_matrix.shape)
    nonzero_indices = numpy.where(numpy.invert(zero_flags))[0]
    left_matrix[:, nonzero_indices] = (
        work_matrix[:, nonzero_indices] / singular_values[nonzero_indices]
    )
    left_matrix = _complete_orthonormal_columns(left_matrix, zero_flags)

    return _canonicalize_signs({
        LEFT_VECTORS_KEY: left_matrix,
        SINGULAR_VALUES_KEY: singular_values,
        RIGHT_VECTORS_TRANSPOSED_KEY: numpy.transpose(rotation_matrix)
    })


def _canonicalize_signs(svd_dict):
    """Makes first nonzero entry of each left singular vector non-negative.

    The corresponding right singular vector is flipped too, so the product
    u * diag(s) * vt is unchanged.

    :param svd_dict: See output doc for `svd`.
    :return: svd_dict: Same but with canonical signs.
    """

    left_matrix = svd_dict[LEFT_VECTORS_KEY]
    right_matrix_transposed = svd_dict[RIGHT_VECTORS_TRANSPOSED_KEY]

    for k in range(left_matrix.shape[1]):
        nonzero_indices = numpy.where(
            numpy.absolute(left_matrix[:, k]) > SIGN_TOLERANCE
        )[0]

        if len(nonzero_indices) == 0:
            continue
        if left_matrix[nonzero_indices[0], k] >= 0:
            continue

        left_matrix[:, k] *= -1
        right_matrix_transposed[k, :] *= -1

    return svd_dict


def sigma_min_space(input_matrix, tolerance=DEFAULT_MULTIPLICITY_TOLERANCE):
    """Finds smallest singular value and its left singular subspace.

    If the matrix has more rows than columns, it is padded with zero columns,
    so the extra left null space counts towards the smallest singular value
    (which is then zero).

    M = number of rows
    r = multiplicity of smallest singular value

    :param input_matrix: M-by-N numpy array.
    :param tolerance: Relative tolerance.  A singular value s counts towards
        the multiplicity if s - sigma_min <= tolerance * s_max.
    :return: sigma_min: Smallest singular value.
    :return: multiplicity: r in the above definition.
    :return: basis_matrix: M-by-r numpy array with orthonormal columns,
        spanning the left singular subspace of sigma_min.
    """

    error_checking.assert_is_matrix(input_matrix)
    error_checking.assert_is_greater(tolerance, 0.)

    num_rows, num_columns = input_matrix.shape
    if num_rows > num_columns:
        input_matrix = numpy.hstack((
            input_matrix, numpy.zeros((num_rows, num_rows - num_columns))
        ))

    svd_dict = svd(input_matrix)
    singular_values = svd_dict[SINGULAR_VALUES_KEY]

    sigma_min = singular_values[-1]
    multiplicity = int(numpy.sum(
        singular_values - sigma_min <= tolerance * singular_values[0]
    ))
    basis_matrix = svd_dict[LEFT_VECTORS_KEY][:, -multiplicity:]

    return sigma_min, multiplicity, basis_matrix


def solve_spd(lhs_matrix, rhs_matrix):
    """Solves linear system with symmetric positive-definite matrix.

    N = number of unknowns

    :param lhs_matrix: N-by-N symmetric positive-definite numpy array.
    :param rhs_matrix: numpy array with N rows (1-D or 2-D).
    :return: solution_matrix: numpy array with same shape as `rhs_matrix`.
    :raises: ValueError: if `lhs_matrix` is not symmetric.
    :raises: NotPositiveDefiniteError: if Cholesky factorization fails.
    """

    error_checking.assert_is_square_matrix(lhs_matrix)
    error_checking.assert_is_finite_numpy_array(rhs_matrix)
    if rhs_matrix.shape[0] != lhs_matrix.shape[0]:
        raise TypeError(
            'Right-hand side has {0:d} rows; expected {1:d}.'.format(
                rhs_matrix.shape[0], lhs_matrix.shape[0])
        )

    asymmetry = numpy.max(numpy.absolute(lhs_matrix - lhs_matrix.T))
    if asymmetry > SYMMETRY_TOLERANCE * max([
            numpy.max(numpy.absolute(lhs_matrix)), 1.
    ]):
        raise ValueError(
            'Matrix is not symmetric (max asymmetry = {0:.3e}).'.format(
                asymmetry)
        )

    try:
        factor_tuple = scipy.linalg.cho_factor(lhs_matrix, lower=True)
    except numpy.linalg.LinAlgError as this_error:
        raise error_checking.NotPositiveDefiniteError(
            'Matrix is not positive definite: {0:s}'.format(str(this_error))
        )

    return scipy.linalg.cho_solve(factor_tuple, rhs_matrix)


def symmetric_eigh(input_matrix):
    """Eigendecomposition of symmetric matrix, eigenvalues ascending.

    N = number of rows = number of columns

    :param input_matrix: N-by-N symmetric numpy array.
    :return: eigenvalues: length-N numpy array, sorted in ascending order.
    :return: eigenvector_matrix: N-by-N numpy array, with the [k]th column
        being the unit eigenvector for the [k]th eigenvalue.  The first
        nonzero entry of each column is non-negative.
    """

    error_checking.assert_is_square_matrix(input_matrix)

    eigenvalues, eigenvector_matrix = scipy.linalg.eigh(
        0.5 * (input_matrix + input_matrix.T)
    )

    for k in range(eigenvector_matrix.shape[1]):
        nonzero_indices = numpy.where(
            numpy.absolute(eigenvector_matrix[:, k]) > SIGN_TOLERANCE
        )[0]

        if eigenvector_matrix[nonzero_indices[0], k] < 0:
            eigenvector_matrix[:, k] *= -1

    return eigenvalues, eigenvector_matrix


def largest_eigenvalue(input_matrix):
    """Returns largest eigenvalue of symmetric matrix.

    :param input_matrix: Square symmetric numpy array.
    :return: largest_eigenvalue: Largest eigenvalue.
    """

    error_checking.assert_is_square_matrix(input_matrix)
    num_rows = input_matrix.shape[0]

    return float(scipy.linalg.eigh(
        0.5 * (input_matrix + input_matrix.T), eigvals_only=True,
        subset_by_index=[num_rows - 1, num_rows - 1]
    )[0])


def batched_singular_values(matrix_stack):
    """Singular values for a stack of small matrices.

    Used by random-search checks that score many candidates at once.

    :param matrix_stack: B-by-M-by-N numpy array.
    :return: singular_value_matrix: B-by-min(M, N) numpy array, each row
        sorted in descending order.
    """

    error_checking.assert_is_numpy_array(matrix_stack, num_dimensions=3)
    return numpy.linalg.svd(matrix_stack, compute_uv=False)
