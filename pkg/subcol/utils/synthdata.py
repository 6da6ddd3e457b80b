"""Synthetic datasets and the matrix-file format.

Matrix file format:

- Line 1: "rows,cols" (two positive integers).
- Then one line per matrix row, with comma-separated values written to 17
  significant digits, which makes the write-read round trip bit-exact.

Label files have one integer cluster ID per line.
"""

import numpy
import scipy.linalg
from subcol.utils import numlin
from subcol.utils import file_system_utils
from subcol.utils import error_checking

DATA_MATRIX_KEY = 'data_matrix'
LABELS_KEY = 'labels'
DESCRIPTION_KEY = 'description'

DEFAULT_POINTS_PER_PARABOLA = 50
FLOAT_FORMAT_STRING = '%.17g'
DEFAULT_MAX_NUM_TRIES = 1000


def _create_dataset(data_matrix, labels, description_string):
    """Creates labeled dataset.

    d = number of dimensions
    N = number of points

    :param data_matrix: d-by-N numpy array.
    :param labels: length-N numpy array of integer cluster IDs.
    :param description_string: Human-readable description.
    :return: dataset_dict: Dictionary with keys listed at top of module.
    """

    return {
        DATA_MATRIX_KEY: data_matrix,
        LABELS_KEY: labels.astype(int),
        DESCRIPTION_KEY: description_string
    }


def check_dataset(dataset_dict):
    """Error-checks labeled dataset.

    :param dataset_dict: Dictionary created by a generator in this module.
    :raises: ValueError: if labels are not contiguous from 0.
    """

    data_matrix = dataset_dict[DATA_MATRIX_KEY]
    labels = dataset_dict[LABELS_KEY]

    error_checking.assert_is_matrix(data_matrix)
    error_checking.assert_is_numpy_array(
        labels, exact_dimensions=numpy.array([data_matrix.shape[1]]))

    unique_labels = numpy.unique(labels)
    if not numpy.array_equal(
            unique_labels, numpy.arange(len(unique_labels))
    ):
        error_string = (
            'Cluster IDs should be contiguous from 0.  Got {0:s}.'
        ).format(str(unique_labels))

        raise ValueError(error_string)


def gen_two_parabolas(num_points_per_parabola=DEFAULT_POINTS_PER_PARABOLA,
                      noise_stdev=0., seed=0):
    """Generates points on two parabolas.

    Cluster 0 lies on x_2 = x_1^2 and cluster 1 on x_2 = 1 - x_1^2, with x_1
    uniform on [-1, 1].  Points are ordered by cluster.

    :param num_points_per_parabola: Number of points per parabola.
    :param noise_stdev: Standard deviation of additive Gaussian noise.
    :param seed: Random seed.
    :return: dataset_dict: See doc for `check_dataset`.
    """

    error_checking.assert_is_integer(num_points_per_parabola)
    error_checking.assert_is_geq(num_points_per_parabola, 1)
    error_checking.assert_is_geq(noise_stdev, 0.)

    generator_object = numlin.create_rng(seed)
    first_abscissas = generator_object.uniform(
        -1., 1., size=num_points_per_parabola)
    second_abscissas = generator_object.uniform(
        -1., 1., size=num_points_per_parabola)

    data_matrix = numpy.hstack((
        numpy.vstack((first_abscissas, numpy.square(first_abscissas))),
        numpy.vstack((second_abscissas, 1. - numpy.square(second_abscissas)))
    ))

    if noise_stdev > 0:
        data_matrix = data_matrix + generator_object.normal(
            0., noise_stdev, size=data_matrix.shape)

    labels = numpy.concatenate((
        numpy.zeros(num_points_per_parabola, dtype=int),
        numpy.ones(num_points_per_parabola, dtype=int)
    ))

    description_string = (
        'Two parabolas, {0:d} points each, noise stdev = {1:.4g}, seed = {2:d}'
    ).format(num_points_per_parabola, noise_stdev, seed)

    return _create_dataset(data_matrix, labels, description_string)


def min_principal_angle_deg(first_basis_matrix, second_basis_matrix):
    """Returns smallest principal angle between two subspaces.

    :param first_basis_matrix: D-by-k numpy array whose columns span the first
        subspace.
    :param second_basis_matrix: D-by-k numpy array for the second subspace.
    :return: angle_deg: Smallest principal angle (degrees).
    """

    return float(numpy.rad2deg(numpy.min(
        scipy.linalg.subspace_angles(first_basis_matrix, second_basis_matrix)
    )))


def gen_union_subspaces(
        ambient_dim, subspace_dim, num_subspaces, num_points_per_subspace,
        min_angle_deg=0., noise_stdev=0., seed=0,
        max_num_tries=DEFAULT_MAX_NUM_TRIES):
    """Generates unit-norm points on a union of random linear subspaces.

    D = ambient dimension
    k = subspace dimension
    K = number of subspaces

    :param ambient_dim: D in the above discussion.
    :param subspace_dim: k in the above discussion (must be < D).
    :param num_subspaces: K in the above discussion.
    :param num_points_per_subspace: Number of points per subspace.
    :param min_angle_deg: Minimum smallest-principal-angle between any two
        subspaces.  Subspaces are drawn by rejection sampling.
    :param noise_stdev: Standard deviation of additive Gaussian noise.
    :param seed: Random seed.
    :param max_num_tries: Max number of draws (over all subspaces) before
        giving up.
    :return: dataset_dict: See doc for `check_dataset`.  The dictionary also
        contains the key "basis_matrices", a list of K numpy arrays (each
        D-by-k with orthonormal columns).
    :raises: ValueError: if rejection sampling exceeds `max_num_tries`.
    """

    error_checking.assert_is_integer(ambient_dim)
    error_checking.assert_is_integer(subspace_dim)
    error_checking.assert_is_greater(subspace_dim, 0)
    error_checking.assert_is_less_than(subspace_dim, ambient_dim)
    error_checking.assert_is_integer(num_subspaces)
    error_checking.assert_is_geq(num_subspaces, 1)
    error_checking.assert_is_integer(num_points_per_subspace)
    error_checking.assert_is_geq(num_points_per_subspace, 1)
    error_checking.assert_is_geq(min_angle_deg, 0.)
    error_checking.assert_is_leq(min_angle_deg, 90.)
    error_checking.assert_is_geq(noise_stdev, 0.)

    generator_object = numlin.create_rng(seed)
    basis_matrices = []
    num_tries = 0

    while len(basis_matrices) < num_subspaces:
        if num_tries >= max_num_tries:
            error_string = (
                'Could not draw {0:d} subspaces with pairwise angles >= '
                '{1:.2f} deg in {2:d} tries.  Try a smaller minimum angle.'
            ).format(num_subspaces, min_angle_deg, max_num_tries)

            raise ValueError(error_string)

        num_tries += 1
        this_basis_matrix = numpy.linalg.qr(
            generator_object.standard_normal((ambient_dim, subspace_dim))
        )[0]

        if all([
                min_principal_angle_deg(this_basis_matrix, b) >= min_angle_deg
                for b in basis_matrices
        ]):
            basis_matrices.append(this_basis_matrix)

    point_matrices = []
    for this_basis_matrix in basis_matrices:
        these_coefficients = generator_object.standard_normal(
            (subspace_dim, num_points_per_subspace))
        these_coefficients = these_coefficients / numpy.linalg.norm(
            these_coefficients, axis=0, keepdims=True)

        point_matrices.append(numpy.dot(this_basis_matrix, these_coefficients))

    data_matrix = numpy.hstack(point_matrices)
    if noise_stdev > 0:
        data_matrix = data_matrix + generator_object.normal(
            0., noise_stdev, size=data_matrix.shape)

    labels = numpy.repeat(
        numpy.arange(num_subspaces, dtype=int), num_points_per_subspace)

    description_string = (
        '{0:d} subspaces of dimension {1:d} in R^{2:d}, {3:d} points each, '
        'noise stdev = {4:.4g}, seed = {5:d}'
    ).format(num_subspaces, subspace_dim, ambient_dim,
             num_points_per_subspace, noise_stdev, seed)

    dataset_dict = _create_dataset(data_matrix, labels, description_string)
    dataset_dict['basis_matrices'] = basis_matrices
    return dataset_dict


def write_matrix(matrix_file_name, data_matrix):
    """Writes matrix to CSV file.

    :param matrix_file_name: Path to output file.
    :param data_matrix: 2-D numpy array of finite values.
    """

    error_checking.assert_is_matrix(data_matrix)
    file_system_utils.mkdir_recursive_if_necessary(file_name=matrix_file_name)

    numpy.savetxt(
        matrix_file_name, data_matrix, fmt=FLOAT_FORMAT_STRING, delimiter=',',
        header='{0:d},{1:d}'.format(*data_matrix.shape), comments='')


def _parse_token(token_string, line_number):
    """Parses one value from a matrix file.

    :param token_string: Text of token.
    :param line_number: Line number (used only in error messages).
    :return: value: Finite float.
    :raises: UnparsableTokenError: if token is not a number or is NaN.
    :raises: OverflowParseError: if token overflows to infinity.
    """

    try:
        value = float(token_string)
    except ValueError:
        raise error_checking.UnparsableTokenError(
            'Cannot parse "{0:s}" on line {1:d}.'.format(
                token_string.strip(), line_number)
        )

    if numpy.isnan(value):
        raise error_checking.UnparsableTokenError(
            'Token "{0:s}" on line {1:d} is NaN.'.format(
                token_string.strip(), line_number)
        )

    if numpy.isinf(value):
        raise error_checking.OverflowParseError(
            'Token "{0:s}" on line {1:d} is outside the double range.'.format(
                token_string.strip(), line_number)
        )

    return value


def parse_shape_header(header_string):
    """Parses "rows,cols" header.

    :param header_string: Header text.
    :return: num_rows: Number of rows.
    :return: num_columns: Number of columns.
    :raises: MalformedHeaderError: if header is not two positive integers.
    """

    try:
        num_rows, num_columns = [int(p) for p in header_string.split(',')]
    except ValueError:
        raise error_checking.MalformedHeaderError(
            'Header "{0:s}" is not "rows,cols".'.format(header_string))

    if num_rows < 1 or num_columns < 1:
        raise error_checking.MalformedHeaderError(
            'Header "{0:s}" has non-positive dimensions.'.format(
                header_string)
        )

    return num_rows, num_columns


def parse_value_lines(value_lines, num_rows, num_columns, line_numbers=None):
    """Parses lines of comma-separated values into a matrix.

    :param value_lines: 1-D list of strings (one per matrix row).
    :param num_rows: Expected number of rows.
    :param num_columns: Expected number of columns.
    :param line_numbers: 1-D list with line number of each value line in the
        file (used only in error messages).  If None, lines are numbered
        consecutively from 2.
    :return: data_matrix: num_rows-by-num_columns numpy array.
    :raises: CountMismatchError: if number of values does not match.
    :raises: UnparsableTokenError: if a value cannot be parsed.
    :raises: OverflowParseError: if a value overflows.
    """

    if line_numbers is None:
        line_numbers = list(range(2, len(value_lines) + 2))

    error_checking.assert_is_numpy_array(
        numpy.array(line_numbers),
        exact_dimensions=numpy.array([len(value_lines)], dtype=int))

    token_lists = [s.split(',') for s in value_lines]
    num_values = sum([len(t) for t in token_lists])

    if (len(value_lines) != num_rows or
            any([len(t) != num_columns for t in token_lists])):
        error_string = (
            'Expected {0:d} x {1:d} ({2:d} values), but found {3:d} rows and '
            '{4:d} values.'
        ).format(num_rows, num_columns, num_rows * num_columns,
                 len(value_lines), num_values)

        raise error_checking.CountMismatchError(error_string)

    data_matrix = numpy.full((num_rows, num_columns), numpy.nan)
    for i in range(num_rows):
        for j in range(num_columns):
            data_matrix[i, j] = _parse_token(
                token_lists[i][j], line_numbers[i])

    return data_matrix


def read_matrix(matrix_file_name):
    """Reads matrix from CSV file.

    :param matrix_file_name: Path to input file.
    :return: data_matrix: 2-D numpy array.
    :raises: MalformedHeaderError: if header is not "rows,cols".
    :raises: CountMismatchError: if number of values does not match header.
    :raises: UnparsableTokenError: if a value cannot be parsed.
    :raises: OverflowParseError: if a value overflows.
    """

    error_checking.assert_file_exists(matrix_file_name)

    with open(matrix_file_name, 'r') as matrix_file_handle:
        line_strings = [
            s.strip() for s in matrix_file_handle.read().splitlines()
        ]

    line_numbers = [i + 1 for i, s in enumerate(line_strings) if s != '']
    line_strings = [s for s in line_strings if s != '']
    if len(line_strings) == 0:
        raise error_checking.MalformedHeaderError(
            'File "{0:s}" is empty.'.format(matrix_file_name))

    num_rows, num_columns = parse_shape_header(line_strings[0])
    return parse_value_lines(
        value_lines=line_strings[1:], num_rows=num_rows,
        num_columns=num_columns, line_numbers=line_numbers[1:])


def write_labels(label_file_name, labels):
    """Writes cluster labels to file (one integer per line).

    :param label_file_name: Path to output file.
    :param labels: 1-D numpy array of integers.
    """

    error_checking.assert_is_numpy_array(labels, num_dimensions=1)
    file_system_utils.mkdir_recursive_if_necessary(file_name=label_file_name)
    numpy.savetxt(label_file_name, labels.astype(int), fmt='%d')


def read_labels(label_file_name):
    """Reads cluster labels from file.

    :param label_file_name: Path to input file.
    :return: labels: 1-D numpy array of integers.
    :raises: UnparsableTokenError: if a line is not an integer.
    """

    error_checking.assert_file_exists(label_file_name)

    with open(label_file_name, 'r') as label_file_handle:
        line_strings = [
            s.strip() for s in label_file_handle.read().splitlines()
        ]

    labels = []
    for line_number, this_string in enumerate(line_strings, start=1):
        if this_string == '':
            continue

        try:
            labels.append(int(this_string))
        except ValueError:
            raise error_checking.UnparsableTokenError(
                'Label "{0:s}" on line {1:d} is not an integer.'.format(
                    this_string, line_number)
            )

    return numpy.array(labels, dtype=int)
