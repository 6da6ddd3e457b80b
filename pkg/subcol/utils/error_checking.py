"""Methods for error-checking.

These methods are designed mainly to check for errors in input arguments.
This module also defines the exceptions raised by the numerical code, the
matrix-file readers and the config layer.
"""

import numbers
import operator
import os.path
import numpy
import pandas

BOOLEAN_TYPES = (bool, numpy.bool_)
REAL_NUMBER_TYPES = (float, numpy.floating, numbers.Integral)

COMPARISON_DICT = {
    '>': operator.gt,
    '>=': operator.ge,
    '<': operator.lt,
    '<=': operator.le
}


class NumericalError(ArithmeticError):
    """Raised when a numerical routine fails (no convergence, blow-up)."""


class NotPositiveDefiniteError(NumericalError):
    """Raised when a matrix that should be SPD fails to factorize."""


class MatrixFormatError(ValueError):
    """Base class for problems in a matrix or label file."""


class MalformedHeaderError(MatrixFormatError):
    """Header line is not `rows,cols` with two positive integers."""


class CountMismatchError(MatrixFormatError):
    """Number of values does not match the header."""


class UnparsableTokenError(MatrixFormatError):
    """A token cannot be parsed as a finite real number."""


class OverflowParseError(MatrixFormatError):
    """A token parses to a value outside the double range."""


class ConfigValidationError(ValueError):
    """Experiment config has an unknown key or an invalid value.

    :ivar key_name: Dotted name of the offending key (e.g., "training.seed").
    """

    def __init__(self, key_name, message):
        self.key_name = key_name
        super(ConfigValidationError, self).__init__(
            'Config key "{0:s}": {1:s}'.format(key_name, message)
        )


def _shown_above(input_variable, problem_string):
    """Creates error message that prints the offending variable first.

    :param input_variable: Offending variable.
    :param problem_string: Description of problem (completes the sentence
        "Input variable (shown above) ...").
    :return: error_string: Error message.
    """

    return '\n{0:s}\nInput variable (shown above) {1:s}'.format(
        str(input_variable), problem_string)


def assert_columns_in_dataframe(input_table, column_names):
    """Input variable must be pandas DataFrame with given columns.

    :param input_table: pandas DataFrame.
    :param column_names: 1-D list with names of desired columns.
    :raises: TypeError: input is not pandas DataFrame.
    :raises: KeyError: input_table is missing any of the desired columns.
    """

    if not isinstance(input_table, pandas.DataFrame):
        raise TypeError(_shown_above(
            input_table, 'is not a pandas DataFrame.'))

    missing_column_names = [
        c for c in column_names if c not in input_table.columns
    ]

    if len(missing_column_names) > 0:
        error_string = 'Table is missing columns: {0:s}'.format(
            str(missing_column_names))
        raise KeyError(error_string)


def assert_is_string(input_variable):
    """Input variable must be string.

    :param input_variable: Input variable.
    :raises: TypeError: if input variable is not string.
    """

    if not isinstance(input_variable, str):
        raise TypeError(_shown_above(input_variable, 'is not a string.'))


def assert_is_string_in_set(input_variable, allowed_strings):
    """Input variable must be one of a few allowed strings.

    :param input_variable: Input variable.
    :param allowed_strings: 1-D list of allowed strings.
    :raises: ValueError: if input variable is not in `allowed_strings`.
    """

    assert_is_string(input_variable)
    if input_variable not in allowed_strings:
        error_string = (
            '"{0:s}" is not a valid choice.  Valid choices are listed below:'
            '\n{1:s}'
        ).format(input_variable, str(list(allowed_strings)))

        raise ValueError(error_string)


def assert_file_exists(file_name):
    """Input variable must be name of existent file.

    :param file_name: File name.
    :raises: FileNotFoundError: if file does not exist.
    """

    assert_is_string(file_name)
    if not os.path.isfile(file_name):
        raise FileNotFoundError(
            'File ("{0:s}") does not exist.'.format(file_name))


def assert_is_integer(input_variable):
    """Input variable must be integer.

    :param input_variable: Input variable.
    :raises: TypeError: if input variable is not integer.
    """

    if (isinstance(input_variable, BOOLEAN_TYPES) or
            not isinstance(input_variable, numbers.Integral)):
        raise TypeError(_shown_above(input_variable, 'is not integer.'))


def assert_is_boolean(input_variable):
    """Input variable must be Boolean.

    :param input_variable: Input variable.
    :raises: TypeError: if input variable is not Boolean.
    """

    if not isinstance(input_variable, BOOLEAN_TYPES):
        raise TypeError(_shown_above(input_variable, 'is not Boolean.'))


def assert_is_real_number(input_variable):
    """Input variable must be real number.

    :param input_variable: Input variable.
    :raises: TypeError: if input variable is not real number.
    """

    if (isinstance(input_variable, BOOLEAN_TYPES) or
            not isinstance(input_variable, REAL_NUMBER_TYPES)):
        raise TypeError(_shown_above(input_variable, 'is not real number.'))


def assert_is_not_nan(input_variable):
    """Input variable must be real number and not NaN.

    :param input_variable: Input variable.
    :raises: ValueError: if input variable is NaN.
    """

    assert_is_real_number(input_variable)
    if numpy.isnan(float(input_variable)):
        raise ValueError('Input variable is NaN.')


def assert_is_numpy_array(input_variable, num_dimensions=None,
                          exact_dimensions=None):
    """Input variable must be numpy array.

    This method may also check for certain dimensions.

    N = number of dimensions

    :param input_variable: Input variable.
    :param num_dimensions: If None, will not check number of dimensions.  If
        defined, must be positive integer.
    :param exact_dimensions: If None, will not check exact dimensions.  If
        defined, must be length-N numpy array of non-negative integers.
    :raises: TypeError: if input is not a numpy array or has the wrong
        dimensions.
    """

    if not isinstance(input_variable, numpy.ndarray):
        raise TypeError(_shown_above(input_variable, 'is not numpy array.'))

    if exact_dimensions is not None:
        exact_dimensions = numpy.asarray(exact_dimensions, dtype=int)

        if not numpy.array_equal(input_variable.shape, exact_dimensions):
            error_string = (
                '\nExpected dimensions: {0:s}\nActual dimensions: {1:s}'
                '\nAs shown above, input array has unexpected dimensions.'
            ).format(str(tuple(exact_dimensions)), str(input_variable.shape))

            raise TypeError(error_string)

        return

    if num_dimensions is None:
        return

    assert_is_integer(num_dimensions)
    if input_variable.ndim != num_dimensions:
        error_string = (
            'Input array should have {0:d} dimensions.  Got {1:d} dimensions.'
        ).format(num_dimensions, input_variable.ndim)

        raise TypeError(error_string)


def assert_is_real_numpy_array(input_variable):
    """Input variable must be numpy array of real numbers.

    :param input_variable: Input variable.
    :raises: TypeError: if input variable is not numpy array of real numbers.
    """

    assert_is_numpy_array(input_variable)
    if not (numpy.issubdtype(input_variable.dtype, numpy.integer) or
            numpy.issubdtype(input_variable.dtype, numpy.floating)):
        raise TypeError(_shown_above(
            input_variable,
            'has type "{0:s}", which is not a real number.'.format(
                str(input_variable.dtype))
        ))


def assert_is_numpy_array_without_nan(input_variable):
    """Input variable must be numpy array of real numbers without NaN.

    :param input_variable: Input variable.
    :raises: ValueError: if input array contains one or more NaN's.
    """

    assert_is_real_numpy_array(input_variable)
    if numpy.any(numpy.isnan(input_variable.astype(float))):
        raise ValueError("Input array contains one or more NaN's.")


def assert_is_finite_numpy_array(input_variable):
    """Input variable must be numpy array of finite real numbers.

    :param input_variable: Input variable.
    :raises: ValueError: if input array contains NaN or infinity.
    """

    assert_is_real_numpy_array(input_variable)
    if not numpy.all(numpy.isfinite(input_variable.astype(float))):
        raise ValueError('Input array contains non-finite values.')


def assert_is_matrix(input_variable, num_rows=None, num_columns=None):
    """Input variable must be 2-D numpy array of finite real numbers.

    :param input_variable: Input variable.
    :param num_rows: Expected number of rows (None to skip check).
    :param num_columns: Expected number of columns (None to skip check).
    :raises: TypeError: if input is not a 2-D array or has the wrong shape.
    :raises: ValueError: if input contains non-finite values.
    """

    assert_is_numpy_array(input_variable, num_dimensions=2)
    assert_is_finite_numpy_array(input_variable)

    for this_axis, this_size in enumerate([num_rows, num_columns]):
        if this_size is None or input_variable.shape[this_axis] == this_size:
            continue

        error_string = (
            'Matrix has {0:d} entries along axis {1:d}; expected {2:d}.'
        ).format(input_variable.shape[this_axis], this_axis, this_size)

        raise TypeError(error_string)


def assert_is_square_matrix(input_variable):
    """Input variable must be square 2-D numpy array of finite numbers.

    :param input_variable: Input variable.
    :raises: TypeError: if input is not a square matrix.
    """

    assert_is_matrix(input_variable)
    if input_variable.shape[0] != input_variable.shape[1]:
        error_string = 'Matrix should be square.  Got shape {0:s}.'.format(
            str(input_variable.shape))
        raise TypeError(error_string)


def _compare(input_variable, base_value, operator_string, allow_nan):
    """Compares scalar with base value.

    :param input_variable: Input variable.
    :param base_value: Base value.
    :param operator_string: Key in `COMPARISON_DICT`.
    :param allow_nan: Boolean flag.  If True, input variable may be NaN.
    :raises: ValueError: if comparison fails.
    """

    assert_is_boolean(allow_nan)
    assert_is_not_nan(base_value)

    if allow_nan:
        assert_is_real_number(input_variable)
        if numpy.isnan(float(input_variable)):
            return
    else:
        assert_is_not_nan(input_variable)

    if not COMPARISON_DICT[operator_string](input_variable, base_value):
        error_string = 'Input value ({0:s}) should be {1:s} {2:s}.'.format(
            str(input_variable), operator_string, str(base_value))
        raise ValueError(error_string)


def _compare_numpy_array(input_variable, base_value, operator_string,
                         allow_nan):
    """Compares every element of numpy array with base value.

    :param input_variable: numpy array.
    :param base_value: Base value.
    :param operator_string: Key in `COMPARISON_DICT`.
    :param allow_nan: Boolean flag.  If True, elements may be NaN.
    :raises: ValueError: if comparison fails for any element.
    """

    assert_is_boolean(allow_nan)
    assert_is_not_nan(base_value)

    if allow_nan:
        assert_is_real_numpy_array(input_variable)
    else:
        assert_is_numpy_array_without_nan(input_variable)

    values = input_variable.astype(float)
    good_flags = COMPARISON_DICT[operator_string](values, base_value)
    good_flags = numpy.logical_or(good_flags, numpy.isnan(values))

    if not numpy.all(good_flags):
        raise ValueError(_shown_above(
            input_variable,
            'has some elements not {0:s} {1:s}.'.format(
                operator_string, str(base_value))
        ))


def assert_is_greater(input_variable, base_value, allow_nan=False):
    """Input variable must be real number > some value.

    :param input_variable: Input variable.
    :param base_value: Input variable must be > this number.
    :param allow_nan: Boolean flag.  If True, input variable is allowed to be
        NaN.
    :raises: ValueError: if input variable is not > base_value.
    """

    _compare(input_variable, base_value, '>', allow_nan)


def assert_is_geq(input_variable, base_value, allow_nan=False):
    """Input variable must be real number >= some value.

    :param input_variable: See doc for `assert_is_greater`.
    :param base_value: Same.
    :param allow_nan: Same.
    """

    _compare(input_variable, base_value, '>=', allow_nan)


def assert_is_less_than(input_variable, base_value, allow_nan=False):
    """Input variable must be real number < some value.

    :param input_variable: See doc for `assert_is_greater`.
    :param base_value: Same.
    :param allow_nan: Same.
    """

    _compare(input_variable, base_value, '<', allow_nan)


def assert_is_leq(input_variable, base_value, allow_nan=False):
    """Input variable must be real number <= some value.

    :param input_variable: See doc for `assert_is_greater`.
    :param base_value: Same.
    :param allow_nan: Same.
    """

    _compare(input_variable, base_value, '<=', allow_nan)


def assert_is_geq_numpy_array(input_variable, base_value, allow_nan=False):
    """Input variable must be numpy array with all elements >= some value.

    :param input_variable: Input variable.
    :param base_value: All elements must be >= this number.
    :param allow_nan: Boolean flag.  If True, array elements are allowed to be
        NaN.
    :raises: ValueError: if any element is not >= base_value.
    """

    _compare_numpy_array(input_variable, base_value, '>=', allow_nan)


def assert_is_leq_numpy_array(input_variable, base_value, allow_nan=False):
    """Input variable must be numpy array with all elements <= some value.

    :param input_variable: See doc for `assert_is_geq_numpy_array`.
    :param base_value: Same.
    :param allow_nan: Same.
    """

    _compare_numpy_array(input_variable, base_value, '<=', allow_nan)
