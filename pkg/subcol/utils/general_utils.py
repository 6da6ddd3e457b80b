"""General helper methods (ones that don't belong in another "utils" module)."""

import os
import logging
import numpy
from subcol.utils import error_checking

LOG_ENVIRONMENT_VARIABLE = 'SUBCOL_LOG'
DEFAULT_LOG_LEVEL_STRING = 'info'
LOG_FORMAT_STRING = '%(levelname)s %(name)s: %(message)s'

LOG_LEVEL_DICT = {
    'error': logging.ERROR,
    'info': logging.INFO,
    'debug': logging.DEBUG
}


def configure_logging(level_string=None):
    """Configures the root logger.

    :param level_string: Log level (key in `LOG_LEVEL_DICT`).  If None, will be
        read from the environment variable `SUBCOL_LOG`, defaulting to "info".
    :return: level_string: Log level actually used.
    :raises: ValueError: if level is not recognized.
    """

    if level_string is None:
        level_string = os.environ.get(
            LOG_ENVIRONMENT_VARIABLE, DEFAULT_LOG_LEVEL_STRING)

    level_string = level_string.strip().lower()
    error_checking.assert_is_string_in_set(
        level_string, list(LOG_LEVEL_DICT.keys()))

    logging.basicConfig(
        level=LOG_LEVEL_DICT[level_string], format=LOG_FORMAT_STRING,
        force=True)

    return level_string


def soft_threshold(input_array, threshold):
    """Applies soft-thresholding (proximal operator of the l1 norm).

    :param input_array: numpy array of any shape.
    :param threshold: Non-negative threshold.
    :return: output_array: numpy array with same shape as input.
    """

    error_checking.assert_is_geq(threshold, 0.)

    return numpy.sign(input_array) * numpy.maximum(
        numpy.absolute(input_array) - threshold, 0.)


def relabel_by_first_appearance(label_array):
    """Renames integer labels so that they appear in the order 0, 1, 2...

    :param label_array: 1-D numpy array of integer labels.
    :return: relabeled_array: 1-D numpy array of same length, with the first
        label seen renamed 0, the next new label renamed 1, and so on.
    """

    error_checking.assert_is_numpy_array(label_array, num_dimensions=1)

    _, first_indices, inverse_indices = numpy.unique(
        label_array, return_index=True, return_inverse=True)

    rank_by_unique_label = numpy.argsort(numpy.argsort(first_indices))
    return rank_by_unique_label[inverse_indices].astype(int)
