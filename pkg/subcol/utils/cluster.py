"""Post-processing of C, spectral clustering and clustering accuracy.

N = number of points
K = number of clusters
"""

import logging
import numpy
import pandas
import scipy.optimize
import sklearn.cluster
import sklearn.preprocessing
from subcol.utils import numlin
from subcol.utils import selfexpress
from subcol.utils import general_utils
from subcol.utils import error_checking

LOGGER = logging.getLogger(__name__)

KEEP_THRESHOLD_KEY = 'keep_threshold'
SIM_RANK_KEY = 'sim_rank'
SUBSPACE_DIM_KEY = 'subspace_dim'
POWER_KEY = 'power'
NORMALIZE_ROWS_KEY = 'normalize_rows'
ENABLED_KEY = 'enabled'

DEFAULT_KEEP_THRESHOLD = 0.9
DEFAULT_SUBSPACE_DIM = 4
DEFAULT_POWER = 2.
DEFAULT_NUM_KMEANS_RESTARTS = 20
MIN_DEGREE = 1e-12

RAW_BASELINE_LAMBDAS = numpy.array(
    [0.5, 1, 2, 5, 10, 20, 50, 100, 200, 500], dtype=float)

LAMBDA_COLUMN = 'lambda'
RAW_ACCURACY_COLUMN = 'accuracy_without_postprocessing'
POSTPROCESSED_ACCURACY_COLUMN = 'accuracy_with_postprocessing'

BEST_LAMBDA_KEY = 'best_lambda'
BEST_ACCURACY_KEY = 'best_accuracy'
BEST_POSTPROCESSED_KEY = 'best_with_postprocessing'


def create_postprocess_config(
        keep_threshold=DEFAULT_KEEP_THRESHOLD, sim_rank=None,
        subspace_dim=DEFAULT_SUBSPACE_DIM, power=DEFAULT_POWER,
        normalize_rows=True, enabled=True):
    """Creates configuration for post-processing of C.

    :param keep_threshold: Fraction of l1 mass to keep in each column (in
        (0, 1]).
    :param sim_rank: Rank of shape-interaction matrix.  If None, will be
        K * `subspace_dim`.
    :param subspace_dim: Guess at dimension of each subspace.  Used only if
        `sim_rank is None`.
    :param power: Entrywise exponent (>= 1).
    :param normalize_rows: Boolean flag.  If True, rows of U_r are normalized
        before forming |U_r U_r^T|.
    :param enabled: Boolean flag.  If False, post-processing returns |C|.
    :return: postprocess_dict: Dictionary with keys listed at top of module.
    """

    error_checking.assert_is_greater(keep_threshold, 0.)
    error_checking.assert_is_leq(keep_threshold, 1.)
    error_checking.assert_is_integer(subspace_dim)
    error_checking.assert_is_geq(subspace_dim, 1)
    error_checking.assert_is_geq(power, 1.)
    error_checking.assert_is_boolean(normalize_rows)
    error_checking.assert_is_boolean(enabled)

    if sim_rank is not None:
        error_checking.assert_is_integer(sim_rank)
        error_checking.assert_is_geq(sim_rank, 1)

    return {
        KEEP_THRESHOLD_KEY: float(keep_threshold),
        SIM_RANK_KEY: sim_rank,
        SUBSPACE_DIM_KEY: subspace_dim,
        POWER_KEY: float(power),
        NORMALIZE_ROWS_KEY: normalize_rows,
        ENABLED_KEY: enabled
    }


def _threshold_columns(coeff_matrix, keep_threshold):
    """Keeps largest entries of each column that carry given share of l1 mass.

    :param coeff_matrix: N-by-N numpy array.
    :param keep_threshold: Share of l1 mass to keep.
    :return: thresholded_matrix: N-by-N numpy array.
    """

    num_rows = coeff_matrix.shape[0]
    absolute_matrix = numpy.absolute(coeff_matrix)
    sort_indices = numpy.argsort(-absolute_matrix, axis=0, kind='stable')
    sorted_matrix = numpy.take_along_axis(
        absolute_matrix, sort_indices, axis=0)
    cumulative_matrix = numpy.cumsum(sorted_matrix, axis=0)

    thresholded_matrix = numpy.zeros(coeff_matrix.shape)

    for j in range(coeff_matrix.shape[1]):
        this_total = cumulative_matrix[-1, j]
        if this_total == 0:
            continue

        this_num_kept = min([
            num_rows,
            1 + int(numpy.searchsorted(
                cumulative_matrix[:, j], keep_threshold * this_total))
        ])
        these_rows = sort_indices[:this_num_kept, j]
        thresholded_matrix[these_rows, j] = coeff_matrix[these_rows, j]

    return thresholded_matrix


def postprocess_c(coeff_matrix, postprocess_dict, num_clusters=None):
    """Post-processes C before building the affinity.

    Steps: (1) per-column thresholding by l1 mass; (2) shape-interaction
    matrix |U_r U_r^T| from the rank-r SVD of the result; (3) entrywise power.

    :param coeff_matrix: N-by-N numpy array (C).
    :param postprocess_dict: Dictionary created by `create_postprocess_config`.
    :param num_clusters: K.  Needed only if the config has no explicit rank.
    :return: processed_matrix: N-by-N numpy array.
    :raises: ValueError: if the rank cannot be determined.
    """

    error_checking.assert_is_square_matrix(coeff_matrix)
    if not postprocess_dict[ENABLED_KEY]:
        return numpy.absolute(coeff_matrix)

    num_points = coeff_matrix.shape[0]
    sim_rank = postprocess_dict[SIM_RANK_KEY]

    if sim_rank is None:
        if num_clusters is None:
            raise ValueError(
                'Need number of clusters when sim_rank is not given.')

        sim_rank = num_clusters * postprocess_dict[SUBSPACE_DIM_KEY]

    sim_rank = min([sim_rank, num_points])

    thresholded_matrix = _threshold_columns(
        coeff_matrix, postprocess_dict[KEEP_THRESHOLD_KEY])
    left_matrix = numlin.svd(thresholded_matrix)[numlin.LEFT_VECTORS_KEY][
        :, :sim_rank]

    if postprocess_dict[NORMALIZE_ROWS_KEY]:
        left_matrix = sklearn.preprocessing.normalize(left_matrix, norm='l2')

    return numpy.absolute(
        numpy.dot(left_matrix, left_matrix.T)
    ) ** postprocess_dict[POWER_KEY]


def affinity(processed_matrix):
    """Builds symmetric affinity A = (|M| + |M|^T) / 2 with zero diagonal.

    :param processed_matrix: N-by-N numpy array (M).
    :return: affinity_matrix: N-by-N numpy array (A).
    """

    error_checking.assert_is_square_matrix(processed_matrix)

    absolute_matrix = numpy.absolute(processed_matrix)
    affinity_matrix = 0.5 * (absolute_matrix + absolute_matrix.T)
    numpy.fill_diagonal(affinity_matrix, 0.)
    return affinity_matrix


def spectral_cluster(affinity_matrix, num_clusters, seed=0,
                     num_restarts=DEFAULT_NUM_KMEANS_RESTARTS):
    """Normalized spectral clustering.

    Uses the bottom K eigenvectors of L = I - D^(-1/2) A D^(-1/2), normalizes
    each row to unit length, then runs k-means with k-means++ seeding.
    Isolated vertices get degree `MIN_DEGREE`.

    :param affinity_matrix: N-by-N numpy array (A).
    :param num_clusters: K.
    :param seed: Random seed for k-means.
    :param num_restarts: Number of k-means restarts.
    :return: labels: length-N numpy array of integers in 0...(K - 1),
        numbered by first appearance.
    """

    error_checking.assert_is_square_matrix(affinity_matrix)
    error_checking.assert_is_geq_numpy_array(affinity_matrix, 0.)
    error_checking.assert_is_integer(num_clusters)
    error_checking.assert_is_geq(num_clusters, 1)
    error_checking.assert_is_leq(num_clusters, affinity_matrix.shape[0])
    error_checking.assert_is_integer(num_restarts)
    error_checking.assert_is_geq(num_restarts, 1)

    num_points = affinity_matrix.shape[0]
    if num_clusters == 1:
        return numpy.zeros(num_points, dtype=int)

    degrees = numpy.maximum(numpy.sum(affinity_matrix, axis=1), MIN_DEGREE)
    inverse_sqrt_degrees = 1. / numpy.sqrt(degrees)
    laplacian_matrix = numpy.eye(num_points) - (
        inverse_sqrt_degrees[:, None] * affinity_matrix *
        inverse_sqrt_degrees[None, :]
    )

    eigenvector_matrix = numlin.symmetric_eigh(laplacian_matrix)[1]
    feature_matrix = sklearn.preprocessing.normalize(
        eigenvector_matrix[:, :num_clusters], norm='l2')

    kmeans_object = sklearn.cluster.KMeans(
        n_clusters=num_clusters, init='k-means++', n_init=num_restarts,
        random_state=seed)
    labels = kmeans_object.fit_predict(feature_matrix)

    return general_utils.relabel_by_first_appearance(labels)


def accuracy(predicted_labels, true_labels):
    """Clustering accuracy under the best matching of cluster names.

    :param predicted_labels: length-N numpy array of integers.
    :param true_labels: length-N numpy array of integers.
    :return: accuracy: Fraction of points correctly labeled, in [0, 1].
    :raises: ValueError: if arrays have different lengths.
    """

    error_checking.assert_is_numpy_array(predicted_labels, num_dimensions=1)
    error_checking.assert_is_numpy_array(true_labels, num_dimensions=1)

    if len(predicted_labels) != len(true_labels):
        error_string = (
            'Predicted labels ({0:d}) and true labels ({1:d}) have different '
            'lengths.'
        ).format(len(predicted_labels), len(true_labels))

        raise ValueError(error_string)

    error_checking.assert_is_greater(len(true_labels), 0)

    confusion_table = pandas.crosstab(
        pandas.Series(predicted_labels, name='predicted'),
        pandas.Series(true_labels, name='true')
    )
    row_indices, column_indices = scipy.optimize.linear_sum_assignment(
        confusion_table.values, maximize=True)

    return float(
        numpy.sum(confusion_table.values[row_indices, column_indices]) /
        len(true_labels)
    )


def cluster_coefficients(coeff_matrix, num_clusters, postprocess_dict,
                         seed=0):
    """Clusters points from a self-expression matrix.

    :param coeff_matrix: N-by-N numpy array (C).
    :param num_clusters: K.
    :param postprocess_dict: Dictionary created by `create_postprocess_config`.
    :param seed: Random seed for k-means.
    :return: labels: See doc for `spectral_cluster`.
    """

    processed_matrix = postprocess_c(
        coeff_matrix, postprocess_dict, num_clusters=num_clusters)
    return spectral_cluster(
        affinity(processed_matrix), num_clusters=num_clusters, seed=seed)


def self_expressive_clustering(data_matrix, regularizer_dict, num_clusters,
                               postprocess_dict, seed=0, option_dict=None):
    """Solves for C on the given points, then clusters.

    :param data_matrix: d-by-N numpy array.
    :param regularizer_dict: Dictionary created by
        `selfexpress.create_regularizer`.
    :param num_clusters: K.
    :param postprocess_dict: Dictionary created by `create_postprocess_config`.
    :param seed: Random seed for k-means.
    :param option_dict: See doc for `selfexpress.solve_c_fixed_z`.
    :return: labels: See doc for `spectral_cluster`.
    :return: solution_dict: See doc for `selfexpress.solve_c_fixed_z`.
    """

    solution_dict = selfexpress.solve_c_fixed_z(
        data_matrix, regularizer_dict, option_dict=option_dict)
    labels = cluster_coefficients(
        solution_dict[selfexpress.COEFF_MATRIX_KEY], num_clusters,
        postprocess_dict, seed=seed)

    return labels, solution_dict


def sweep_raw_baseline(data_matrix, true_labels, num_clusters,
                       postprocess_dict, lambda_values=RAW_BASELINE_LAMBDAS,
                       seed=0):
    """Clusters raw data with the squared-Frobenius regularizer over many
    lambdas.

    :param data_matrix: d-by-N numpy array (X).
    :param true_labels: length-N numpy array of integers.
    :param num_clusters: K.
    :param postprocess_dict: Dictionary created by `create_postprocess_config`
        (used for the post-processed column).
    :param lambda_values: 1-D numpy array of lambdas to try.
    :param seed: Random seed for k-means.
    :return: result_table: pandas DataFrame with columns "lambda",
        "accuracy_without_postprocessing", "accuracy_with_postprocessing".
    :return: best_dict: Dictionary with keys "best_lambda", "best_accuracy",
        "best_with_postprocessing".
    """

    error_checking.assert_is_numpy_array(lambda_values, num_dimensions=1)
    error_checking.assert_is_geq(len(lambda_values), 1)

    enabled_dict = dict(postprocess_dict)
    enabled_dict[ENABLED_KEY] = True
    disabled_dict = dict(postprocess_dict)
    disabled_dict[ENABLED_KEY] = False

    result_rows = []

    for this_lambda in lambda_values:
        this_coeff_matrix = selfexpress.solve_c_fixed_z(
            data_matrix,
            selfexpress.create_regularizer(
                selfexpress.FROBENIUS_KIND, lambda_value=float(this_lambda))
        )[selfexpress.COEFF_MATRIX_KEY]

        this_row = {LAMBDA_COLUMN: float(this_lambda)}
        for this_column, this_dict in zip(
                [RAW_ACCURACY_COLUMN, POSTPROCESSED_ACCURACY_COLUMN],
                [disabled_dict, enabled_dict]
        ):
            this_row[this_column] = accuracy(
                cluster_coefficients(
                    this_coeff_matrix, num_clusters, this_dict, seed=seed),
                true_labels
            )

        LOGGER.info(
            'Raw baseline with lambda = %g: accuracy = %.4f (without '
            'post-processing), %.4f (with)', this_lambda,
            this_row[RAW_ACCURACY_COLUMN],
            this_row[POSTPROCESSED_ACCURACY_COLUMN])
        result_rows.append(this_row)

    result_table = pandas.DataFrame(result_rows, columns=[
        LAMBDA_COLUMN, RAW_ACCURACY_COLUMN, POSTPROCESSED_ACCURACY_COLUMN
    ])

    accuracy_matrix = result_table[
        [RAW_ACCURACY_COLUMN, POSTPROCESSED_ACCURACY_COLUMN]
    ].values
    best_row, best_column = numpy.unravel_index(
        numpy.argmax(accuracy_matrix), accuracy_matrix.shape)

    return result_table, {
        BEST_LAMBDA_KEY: float(result_table[LAMBDA_COLUMN].values[best_row]),
        BEST_ACCURACY_KEY: float(accuracy_matrix[best_row, best_column]),
        BEST_POSTPROCESSED_KEY: bool(best_column == 1)
    }
