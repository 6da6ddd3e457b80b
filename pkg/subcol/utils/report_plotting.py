"""Report figures (SVG) and degeneracy summaries for a training run.

N = number of points
d = embedding dimension
"""

import logging
import numpy
import pandas
import matplotlib
matplotlib.use('agg')
import matplotlib.colors
import matplotlib.pyplot as pyplot
from subcol.utils import sedsc
from subcol.utils import numlin
from subcol.utils import oracles
from subcol.utils import error_checking
from subcol.utils import file_system_utils

LOGGER = logging.getLogger(__name__)

matplotlib.rcParams['svg.hashsalt'] = 'subcol'
SVG_METADATA_DICT = {'Date': None}

FIGURE_WIDTH_INCHES = 8
FIGURE_HEIGHT_INCHES = 6
WIDE_FIGURE_WIDTH_INCHES = 14

LINE_WIDTH = 2
MARKER_SIZE = 20
PRETRAIN_COLOUR = '#1b9e77'
JOINT_COLOUR = '#d95f02'
CLASS_COLOUR_MAP_NAME = 'tab10'
HEATMAP_COLOUR_MAP_NAME = 'viridis'
LOG_SCALE_FLOOR_RATIO = 1e-8

REPRESENTATION_COLUMN = 'representation'
CLASS_COLUMN = 'class'
INDEX_COLUMN = 'index'
NORMALIZED_SV_COLUMN = 'normalized_singular_value'

STAGE_COLUMN = 'stage'
STRUCTURE_PASSED_COLUMN = 'thm2_structure_passed'
SURVIVOR_COSINE_COLUMN = 'survivor_cosine'
MAX_OTHER_NORM_RATIO_COLUMN = 'max_other_norm_ratio'

FLOAT_FORMAT_STRING = '%.17g'


def _save_figure(figure_object, output_file_name):
    """Saves figure to SVG file, then closes it.

    :param figure_object: Instance of `matplotlib.figure.Figure`.
    :param output_file_name: Path to output file.
    """

    file_system_utils.mkdir_recursive_if_necessary(file_name=output_file_name)
    LOGGER.info('Saving figure to: "%s"', output_file_name)

    figure_object.savefig(
        output_file_name, format='svg', bbox_inches='tight',
        metadata=SVG_METADATA_DICT)
    pyplot.close(figure_object)


def plot_z_norm_trace(trace_table, output_file_name, pretrain_trace_table=None):
    """Plots ||Z||_F against iteration.

    :param trace_table: pandas DataFrame created by `sedsc.train_joint`.
    :param output_file_name: Path to output file (SVG).
    :param pretrain_trace_table: pandas DataFrame created by `sedsc.pretrain`.
        If given, pretraining is plotted before joint training.
    :raises: ValueError: if `trace_table` is empty.
    """

    if trace_table is None or len(trace_table.index) == 0:
        raise ValueError('Cannot plot an empty training trace.')

    error_checking.assert_columns_in_dataframe(
        trace_table, [sedsc.ITERATION_COLUMN, sedsc.Z_NORM_COLUMN])

    figure_object, axes_object = pyplot.subplots(
        1, 1, figsize=(FIGURE_WIDTH_INCHES, FIGURE_HEIGHT_INCHES)
    )

    offset = 0
    if pretrain_trace_table is not None and len(pretrain_trace_table.index):
        axes_object.plot(
            pretrain_trace_table[sedsc.ITERATION_COLUMN].values,
            pretrain_trace_table[sedsc.Z_NORM_COLUMN].values,
            color=PRETRAIN_COLOUR, linewidth=LINE_WIDTH, label='Pretraining')
        offset = len(pretrain_trace_table.index)

    axes_object.plot(
        trace_table[sedsc.ITERATION_COLUMN].values + offset,
        trace_table[sedsc.Z_NORM_COLUMN].values,
        color=JOINT_COLOUR, linewidth=LINE_WIDTH, label='Joint training')

    if numpy.all(trace_table[sedsc.Z_NORM_COLUMN].values > 0):
        axes_object.set_yscale('log')

    axes_object.set_xlabel('Iteration')
    axes_object.set_ylabel(r'$\|Z\|_F$')
    axes_object.set_title('Norm of embedding during training')
    axes_object.legend(loc='best')

    _save_figure(figure_object, output_file_name)


def compute_class_spectra(matrix_dict, labels):
    """Computes normalized singular values of each class for each
    representation.

    :param matrix_dict: Dictionary, where each key is a representation name
        (e.g., "Raw") and each value is a numpy array with N columns.
    :param labels: length-N numpy array of integer class labels.
    :return: spectrum_table: pandas DataFrame with columns "representation",
        "class", "index", "normalized_singular_value".  Singular values are
        divided by the largest one of the same class and representation.
    """

    error_checking.assert_is_numpy_array(labels, num_dimensions=1)
    row_dicts = []

    for this_name, this_matrix in matrix_dict.items():
        error_checking.assert_is_matrix(
            this_matrix, num_columns=len(labels))

        for this_class in numpy.unique(labels):
            these_values = numlin.svd(
                this_matrix[:, labels == this_class]
            )[numlin.SINGULAR_VALUES_KEY]

            if these_values[0] > 0:
                these_values = these_values / these_values[0]

            for j, this_value in enumerate(these_values):
                row_dicts.append({
                    REPRESENTATION_COLUMN: this_name,
                    CLASS_COLUMN: int(this_class),
                    INDEX_COLUMN: j + 1,
                    NORMALIZED_SV_COLUMN: float(this_value)
                })

    return pandas.DataFrame(row_dicts, columns=[
        REPRESENTATION_COLUMN, CLASS_COLUMN, INDEX_COLUMN, NORMALIZED_SV_COLUMN
    ])


def plot_class_spectra(spectrum_table, output_file_name):
    """Plots normalized singular values per class, one panel per
    representation.

    :param spectrum_table: pandas DataFrame created by `compute_class_spectra`.
    :param output_file_name: Path to output file (SVG).
    :raises: ValueError: if `spectrum_table` is empty.
    """

    if len(spectrum_table.index) == 0:
        raise ValueError('Cannot plot an empty table of singular values.')

    representation_names = list(pandas.unique(
        spectrum_table[REPRESENTATION_COLUMN]))
    num_panels = len(representation_names)
    colour_map_object = pyplot.get_cmap(CLASS_COLOUR_MAP_NAME)

    figure_object, axes_objects = pyplot.subplots(
        1, num_panels, squeeze=False, sharey=True,
        figsize=(WIDE_FIGURE_WIDTH_INCHES, FIGURE_HEIGHT_INCHES)
    )

    for k, this_name in enumerate(representation_names):
        this_axes_object = axes_objects[0, k]
        this_table = spectrum_table.loc[
            spectrum_table[REPRESENTATION_COLUMN] == this_name]

        for this_class in numpy.unique(this_table[CLASS_COLUMN].values):
            this_class_table = this_table.loc[
                this_table[CLASS_COLUMN] == this_class]

            this_axes_object.plot(
                this_class_table[INDEX_COLUMN].values,
                this_class_table[NORMALIZED_SV_COLUMN].values,
                marker='o', linewidth=LINE_WIDTH,
                color=colour_map_object(int(this_class) % 10),
                label='Class {0:d}'.format(int(this_class))
            )

        this_axes_object.set_title(this_name)
        this_axes_object.set_xlabel('Singular value index')
        this_axes_object.set_ylim(-0.05, 1.05)

    axes_objects[0, 0].set_ylabel('Normalized singular value')
    axes_objects[0, -1].legend(loc='best')

    _save_figure(figure_object, output_file_name)


def _first_two_rows(embedding_matrix):
    """Returns the first two rows of Z, padding with zeros if d = 1."""

    if embedding_matrix.shape[0] >= 2:
        return embedding_matrix[0, :], embedding_matrix[1, :]

    return embedding_matrix[0, :], numpy.zeros(embedding_matrix.shape[1])


def plot_embedding_scatter(before_matrix, after_matrix, labels,
                           output_file_name):
    """Plots embedded points before and after joint training.

    Only the first two embedding coordinates are shown.

    :param before_matrix: d-by-N numpy array (Z after pretraining).
    :param after_matrix: d-by-N numpy array (Z after joint training).
    :param labels: length-N numpy array of integer class labels.
    :param output_file_name: Path to output file (SVG).
    """

    error_checking.assert_is_matrix(after_matrix, num_columns=len(labels))
    error_checking.assert_is_matrix(before_matrix, num_columns=len(labels))

    figure_object, axes_objects = pyplot.subplots(
        1, 2, squeeze=False,
        figsize=(WIDE_FIGURE_WIDTH_INCHES, FIGURE_HEIGHT_INCHES)
    )
    colour_map_object = pyplot.get_cmap(CLASS_COLOUR_MAP_NAME)

    for k, (this_matrix, this_title) in enumerate([
            (before_matrix, 'After pretraining'),
            (after_matrix, 'After joint training')
    ]):
        this_axes_object = axes_objects[0, k]
        x_coords, y_coords = _first_two_rows(this_matrix)

        for this_class in numpy.unique(labels):
            these_flags = labels == this_class
            this_axes_object.scatter(
                x_coords[these_flags], y_coords[these_flags], s=MARKER_SIZE,
                color=colour_map_object(int(this_class) % 10),
                label='Class {0:d}'.format(int(this_class))
            )

        this_axes_object.set_title(this_title)
        this_axes_object.set_xlabel(r'$z_1$')
        this_axes_object.set_ylabel(r'$z_2$')

    axes_objects[0, 1].legend(loc='best')
    _save_figure(figure_object, output_file_name)


def plot_coeff_heatmap(coeff_matrix, output_file_name):
    """Plots |C| with linear and logarithmic colour scales.

    The share of ||C||_1 in the two largest entries is written in the title.

    :param coeff_matrix: N-by-N numpy array (C).
    :param output_file_name: Path to output file (SVG).
    :return: top2_mass: Share of ||C||_1 in the two largest entries.
    """

    error_checking.assert_is_square_matrix(coeff_matrix)
    absolute_matrix = numpy.absolute(coeff_matrix)

    total_mass = numpy.sum(absolute_matrix)
    if total_mass > 0:
        top2_mass = float(
            numpy.sum(numpy.sort(absolute_matrix.ravel())[-2:]) / total_mass)
    else:
        top2_mass = 0.

    figure_object, axes_objects = pyplot.subplots(
        1, 2, squeeze=False,
        figsize=(WIDE_FIGURE_WIDTH_INCHES, FIGURE_HEIGHT_INCHES)
    )

    image_object = axes_objects[0, 0].imshow(
        absolute_matrix, cmap=HEATMAP_COLOUR_MAP_NAME,
        interpolation='nearest')
    figure_object.colorbar(image_object, ax=axes_objects[0, 0])
    axes_objects[0, 0].set_title('|C| (linear scale)')

    max_value = numpy.max(absolute_matrix)
    if max_value > 0:
        min_value = max([
            numpy.min(absolute_matrix[absolute_matrix > 0]),
            max_value * LOG_SCALE_FLOOR_RATIO
        ])
        colour_norm_object = matplotlib.colors.LogNorm(
            vmin=min_value, vmax=max_value)

        image_object = axes_objects[0, 1].imshow(
            numpy.ma.masked_less_equal(absolute_matrix, 0.),
            cmap=HEATMAP_COLOUR_MAP_NAME, norm=colour_norm_object,
            interpolation='nearest')
        figure_object.colorbar(image_object, ax=axes_objects[0, 1])

    axes_objects[0, 1].set_title('|C| (log scale)')

    figure_object.suptitle(
        'Share of l1 mass in two largest entries = {0:.4f}'.format(top2_mass))

    _save_figure(figure_object, output_file_name)
    return top2_mass


def summarize_degeneracy(stage_dict):
    """Computes degeneracy metrics for each stage of training.

    :param stage_dict: Dictionary, where each key is a stage name (e.g.,
        "pretrained") and each value is a length-2 tuple (Z, C).
    :return: summary_table: pandas DataFrame with one row per stage and columns
        "stage", the keys in `oracles.METRIC_KEYS`, "thm2_structure_passed",
        "max_other_norm_ratio", "survivor_cosine".
    """

    row_dicts = []

    for this_stage, (this_embedding_matrix, this_coeff_matrix) in (
            stage_dict.items()
    ):
        this_row_dict = {STAGE_COLUMN: this_stage}
        this_row_dict.update(oracles.degeneracy_metrics(
            this_embedding_matrix, this_coeff_matrix))

        this_passed, this_detail_dict = oracles.thm2_structure_check(
            this_embedding_matrix)
        this_row_dict[STRUCTURE_PASSED_COLUMN] = this_passed
        this_row_dict[MAX_OTHER_NORM_RATIO_COLUMN] = this_detail_dict[
            oracles.MAX_OTHER_NORM_RATIO_KEY]
        this_row_dict[SURVIVOR_COSINE_COLUMN] = this_detail_dict[
            oracles.SURVIVOR_COSINE_KEY]

        row_dicts.append(this_row_dict)

    return pandas.DataFrame(row_dicts, columns=(
        [STAGE_COLUMN] + oracles.METRIC_KEYS +
        [STRUCTURE_PASSED_COLUMN, MAX_OTHER_NORM_RATIO_COLUMN,
         SURVIVOR_COSINE_COLUMN]
    ))


def write_summary(summary_file_name, summary_table):
    """Writes summary table (degeneracy or other report) to CSV file.

    :param summary_file_name: Path to output file.
    :param summary_table: pandas DataFrame (e.g., from `summarize_degeneracy`).
    """

    file_system_utils.mkdir_recursive_if_necessary(file_name=summary_file_name)
    summary_table.to_csv(
        summary_file_name, index=False, float_format=FLOAT_FORMAT_STRING)
