"""Experiment subcommands: generate, train, verify, cluster and report.

Each command takes a config dictionary created by
`experiment_config.merge_config` and reads/writes files in the output
directory named by "output.out_dir".
"""

import os.path
import logging
import numpy
import pandas
from subcol.utils import sedsc
from subcol.utils import numlin
from subcol.utils import autoenc
from subcol.utils import cluster
from subcol.utils import oracles
from subcol.utils import synthdata
from subcol.utils import selfexpress
from subcol.utils import normalization
from subcol.utils import error_checking
from subcol.utils import file_system_utils
from subcol.utils import report_plotting
from subcol.utils import experiment_config

LOGGER = logging.getLogger(__name__)

DATA_FILE_NAME = 'data.csv'
LABELS_FILE_NAME = 'labels.csv'
CONFIG_FILE_NAME = 'config.json'
PRETRAINED_PARAMS_FILE_NAME = 'pretrained_params.csv'
PARAMS_FILE_NAME = 'params.csv'
INITIAL_COEFFS_FILE_NAME = 'initial_coeff_matrix.csv'
COEFFS_FILE_NAME = 'coeff_matrix.csv'
PRETRAINED_EMBEDDING_FILE_NAME = 'pretrained_embedding.csv'
EMBEDDING_FILE_NAME = 'embedding.csv'
PRETRAIN_TRACE_FILE_NAME = 'pretrain_trace.csv'
TRACE_FILE_NAME = 'trace.csv'
VERIFY_FILE_NAME = 'verify_report.csv'
CLUSTER_FILE_NAME = 'cluster_report.csv'
RAW_BASELINE_FILE_NAME = 'raw_baseline.csv'
PREDICTED_LABELS_FILE_NAME = 'predicted_labels.csv'
SUMMARY_FILE_NAME = 'degeneracy_summary.csv'
Z_NORM_FIGURE_FILE_NAME = 'z_norm_trace.svg'
SPECTRA_FIGURE_FILE_NAME = 'class_spectra.svg'
SCATTER_FIGURE_FILE_NAME = 'embedding_scatter.svg'
HEATMAP_FIGURE_FILE_NAME = 'coeff_heatmap.svg'

CHECK_COLUMN = 'check'
VALUE_COLUMN = 'value'
EXPECTED_COLUMN = 'expected'
PASSED_COLUMN = 'passed'
VERIFY_COLUMNS = [CHECK_COLUMN, VALUE_COLUMN, EXPECTED_COLUMN, PASSED_COLUMN]

METHOD_COLUMN = 'method'
POSTPROCESSING_COLUMN = 'postprocessing'
ACCURACY_COLUMN = 'accuracy'
CLUSTER_COLUMNS = [METHOD_COLUMN, POSTPROCESSING_COLUMN, ACCURACY_COLUMN]

SEDSC_METHOD = 'sedsc'
PRETRAINED_METHOD = 'pretrained_embedding'
RAW_BASELINE_METHOD = 'raw_frobenius_best_lambda'

RAW_REPRESENTATION = 'Raw'
PRETRAINED_REPRESENTATION = 'AE'
TRAINED_REPRESENTATION = 'SEDSC'
PRETRAINED_STAGE = 'pretrained'
TRAINED_STAGE = 'trained'

OBJECTIVE_TOLERANCE = 1e-9
BOUND_TOLERANCE = 1e-6
THM3_NORM_TOLERANCE = 1e-10
LEMMA1_TOLERANCE = 1e-4
LEMMA1_DIAGONAL_TOLERANCE = 1e-3
SCALING_TOLERANCE = 1e-12
MAX_BRUTE_FORCE_SUPPORT = 4
DOMINANCE_NUM_POINTS = 5
DOMINANCE_EMBEDDING_DIM = 2
THM2_NUM_POINTS = 4
THM2_EMBEDDING_DIM = 2
THM3_NUM_POINTS = 3
THM3_EMBEDDING_DIM = 2
SCALING_INPUT_DIM = 4
SCALING_NUM_POINTS = 20
SCALING_NUM_HIDDEN_UNITS = 8
SCALING_ALPHA = 0.5
SCALING_NUM_NETWORKS = 10
SCALING_NUM_ATTACKS = 40
SCALING_LAMBDA = 1e-4
SCALING_F_RATIO_TOLERANCE = 1e-10


def _output_file_name(config_dict, pathless_file_name,
                      raise_error_if_missing=False):
    """Returns path to file in output directory.

    :param config_dict: Dictionary created by `experiment_config.merge_config`.
    :param pathless_file_name: Pathless file name.
    :param raise_error_if_missing: See doc for
        `file_system_utils.find_file_in_directory`.
    :return: file_name: Full path.
    """

    return file_system_utils.find_file_in_directory(
        directory_name=config_dict[experiment_config.OUTPUT_SECTION][
            experiment_config.OUT_DIR_KEY],
        pathless_file_name=pathless_file_name,
        raise_error_if_missing=raise_error_if_missing)


def _write_matrix(config_dict, pathless_file_name, matrix):
    """Writes matrix to output directory.

    :param config_dict: See doc for `_output_file_name`.
    :param pathless_file_name: Pathless file name.
    :param matrix: 2-D numpy array.
    """

    file_name = _output_file_name(config_dict, pathless_file_name)
    LOGGER.info('Writing matrix to: "%s"...', file_name)
    synthdata.write_matrix(file_name, matrix)


def _read_dataset(config_dict):
    """Reads data matrix and labels written by `cmd_generate`.

    :param config_dict: See doc for `_output_file_name`.
    :return: dataset_dict: See doc for `synthdata.check_dataset`.
    """

    dataset_dict = {
        synthdata.DATA_MATRIX_KEY: synthdata.read_matrix(
            _output_file_name(config_dict, DATA_FILE_NAME)),
        synthdata.LABELS_KEY: synthdata.read_labels(
            _output_file_name(config_dict, LABELS_FILE_NAME)),
        synthdata.DESCRIPTION_KEY: 'Read from output directory'
    }

    synthdata.check_dataset(dataset_dict)
    return dataset_dict


def _num_clusters(config_dict, labels):
    """Returns K from config or, if not given, from the labels."""

    num_clusters = config_dict[experiment_config.POSTPROCESS_SECTION][
        experiment_config.NUM_CLUSTERS_KEY]
    if num_clusters is None:
        num_clusters = len(numpy.unique(labels))

    return num_clusters


def cmd_generate(config_dict):
    """Generates (or imports) the dataset and writes it to the output
    directory.

    :param config_dict: Dictionary created by `experiment_config.merge_config`.
    :return: dataset_dict: See doc for `synthdata.check_dataset`.
    """

    data_dict = config_dict[experiment_config.DATA_SECTION]
    generator_name = data_dict[experiment_config.GENERATOR_KEY]

    if generator_name == experiment_config.PARABOLAS_GENERATOR:
        dataset_dict = synthdata.gen_two_parabolas(
            num_points_per_parabola=data_dict[
                experiment_config.NUM_POINTS_PER_PARABOLA_KEY],
            noise_stdev=float(data_dict[experiment_config.NOISE_STDEV_KEY]),
            seed=data_dict[experiment_config.SEED_KEY]
        )
    elif generator_name == experiment_config.SUBSPACES_GENERATOR:
        dataset_dict = synthdata.gen_union_subspaces(
            ambient_dim=data_dict[experiment_config.AMBIENT_DIM_KEY],
            subspace_dim=data_dict[experiment_config.SUBSPACE_DIM_KEY],
            num_subspaces=data_dict[experiment_config.NUM_SUBSPACES_KEY],
            num_points_per_subspace=data_dict[
                experiment_config.NUM_POINTS_PER_SUBSPACE_KEY],
            min_angle_deg=float(data_dict[experiment_config.MIN_ANGLE_KEY]),
            noise_stdev=float(data_dict[experiment_config.NOISE_STDEV_KEY]),
            seed=data_dict[experiment_config.SEED_KEY]
        )
    else:
        dataset_dict = {
            synthdata.DATA_MATRIX_KEY: synthdata.read_matrix(
                data_dict[experiment_config.DATA_FILE_KEY]),
            synthdata.LABELS_KEY: synthdata.read_labels(
                data_dict[experiment_config.LABELS_FILE_KEY]),
            synthdata.DESCRIPTION_KEY: 'Read from "{0:s}"'.format(
                data_dict[experiment_config.DATA_FILE_KEY])
        }

    synthdata.check_dataset(dataset_dict)
    LOGGER.info(
        '%s: %d points in %d dimensions, %d clusters.',
        dataset_dict[synthdata.DESCRIPTION_KEY],
        dataset_dict[synthdata.DATA_MATRIX_KEY].shape[1],
        dataset_dict[synthdata.DATA_MATRIX_KEY].shape[0],
        len(numpy.unique(dataset_dict[synthdata.LABELS_KEY]))
    )

    _write_matrix(
        config_dict, DATA_FILE_NAME, dataset_dict[synthdata.DATA_MATRIX_KEY])

    labels_file_name = _output_file_name(config_dict, LABELS_FILE_NAME)
    LOGGER.info('Writing labels to: "%s"...', labels_file_name)
    synthdata.write_labels(
        labels_file_name, dataset_dict[synthdata.LABELS_KEY])

    return dataset_dict


def cmd_train(config_dict):
    """Runs pretraining, C initialization and joint training.

    :param config_dict: Dictionary created by `experiment_config.merge_config`.
    :return: result_dict: See doc for `sedsc.train_sedsc`.
    :raises: error_checking.NumericalError: if pretraining or joint training
        blew up.  Partial traces are written first.
    """

    data_matrix = synthdata.read_matrix(
        _output_file_name(config_dict, DATA_FILE_NAME))
    train_config_dict = experiment_config.create_train_config(config_dict)
    normalization_dict = train_config_dict[sedsc.NORMALIZATION_KEY]

    experiment_config.write_config(
        _output_file_name(config_dict, CONFIG_FILE_NAME), config_dict)

    result_dict = sedsc.train_sedsc(data_matrix, train_config_dict)

    pretrain_trace_file_name = _output_file_name(
        config_dict, PRETRAIN_TRACE_FILE_NAME)
    LOGGER.info('Writing pretraining trace to: "%s"...',
                pretrain_trace_file_name)
    sedsc.write_trace(
        pretrain_trace_file_name, result_dict[sedsc.PRETRAIN_TRACE_KEY])

    if result_dict[sedsc.PRETRAIN_TRACE_KEY].attrs[sedsc.ABORTED_ATTR]:
        raise error_checking.NumericalError(
            'Pretraining blew up after {0:d} iterations.'.format(
                len(result_dict[sedsc.PRETRAIN_TRACE_KEY].index))
        )

    pretrained_param_dict = result_dict[sedsc.PRETRAINED_PARAMS_KEY]
    autoenc.write_params(
        _output_file_name(config_dict, PRETRAINED_PARAMS_FILE_NAME),
        pretrained_param_dict)
    _write_matrix(
        config_dict, PRETRAINED_EMBEDDING_FILE_NAME,
        autoenc.embed(data_matrix, pretrained_param_dict,
                      normalization_dict=normalization_dict)[0]
    )
    _write_matrix(
        config_dict, INITIAL_COEFFS_FILE_NAME,
        result_dict[sedsc.INITIAL_SOLUTION_KEY][selfexpress.COEFF_MATRIX_KEY])

    trace_table = result_dict[sedsc.TRACE_KEY]
    trace_file_name = _output_file_name(config_dict, TRACE_FILE_NAME)
    LOGGER.info('Writing training trace to: "%s"...', trace_file_name)
    sedsc.write_trace(trace_file_name, trace_table)

    param_dict = result_dict[sedsc.PARAMS_KEY]
    autoenc.write_params(
        _output_file_name(config_dict, PARAMS_FILE_NAME), param_dict)
    _write_matrix(
        config_dict, COEFFS_FILE_NAME,
        result_dict[sedsc.SOLUTION_KEY][selfexpress.COEFF_MATRIX_KEY])
    _write_matrix(
        config_dict, EMBEDDING_FILE_NAME,
        autoenc.embed(data_matrix, param_dict,
                      normalization_dict=normalization_dict)[0]
    )

    if trace_table.attrs[sedsc.ABORTED_ATTR]:
        raise error_checking.NumericalError(
            'Joint training blew up after {0:d} iterations.'.format(
                len(trace_table.index))
        )

    last_row = trace_table.iloc[-1]
    LOGGER.info(
        'Final state: total loss = %.6e, ||Z||_F = %.6e, norm concentration '
        '= %.4f, top-2 mass of C = %.4f.', last_row[sedsc.TOTAL_LOSS_COLUMN],
        last_row[sedsc.Z_NORM_COLUMN],
        last_row[oracles.NORM_CONCENTRATION_KEY],
        last_row[oracles.C_TOP2_MASS_KEY])

    if normalization_dict[normalization.KIND_KEY] == (
            normalization.NO_NORM_KIND
    ):
        try:
            decrease_dict = sedsc.check_norm_decrease(trace_table)
            LOGGER.info(
                'Without normalization: ||Z||_F decreasing over tail = %s '
                '(%d windows), min gradient norm = %.3e.',
                decrease_dict[sedsc.DECREASING_KEY],
                decrease_dict[sedsc.NUM_WINDOWS_KEY],
                decrease_dict[sedsc.MIN_GRADIENT_NORM_KEY])
        except ValueError as this_error:
            LOGGER.info('Skipping norm-decrease check: %s', str(this_error))

    return result_dict


def _add_check(row_dicts, check_name, value, expected_string, passed):
    """Appends one row to the verification report.

    :param row_dicts: List of dictionaries.
    :param check_name: Name of check.
    :param value: Measured value.
    :param expected_string: Human-readable criterion.
    :param passed: Boolean flag.
    """

    LOGGER.debug('%s: %s (expected %s)', check_name, str(value),
                 expected_string)

    row_dicts.append({
        CHECK_COLUMN: check_name,
        VALUE_COLUMN: float(value),
        EXPECTED_COLUMN: expected_string,
        PASSED_COLUMN: bool(passed)
    })


def _verify_thm1(verify_dict, row_dicts):
    """Checks the sigma_min characterization for fixed C."""

    tau = float(verify_dict[experiment_config.TAU_KEY])
    regularizer_dict = selfexpress.create_regularizer(
        selfexpress.FROBENIUS_KIND, lambda_value=0.1)

    this_value = oracles.thm1_objective_value(
        numpy.zeros((2, 2)), tau, regularizer_dict)
    _add_check(
        row_dicts, 'thm1_zero_coeffs_objective', this_value,
        '= 0.5 * tau', abs(this_value - 0.5 * tau) <= OBJECTIVE_TOLERANCE)

    rng_object = numlin.create_rng(verify_dict[experiment_config.SEED_KEY])
    coeff_matrix = 0.5 * rng_object.standard_normal(
        (DOMINANCE_NUM_POINTS, DOMINANCE_NUM_POINTS))
    multiplicity = numlin.sigma_min_space(
        coeff_matrix - numpy.eye(DOMINANCE_NUM_POINTS))[1]

    b_matrix = rng_object.standard_normal(
        (DOMINANCE_EMBEDDING_DIM, multiplicity))
    b_matrix = b_matrix * numpy.sqrt(tau / numpy.sum(b_matrix ** 2))
    optimal_value = selfexpress.evaluate_f(
        oracles.thm1_optimal_z(coeff_matrix, tau, b_matrix), coeff_matrix,
        regularizer_dict
    )[0]

    this_value = abs(
        optimal_value -
        oracles.thm1_objective_value(coeff_matrix, tau, regularizer_dict)
    )
    _add_check(
        row_dicts, 'thm1_construction_objective_gap', this_value,
        '<= {0:g}'.format(OBJECTIVE_TOLERANCE),
        this_value <= OBJECTIVE_TOLERANCE)

    min_random_value = numpy.inf
    for _ in range(verify_dict[experiment_config.NUM_DOMINANCE_SAMPLES_KEY]):
        this_embedding_matrix = rng_object.standard_normal(
            (DOMINANCE_EMBEDDING_DIM, DOMINANCE_NUM_POINTS))
        this_embedding_matrix = this_embedding_matrix * numpy.sqrt(
            tau / numpy.sum(this_embedding_matrix ** 2))

        min_random_value = min([
            min_random_value,
            selfexpress.evaluate_f(
                this_embedding_matrix, coeff_matrix, regularizer_dict)[0]
        ])

    this_value = min_random_value - optimal_value
    _add_check(
        row_dicts, 'thm1_random_dominance_margin', this_value,
        '>= -{0:g}'.format(OBJECTIVE_TOLERANCE),
        this_value >= -OBJECTIVE_TOLERANCE)


def _verify_thm2(verify_dict, row_dicts):
    """Checks the two-point construction and brute-force dominance."""

    tau = float(verify_dict[experiment_config.TAU_KEY])
    perturbation = float(
        verify_dict[experiment_config.PERTURB_THM2_ENTRY_KEY])

    for this_scheme in oracles.VALID_SCHEMES:
        this_solution_dict = oracles.thm2_canonical(
            num_points=THM2_NUM_POINTS, embedding_dim=THM2_EMBEDDING_DIM,
            tau=tau, scheme=this_scheme,
            perm_seed=verify_dict[experiment_config.SEED_KEY])

        this_coeff_matrix = this_solution_dict[oracles.C_STAR_KEY].copy()
        if perturbation != 0:
            this_row, this_column = numpy.argwhere(this_coeff_matrix != 0)[0]
            this_coeff_matrix[this_row, this_column] += perturbation

        this_feasibility_dict = oracles.check_feasibility(
            this_solution_dict[oracles.Z_STAR_KEY], this_coeff_matrix,
            tau=tau, scheme=this_scheme, zero_diag=True, equality=True)

        _add_check(
            row_dicts,
            'thm2_canonical_feasibility_{0:s}'.format(this_scheme),
            this_feasibility_dict[oracles.EXPRESSION_RESIDUAL_KEY],
            'feasible', this_feasibility_dict[oracles.FEASIBLE_KEY])

        this_value = numpy.sum(numpy.absolute(this_coeff_matrix))
        _add_check(
            row_dicts, 'thm2_canonical_l1_{0:s}'.format(this_scheme),
            this_value, '= 2', abs(this_value - 2.) <= 1e-12)

    for this_num_points, this_embedding_dim in verify_dict[
            experiment_config.BRUTE_FORCE_SIZES_KEY]:
        this_result_dict = oracles.thm2_brute_force(
            num_points=this_num_points, embedding_dim=this_embedding_dim,
            tau=tau, max_support_size=MAX_BRUTE_FORCE_SUPPORT,
            samples_per_pattern=verify_dict[
                experiment_config.SAMPLES_PER_PATTERN_KEY],
            seed=verify_dict[experiment_config.SEED_KEY]
        )

        this_value = this_result_dict[oracles.BEST_L1_KEY]
        _add_check(
            row_dicts, 'thm2_brute_force_N{0:d}_d{1:d}'.format(
                this_num_points, this_embedding_dim),
            this_value, '>= 2 - {0:g}'.format(BOUND_TOLERANCE),
            this_value >= 2. - BOUND_TOLERANCE)


def _verify_thm3(verify_dict, row_dicts):
    """Checks the rank-one construction and random-search dominance."""

    tau = float(verify_dict[experiment_config.TAU_KEY])

    for this_exponent in verify_dict[experiment_config.SCHATTEN_EXPONENTS_KEY]:
        this_solution_dict = oracles.thm3_canonical(
            num_points=THM3_NUM_POINTS, embedding_dim=THM3_EMBEDDING_DIM,
            tau=tau, schatten_p=float(this_exponent),
            q_seed=verify_dict[experiment_config.SEED_KEY])

        this_feasibility_dict = oracles.check_feasibility(
            this_solution_dict[oracles.Z_STAR_KEY],
            this_solution_dict[oracles.C_STAR_KEY], tau=tau, equality=True)
        this_value = this_solution_dict[oracles.OBJECTIVE_KEY]

        _add_check(
            row_dicts, 'thm3_canonical_p{0:g}'.format(this_exponent),
            this_value, '= 1, feasible',
            this_feasibility_dict[oracles.FEASIBLE_KEY] and
            abs(this_value - 1.) <= THM3_NORM_TOLERANCE
        )

        this_value = oracles.thm3_random_search(
            num_points=THM3_NUM_POINTS, schatten_p=float(this_exponent),
            num_candidates=verify_dict[
                experiment_config.NUM_RANDOM_CANDIDATES_KEY],
            seed=verify_dict[experiment_config.SEED_KEY]
        )[oracles.BEST_SCORE_KEY]

        _add_check(
            row_dicts, 'thm3_random_search_p{0:g}'.format(this_exponent),
            this_value, '>= 1 - {0:g}'.format(BOUND_TOLERANCE),
            this_value >= 1. - BOUND_TOLERANCE)


def _verify_lemma1_and_thm4(verify_dict, row_dicts):
    """Checks the l1 lower bound and the paired-duplicate structure."""

    rng_object = numlin.create_rng(verify_dict[experiment_config.SEED_KEY])
    dictionary_matrix = rng_object.standard_normal((3, 3))
    dictionary_matrix = dictionary_matrix / numpy.linalg.norm(
        dictionary_matrix, axis=0, keepdims=True)

    this_value = oracles.lemma1_min_l1(
        dictionary_matrix, dictionary_matrix[:, 0].copy())
    _add_check(
        row_dicts, 'lemma1_duplicate', this_value, '= 1',
        abs(this_value - 1.) <= LEMMA1_TOLERANCE)

    this_value = oracles.lemma1_min_l1(
        dictionary_matrix, -dictionary_matrix[:, 1])
    _add_check(
        row_dicts, 'lemma1_negated_duplicate', this_value, '= 1',
        abs(this_value - 1.) <= LEMMA1_TOLERANCE)

    this_value = oracles.lemma1_min_l1(
        numpy.eye(2), numpy.array([1., 1.]) / numpy.sqrt(2.))
    _add_check(
        row_dicts, 'lemma1_diagonal', this_value, '= sqrt(2)',
        abs(this_value - numpy.sqrt(2.)) <= LEMMA1_DIAGONAL_TOLERANCE)

    this_value = oracles.lemma1_min_l1(
        numpy.eye(3), numpy.full(3, 1. / numpy.sqrt(3.)))
    _add_check(
        row_dicts, 'lemma1_no_duplicate', this_value,
        '> 1 + {0:g}'.format(LEMMA1_TOLERANCE),
        this_value > 1. + LEMMA1_TOLERANCE)

    tau = float(verify_dict[experiment_config.TAU_KEY])
    z_vector = rng_object.standard_normal(2)
    z_vector = z_vector * numpy.sqrt(tau / numpy.sum(z_vector ** 2))

    is_degenerate = oracles.thm4_check(
        numpy.stack([z_vector, z_vector], axis=1),
        numpy.array([[0., 1.], [1., 0.]]), tau=tau, tolerance=1e-8
    )[0]
    _add_check(row_dicts, 'thm4_pair', float(is_degenerate), '= 1',
               is_degenerate)


def _verify_scaling_attack(verify_dict, row_dicts):
    """Checks that rescaling the embedding leaves reconstructions unchanged.

    Each of `SCALING_NUM_NETWORKS` random networks is attacked once with
    alpha = `SCALING_ALPHA`, then `SCALING_NUM_ATTACKS` times with C scaled
    along, and the worst value over networks is reported.

    :param verify_dict: Verify section of config.
    :param row_dicts: List of check rows (appended in place).
    """

    seed = verify_dict[experiment_config.SEED_KEY]
    regularizer_dict = selfexpress.create_regularizer(
        selfexpress.FROBENIUS_KIND, lambda_value=SCALING_LAMBDA)

    recon_changes = []
    norm_ratio_errors = []
    f_ratios = []
    iterated_recon_changes = []

    for k in range(SCALING_NUM_NETWORKS):
        param_dict = autoenc.init_params(
            input_dim=SCALING_INPUT_DIM, embedding_dim=SCALING_INPUT_DIM,
            num_hidden_units=SCALING_NUM_HIDDEN_UNITS, seed=seed + k)
        rng_object = numlin.create_rng(seed + k + 1000)
        data_matrix = rng_object.standard_normal(
            (SCALING_INPUT_DIM, SCALING_NUM_POINTS))
        coeff_matrix = rng_object.standard_normal(
            (SCALING_NUM_POINTS, SCALING_NUM_POINTS))

        embedding_matrix = autoenc.encode(data_matrix, param_dict)
        new_param_dict = autoenc.scaling_attack(param_dict, SCALING_ALPHA)
        new_embedding_matrix = autoenc.encode(data_matrix, new_param_dict)

        recon_changes.append(numpy.max(numpy.absolute(
            autoenc.decode(new_embedding_matrix, new_param_dict) -
            autoenc.decode(embedding_matrix, param_dict)
        )))
        norm_ratio_errors.append(abs(
            numpy.linalg.norm(new_embedding_matrix) /
            numpy.linalg.norm(embedding_matrix) - SCALING_ALPHA
        ))

        recon_matrix = autoenc.decode(
            numpy.dot(embedding_matrix, coeff_matrix), param_dict)
        first_f_value = selfexpress.evaluate_f(
            embedding_matrix, coeff_matrix, regularizer_dict)[0]

        new_param_dict = param_dict
        new_coeff_matrix = coeff_matrix

        for _ in range(SCALING_NUM_ATTACKS):
            new_param_dict = autoenc.scaling_attack(
                new_param_dict, SCALING_ALPHA, coeff_scale=SCALING_ALPHA)
            new_coeff_matrix = SCALING_ALPHA * new_coeff_matrix

        new_embedding_matrix = autoenc.encode(data_matrix, new_param_dict)
        f_ratios.append(selfexpress.evaluate_f(
            new_embedding_matrix, new_coeff_matrix, regularizer_dict
        )[0] / first_f_value)
        iterated_recon_changes.append(numpy.max(numpy.absolute(
            autoenc.decode(numpy.dot(new_embedding_matrix, new_coeff_matrix),
                           new_param_dict) -
            recon_matrix
        )))

    this_value = max(recon_changes)
    _add_check(
        row_dicts, 'scaling_attack_reconstruction_change', this_value,
        '<= {0:g}'.format(SCALING_TOLERANCE), this_value <= SCALING_TOLERANCE)

    this_value = max(norm_ratio_errors)
    _add_check(
        row_dicts, 'scaling_attack_norm_ratio_error', this_value,
        '<= {0:g}'.format(SCALING_TOLERANCE), this_value <= SCALING_TOLERANCE)

    this_value = max(f_ratios)
    _add_check(
        row_dicts, 'iterated_attack_f_ratio', this_value,
        '< {0:g}'.format(SCALING_F_RATIO_TOLERANCE),
        this_value < SCALING_F_RATIO_TOLERANCE)

    this_value = max(iterated_recon_changes)
    _add_check(
        row_dicts, 'iterated_attack_reconstruction_change', this_value,
        '<= {0:g}'.format(SCALING_TOLERANCE), this_value <= SCALING_TOLERANCE)


def cmd_verify(config_dict):
    """Runs the full suite of theorem checks.

    :param config_dict: Dictionary created by `experiment_config.merge_config`.
    :return: all_passed: Boolean flag.
    :return: report_table: pandas DataFrame with columns "check", "value",
        "expected", "passed".
    """

    verify_dict = config_dict[experiment_config.VERIFY_SECTION]
    row_dicts = []

    _verify_thm1(verify_dict, row_dicts)
    _verify_thm2(verify_dict, row_dicts)
    _verify_thm3(verify_dict, row_dicts)
    _verify_lemma1_and_thm4(verify_dict, row_dicts)
    _verify_scaling_attack(verify_dict, row_dicts)

    report_table = pandas.DataFrame(row_dicts, columns=VERIFY_COLUMNS)
    all_passed = bool(report_table[PASSED_COLUMN].all())

    report_file_name = _output_file_name(config_dict, VERIFY_FILE_NAME)
    LOGGER.info('Writing verification report to: "%s"...', report_file_name)
    report_plotting.write_summary(report_file_name, report_table)

    print(report_table.to_string(index=False))
    print('{0:d} of {1:d} checks passed.'.format(
        int(report_table[PASSED_COLUMN].sum()), len(report_table.index)
    ))

    return all_passed, report_table


def _cluster_both_modes(coeff_matrix, labels, num_clusters, config_dict,
                        method_name):
    """Clusters one C with and without post-processing.

    :param coeff_matrix: N-by-N numpy array (C).
    :param labels: length-N numpy array of true labels.
    :param num_clusters: K.
    :param config_dict: Dictionary created by `experiment_config.merge_config`.
    :param method_name: Name for the "method" column.
    :return: row_dicts: List of two dictionaries.
    :return: predicted_label_dict: Dictionary from Boolean post-processing
        flag to predicted labels.
    """

    if coeff_matrix.shape[0] != len(labels):
        error_string = (
            'C has {0:d} rows but there are {1:d} labels.'
        ).format(coeff_matrix.shape[0], len(labels))

        raise ValueError(error_string)

    seed = config_dict[experiment_config.TRAINING_SECTION][
        experiment_config.SEED_KEY]
    row_dicts = []
    predicted_label_dict = {}

    for this_flag in [True, False]:
        these_predicted_labels = cluster.cluster_coefficients(
            coeff_matrix, num_clusters,
            experiment_config.create_postprocess_dict(
                config_dict, enabled=this_flag),
            seed=seed
        )
        predicted_label_dict[this_flag] = these_predicted_labels

        row_dicts.append({
            METHOD_COLUMN: method_name,
            POSTPROCESSING_COLUMN: 'on' if this_flag else 'off',
            ACCURACY_COLUMN: cluster.accuracy(these_predicted_labels, labels)
        })

    return row_dicts, predicted_label_dict


def cmd_cluster(config_dict):
    """Clusters with the trained C, with and without post-processing.

    Also clusters with C from the pretrained embedding and runs the raw-data
    baseline over the configured lambdas.

    :param config_dict: Dictionary created by `experiment_config.merge_config`.
    :return: report_table: pandas DataFrame with columns "method",
        "postprocessing", "accuracy".
    :raises: ValueError: if C and the labels have different sizes.
    """

    dataset_dict = _read_dataset(config_dict)
    labels = dataset_dict[synthdata.LABELS_KEY]
    num_clusters = _num_clusters(config_dict, labels)
    enabled = config_dict[experiment_config.POSTPROCESS_SECTION][
        experiment_config.ENABLED_KEY]

    coeff_matrix = synthdata.read_matrix(
        _output_file_name(config_dict, COEFFS_FILE_NAME,
                          raise_error_if_missing=True)
    )
    row_dicts, predicted_label_dict = _cluster_both_modes(
        coeff_matrix, labels, num_clusters, config_dict, SEDSC_METHOD)

    predicted_labels_file_name = _output_file_name(
        config_dict, PREDICTED_LABELS_FILE_NAME)
    LOGGER.info('Writing predicted labels to: "%s"...',
                predicted_labels_file_name)
    synthdata.write_labels(
        predicted_labels_file_name, predicted_label_dict[enabled])

    initial_coeffs_file_name = _output_file_name(
        config_dict, INITIAL_COEFFS_FILE_NAME)
    if os.path.isfile(initial_coeffs_file_name):
        row_dicts += _cluster_both_modes(
            synthdata.read_matrix(initial_coeffs_file_name), labels,
            num_clusters, config_dict, PRETRAINED_METHOD
        )[0]

    baseline_table, best_dict = cluster.sweep_raw_baseline(
        dataset_dict[synthdata.DATA_MATRIX_KEY], labels, num_clusters,
        postprocess_dict=experiment_config.create_postprocess_dict(
            config_dict, enabled=True),
        lambda_values=numpy.array(
            config_dict[experiment_config.POSTPROCESS_SECTION][
                experiment_config.RAW_BASELINE_LAMBDAS_KEY],
            dtype=float),
        seed=config_dict[experiment_config.TRAINING_SECTION][
            experiment_config.SEED_KEY]
    )

    baseline_file_name = _output_file_name(config_dict, RAW_BASELINE_FILE_NAME)
    LOGGER.info('Writing raw-data baseline to: "%s"...', baseline_file_name)
    report_plotting.write_summary(baseline_file_name, baseline_table)

    best_row = baseline_table.loc[
        baseline_table[cluster.LAMBDA_COLUMN] ==
        best_dict[cluster.BEST_LAMBDA_KEY]
    ].iloc[0]

    for this_flag, this_column in [
            (True, cluster.POSTPROCESSED_ACCURACY_COLUMN),
            (False, cluster.RAW_ACCURACY_COLUMN)
    ]:
        row_dicts.append({
            METHOD_COLUMN: RAW_BASELINE_METHOD,
            POSTPROCESSING_COLUMN: 'on' if this_flag else 'off',
            ACCURACY_COLUMN: float(best_row[this_column])
        })

    report_table = pandas.DataFrame(row_dicts, columns=CLUSTER_COLUMNS)

    report_file_name = _output_file_name(config_dict, CLUSTER_FILE_NAME)
    LOGGER.info('Writing clustering report to: "%s"...', report_file_name)
    report_plotting.write_summary(report_file_name, report_table)

    LOGGER.info(
        'SEDSC accuracy with post-processing %s: %.4f (best raw-data lambda '
        '= %g).', 'on' if enabled else 'off',
        cluster.accuracy(predicted_label_dict[enabled], labels),
        best_dict[cluster.BEST_LAMBDA_KEY])

    print(report_table.to_string(index=False))
    return report_table


def cmd_report(config_dict):
    """Writes report figures and the degeneracy summary.

    :param config_dict: Dictionary created by `experiment_config.merge_config`.
    :return: summary_table: See doc for `report_plotting.summarize_degeneracy`.
    :raises: ValueError: if the training trace is empty.
    """

    trace_table = sedsc.read_trace(
        _output_file_name(config_dict, TRACE_FILE_NAME,
                          raise_error_if_missing=True)
    )

    pretrain_trace_file_name = _output_file_name(
        config_dict, PRETRAIN_TRACE_FILE_NAME)
    if os.path.isfile(pretrain_trace_file_name):
        pretrain_trace_table = sedsc.read_trace(pretrain_trace_file_name)
    else:
        pretrain_trace_table = None

    report_plotting.plot_z_norm_trace(
        trace_table, _output_file_name(config_dict, Z_NORM_FIGURE_FILE_NAME),
        pretrain_trace_table=pretrain_trace_table)

    dataset_dict = _read_dataset(config_dict)
    labels = dataset_dict[synthdata.LABELS_KEY]
    pretrained_embedding_matrix = synthdata.read_matrix(
        _output_file_name(config_dict, PRETRAINED_EMBEDDING_FILE_NAME))
    embedding_matrix = synthdata.read_matrix(
        _output_file_name(config_dict, EMBEDDING_FILE_NAME))
    initial_coeff_matrix = synthdata.read_matrix(
        _output_file_name(config_dict, INITIAL_COEFFS_FILE_NAME))
    coeff_matrix = synthdata.read_matrix(
        _output_file_name(config_dict, COEFFS_FILE_NAME))

    spectrum_table = report_plotting.compute_class_spectra({
        RAW_REPRESENTATION: dataset_dict[synthdata.DATA_MATRIX_KEY],
        PRETRAINED_REPRESENTATION: pretrained_embedding_matrix,
        TRAINED_REPRESENTATION: embedding_matrix
    }, labels)
    report_plotting.plot_class_spectra(
        spectrum_table,
        _output_file_name(config_dict, SPECTRA_FIGURE_FILE_NAME))

    report_plotting.plot_embedding_scatter(
        pretrained_embedding_matrix, embedding_matrix, labels,
        _output_file_name(config_dict, SCATTER_FIGURE_FILE_NAME))

    top2_mass = report_plotting.plot_coeff_heatmap(
        coeff_matrix, _output_file_name(config_dict, HEATMAP_FIGURE_FILE_NAME))
    LOGGER.info('Share of l1 mass in two largest entries of C: %.4f',
                top2_mass)

    summary_table = report_plotting.summarize_degeneracy({
        PRETRAINED_STAGE: (pretrained_embedding_matrix, initial_coeff_matrix),
        TRAINED_STAGE: (embedding_matrix, coeff_matrix)
    })

    summary_file_name = _output_file_name(config_dict, SUMMARY_FILE_NAME)
    LOGGER.info('Writing degeneracy summary to: "%s"...', summary_file_name)
    report_plotting.write_summary(summary_file_name, summary_table)

    return summary_table
