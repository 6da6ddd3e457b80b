"""Joint training of autoencoder and self-expression matrix (SEDSC).

The joint loss is

gamma * 0.5 * ||Z C - Z||_F^2 + ||X - decode(Z C)||_F^2 + P(Z)
    + lambda * theta(C),

where Z = normalize(encode(X)) and P is the instance-norm penalty.  Training
follows three stages: pretrain the autoencoder with C = I and gamma = 0,
initialize C by solving for C with Z fixed, then run proximal gradient
descent on all parameters jointly.

d_x = number of input dimensions
d = number of embedding dimensions
N = number of points
"""

import logging
import warnings
import numpy
import pandas
from subcol.utils import autoenc
from subcol.utils import normalization
from subcol.utils import oracles
from subcol.utils import selfexpress
from subcol.utils import file_system_utils
from subcol.utils import error_checking

LOGGER = logging.getLogger(__name__)

GAMMA_KEY = 'gamma'
REGULARIZER_KEY = 'regularizer_dict'
NORMALIZATION_KEY = 'normalization_dict'
NUM_PRETRAIN_ITERS_KEY = 'num_pretrain_iters'
NUM_JOINT_ITERS_KEY = 'num_joint_iters'
LEARNING_RATE_KEY = 'learning_rate'
PRETRAIN_LEARNING_RATE_KEY = 'pretrain_learning_rate'
SEED_KEY = 'seed'
NUM_HIDDEN_UNITS_KEY = 'num_hidden_units'
EMBEDDING_DIM_KEY = 'embedding_dim'
FREEZE_NETWORK_KEY = 'freeze_network'
LOG_EVERY_KEY = 'log_every'

DEFAULT_GAMMA = 2.
DEFAULT_NUM_PRETRAIN_ITERS = 2000
DEFAULT_NUM_JOINT_ITERS = 10000
DEFAULT_LEARNING_RATE = 5e-4
DEFAULT_NUM_HIDDEN_UNITS = 100
DEFAULT_LOG_EVERY = 500

DIVERGENCE_THRESHOLD = 1e12
RELATIVE_DIVERGENCE_FACTOR = 100.
CONVERGENCE_TOLERANCE = 1e-12

ITERATION_COLUMN = 'iteration'
RECON_LOSS_COLUMN = 'recon_loss'
F_RESIDUAL_COLUMN = 'f_residual'
F_PENALTY_COLUMN = 'f_penalty'
INSTANCE_PENALTY_COLUMN = 'instance_penalty'
SMOOTH_LOSS_COLUMN = 'smooth_loss'
TOTAL_LOSS_COLUMN = 'total_loss'
Z_NORM_COLUMN = 'z_frobenius_norm'
GRADIENT_NORM_COLUMN = 'gradient_norm'
ZERO_BLOCK_COLUMN = 'zero_block'

PRETRAIN_COLUMNS = [
    ITERATION_COLUMN, RECON_LOSS_COLUMN, Z_NORM_COLUMN, GRADIENT_NORM_COLUMN
]
JOINT_COLUMNS = [
    ITERATION_COLUMN, RECON_LOSS_COLUMN, F_RESIDUAL_COLUMN, F_PENALTY_COLUMN,
    INSTANCE_PENALTY_COLUMN, SMOOTH_LOSS_COLUMN, TOTAL_LOSS_COLUMN,
    Z_NORM_COLUMN, GRADIENT_NORM_COLUMN, ZERO_BLOCK_COLUMN
] + oracles.METRIC_KEYS

ABORTED_ATTR = 'aborted'
CONVERGED_ATTR = 'converged'
NUM_ZERO_BLOCK_ATTR = 'num_zero_block_iterations'

DECREASING_KEY = 'decreasing'
NUM_WINDOWS_KEY = 'num_windows'
MIN_GRADIENT_NORM_KEY = 'min_gradient_norm'

PRETRAINED_PARAMS_KEY = 'pretrained_param_dict'
PRETRAIN_TRACE_KEY = 'pretrain_trace'
INITIAL_SOLUTION_KEY = 'initial_solution_dict'
PARAMS_KEY = 'param_dict'
SOLUTION_KEY = 'solution_dict'
TRACE_KEY = 'trace'

FLOAT_FORMAT_STRING = '%.17g'


def create_train_config(
        regularizer_dict, normalization_dict, gamma=DEFAULT_GAMMA,
        num_pretrain_iters=DEFAULT_NUM_PRETRAIN_ITERS,
        num_joint_iters=DEFAULT_NUM_JOINT_ITERS,
        learning_rate=DEFAULT_LEARNING_RATE, pretrain_learning_rate=None,
        seed=0, num_hidden_units=DEFAULT_NUM_HIDDEN_UNITS, embedding_dim=None,
        freeze_network=False, log_every=DEFAULT_LOG_EVERY):
    """Creates training configuration.

    :param regularizer_dict: Dictionary created by
        `selfexpress.create_regularizer`.
    :param normalization_dict: Dictionary created by
        `normalization.create_normalization`.
    :param gamma: Weight of self-expression residual (>= 0).
    :param num_pretrain_iters: Number of pretraining iterations (>= 1).
    :param num_joint_iters: Number of joint iterations (>= 1).
    :param learning_rate: Learning rate for joint training (> 0).
    :param pretrain_learning_rate: Learning rate for pretraining.  If None,
        same as `learning_rate`.
    :param seed: Random seed for weight initialization.
    :param num_hidden_units: Width of hidden layers (encoder and decoder).
    :param embedding_dim: d.  If None, will be d_x.
    :param freeze_network: Boolean flag.  If True, joint training updates only
        C (autoencoder-only baseline).
    :param log_every: Log progress every K iterations.
    :return: train_config_dict: Dictionary with keys listed at top of module.
    """

    error_checking.assert_is_string_in_set(
        regularizer_dict[selfexpress.KIND_KEY],
        selfexpress.VALID_REGULARIZER_KINDS)
    error_checking.assert_is_string_in_set(
        normalization_dict[normalization.KIND_KEY],
        normalization.VALID_NORM_KINDS)

    error_checking.assert_is_geq(gamma, 0.)
    error_checking.assert_is_integer(num_pretrain_iters)
    error_checking.assert_is_geq(num_pretrain_iters, 1)
    error_checking.assert_is_integer(num_joint_iters)
    error_checking.assert_is_geq(num_joint_iters, 1)
    error_checking.assert_is_greater(learning_rate, 0.)
    error_checking.assert_is_integer(seed)
    error_checking.assert_is_geq(seed, 0)
    error_checking.assert_is_integer(num_hidden_units)
    error_checking.assert_is_geq(num_hidden_units, 1)
    error_checking.assert_is_boolean(freeze_network)
    error_checking.assert_is_integer(log_every)
    error_checking.assert_is_geq(log_every, 1)

    if pretrain_learning_rate is None:
        pretrain_learning_rate = learning_rate
    error_checking.assert_is_greater(pretrain_learning_rate, 0.)

    if embedding_dim is not None:
        error_checking.assert_is_integer(embedding_dim)
        error_checking.assert_is_geq(embedding_dim, 1)

    return {
        GAMMA_KEY: float(gamma),
        REGULARIZER_KEY: regularizer_dict,
        NORMALIZATION_KEY: normalization_dict,
        NUM_PRETRAIN_ITERS_KEY: num_pretrain_iters,
        NUM_JOINT_ITERS_KEY: num_joint_iters,
        LEARNING_RATE_KEY: float(learning_rate),
        PRETRAIN_LEARNING_RATE_KEY: float(pretrain_learning_rate),
        SEED_KEY: seed,
        NUM_HIDDEN_UNITS_KEY: num_hidden_units,
        EMBEDDING_DIM_KEY: embedding_dim,
        FREEZE_NETWORK_KEY: freeze_network,
        LOG_EVERY_KEY: log_every
    }


def _gradient_norm(gradient_dict, keys):
    """Computes Euclidean norm of all gradients, stacked together.

    :param gradient_dict: Dictionary of numpy arrays.
    :param keys: Keys to include.
    :return: gradient_norm: Norm.
    """

    return float(numpy.sqrt(
        numpy.sum([numpy.sum(gradient_dict[k] ** 2) for k in keys])
    ))


def _is_diverged(loss_value, gradient_dict, reference_loss=None):
    """Determines whether training has blown up.

    Training has blown up if the loss or any gradient is non-finite, the loss
    exceeds `DIVERGENCE_THRESHOLD`, or the loss exceeds
    `RELATIVE_DIVERGENCE_FACTOR` * max(reference_loss, 1).

    :param loss_value: Smooth loss.
    :param gradient_dict: Dictionary of numpy arrays.
    :param reference_loss: Loss at first iteration.  If None, only the
        absolute threshold is used.
    :return: diverged_flag: Boolean flag.
    """

    if not numpy.isfinite(loss_value) or loss_value > DIVERGENCE_THRESHOLD:
        return True

    if reference_loss is not None and loss_value > (
            RELATIVE_DIVERGENCE_FACTOR * max([reference_loss, 1.])
    ):
        return True

    return not all(
        [numpy.all(numpy.isfinite(v)) for v in gradient_dict.values()]
    )


def _layer_normalization(normalization_dict):
    """Returns normalization dict if scheme is a layer, None otherwise.

    :param normalization_dict: Dictionary created by
        `normalization.create_normalization`.
    :return: normalization_dict: Same or None.
    """

    if normalization_dict[normalization.KIND_KEY] in (
            normalization.LAYER_NORM_KINDS
    ):
        return normalization_dict

    return None


def pretrain(data_matrix, train_config_dict, initial_param_dict=None):
    """Pretrains autoencoder on reconstruction loss only (C = I, gamma = 0).

    For the dataset and channel schemes, the renormalization layer is part of
    the encoder here too.

    :param data_matrix: d_x-by-N numpy array (X).
    :param train_config_dict: Dictionary created by `create_train_config`.
    :param initial_param_dict: Starting parameters.  If None, will be
        initialized randomly from the seed in `train_config_dict`.
    :return: param_dict: Dictionary with keys in `autoenc.PARAM_KEYS`.  If
        training blew up, these are the parameters that produced the last row
        of the trace (or the starting parameters, if the trace is empty).
    :return: trace_table: pandas DataFrame with columns in `PRETRAIN_COLUMNS`
        and one row per iteration run.  attrs["aborted"] says whether training
        blew up (see `_is_diverged`).
    """

    error_checking.assert_is_matrix(data_matrix)
    input_dim, num_points = data_matrix.shape

    if initial_param_dict is None:
        embedding_dim = train_config_dict[EMBEDDING_DIM_KEY]
        if embedding_dim is None:
            embedding_dim = input_dim

        param_dict = autoenc.init_params(
            input_dim=input_dim, embedding_dim=embedding_dim,
            num_hidden_units=train_config_dict[NUM_HIDDEN_UNITS_KEY],
            seed=train_config_dict[SEED_KEY])
    else:
        param_dict = autoenc.copy_params(initial_param_dict)

    normalization_dict = _layer_normalization(
        train_config_dict[NORMALIZATION_KEY])
    identity_matrix = numpy.eye(num_points)
    learning_rate = train_config_dict[PRETRAIN_LEARNING_RATE_KEY]
    num_iterations = train_config_dict[NUM_PRETRAIN_ITERS_KEY]
    log_every = train_config_dict[LOG_EVERY_KEY]

    trace_rows = []
    aborted = False
    first_loss = None
    last_param_dict = autoenc.copy_params(param_dict)

    for i in range(num_iterations):
        loss_dict, gradient_dict = autoenc.backprop(
            data_matrix, param_dict, identity_matrix, gamma=0.,
            normalization_dict=normalization_dict,
            compute_coeff_gradient=False)

        this_loss = loss_dict[autoenc.RECON_LOSS_KEY]
        if first_loss is None:
            first_loss = this_loss

        if _is_diverged(this_loss, gradient_dict, first_loss):
            LOGGER.error(
                'Pretraining blew up at iteration %d (loss = %s, first loss = '
                '%s).  Returning parameters from previous iteration.',
                i, str(this_loss), str(first_loss))
            param_dict = last_param_dict
            aborted = True
            break

        last_param_dict = autoenc.copy_params(param_dict)

        this_gradient_norm = _gradient_norm(gradient_dict, autoenc.PARAM_KEYS)
        trace_rows.append({
            ITERATION_COLUMN: i,
            RECON_LOSS_COLUMN: this_loss,
            Z_NORM_COLUMN: float(numpy.linalg.norm(
                loss_dict[autoenc.EMBEDDING_KEY])),
            GRADIENT_NORM_COLUMN: this_gradient_norm
        })

        if i % log_every == 0:
            LOGGER.info(
                'Pretraining iteration %d of %d: recon loss = %.6e',
                i, num_iterations, this_loss)

        for this_key in autoenc.PARAM_KEYS:
            param_dict[this_key] = (
                param_dict[this_key] - learning_rate * gradient_dict[this_key]
            )

    trace_table = pandas.DataFrame(trace_rows, columns=PRETRAIN_COLUMNS)
    trace_table.attrs[ABORTED_ATTR] = aborted

    return param_dict, trace_table


def init_c(embedding_matrix, regularizer_dict, option_dict=None):
    """Initializes C by minimizing F(Z, C) over C with Z fixed.

    :param embedding_matrix: d-by-N numpy array (Z from pretrained encoder).
    :param regularizer_dict: Dictionary created by
        `selfexpress.create_regularizer`.
    :param option_dict: See doc for `selfexpress.solve_c_fixed_z`.
    :return: solution_dict: See doc for `selfexpress.solve_c_fixed_z`.
    """

    solution_dict = selfexpress.solve_c_fixed_z(
        embedding_matrix, regularizer_dict, option_dict=option_dict)

    LOGGER.info(
        'Initialized C (%s regularizer): objective = %.6e after %d '
        'iterations.', regularizer_dict[selfexpress.KIND_KEY],
        solution_dict[selfexpress.OBJECTIVE_KEY],
        solution_dict[selfexpress.NUM_ITERATIONS_KEY])

    return solution_dict


def evaluate_objective(data_matrix, param_dict, coeff_matrix,
                       train_config_dict):
    """Evaluates full joint loss (smooth part plus lambda * theta(C)).

    :param data_matrix: d_x-by-N numpy array (X).
    :param param_dict: Dictionary with keys in `autoenc.PARAM_KEYS`.
    :param coeff_matrix: N-by-N numpy array (C).
    :param train_config_dict: Dictionary created by `create_train_config`.
    :return: objective_value: Joint loss.
    """

    regularizer_dict = train_config_dict[REGULARIZER_KEY]
    loss_dict = autoenc.backprop(
        data_matrix, param_dict, coeff_matrix,
        gamma=train_config_dict[GAMMA_KEY],
        normalization_dict=train_config_dict[NORMALIZATION_KEY],
        compute_coeff_gradient=False
    )[0]

    return loss_dict[autoenc.SMOOTH_LOSS_KEY] + (
        regularizer_dict[selfexpress.LAMBDA_KEY] *
        selfexpress.evaluate_regularizer(coeff_matrix, regularizer_dict)
    )


def _metrics_or_zeros(embedding_matrix, coeff_matrix):
    """Computes degeneracy metrics, or zeros if Z is all zeros.

    :param embedding_matrix: d-by-N numpy array.
    :param coeff_matrix: N-by-N numpy array.
    :return: metric_dict: See doc for `oracles.degeneracy_metrics`.
    """

    if not numpy.any(embedding_matrix != 0):
        return {k: 0. for k in oracles.METRIC_KEYS}

    return oracles.degeneracy_metrics(embedding_matrix, coeff_matrix)


def train_joint(data_matrix, param_dict, initial_solution_dict,
                train_config_dict):
    """Trains autoencoder and C jointly by proximal gradient descent.

    Each iteration takes a gradient step on all network parameters and C for
    the smooth part of the loss, then applies the proximal operator of
    lr * lambda * theta to C.

    :param data_matrix: d_x-by-N numpy array (X).
    :param param_dict: Dictionary with keys in `autoenc.PARAM_KEYS`
        (typically from `pretrain`).
    :param initial_solution_dict: Dictionary with key "coeff_matrix"
        (typically from `init_c`).
    :param train_config_dict: Dictionary created by `create_train_config`.
    :return: param_dict: Final network parameters (unchanged if the network
        is frozen).  If training blew up, parameters and C are those that
        produced the last row of the trace.
    :return: solution_dict: Dictionary with keys "coeff_matrix",
        "zero_diag", "converged", "num_iterations", "objective",
        "objective_history" (see `selfexpress.solve_c_fixed_z`).
    :return: trace_table: pandas DataFrame with columns in `JOINT_COLUMNS` and
        one row per iteration run.  attrs holds "aborted", "converged" and
        "num_zero_block_iterations".
    """

    error_checking.assert_is_matrix(data_matrix)
    num_points = data_matrix.shape[1]

    param_dict = autoenc.copy_params(param_dict)
    coeff_matrix = numpy.array(
        initial_solution_dict[selfexpress.COEFF_MATRIX_KEY], dtype=float)
    error_checking.assert_is_matrix(
        coeff_matrix, num_rows=num_points, num_columns=num_points)

    regularizer_dict = train_config_dict[REGULARIZER_KEY]
    normalization_dict = train_config_dict[NORMALIZATION_KEY]
    zero_diag = regularizer_dict[selfexpress.ZERO_DIAG_KEY]
    if zero_diag:
        numpy.fill_diagonal(coeff_matrix, 0.)

    gamma = train_config_dict[GAMMA_KEY]
    lambda_value = regularizer_dict[selfexpress.LAMBDA_KEY]
    learning_rate = train_config_dict[LEARNING_RATE_KEY]
    num_iterations = train_config_dict[NUM_JOINT_ITERS_KEY]
    freeze_network = train_config_dict[FREEZE_NETWORK_KEY]
    log_every = train_config_dict[LOG_EVERY_KEY]

    if freeze_network:
        gradient_keys = [autoenc.COEFF_GRADIENT_KEY]
    else:
        gradient_keys = autoenc.PARAM_KEYS + [autoenc.COEFF_GRADIENT_KEY]

    trace_rows = []
    aborted = False
    num_zero_block_iterations = 0
    first_loss = None
    last_param_dict = autoenc.copy_params(param_dict)
    last_coeff_matrix = coeff_matrix.copy()

    for i in range(num_iterations):
        loss_dict, gradient_dict = autoenc.backprop(
            data_matrix, param_dict, coeff_matrix, gamma=gamma,
            normalization_dict=normalization_dict, zero_diag=zero_diag)

        smooth_loss = loss_dict[autoenc.SMOOTH_LOSS_KEY]
        if first_loss is None:
            first_loss = smooth_loss

        if _is_diverged(smooth_loss, gradient_dict, first_loss):
            LOGGER.error(
                'Joint training blew up at iteration %d (smooth loss = %s, '
                'first loss = %s).  Returning state from previous iteration.',
                i, str(smooth_loss), str(first_loss))
            param_dict = last_param_dict
            coeff_matrix = last_coeff_matrix
            aborted = True
            break

        last_param_dict = autoenc.copy_params(param_dict)
        last_coeff_matrix = coeff_matrix.copy()

        penalty_value = lambda_value * selfexpress.evaluate_regularizer(
            coeff_matrix, regularizer_dict)
        embedding_matrix = loss_dict[autoenc.EMBEDDING_KEY]
        zero_block_flag = loss_dict[autoenc.ZERO_BLOCK_KEY]
        num_zero_block_iterations += int(zero_block_flag)

        this_row = {
            ITERATION_COLUMN: i,
            RECON_LOSS_COLUMN: loss_dict[autoenc.RECON_LOSS_KEY],
            F_RESIDUAL_COLUMN: loss_dict[autoenc.F_RESIDUAL_KEY],
            F_PENALTY_COLUMN: penalty_value,
            INSTANCE_PENALTY_COLUMN: loss_dict[autoenc.INSTANCE_PENALTY_KEY],
            SMOOTH_LOSS_COLUMN: smooth_loss,
            TOTAL_LOSS_COLUMN: smooth_loss + penalty_value,
            Z_NORM_COLUMN: float(numpy.linalg.norm(embedding_matrix)),
            GRADIENT_NORM_COLUMN: _gradient_norm(gradient_dict, gradient_keys),
            ZERO_BLOCK_COLUMN: zero_block_flag
        }
        this_row.update(_metrics_or_zeros(embedding_matrix, coeff_matrix))
        trace_rows.append(this_row)

        LOGGER.debug(
            'Joint iteration %d: total = %.10e, F residual = %.10e, '
            '||Z||_F = %.10e', i, this_row[TOTAL_LOSS_COLUMN],
            this_row[F_RESIDUAL_COLUMN], this_row[Z_NORM_COLUMN])

        if i % log_every == 0:
            LOGGER.info(
                'Joint iteration %d of %d: total loss = %.6e, ||Z||_F = %.6e',
                i, num_iterations, this_row[TOTAL_LOSS_COLUMN],
                this_row[Z_NORM_COLUMN])

        if not freeze_network:
            for this_key in autoenc.PARAM_KEYS:
                param_dict[this_key] = (
                    param_dict[this_key] -
                    learning_rate * gradient_dict[this_key]
                )

        coeff_matrix = selfexpress.prox(
            coeff_matrix -
            learning_rate * gradient_dict[autoenc.COEFF_GRADIENT_KEY],
            learning_rate, regularizer_dict
        )

    if num_zero_block_iterations > 0:
        warnings.warn(
            'Normalization met an all-zero block in {0:d} iterations.  Those '
            'blocks were left at zero.'.format(num_zero_block_iterations)
        )

    objective_values = numpy.array(
        [r[TOTAL_LOSS_COLUMN] for r in trace_rows])

    converged = False
    if not aborted and len(objective_values) > 1:
        converged = bool(
            numpy.absolute(objective_values[-1] - objective_values[-2]) <=
            CONVERGENCE_TOLERANCE * max([1., abs(objective_values[-2])])
        )

    trace_table = pandas.DataFrame(trace_rows, columns=JOINT_COLUMNS)
    trace_table.attrs[ABORTED_ATTR] = aborted
    trace_table.attrs[CONVERGED_ATTR] = converged
    trace_table.attrs[NUM_ZERO_BLOCK_ATTR] = num_zero_block_iterations

    solution_dict = {
        selfexpress.COEFF_MATRIX_KEY: coeff_matrix,
        selfexpress.ZERO_DIAG_KEY: zero_diag,
        selfexpress.CONVERGED_KEY: converged,
        selfexpress.NUM_ITERATIONS_KEY: len(trace_rows),
        selfexpress.OBJECTIVE_KEY: (
            float(objective_values[-1]) if len(objective_values) > 0
            else numpy.nan
        ),
        selfexpress.OBJECTIVE_HISTORY_KEY: objective_values
    }

    return param_dict, solution_dict, trace_table


def check_norm_decrease(trace_table, window_size=100, tail_fraction=0.5):
    """Checks whether ||Z||_F keeps decreasing over the tail of training.

    The tail (last `tail_fraction` of the rows) is cut into consecutive windows
    of `window_size` iterations, and ||Z||_F must strictly decrease from the
    start of each window to the start of the next.

    :param trace_table: pandas DataFrame with columns "z_frobenius_norm" and
        "gradient_norm".
    :param window_size: Window length (number of iterations).
    :param tail_fraction: Fraction of trace that makes up the tail.
    :return: result_dict: Dictionary with the following keys.
    result_dict['decreasing']: Boolean flag.
    result_dict['num_windows']: Number of windows checked.
    result_dict['min_gradient_norm']: Smallest gradient norm in whole trace.
    :raises: ValueError: if the tail is shorter than one window.
    """

    error_checking.assert_columns_in_dataframe(
        trace_table, [Z_NORM_COLUMN, GRADIENT_NORM_COLUMN])
    error_checking.assert_is_integer(window_size)
    error_checking.assert_is_geq(window_size, 1)
    error_checking.assert_is_greater(tail_fraction, 0.)
    error_checking.assert_is_leq(tail_fraction, 1.)

    num_rows = len(trace_table.index)
    first_tail_index = num_rows - int(numpy.floor(tail_fraction * num_rows))
    boundary_indices = numpy.arange(first_tail_index, num_rows, window_size)

    if len(boundary_indices) < 2:
        error_string = (
            'Tail of trace ({0:d} rows) is too short for window size {1:d}.'
        ).format(num_rows - first_tail_index, window_size)

        raise ValueError(error_string)

    boundary_norms = trace_table[Z_NORM_COLUMN].values[boundary_indices]

    return {
        DECREASING_KEY: bool(numpy.all(numpy.diff(boundary_norms) < 0)),
        NUM_WINDOWS_KEY: len(boundary_indices) - 1,
        MIN_GRADIENT_NORM_KEY: float(
            numpy.min(trace_table[GRADIENT_NORM_COLUMN].values))
    }


def train_sedsc(data_matrix, train_config_dict, c_option_dict=None):
    """Runs the full pipeline: pretrain, then init_c, then train_joint.

    :param data_matrix: d_x-by-N numpy array (X).
    :param train_config_dict: Dictionary created by `create_train_config`.
    :param c_option_dict: See doc for `init_c`.
    :return: result_dict: Dictionary with the following keys.  If pretraining
        blew up, the last three are None.
    result_dict['pretrained_param_dict']: Output of `pretrain`.
    result_dict['pretrain_trace']: Output of `pretrain`.
    result_dict['initial_solution_dict']: Output of `init_c`.
    result_dict['param_dict']: Output of `train_joint`.
    result_dict['solution_dict']: Output of `train_joint`.
    result_dict['trace']: Output of `train_joint`.
    """

    pretrained_param_dict, pretrain_trace_table = pretrain(
        data_matrix, train_config_dict)

    result_dict = {
        PRETRAINED_PARAMS_KEY: pretrained_param_dict,
        PRETRAIN_TRACE_KEY: pretrain_trace_table,
        INITIAL_SOLUTION_KEY: None,
        PARAMS_KEY: None,
        SOLUTION_KEY: None,
        TRACE_KEY: None
    }

    if pretrain_trace_table.attrs[ABORTED_ATTR]:
        return result_dict

    embedding_matrix = autoenc.embed(
        data_matrix, pretrained_param_dict,
        normalization_dict=_layer_normalization(
            train_config_dict[NORMALIZATION_KEY])
    )[0]

    initial_solution_dict = init_c(
        embedding_matrix, train_config_dict[REGULARIZER_KEY],
        option_dict=c_option_dict)

    param_dict, solution_dict, trace_table = train_joint(
        data_matrix, pretrained_param_dict, initial_solution_dict,
        train_config_dict)

    result_dict[INITIAL_SOLUTION_KEY] = initial_solution_dict
    result_dict[PARAMS_KEY] = param_dict
    result_dict[SOLUTION_KEY] = solution_dict
    result_dict[TRACE_KEY] = trace_table

    return result_dict


def write_trace(trace_file_name, trace_table):
    """Writes training trace to CSV file.

    :param trace_file_name: Path to output file.
    :param trace_table: pandas DataFrame created by `pretrain` or
        `train_joint`.
    """

    file_system_utils.mkdir_recursive_if_necessary(file_name=trace_file_name)
    trace_table.to_csv(
        trace_file_name, index=False, float_format=FLOAT_FORMAT_STRING)


def read_trace(trace_file_name):
    """Reads training trace from CSV file.

    :param trace_file_name: Path to input file.
    :return: trace_table: pandas DataFrame.
    :raises: ValueError: if the file has no rows.
    """

    error_checking.assert_file_exists(trace_file_name)
    trace_table = pandas.read_csv(trace_file_name)

    if len(trace_table.index) == 0:
        raise ValueError(
            'Trace file "{0:s}" has no rows.'.format(trace_file_name))

    error_checking.assert_columns_in_dataframe(
        trace_table, [ITERATION_COLUMN, Z_NORM_COLUMN])
    return trace_table
