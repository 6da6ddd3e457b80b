"""Experiment configuration (JSON file with one section per concern).

Every key has a default in `DEFAULT_CONFIG_DICT`.  A config file may give any
subset of sections and keys; unknown sections, unknown keys and out-of-range
values raise `error_checking.ConfigValidationError` before any computation.
"""

import copy
import json
import logging
from subcol.utils import cluster
from subcol.utils import sedsc
from subcol.utils import synthdata
from subcol.utils import selfexpress
from subcol.utils import normalization
from subcol.utils import error_checking
from subcol.utils import file_system_utils

LOGGER = logging.getLogger(__name__)

DATA_SECTION = 'data'
REGULARIZER_SECTION = 'regularizer'
NORMALIZATION_SECTION = 'normalization'
TRAINING_SECTION = 'training'
POSTPROCESS_SECTION = 'postprocess'
OUTPUT_SECTION = 'output'
VERIFY_SECTION = 'verify'

PARABOLAS_GENERATOR = 'parabolas'
SUBSPACES_GENERATOR = 'subspaces'
FILE_GENERATOR = 'file'
VALID_GENERATORS = [PARABOLAS_GENERATOR, SUBSPACES_GENERATOR, FILE_GENERATOR]

GENERATOR_KEY = 'generator'
NUM_POINTS_PER_PARABOLA_KEY = 'num_points_per_parabola'
AMBIENT_DIM_KEY = 'ambient_dim'
SUBSPACE_DIM_KEY = 'subspace_dim'
NUM_SUBSPACES_KEY = 'num_subspaces'
NUM_POINTS_PER_SUBSPACE_KEY = 'num_points_per_subspace'
MIN_ANGLE_KEY = 'min_angle_deg'
NOISE_STDEV_KEY = 'noise_stdev'
SEED_KEY = 'seed'
DATA_FILE_KEY = 'data_file'
LABELS_FILE_KEY = 'labels_file'

KIND_KEY = 'kind'
LAMBDA_KEY = 'lambda'
TAU_EN_KEY = 'tau_en'
SCHATTEN_P_KEY = 'schatten_p'
ZERO_DIAG_KEY = 'zero_diag'

SCHEME_KEY = 'scheme'
TAU_KEY = 'tau'
GAMMA2_KEY = 'gamma2'

GAMMA_KEY = 'gamma'
NUM_PRETRAIN_ITERS_KEY = 'num_pretrain_iters'
NUM_JOINT_ITERS_KEY = 'num_joint_iters'
LEARNING_RATE_KEY = 'learning_rate'
PRETRAIN_LEARNING_RATE_KEY = 'pretrain_learning_rate'
NUM_HIDDEN_UNITS_KEY = 'num_hidden_units'
EMBEDDING_DIM_KEY = 'embedding_dim'
FREEZE_NETWORK_KEY = 'freeze_network'
LOG_EVERY_KEY = 'log_every'

ENABLED_KEY = 'enabled'
KEEP_THRESHOLD_KEY = 'keep_threshold'
SIM_RANK_KEY = 'sim_rank'
POWER_KEY = 'power'
NORMALIZE_ROWS_KEY = 'normalize_rows'
NUM_CLUSTERS_KEY = 'num_clusters'
RAW_BASELINE_LAMBDAS_KEY = 'raw_baseline_lambdas'

OUT_DIR_KEY = 'out_dir'

BRUTE_FORCE_SIZES_KEY = 'brute_force_sizes'
SAMPLES_PER_PATTERN_KEY = 'samples_per_pattern'
SCHATTEN_EXPONENTS_KEY = 'schatten_p_values'
NUM_RANDOM_CANDIDATES_KEY = 'num_random_candidates'
NUM_DOMINANCE_SAMPLES_KEY = 'num_dominance_samples'
PERTURB_THM2_ENTRY_KEY = 'perturb_thm2_entry'

DEFAULT_CONFIG_DICT = {
    DATA_SECTION: {
        GENERATOR_KEY: PARABOLAS_GENERATOR,
        NUM_POINTS_PER_PARABOLA_KEY: synthdata.DEFAULT_POINTS_PER_PARABOLA,
        AMBIENT_DIM_KEY: 3,
        SUBSPACE_DIM_KEY: 1,
        NUM_SUBSPACES_KEY: 2,
        NUM_POINTS_PER_SUBSPACE_KEY: 50,
        MIN_ANGLE_KEY: 0.,
        NOISE_STDEV_KEY: 0.,
        SEED_KEY: 0,
        DATA_FILE_KEY: None,
        LABELS_FILE_KEY: None
    },
    REGULARIZER_SECTION: {
        KIND_KEY: selfexpress.SSC_KIND,
        LAMBDA_KEY: 1e-4,
        TAU_EN_KEY: selfexpress.DEFAULT_TAU_EN,
        SCHATTEN_P_KEY: 1.,
        ZERO_DIAG_KEY: False
    },
    NORMALIZATION_SECTION: {
        SCHEME_KEY: normalization.DATASET_NORM_KIND,
        TAU_KEY: 1.,
        GAMMA2_KEY: 1e-4
    },
    TRAINING_SECTION: {
        GAMMA_KEY: sedsc.DEFAULT_GAMMA,
        NUM_PRETRAIN_ITERS_KEY: sedsc.DEFAULT_NUM_PRETRAIN_ITERS,
        NUM_JOINT_ITERS_KEY: sedsc.DEFAULT_NUM_JOINT_ITERS,
        LEARNING_RATE_KEY: sedsc.DEFAULT_LEARNING_RATE,
        PRETRAIN_LEARNING_RATE_KEY: None,
        SEED_KEY: 0,
        NUM_HIDDEN_UNITS_KEY: sedsc.DEFAULT_NUM_HIDDEN_UNITS,
        EMBEDDING_DIM_KEY: None,
        FREEZE_NETWORK_KEY: False,
        LOG_EVERY_KEY: sedsc.DEFAULT_LOG_EVERY
    },
    POSTPROCESS_SECTION: {
        ENABLED_KEY: True,
        KEEP_THRESHOLD_KEY: cluster.DEFAULT_KEEP_THRESHOLD,
        SIM_RANK_KEY: None,
        SUBSPACE_DIM_KEY: cluster.DEFAULT_SUBSPACE_DIM,
        POWER_KEY: cluster.DEFAULT_POWER,
        NORMALIZE_ROWS_KEY: True,
        NUM_CLUSTERS_KEY: None,
        RAW_BASELINE_LAMBDAS_KEY: cluster.RAW_BASELINE_LAMBDAS.tolist()
    },
    OUTPUT_SECTION: {
        OUT_DIR_KEY: 'subcol_output'
    },
    VERIFY_SECTION: {
        SEED_KEY: 0,
        TAU_KEY: 1.,
        BRUTE_FORCE_SIZES_KEY: [[3, 1], [3, 2], [4, 2]],
        SAMPLES_PER_PATTERN_KEY: 32,
        SCHATTEN_EXPONENTS_KEY: [1., 1.5, 2., 3.],
        NUM_RANDOM_CANDIDATES_KEY: 100000,
        NUM_DOMINANCE_SAMPLES_KEY: 1000,
        PERTURB_THM2_ENTRY_KEY: 0.
    }
}

INTEGER_TYPE = 'integer'
REAL_TYPE = 'real'
BOOLEAN_TYPE = 'boolean'
STRING_TYPE = 'string'
REAL_LIST_TYPE = 'real_list'
SIZE_LIST_TYPE = 'size_list'

TYPE_KEY = 'type'
GREATER_KEY = 'greater_than'
GEQ_KEY = 'geq'
LEQ_KEY = 'leq'
ALLOWED_KEY = 'allowed_values'
OPTIONAL_KEY = 'optional'


def _rule(type_string, greater_than=None, geq=None, leq=None,
          allowed_values=None, optional=False):
    """Creates validation rule for one config key.

    :param type_string: Expected type (e.g., `INTEGER_TYPE`).
    :param greater_than: Exclusive lower bound (None for no bound).
    :param geq: Inclusive lower bound (None for no bound).
    :param leq: Inclusive upper bound (None for no bound).
    :param allowed_values: List of allowed values (None for any value).
    :param optional: Boolean flag.  If True, None is also allowed.
    :return: rule_dict: Dictionary with the above.
    """

    return {
        TYPE_KEY: type_string,
        GREATER_KEY: greater_than,
        GEQ_KEY: geq,
        LEQ_KEY: leq,
        ALLOWED_KEY: allowed_values,
        OPTIONAL_KEY: optional
    }


RULE_DICT = {
    DATA_SECTION: {
        GENERATOR_KEY: _rule(STRING_TYPE, allowed_values=VALID_GENERATORS),
        NUM_POINTS_PER_PARABOLA_KEY: _rule(INTEGER_TYPE, geq=1),
        AMBIENT_DIM_KEY: _rule(INTEGER_TYPE, geq=2),
        SUBSPACE_DIM_KEY: _rule(INTEGER_TYPE, geq=1),
        NUM_SUBSPACES_KEY: _rule(INTEGER_TYPE, geq=1),
        NUM_POINTS_PER_SUBSPACE_KEY: _rule(INTEGER_TYPE, geq=1),
        MIN_ANGLE_KEY: _rule(REAL_TYPE, geq=0., leq=90.),
        NOISE_STDEV_KEY: _rule(REAL_TYPE, geq=0.),
        SEED_KEY: _rule(INTEGER_TYPE, geq=0),
        DATA_FILE_KEY: _rule(STRING_TYPE, optional=True),
        LABELS_FILE_KEY: _rule(STRING_TYPE, optional=True)
    },
    REGULARIZER_SECTION: {
        KIND_KEY: _rule(
            STRING_TYPE, allowed_values=selfexpress.VALID_REGULARIZER_KINDS),
        LAMBDA_KEY: _rule(REAL_TYPE, greater_than=0.),
        TAU_EN_KEY: _rule(REAL_TYPE, geq=0.),
        SCHATTEN_P_KEY: _rule(REAL_TYPE, geq=1.),
        ZERO_DIAG_KEY: _rule(BOOLEAN_TYPE)
    },
    NORMALIZATION_SECTION: {
        SCHEME_KEY: _rule(
            STRING_TYPE, allowed_values=normalization.VALID_NORM_KINDS),
        TAU_KEY: _rule(REAL_TYPE, greater_than=0.),
        GAMMA2_KEY: _rule(REAL_TYPE, geq=0.)
    },
    TRAINING_SECTION: {
        GAMMA_KEY: _rule(REAL_TYPE, geq=0.),
        NUM_PRETRAIN_ITERS_KEY: _rule(INTEGER_TYPE, geq=1),
        NUM_JOINT_ITERS_KEY: _rule(INTEGER_TYPE, geq=1),
        LEARNING_RATE_KEY: _rule(REAL_TYPE, greater_than=0.),
        PRETRAIN_LEARNING_RATE_KEY: _rule(
            REAL_TYPE, greater_than=0., optional=True),
        SEED_KEY: _rule(INTEGER_TYPE, geq=0),
        NUM_HIDDEN_UNITS_KEY: _rule(INTEGER_TYPE, geq=1),
        EMBEDDING_DIM_KEY: _rule(INTEGER_TYPE, geq=1, optional=True),
        FREEZE_NETWORK_KEY: _rule(BOOLEAN_TYPE),
        LOG_EVERY_KEY: _rule(INTEGER_TYPE, geq=1)
    },
    POSTPROCESS_SECTION: {
        ENABLED_KEY: _rule(BOOLEAN_TYPE),
        KEEP_THRESHOLD_KEY: _rule(REAL_TYPE, greater_than=0., leq=1.),
        SIM_RANK_KEY: _rule(INTEGER_TYPE, geq=1, optional=True),
        SUBSPACE_DIM_KEY: _rule(INTEGER_TYPE, geq=1),
        POWER_KEY: _rule(REAL_TYPE, geq=1.),
        NORMALIZE_ROWS_KEY: _rule(BOOLEAN_TYPE),
        NUM_CLUSTERS_KEY: _rule(INTEGER_TYPE, geq=1, optional=True),
        RAW_BASELINE_LAMBDAS_KEY: _rule(REAL_LIST_TYPE, greater_than=0.)
    },
    OUTPUT_SECTION: {
        OUT_DIR_KEY: _rule(STRING_TYPE)
    },
    VERIFY_SECTION: {
        SEED_KEY: _rule(INTEGER_TYPE, geq=0),
        TAU_KEY: _rule(REAL_TYPE, greater_than=0.),
        BRUTE_FORCE_SIZES_KEY: _rule(SIZE_LIST_TYPE, geq=1),
        SAMPLES_PER_PATTERN_KEY: _rule(INTEGER_TYPE, geq=1),
        SCHATTEN_EXPONENTS_KEY: _rule(REAL_LIST_TYPE, geq=1.),
        NUM_RANDOM_CANDIDATES_KEY: _rule(INTEGER_TYPE, geq=1),
        NUM_DOMINANCE_SAMPLES_KEY: _rule(INTEGER_TYPE, geq=1),
        PERTURB_THM2_ENTRY_KEY: _rule(REAL_TYPE)
    }
}


def _is_integer(input_variable):
    return (
        isinstance(input_variable, int) and
        not isinstance(input_variable, bool)
    )


def _is_real(input_variable):
    return (
        isinstance(input_variable, (int, float)) and
        not isinstance(input_variable, bool)
    )


def _check_bounds(key_name, value, rule_dict):
    """Checks one number against bounds in a rule.

    :param key_name: Dotted key name (for error messages).
    :param value: Number.
    :param rule_dict: Dictionary created by `_rule`.
    :raises: error_checking.ConfigValidationError: if value is out of range.
    """

    if value != value:
        raise error_checking.ConfigValidationError(
            key_name, 'must not be NaN.')

    lower_bound = rule_dict[GREATER_KEY]
    if lower_bound is not None and value <= lower_bound:
        raise error_checking.ConfigValidationError(
            key_name, 'must be > {0:g} (got {1:g}).'.format(
                lower_bound, value)
        )

    if rule_dict[GEQ_KEY] is not None and value < rule_dict[GEQ_KEY]:
        raise error_checking.ConfigValidationError(
            key_name, 'must be >= {0:g} (got {1:g}).'.format(
                rule_dict[GEQ_KEY], value)
        )

    if rule_dict[LEQ_KEY] is not None and value > rule_dict[LEQ_KEY]:
        raise error_checking.ConfigValidationError(
            key_name, 'must be <= {0:g} (got {1:g}).'.format(
                rule_dict[LEQ_KEY], value)
        )


def _check_value(key_name, value, rule_dict):
    """Checks one config value against its rule.

    :param key_name: Dotted key name (for error messages).
    :param value: Value from config.
    :param rule_dict: Dictionary created by `_rule`.
    :raises: error_checking.ConfigValidationError: if value is invalid.
    """

    if value is None:
        if rule_dict[OPTIONAL_KEY]:
            return

        raise error_checking.ConfigValidationError(
            key_name, 'must not be null.')

    type_string = rule_dict[TYPE_KEY]

    if type_string == INTEGER_TYPE:
        if not _is_integer(value):
            raise error_checking.ConfigValidationError(
                key_name, 'must be an integer (got {0:s}).'.format(repr(value))
            )

        _check_bounds(key_name, value, rule_dict)

    elif type_string == REAL_TYPE:
        if not _is_real(value):
            raise error_checking.ConfigValidationError(
                key_name, 'must be a number (got {0:s}).'.format(repr(value)))

        _check_bounds(key_name, value, rule_dict)

    elif type_string == BOOLEAN_TYPE:
        if not isinstance(value, bool):
            raise error_checking.ConfigValidationError(
                key_name, 'must be true or false (got {0:s}).'.format(
                    repr(value))
            )

    elif type_string == STRING_TYPE:
        if not isinstance(value, str):
            raise error_checking.ConfigValidationError(
                key_name, 'must be a string (got {0:s}).'.format(repr(value)))

        if (rule_dict[ALLOWED_KEY] is not None and
                value not in rule_dict[ALLOWED_KEY]):
            raise error_checking.ConfigValidationError(
                key_name, 'must be one of {0:s} (got "{1:s}").'.format(
                    str(rule_dict[ALLOWED_KEY]), value)
            )

    elif type_string == REAL_LIST_TYPE:
        if not isinstance(value, list) or len(value) == 0:
            raise error_checking.ConfigValidationError(
                key_name, 'must be a non-empty list of numbers.')

        for this_value in value:
            if not _is_real(this_value):
                raise error_checking.ConfigValidationError(
                    key_name, 'must contain only numbers (got {0:s}).'.format(
                        repr(this_value))
                )

            _check_bounds(key_name, this_value, rule_dict)

    elif type_string == SIZE_LIST_TYPE:
        if not isinstance(value, list) or len(value) == 0:
            raise error_checking.ConfigValidationError(
                key_name, 'must be a non-empty list of [N, d] pairs.')

        for this_pair in value:
            if (not isinstance(this_pair, list) or len(this_pair) != 2 or
                    not all([_is_integer(v) for v in this_pair])):
                raise error_checking.ConfigValidationError(
                    key_name, 'must contain only [N, d] integer pairs (got '
                    '{0:s}).'.format(repr(this_pair))
                )

            for this_value in this_pair:
                _check_bounds(key_name, this_value, rule_dict)


def validate_config(config_dict):
    """Validates experiment config.

    :param config_dict: Nested dictionary with the same structure as
        `DEFAULT_CONFIG_DICT`.
    :raises: error_checking.ConfigValidationError: if any section or key is
        unknown, missing or invalid.
    """

    if not isinstance(config_dict, dict):
        raise error_checking.ConfigValidationError(
            '<root>', 'must be a JSON object.')

    for this_section in config_dict:
        if this_section not in RULE_DICT:
            raise error_checking.ConfigValidationError(
                this_section, 'unknown section.')

    for this_section, this_rule_dict in RULE_DICT.items():
        if this_section not in config_dict:
            raise error_checking.ConfigValidationError(
                this_section, 'missing section.')

        this_section_dict = config_dict[this_section]
        if not isinstance(this_section_dict, dict):
            raise error_checking.ConfigValidationError(
                this_section, 'must be a JSON object.')

        for this_key in this_section_dict:
            if this_key not in this_rule_dict:
                raise error_checking.ConfigValidationError(
                    '{0:s}.{1:s}'.format(this_section, this_key),
                    'unknown key.')

        for this_key, this_key_rule_dict in this_rule_dict.items():
            this_key_name = '{0:s}.{1:s}'.format(this_section, this_key)
            if this_key not in this_section_dict:
                raise error_checking.ConfigValidationError(
                    this_key_name, 'missing key.')

            _check_value(
                this_key_name, this_section_dict[this_key], this_key_rule_dict)

    data_dict = config_dict[DATA_SECTION]

    if data_dict[GENERATOR_KEY] == SUBSPACES_GENERATOR:
        if data_dict[SUBSPACE_DIM_KEY] >= data_dict[AMBIENT_DIM_KEY]:
            raise error_checking.ConfigValidationError(
                '{0:s}.{1:s}'.format(DATA_SECTION, SUBSPACE_DIM_KEY),
                'must be < {0:s}.{1:s} ({2:d}).'.format(
                    DATA_SECTION, AMBIENT_DIM_KEY, data_dict[AMBIENT_DIM_KEY])
            )

    if data_dict[GENERATOR_KEY] != FILE_GENERATOR:
        return

    for this_key in [DATA_FILE_KEY, LABELS_FILE_KEY]:
        if data_dict[this_key] is not None:
            continue

        raise error_checking.ConfigValidationError(
            '{0:s}.{1:s}'.format(DATA_SECTION, this_key),
            'must be given when generator is "{0:s}".'.format(FILE_GENERATOR)
        )


def merge_config(user_config_dict):
    """Merges user config onto defaults, then validates.

    :param user_config_dict: Nested dictionary with any subset of sections and
        keys in `DEFAULT_CONFIG_DICT`.
    :return: config_dict: Complete nested dictionary.
    :raises: error_checking.ConfigValidationError: if any section or key is
        unknown or any value is invalid.
    """

    if not isinstance(user_config_dict, dict):
        raise error_checking.ConfigValidationError(
            '<root>', 'must be a JSON object.')

    config_dict = copy.deepcopy(DEFAULT_CONFIG_DICT)

    for this_section, this_section_dict in user_config_dict.items():
        if this_section not in DEFAULT_CONFIG_DICT:
            raise error_checking.ConfigValidationError(
                this_section, 'unknown section.')

        if not isinstance(this_section_dict, dict):
            raise error_checking.ConfigValidationError(
                this_section, 'must be a JSON object.')

        for this_key, this_value in this_section_dict.items():
            if this_key not in DEFAULT_CONFIG_DICT[this_section]:
                raise error_checking.ConfigValidationError(
                    '{0:s}.{1:s}'.format(this_section, this_key),
                    'unknown key.')

            config_dict[this_section][this_key] = copy.deepcopy(this_value)

    validate_config(config_dict)
    return config_dict


def read_config(config_file_name=None):
    """Reads experiment config from JSON file.

    :param config_file_name: Path to input file.  If None, returns defaults.
    :return: config_dict: See doc for `merge_config`.
    :raises: error_checking.ConfigValidationError: if the file is not valid
        JSON or fails validation.
    """

    if config_file_name is None:
        return merge_config({})

    error_checking.assert_file_exists(config_file_name)
    LOGGER.info('Reading config from: "%s"', config_file_name)

    with open(config_file_name, 'r') as config_file_handle:
        try:
            user_config_dict = json.load(config_file_handle)
        except json.JSONDecodeError as this_error:
            raise error_checking.ConfigValidationError(
                '<root>', 'file "{0:s}" is not valid JSON ({1:s}).'.format(
                    config_file_name, str(this_error))
            )

    return merge_config(user_config_dict)


def write_config(config_file_name, config_dict):
    """Writes experiment config to JSON file.

    :param config_file_name: Path to output file.
    :param config_dict: Dictionary created by `merge_config`.
    """

    file_system_utils.mkdir_recursive_if_necessary(file_name=config_file_name)

    with open(config_file_name, 'w') as config_file_handle:
        json.dump(config_dict, config_file_handle, indent=4, sort_keys=True)
        config_file_handle.write('\n')


def apply_overrides(config_dict, seed=None, norm_scheme=None,
                    post_process=None, out_dir=None):
    """Applies command-line overrides, then re-validates.

    :param config_dict: Dictionary created by `merge_config`.
    :param seed: New seed for data, training and verification (None to keep).
    :param norm_scheme: New normalization scheme (None to keep).
    :param post_process: Boolean flag for post-processing (None to keep).
    :param out_dir: New output directory (None to keep).
    :return: config_dict: New dictionary with overrides applied.
    :raises: error_checking.ConfigValidationError: if any override is invalid.
    """

    config_dict = copy.deepcopy(config_dict)

    if seed is not None:
        for this_section in [DATA_SECTION, TRAINING_SECTION, VERIFY_SECTION]:
            config_dict[this_section][SEED_KEY] = seed

    if norm_scheme is not None:
        config_dict[NORMALIZATION_SECTION][SCHEME_KEY] = norm_scheme
    if post_process is not None:
        config_dict[POSTPROCESS_SECTION][ENABLED_KEY] = post_process
    if out_dir is not None:
        config_dict[OUTPUT_SECTION][OUT_DIR_KEY] = out_dir

    validate_config(config_dict)
    return config_dict


def create_regularizer_dict(config_dict):
    """Converts "regularizer" section to a regularizer.

    :param config_dict: Dictionary created by `merge_config`.
    :return: regularizer_dict: See doc for `selfexpress.create_regularizer`.
    """

    section_dict = config_dict[REGULARIZER_SECTION]

    return selfexpress.create_regularizer(
        section_dict[KIND_KEY], lambda_value=float(section_dict[LAMBDA_KEY]),
        tau_en=float(section_dict[TAU_EN_KEY]),
        schatten_p=float(section_dict[SCHATTEN_P_KEY]),
        zero_diag=section_dict[ZERO_DIAG_KEY]
    )


def create_normalization_dict(config_dict):
    """Converts "normalization" section to a normalization scheme.

    :param config_dict: Dictionary created by `merge_config`.
    :return: normalization_dict: See doc for
        `normalization.create_normalization`.
    """

    section_dict = config_dict[NORMALIZATION_SECTION]

    return normalization.create_normalization(
        section_dict[SCHEME_KEY], tau=float(section_dict[TAU_KEY]),
        gamma2=float(section_dict[GAMMA2_KEY])
    )


def create_train_config(config_dict):
    """Converts "training" section (plus regularizer and normalization).

    :param config_dict: Dictionary created by `merge_config`.
    :return: train_config_dict: See doc for `sedsc.create_train_config`.
    """

    section_dict = config_dict[TRAINING_SECTION]
    pretrain_learning_rate = section_dict[PRETRAIN_LEARNING_RATE_KEY]
    if pretrain_learning_rate is not None:
        pretrain_learning_rate = float(pretrain_learning_rate)

    return sedsc.create_train_config(
        regularizer_dict=create_regularizer_dict(config_dict),
        normalization_dict=create_normalization_dict(config_dict),
        gamma=float(section_dict[GAMMA_KEY]),
        num_pretrain_iters=section_dict[NUM_PRETRAIN_ITERS_KEY],
        num_joint_iters=section_dict[NUM_JOINT_ITERS_KEY],
        learning_rate=float(section_dict[LEARNING_RATE_KEY]),
        pretrain_learning_rate=pretrain_learning_rate,
        seed=section_dict[SEED_KEY],
        num_hidden_units=section_dict[NUM_HIDDEN_UNITS_KEY],
        embedding_dim=section_dict[EMBEDDING_DIM_KEY],
        freeze_network=section_dict[FREEZE_NETWORK_KEY],
        log_every=section_dict[LOG_EVERY_KEY]
    )


def create_postprocess_dict(config_dict, enabled=None):
    """Converts "postprocess" section to a post-processing config.

    :param config_dict: Dictionary created by `merge_config`.
    :param enabled: Boolean flag overriding "postprocess.enabled" (None to
        keep).
    :return: postprocess_dict: See doc for `cluster.create_postprocess_config`.
    """

    section_dict = config_dict[POSTPROCESS_SECTION]
    if enabled is None:
        enabled = section_dict[ENABLED_KEY]

    return cluster.create_postprocess_config(
        keep_threshold=float(section_dict[KEEP_THRESHOLD_KEY]),
        sim_rank=section_dict[SIM_RANK_KEY],
        subspace_dim=section_dict[SUBSPACE_DIM_KEY],
        power=float(section_dict[POWER_KEY]),
        normalize_rows=section_dict[NORMALIZE_ROWS_KEY],
        enabled=enabled
    )
