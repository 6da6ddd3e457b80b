"""Runs one step of the subspace-clustering experiment.

Steps are "generate", "train", "verify", "cluster" and "report".  All inputs
and outputs live in the output directory given by the config (or by
--out-dir).  Set the environment variable SUBCOL_LOG to "error", "info" or
"debug" to control logging.

Exit codes: 0 = success; 1 = some verification checks failed; 2 = invalid
config or arguments; 3 = numerical failure; 4 = I/O failure.
"""

import sys
import logging
import argparse
from subcol.utils import general_utils
from subcol.utils import normalization
from subcol.utils import error_checking
from subcol.utils import experiment_config
from subcol.utils import experiment_commands

LOGGER = logging.getLogger(__name__)

SUCCESS_EXIT_CODE = 0
VERIFY_FAILED_EXIT_CODE = 1
VALIDATION_EXIT_CODE = 2
NUMERICAL_EXIT_CODE = 3
IO_EXIT_CODE = 4

GENERATE_COMMAND = 'generate'
TRAIN_COMMAND = 'train'
VERIFY_COMMAND = 'verify'
CLUSTER_COMMAND = 'cluster'
REPORT_COMMAND = 'report'
VALID_COMMANDS = [
    GENERATE_COMMAND, TRAIN_COMMAND, VERIFY_COMMAND, CLUSTER_COMMAND,
    REPORT_COMMAND
]

ON_STRING = 'on'
OFF_STRING = 'off'

COMMAND_ARG_NAME = 'command'
CONFIG_FILE_ARG_NAME = 'config'
SEED_ARG_NAME = 'seed'
NORM_SCHEME_ARG_NAME = 'norm_scheme'
POST_PROCESS_ARG_NAME = 'post_process'
OUTPUT_DIR_ARG_NAME = 'out_dir'

COMMAND_HELP_STRING = (
    'Step to run.  Must be in the following list:\n{0:s}'
).format(str(VALID_COMMANDS))

CONFIG_FILE_HELP_STRING = (
    'Path to JSON config file.  Keys not in the file get default values.  If '
    'you leave this empty, all defaults will be used.')

SEED_HELP_STRING = (
    'Random seed.  If given, overrides the seeds for data generation, '
    'training and verification.')

NORM_SCHEME_HELP_STRING = (
    'Normalization scheme for the embedding.  If given, must be in the '
    'following list:\n{0:s}'
).format(str(normalization.VALID_NORM_KINDS))

POST_PROCESS_HELP_STRING = (
    'Whether to post-process C before spectral clustering ("{0:s}" or '
    '"{1:s}").  If empty, will use the config value.'
).format(ON_STRING, OFF_STRING)

OUTPUT_DIR_HELP_STRING = (
    'Name of output directory.  If given, overrides the config value.')

INPUT_ARG_PARSER = argparse.ArgumentParser(
    description=__doc__.split('\n')[0])
INPUT_ARG_PARSER.add_argument(
    COMMAND_ARG_NAME, type=str, choices=VALID_COMMANDS,
    help=COMMAND_HELP_STRING)

INPUT_ARG_PARSER.add_argument(
    '--' + CONFIG_FILE_ARG_NAME, type=str, required=False, default=None,
    help=CONFIG_FILE_HELP_STRING)

INPUT_ARG_PARSER.add_argument(
    '--' + SEED_ARG_NAME, type=int, required=False, default=None,
    help=SEED_HELP_STRING)

INPUT_ARG_PARSER.add_argument(
    '--norm-scheme', dest=NORM_SCHEME_ARG_NAME, type=str, required=False,
    default=None, help=NORM_SCHEME_HELP_STRING)

INPUT_ARG_PARSER.add_argument(
    '--post-process', dest=POST_PROCESS_ARG_NAME, type=str, required=False,
    default=None, choices=[ON_STRING, OFF_STRING],
    help=POST_PROCESS_HELP_STRING)

INPUT_ARG_PARSER.add_argument(
    '--out-dir', dest=OUTPUT_DIR_ARG_NAME, type=str, required=False,
    default=None, help=OUTPUT_DIR_HELP_STRING)


def _run(command_name, config_file_name, seed, norm_scheme, post_process,
         output_dir_name):
    """Runs one step of the subspace-clustering experiment.

    This is effectively the main method.

    :param command_name: See documentation at top of file.
    :param config_file_name: Same.
    :param seed: Same.
    :param norm_scheme: Same.
    :param post_process: Same.
    :param output_dir_name: Same.
    :return: exit_code: Exit code (see top of file).
    """

    if post_process is not None:
        post_process = post_process == ON_STRING

    config_dict = experiment_config.apply_overrides(
        experiment_config.read_config(config_file_name), seed=seed,
        norm_scheme=norm_scheme, post_process=post_process,
        out_dir=output_dir_name)

    LOGGER.info('Running "%s" with output directory "%s"...', command_name,
                config_dict[experiment_config.OUTPUT_SECTION][
                    experiment_config.OUT_DIR_KEY])

    if command_name == GENERATE_COMMAND:
        experiment_commands.cmd_generate(config_dict)
    elif command_name == TRAIN_COMMAND:
        experiment_commands.cmd_train(config_dict)
    elif command_name == VERIFY_COMMAND:
        all_passed = experiment_commands.cmd_verify(config_dict)[0]
        if not all_passed:
            return VERIFY_FAILED_EXIT_CODE
    elif command_name == CLUSTER_COMMAND:
        experiment_commands.cmd_cluster(config_dict)
    else:
        experiment_commands.cmd_report(config_dict)

    return SUCCESS_EXIT_CODE


def main(argument_list=None):
    """Parses arguments, runs the step and maps errors to exit codes.

    :param argument_list: List of command-line arguments.  If None, will be
        read from `sys.argv`.
    :return: exit_code: Exit code (see top of file).
    """

    input_arg_object = INPUT_ARG_PARSER.parse_args(argument_list)

    try:
        general_utils.configure_logging()
    except ValueError as this_error:
        sys.stderr.write('{0:s}\n'.format(str(this_error)))
        return VALIDATION_EXIT_CODE

    try:
        return _run(
            command_name=getattr(input_arg_object, COMMAND_ARG_NAME),
            config_file_name=getattr(input_arg_object, CONFIG_FILE_ARG_NAME),
            seed=getattr(input_arg_object, SEED_ARG_NAME),
            norm_scheme=getattr(input_arg_object, NORM_SCHEME_ARG_NAME),
            post_process=getattr(input_arg_object, POST_PROCESS_ARG_NAME),
            output_dir_name=getattr(input_arg_object, OUTPUT_DIR_ARG_NAME)
        )
    except error_checking.MatrixFormatError as this_error:
        LOGGER.error('Malformed matrix file: %s', str(this_error))
        return IO_EXIT_CODE
    except (error_checking.ConfigValidationError, TypeError,
            ValueError) as this_error:
        LOGGER.error('Validation failed: %s', str(this_error))
        return VALIDATION_EXIT_CODE
    except error_checking.NumericalError as this_error:
        LOGGER.error('Numerical failure: %s', str(this_error))
        return NUMERICAL_EXIT_CODE
    except OSError as this_error:
        LOGGER.error('I/O failure: %s', str(this_error))
        return IO_EXIT_CODE


if __name__ == '__main__':
    sys.exit(main())
