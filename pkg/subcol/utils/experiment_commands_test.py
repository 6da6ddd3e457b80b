"""Unit tests for experiment_commands.py."""

import os.path
import shutil
import tempfile
import unittest
import numpy
import pandas
from subcol.utils import synthdata
from subcol.utils import normalization
from subcol.utils import experiment_config
from subcol.utils import experiment_commands

NUM_POINTS_PER_PARABOLA = 10

TINY_VERIFY_DICT = {
    experiment_config.BRUTE_FORCE_SIZES_KEY: [[3, 1]],
    experiment_config.SAMPLES_PER_PATTERN_KEY: 4,
    experiment_config.SCHATTEN_EXPONENTS_KEY: [1., 2.],
    experiment_config.NUM_RANDOM_CANDIDATES_KEY: 200,
    experiment_config.NUM_DOMINANCE_SAMPLES_KEY: 20
}


def _block_coeff_matrix(num_points_per_block):
    """Creates ideal two-block C (ones inside each block, zero diagonal).

    :param num_points_per_block: Number of points per block.
    :return: coeff_matrix: N-by-N numpy array.
    """

    block_matrix = (
        numpy.ones((num_points_per_block, num_points_per_block)) -
        numpy.eye(num_points_per_block)
    )
    zero_matrix = numpy.zeros((num_points_per_block, num_points_per_block))

    return numpy.block([
        [block_matrix, zero_matrix], [zero_matrix, block_matrix]
    ])


class ExperimentCommandsTests(unittest.TestCase):
    """Each method is a unit test for experiment_commands.py."""

    def setUp(self):
        """Creates temporary directory and tiny config."""

        self.temp_dir_name = tempfile.mkdtemp()
        self.config_dict = experiment_config.merge_config({
            experiment_config.DATA_SECTION: {
                experiment_config.NUM_POINTS_PER_PARABOLA_KEY:
                    NUM_POINTS_PER_PARABOLA
            },
            experiment_config.TRAINING_SECTION: {
                experiment_config.NUM_PRETRAIN_ITERS_KEY: 5,
                experiment_config.NUM_JOINT_ITERS_KEY: 5,
                experiment_config.LEARNING_RATE_KEY: 1e-3,
                experiment_config.NUM_HIDDEN_UNITS_KEY: 4,
                experiment_config.LOG_EVERY_KEY: 1
            },
            experiment_config.POSTPROCESS_SECTION: {
                experiment_config.SUBSPACE_DIM_KEY: 1,
                experiment_config.RAW_BASELINE_LAMBDAS_KEY: [0.1, 1.]
            },
            experiment_config.OUTPUT_SECTION: {
                experiment_config.OUT_DIR_KEY: self.temp_dir_name
            },
            experiment_config.VERIFY_SECTION: TINY_VERIFY_DICT
        })

    def tearDown(self):
        """Deletes temporary directory."""

        shutil.rmtree(self.temp_dir_name)

    def _output_file_name(self, pathless_file_name):
        """Returns path to file in temporary directory."""

        return os.path.join(self.temp_dir_name, pathless_file_name)

    def test_cmd_generate(self):
        """Ensures correct output from cmd_generate."""

        this_dataset_dict = experiment_commands.cmd_generate(self.config_dict)

        self.assertTrue(
            this_dataset_dict[synthdata.DATA_MATRIX_KEY].shape ==
            (2, 2 * NUM_POINTS_PER_PARABOLA)
        )
        self.assertTrue(numpy.allclose(
            synthdata.read_matrix(
                self._output_file_name(experiment_commands.DATA_FILE_NAME)),
            this_dataset_dict[synthdata.DATA_MATRIX_KEY], atol=0.
        ))
        self.assertTrue(numpy.array_equal(
            synthdata.read_labels(
                self._output_file_name(experiment_commands.LABELS_FILE_NAME)),
            this_dataset_dict[synthdata.LABELS_KEY]
        ))

    def test_cmd_generate_from_file(self):
        """Ensures correct output from cmd_generate.

        In this case, the dataset is imported from files.
        """

        this_data_matrix = numpy.array([
            [0., 1., 2., 3.], [1., 1., -1., -1.]
        ])
        this_data_file_name = os.path.join(
            self.temp_dir_name, 'input', 'points.csv')
        this_labels_file_name = os.path.join(
            self.temp_dir_name, 'input', 'truth.csv')

        synthdata.write_matrix(this_data_file_name, this_data_matrix)
        synthdata.write_labels(
            this_labels_file_name, numpy.array([0, 0, 1, 1], dtype=int))

        this_config_dict = experiment_config.merge_config({
            experiment_config.DATA_SECTION: {
                experiment_config.GENERATOR_KEY:
                    experiment_config.FILE_GENERATOR,
                experiment_config.DATA_FILE_KEY: this_data_file_name,
                experiment_config.LABELS_FILE_KEY: this_labels_file_name
            },
            experiment_config.OUTPUT_SECTION: {
                experiment_config.OUT_DIR_KEY: self.temp_dir_name
            }
        })

        this_dataset_dict = experiment_commands.cmd_generate(this_config_dict)
        self.assertTrue(numpy.allclose(
            this_dataset_dict[synthdata.DATA_MATRIX_KEY], this_data_matrix,
            atol=0.
        ))
        self.assertTrue(os.path.isfile(
            self._output_file_name(experiment_commands.DATA_FILE_NAME)))

    def test_cmd_train_and_report(self):
        """Ensures that cmd_train and cmd_report write all outputs."""

        experiment_commands.cmd_generate(self.config_dict)
        experiment_commands.cmd_train(self.config_dict)

        for this_pathless_name in [
                experiment_commands.CONFIG_FILE_NAME,
                experiment_commands.PRETRAIN_TRACE_FILE_NAME,
                experiment_commands.TRACE_FILE_NAME,
                experiment_commands.PRETRAINED_PARAMS_FILE_NAME,
                experiment_commands.PARAMS_FILE_NAME,
                experiment_commands.INITIAL_COEFFS_FILE_NAME,
                experiment_commands.COEFFS_FILE_NAME,
                experiment_commands.PRETRAINED_EMBEDDING_FILE_NAME,
                experiment_commands.EMBEDDING_FILE_NAME
        ]:
            self.assertTrue(os.path.isfile(
                self._output_file_name(this_pathless_name)))

        this_coeff_matrix = synthdata.read_matrix(
            self._output_file_name(experiment_commands.COEFFS_FILE_NAME))
        self.assertTrue(
            this_coeff_matrix.shape ==
            (2 * NUM_POINTS_PER_PARABOLA, 2 * NUM_POINTS_PER_PARABOLA)
        )
        self.assertTrue(
            experiment_config.read_config(self._output_file_name(
                experiment_commands.CONFIG_FILE_NAME)) == self.config_dict
        )

        this_summary_table = experiment_commands.cmd_report(self.config_dict)
        self.assertTrue(len(this_summary_table.index) == 2)

        for this_pathless_name in [
                experiment_commands.Z_NORM_FIGURE_FILE_NAME,
                experiment_commands.SPECTRA_FIGURE_FILE_NAME,
                experiment_commands.SCATTER_FIGURE_FILE_NAME,
                experiment_commands.HEATMAP_FIGURE_FILE_NAME,
                experiment_commands.SUMMARY_FILE_NAME
        ]:
            self.assertTrue(os.path.isfile(
                self._output_file_name(this_pathless_name)))

    def test_cmd_train_no_normalization(self):
        """Ensures that cmd_train runs without normalization.

        In this case, the trace is too short for the norm-decrease check, which
        is skipped.
        """

        this_config_dict = experiment_config.apply_overrides(
            self.config_dict, norm_scheme=normalization.NO_NORM_KIND)

        experiment_commands.cmd_generate(this_config_dict)
        this_result_dict = experiment_commands.cmd_train(this_config_dict)

        self.assertTrue(this_result_dict is not None)
        self.assertTrue(os.path.isfile(
            self._output_file_name(experiment_commands.TRACE_FILE_NAME)))

    def test_cmd_train_missing_data(self):
        """Ensures that cmd_train errors out when data were not generated."""

        with self.assertRaises(FileNotFoundError):
            experiment_commands.cmd_train(self.config_dict)

    def test_cmd_report_empty_trace(self):
        """Ensures that cmd_report errors out on an empty trace."""

        with open(self._output_file_name(
                experiment_commands.TRACE_FILE_NAME), 'w') as this_handle:
            this_handle.write('iteration,z_frobenius_norm\n')

        with self.assertRaises(ValueError):
            experiment_commands.cmd_report(self.config_dict)

    def test_cmd_verify(self):
        """Ensures correct output from cmd_verify.

        In this case, all checks pass.
        """

        this_flag, this_table = experiment_commands.cmd_verify(
            self.config_dict)

        self.assertTrue(this_flag)
        self.assertTrue(
            list(this_table.columns) == experiment_commands.VERIFY_COLUMNS)
        self.assertTrue(this_table[experiment_commands.PASSED_COLUMN].all())

        these_check_names = set(
            this_table[experiment_commands.CHECK_COLUMN].values)
        self.assertTrue('thm2_brute_force_N3_d1' in these_check_names)
        self.assertTrue('thm3_random_search_p2' in these_check_names)
        self.assertTrue('lemma1_no_duplicate' in these_check_names)
        self.assertTrue(
            'scaling_attack_reconstruction_change' in these_check_names)
        self.assertTrue('iterated_attack_f_ratio' in these_check_names)
        self.assertTrue(
            'iterated_attack_reconstruction_change' in these_check_names)

        this_row = this_table.loc[
            this_table[experiment_commands.CHECK_COLUMN] ==
            'iterated_attack_f_ratio'
        ].iloc[0]
        self.assertTrue(
            this_row[experiment_commands.VALUE_COLUMN] <
            experiment_commands.SCALING_F_RATIO_TOLERANCE)

        this_written_table = pandas.read_csv(
            self._output_file_name(experiment_commands.VERIFY_FILE_NAME))
        self.assertTrue(
            len(this_written_table.index) == len(this_table.index))

    def test_cmd_verify_perturbed(self):
        """Ensures correct output from cmd_verify.

        In this case, one entry of the canonical two-point C is perturbed, so
        the feasibility checks fail.
        """

        this_config_dict = experiment_config.merge_config({
            experiment_config.OUTPUT_SECTION: {
                experiment_config.OUT_DIR_KEY: self.temp_dir_name
            },
            experiment_config.VERIFY_SECTION: dict(
                TINY_VERIFY_DICT,
                **{experiment_config.PERTURB_THM2_ENTRY_KEY: 0.1}
            )
        })

        this_flag, this_table = experiment_commands.cmd_verify(
            this_config_dict)
        self.assertFalse(this_flag)

        this_failed_table = this_table.loc[
            numpy.invert(this_table[experiment_commands.PASSED_COLUMN].values)
        ]
        self.assertTrue(all([
            n.startswith('thm2_canonical')
            for n in this_failed_table[experiment_commands.CHECK_COLUMN]
        ]))

    def test_cmd_cluster(self):
        """Ensures correct output from cmd_cluster.

        In this case, C is the ideal block-diagonal matrix, so both
        post-processing modes recover the parabolas.
        """

        experiment_commands.cmd_generate(self.config_dict)
        synthdata.write_matrix(
            self._output_file_name(experiment_commands.COEFFS_FILE_NAME),
            _block_coeff_matrix(NUM_POINTS_PER_PARABOLA)
        )

        this_table = experiment_commands.cmd_cluster(self.config_dict)

        this_sedsc_table = this_table.loc[
            this_table[experiment_commands.METHOD_COLUMN] ==
            experiment_commands.SEDSC_METHOD
        ]
        self.assertTrue(len(this_sedsc_table.index) == 2)
        self.assertTrue(numpy.allclose(
            this_sedsc_table[experiment_commands.ACCURACY_COLUMN].values, 1.
        ))

        this_baseline_table = this_table.loc[
            this_table[experiment_commands.METHOD_COLUMN] ==
            experiment_commands.RAW_BASELINE_METHOD
        ]
        self.assertTrue(len(this_baseline_table.index) == 2)

        self.assertTrue(len(pandas.read_csv(self._output_file_name(
            experiment_commands.RAW_BASELINE_FILE_NAME)).index) == 2)

        these_predicted_labels = synthdata.read_labels(
            self._output_file_name(
                experiment_commands.PREDICTED_LABELS_FILE_NAME)
        )
        self.assertTrue(
            len(these_predicted_labels) == 2 * NUM_POINTS_PER_PARABOLA)

    def test_cmd_cluster_size_mismatch(self):
        """Ensures that cmd_cluster errors out when C does not match labels.
        """

        experiment_commands.cmd_generate(self.config_dict)
        synthdata.write_matrix(
            self._output_file_name(experiment_commands.COEFFS_FILE_NAME),
            numpy.eye(3)
        )

        with self.assertRaises(ValueError):
            experiment_commands.cmd_cluster(self.config_dict)


if __name__ == '__main__':
    unittest.main()
