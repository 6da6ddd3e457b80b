"""Unit tests for report_plotting.py."""

import os.path
import shutil
import tempfile
import unittest
import xml.etree.ElementTree
import numpy
import pandas
from subcol.utils import sedsc
from subcol.utils import numlin
from subcol.utils import oracles
from subcol.utils import report_plotting

TOLERANCE = 1e-10

TRACE_TABLE = pandas.DataFrame({
    sedsc.ITERATION_COLUMN: numpy.arange(5),
    sedsc.Z_NORM_COLUMN: numpy.array([1., 0.8, 0.6, 0.5, 0.45])
})

LABELS = numpy.array([0, 0, 0, 1, 1, 1], dtype=int)

# Class 0 lies on a line and class 1 spans the plane.
RANK_ONE_MATRIX = numpy.array([
    [1., 2., -1., 1., 0., 1.],
    [2., 4., -2., 0., 1., 1.]
])


class ReportPlottingTests(unittest.TestCase):
    """Each method is a unit test for report_plotting.py."""

    def setUp(self):
        """Creates temporary directory."""

        self.temp_dir_name = tempfile.mkdtemp()

    def tearDown(self):
        """Deletes temporary directory."""

        shutil.rmtree(self.temp_dir_name)

    def _assert_svg(self, file_name):
        """Ensures that file exists and is well-formed SVG.

        :param file_name: Path to file.
        """

        self.assertTrue(os.path.isfile(file_name))
        this_root_element = xml.etree.ElementTree.parse(file_name).getroot()
        self.assertTrue(this_root_element.tag.endswith('svg'))

    def test_plot_z_norm_trace(self):
        """Ensures that plot_z_norm_trace writes valid SVG."""

        this_file_name = os.path.join(self.temp_dir_name, 'z_norm.svg')
        report_plotting.plot_z_norm_trace(
            TRACE_TABLE, this_file_name, pretrain_trace_table=TRACE_TABLE)

        self._assert_svg(this_file_name)

    def test_plot_z_norm_trace_empty(self):
        """Ensures that plot_z_norm_trace errors out on an empty trace."""

        with self.assertRaises(ValueError):
            report_plotting.plot_z_norm_trace(
                TRACE_TABLE.iloc[:0],
                os.path.join(self.temp_dir_name, 'z_norm.svg'))

    def test_plot_z_norm_trace_deterministic(self):
        """Ensures that plot_z_norm_trace writes identical bytes twice."""

        these_file_names = [
            os.path.join(self.temp_dir_name, 'first.svg'),
            os.path.join(self.temp_dir_name, 'second.svg')
        ]
        these_contents = []

        for this_file_name in these_file_names:
            report_plotting.plot_z_norm_trace(TRACE_TABLE, this_file_name)
            with open(this_file_name, 'rb') as this_file_handle:
                these_contents.append(this_file_handle.read())

        self.assertTrue(these_contents[0] == these_contents[1])

    def test_compute_class_spectra(self):
        """Ensures correct output from compute_class_spectra.

        In this case, class 0 is rank one, so its second normalized singular
        value is zero.
        """

        this_table = report_plotting.compute_class_spectra(
            {'Raw': RANK_ONE_MATRIX}, LABELS)

        self.assertTrue(len(this_table.index) == 4)

        this_class_table = this_table.loc[
            this_table[report_plotting.CLASS_COLUMN] == 0]
        self.assertTrue(numpy.allclose(
            this_class_table[report_plotting.NORMALIZED_SV_COLUMN].values,
            numpy.array([1., 0.]), atol=TOLERANCE
        ))

        this_class_table = this_table.loc[
            this_table[report_plotting.CLASS_COLUMN] == 1]
        these_values = numlin.svd(
            RANK_ONE_MATRIX[:, 3:])[numlin.SINGULAR_VALUES_KEY]
        self.assertTrue(numpy.allclose(
            this_class_table[report_plotting.NORMALIZED_SV_COLUMN].values,
            these_values / these_values[0], atol=TOLERANCE
        ))

    def test_plot_class_spectra(self):
        """Ensures that plot_class_spectra writes valid SVG."""

        this_table = report_plotting.compute_class_spectra(
            {'Raw': RANK_ONE_MATRIX, 'AE': 2 * RANK_ONE_MATRIX}, LABELS)
        this_file_name = os.path.join(self.temp_dir_name, 'spectra.svg')
        report_plotting.plot_class_spectra(this_table, this_file_name)

        self._assert_svg(this_file_name)

    def test_plot_embedding_scatter(self):
        """Ensures that plot_embedding_scatter writes valid SVG.

        In this case, the second embedding has one dimension.
        """

        this_file_name = os.path.join(self.temp_dir_name, 'scatter.svg')
        report_plotting.plot_embedding_scatter(
            RANK_ONE_MATRIX, RANK_ONE_MATRIX[:1, :], LABELS, this_file_name)

        self._assert_svg(this_file_name)

    def test_plot_coeff_heatmap_collapsed(self):
        """Ensures correct output from plot_coeff_heatmap.

        In this case, C is the canonical two-point solution, so all l1 mass is
        in two entries.
        """

        this_solution_dict = oracles.thm2_canonical(
            num_points=6, embedding_dim=2, tau=1., perm_seed=2)
        this_file_name = os.path.join(self.temp_dir_name, 'heatmap.svg')

        this_top2_mass = report_plotting.plot_coeff_heatmap(
            this_solution_dict[oracles.C_STAR_KEY], this_file_name)

        self.assertTrue(numpy.isclose(this_top2_mass, 1., atol=TOLERANCE))
        self._assert_svg(this_file_name)

    def test_plot_coeff_heatmap_zero(self):
        """Ensures correct output from plot_coeff_heatmap.

        In this case, C = 0.
        """

        this_file_name = os.path.join(self.temp_dir_name, 'heatmap.svg')
        this_top2_mass = report_plotting.plot_coeff_heatmap(
            numpy.zeros((4, 4)), this_file_name)

        self.assertTrue(this_top2_mass == 0.)
        self._assert_svg(this_file_name)

    def test_summarize_degeneracy(self):
        """Ensures correct output from summarize_degeneracy."""

        this_solution_dict = oracles.thm2_canonical(
            num_points=5, embedding_dim=2, tau=1.)
        this_random_matrix = numlin.create_rng(3).standard_normal((2, 5))

        this_table = report_plotting.summarize_degeneracy({
            'pretrained': (this_random_matrix, numpy.eye(5)),
            'trained': (
                this_solution_dict[oracles.Z_STAR_KEY],
                this_solution_dict[oracles.C_STAR_KEY]
            )
        })

        self.assertTrue(list(this_table[report_plotting.STAGE_COLUMN]) == [
            'pretrained', 'trained'
        ])
        self.assertFalse(
            this_table[report_plotting.STRUCTURE_PASSED_COLUMN].values[0])
        self.assertTrue(
            this_table[report_plotting.STRUCTURE_PASSED_COLUMN].values[1])
        self.assertTrue(numpy.isclose(
            this_table[oracles.C_TOP2_MASS_KEY].values[1], 1.,
            atol=TOLERANCE))

        this_file_name = os.path.join(self.temp_dir_name, 'summary.csv')
        report_plotting.write_summary(this_file_name, this_table)
        self.assertTrue(len(pandas.read_csv(this_file_name).index) == 2)


if __name__ == '__main__':
    unittest.main()
