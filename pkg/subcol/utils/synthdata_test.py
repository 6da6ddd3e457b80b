"""Unit tests for synthdata.py."""

import os
import shutil
import tempfile
import unittest
import numpy
from subcol.utils import numlin
from subcol.utils import synthdata
from subcol.utils import error_checking

# The following constants are used to test gen_union_subspaces.
SUBSPACE_OPTION_DICT = {
    'ambient_dim': 10,
    'subspace_dim': 2,
    'num_subspaces': 3,
    'num_points_per_subspace': 15,
    'min_angle_deg': 20.,
    'seed': 5
}


class SynthdataTests(unittest.TestCase):
    """Each method is a unit test for synthdata.py."""

    def setUp(self):
        """Creates temporary directory for output files."""

        self.directory_name = tempfile.mkdtemp()

    def tearDown(self):
        """Deletes temporary directory."""

        shutil.rmtree(self.directory_name)

    def _write_text(self, pathless_file_name, text_string):
        """Writes text to file in temporary directory.

        :param pathless_file_name: File name without directory.
        :param text_string: Contents.
        :return: file_name: Full path.
        """

        file_name = os.path.join(self.directory_name, pathless_file_name)
        with open(file_name, 'w') as file_handle:
            file_handle.write(text_string)

        return file_name

    def test_gen_two_parabolas_exact(self):
        """Ensures correct output from gen_two_parabolas.

        In this case, there is no noise, so points lie exactly on parabolas.
        """

        this_dict = synthdata.gen_two_parabolas(seed=1)
        this_data_matrix = this_dict[synthdata.DATA_MATRIX_KEY]
        these_labels = this_dict[synthdata.LABELS_KEY]

        self.assertTrue(this_data_matrix.shape == (2, 100))
        self.assertTrue(numpy.array_equal(
            these_labels, numpy.repeat(numpy.array([0, 1]), 50)))

        first_matrix = this_data_matrix[:, these_labels == 0]
        second_matrix = this_data_matrix[:, these_labels == 1]
        self.assertTrue(numpy.array_equal(
            first_matrix[1, :], numpy.square(first_matrix[0, :])))
        self.assertTrue(numpy.array_equal(
            second_matrix[1, :], 1. - numpy.square(second_matrix[0, :])))
        self.assertTrue(numpy.all(numpy.absolute(this_data_matrix[0, :]) <= 1))

        synthdata.check_dataset(this_dict)

    def test_gen_two_parabolas_noise(self):
        """Ensures correct output from gen_two_parabolas.

        In this case, noise stdev = 0.01.
        """

        this_dict = synthdata.gen_two_parabolas(noise_stdev=0.01, seed=3)
        this_data_matrix = this_dict[synthdata.DATA_MATRIX_KEY]
        first_matrix = this_data_matrix[
            :, this_dict[synthdata.LABELS_KEY] == 0]

        this_mean_error = numpy.mean(numpy.absolute(
            first_matrix[1, :] - numpy.square(first_matrix[0, :])
        ))
        self.assertTrue(this_mean_error <= 0.03)

    def test_gen_two_parabolas_deterministic(self):
        """Ensures that gen_two_parabolas is deterministic given seed."""

        first_matrix = synthdata.gen_two_parabolas(
            noise_stdev=0.1, seed=9)[synthdata.DATA_MATRIX_KEY]
        second_matrix = synthdata.gen_two_parabolas(
            noise_stdev=0.1, seed=9)[synthdata.DATA_MATRIX_KEY]
        self.assertTrue(numpy.array_equal(first_matrix, second_matrix))

    def test_gen_union_subspaces_lines(self):
        """Ensures correct output from gen_union_subspaces.

        In this case, there are two near-orthogonal lines in the plane.
        """

        this_dict = synthdata.gen_union_subspaces(
            ambient_dim=2, subspace_dim=1, num_subspaces=2,
            num_points_per_subspace=20, min_angle_deg=80., seed=0)

        these_basis_matrices = this_dict['basis_matrices']
        self.assertTrue(synthdata.min_principal_angle_deg(
            these_basis_matrices[0], these_basis_matrices[1]
        ) >= 80.)
        self.assertTrue(
            this_dict[synthdata.DATA_MATRIX_KEY].shape == (2, 40))

    def test_gen_union_subspaces_on_subspace(self):
        """Ensures correct output from gen_union_subspaces.

        In this case, there is no noise, so each point lies in its subspace.
        """

        this_dict = synthdata.gen_union_subspaces(**SUBSPACE_OPTION_DICT)
        this_data_matrix = this_dict[synthdata.DATA_MATRIX_KEY]
        these_labels = this_dict[synthdata.LABELS_KEY]

        for k, this_basis_matrix in enumerate(this_dict['basis_matrices']):
            this_point_matrix = this_data_matrix[:, these_labels == k]
            this_residual_matrix = this_point_matrix - numpy.dot(
                this_basis_matrix,
                numpy.dot(this_basis_matrix.T, this_point_matrix)
            )

            self.assertTrue(
                numpy.max(numpy.absolute(this_residual_matrix)) <= 1e-12)
            self.assertTrue(numpy.allclose(
                numpy.linalg.norm(this_point_matrix, axis=0), 1.,
                atol=1e-12))

    def test_gen_union_subspaces_angles(self):
        """Ensures correct output from gen_union_subspaces.

        In this case, all pairwise principal angles must respect the minimum.
        """

        this_dict = synthdata.gen_union_subspaces(**SUBSPACE_OPTION_DICT)
        these_basis_matrices = this_dict['basis_matrices']

        for i in range(len(these_basis_matrices)):
            for j in range(i + 1, len(these_basis_matrices)):
                this_product_matrix = numpy.dot(
                    these_basis_matrices[i].T, these_basis_matrices[j])
                these_cosines = numpy.linalg.svd(
                    this_product_matrix, compute_uv=False)
                this_angle_deg = numpy.rad2deg(
                    numpy.arccos(min([these_cosines[0], 1.])))

                self.assertTrue(this_angle_deg >= 20. - 1e-8)

    def test_gen_union_subspaces_impossible(self):
        """Ensures that gen_union_subspaces gives up on impossible angles."""

        with self.assertRaises(ValueError):
            synthdata.gen_union_subspaces(
                ambient_dim=2, subspace_dim=1, num_subspaces=3,
                num_points_per_subspace=5, min_angle_deg=89.,
                max_num_tries=200)

    def test_matrix_round_trip(self):
        """Ensures that write_matrix and read_matrix are bit-exact."""

        this_rng = numlin.create_rng(10)
        this_file_name = os.path.join(self.directory_name, 'matrix.csv')

        for _ in range(100):
            these_dimensions = tuple(this_rng.integers(1, 8, size=2))
            this_matrix = (
                this_rng.standard_normal(these_dimensions) *
                10. ** this_rng.integers(-20, 20, size=these_dimensions)
            )

            synthdata.write_matrix(this_file_name, this_matrix)
            self.assertTrue(numpy.array_equal(
                synthdata.read_matrix(this_file_name), this_matrix))

    def test_read_matrix_count_mismatch(self):
        """Ensures that read_matrix errors out on too few values."""

        this_file_name = self._write_text('bad.csv', '2,2\n1,2\n3\n')
        with self.assertRaises(error_checking.CountMismatchError):
            synthdata.read_matrix(this_file_name)

    def test_read_matrix_overflow(self):
        """Ensures that read_matrix errors out on 1e309."""

        this_file_name = self._write_text('bad.csv', '1,2\n1e309,2\n')
        with self.assertRaises(error_checking.OverflowParseError):
            synthdata.read_matrix(this_file_name)

    def test_read_matrix_unparsable(self):
        """Ensures that read_matrix errors out on a non-numeric token."""

        this_file_name = self._write_text('bad.csv', '1,2\n1,foo\n')
        with self.assertRaises(error_checking.UnparsableTokenError):
            synthdata.read_matrix(this_file_name)

    def test_read_matrix_unparsable_after_blank_lines(self):
        """Ensures that read_matrix errors out on a non-numeric token.

        In this case, blank lines come before the bad token, and the error
        still names the physical line (5).
        """

        this_file_name = self._write_text(
            'bad.csv', '2,2\n\n1,2\n\n3,foo\n')
        with self.assertRaisesRegex(
                error_checking.UnparsableTokenError, 'line 5\\.'):
            synthdata.read_matrix(this_file_name)

    def test_parse_value_lines_line_numbers(self):
        """Ensures that parse_value_lines reports the given line numbers."""

        with self.assertRaisesRegex(
                error_checking.OverflowParseError, 'line 9 '):
            synthdata.parse_value_lines(
                ['1,2', '3,1e309'], num_rows=2, num_columns=2,
                line_numbers=[4, 9])

    def test_read_matrix_bad_header(self):
        """Ensures that read_matrix errors out on a malformed header."""

        this_file_name = self._write_text('bad.csv', 'rows,cols\n1,2\n')
        with self.assertRaises(error_checking.MalformedHeaderError):
            synthdata.read_matrix(this_file_name)

    def test_read_matrix_missing(self):
        """Ensures that read_matrix errors out on a missing file."""

        with self.assertRaises(FileNotFoundError):
            synthdata.read_matrix(
                os.path.join(self.directory_name, 'missing.csv'))

    def test_label_round_trip(self):
        """Ensures that write_labels and read_labels are exact."""

        these_labels = numpy.array([0, 0, 1, 2, 1], dtype=int)
        this_file_name = os.path.join(self.directory_name, 'labels.csv')

        synthdata.write_labels(this_file_name, these_labels)
        self.assertTrue(numpy.array_equal(
            synthdata.read_labels(this_file_name), these_labels))


if __name__ == '__main__':
    unittest.main()
