"""Methods for file-system access."""

import os
from subcol.utils import error_checking


def mkdir_recursive_if_necessary(directory_name=None, file_name=None):
    """Creates directory if necessary (i.e., doesn't already exist).

    This method checks for the argument `directory_name` first.  If
    `directory_name` is None, this method checks for `file_name` and extracts
    the directory.

    :param directory_name: Path to local directory.
    :param file_name: Path to local file.
    """

    if directory_name is None:
        error_checking.assert_is_string(file_name)
        directory_name = os.path.dirname(file_name)
    else:
        error_checking.assert_is_string(directory_name)

    if directory_name == '':
        return

    os.makedirs(directory_name, exist_ok=True)


def find_file_in_directory(directory_name, pathless_file_name,
                           raise_error_if_missing=True):
    """Finds file with given name in given directory.

    :param directory_name: Path to directory.
    :param pathless_file_name: File name without directory.
    :param raise_error_if_missing: Boolean flag.  If file is missing and
        `raise_error_if_missing = True`, this method will error out.
    :return: file_name: Full path to file.  If file is missing and
        `raise_error_if_missing = False`, this is the expected path.
    :raises: FileNotFoundError: if file is missing and
        `raise_error_if_missing = True`.
    """

    error_checking.assert_is_string(directory_name)
    error_checking.assert_is_string(pathless_file_name)
    error_checking.assert_is_boolean(raise_error_if_missing)

    file_name = os.path.join(directory_name, pathless_file_name)
    if raise_error_if_missing:
        error_checking.assert_file_exists(file_name)

    return file_name
