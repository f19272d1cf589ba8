"""Handles interacting with files and directories."""
from os import fsync, makedirs, remove, replace
from os.path import abspath, dirname, isfile
from tempfile import NamedTemporaryFile


class FileSystem:
    """Performs actions on files and directories."""

    @staticmethod
    def has_file(path: str) -> bool:
        """Check if a file exists at the system path.

        Args:
            path: System path to file.

        Returns bool.
        """
        return isfile(path)

    @staticmethod
    def read_file(path: str) -> str:
        """Retrieve the contents of a UTF-8 file.

        Args:
            path: System path to file.

        Returns:
            str: Contents of the file.

        Raises:
            FileNotFoundError: If the path does not contain a file.
        """
        if not isfile(path):
            raise FileNotFoundError(f"File does not exist at path {path}.")

        with open(path, "r", encoding="utf-8") as reader:
            return reader.read()

    @staticmethod
    def make_directory(path: str) -> None:
        """Create a directory and any missing parents.

        Args:
            path: System path to the directory.
        """
        makedirs(path, exist_ok=True)

    @staticmethod
    def write_file(path: str, contents: str) -> None:
        """Write a file atomically.

        The contents go to a temporary file in the target directory
        which then replaces `path`, so readers never see a partial file.

        Args:
            path: System path to file.
            contents: Contents to write to the file.
        """
        directory = dirname(abspath(path))
        makedirs(directory, exist_ok=True)

        with NamedTemporaryFile(
            "w",
            encoding="utf-8",
            newline="\n",
            dir=directory,
            prefix=".tmp-",
            delete=False,
        ) as writer:
            writer.write(contents)
            writer.flush()
            fsync(writer.fileno())
            temp_path = writer.name

        try:
            replace(temp_path, path)
        except OSError:
            remove(temp_path)
            raise

    @staticmethod
    def remove(path: str) -> bool:
        """Remove a file.

        Args:
            path: System path to file.

        Returns:
            bool: False if file not found, true if removed.
        """
        if not isfile(path):
            return False

        remove(path)
        return True
