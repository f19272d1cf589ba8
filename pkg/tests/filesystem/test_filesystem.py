from os import listdir
from os.path import isdir, isfile

from pytest import fixture, mark, raises

from featurefinch.filesystem.filesystem import FileSystem

document_content = "test"


@fixture
def document(tmp_path):
    path = tmp_path / "document.txt"
    path.write_text(document_content, encoding="utf-8")
    return str(path)


@mark.parametrize("name,exists", [("document.txt", True), ("other", False)])
def test_has_file(name, exists, document, tmp_path):
    response = FileSystem.has_file(str(tmp_path / name))
    assert response == exists


def test_read_file(document):
    response = FileSystem.read_file(document)
    assert response == document_content


def test_read_file_exception(tmp_path):
    path = str(tmp_path / "missing.txt")

    with raises(FileNotFoundError) as execinfo:
        FileSystem.read_file(path)

    assert f"File does not exist at path {path}" in str(execinfo.value)


def test_write_file_creates_parents(tmp_path):
    path = str(tmp_path / "reports" / "rules.csv")

    FileSystem.write_file(path, document_content)

    assert isfile(path)
    assert FileSystem.read_file(path) == document_content


def test_write_file_replaces_without_leftovers(document, tmp_path):
    FileSystem.write_file(document, "new")

    assert FileSystem.read_file(document) == "new"
    assert listdir(str(tmp_path)) == ["document.txt"]


def test_make_directory(tmp_path):
    path = str(tmp_path / "corpus" / "nested")

    FileSystem.make_directory(path)
    FileSystem.make_directory(path)

    assert isdir(path)


@mark.parametrize("exists", [True, False])
def test_remove(exists, tmp_path):
    path = tmp_path / "document.txt"
    if exists:
        path.write_text(document_content)

    assert FileSystem.remove(str(path)) == exists
    assert not isfile(str(path))
