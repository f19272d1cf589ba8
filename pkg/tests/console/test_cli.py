from os.path import exists
from unittest.mock import patch

from pytest import mark, raises

from featurefinch import __version__
from featurefinch.console.cli import build_parser, main, options_of
from featurefinch.console.reports import ProductSummary
from featurefinch.support.exceptions import InvariantViolation


def test_options_of():
    args = build_parser().parse_args(
        ["mine", "deps.jsonl", "--min-support", "0.2", "-L", "3"]
    )

    options = options_of(args, ["deps.jsonl"])

    assert options["min_support"] == 0.2
    assert options["l"] == 3
    assert options["search"] is None
    assert options["pipeline"] == "mine"
    assert options["inputs"] == ["deps.jsonl"]


def test_gen_bench(tmp_path, capsys):
    status = main(
        [
            "gen-bench",
            "--scale",
            "4",
            "--padding",
            "1",
            "--output",
            str(tmp_path),
        ]
    )

    assert status == 0
    assert "scale4: 4 features" in capsys.readouterr().out
    assert exists(tmp_path / "scale4.flc")


@mark.parametrize("argv", [[], ["mine"], ["train", "x", "--model", "knn"]])
def test_usage_errors(argv):
    with raises(SystemExit) as error:
        main(argv)

    assert error.value.code == 1


def test_version(capsys):
    with raises(SystemExit) as error:
        main(["--version"])

    assert error.value.code == 0
    assert __version__ in capsys.readouterr().out


def test_missing_input(tmp_path):
    missing = str(tmp_path / "missing")

    status = main(["extract", missing, missing, "--output", str(tmp_path)])

    assert status == 2


def test_invalid_setting(tmp_path):
    status = main(
        ["mine", "deps.jsonl", "--min-support", "2", "--output", str(tmp_path)]
    )

    assert status == 2


def test_missing_config_file(tmp_path):
    status = main(
        [
            "report",
            "paths.jsonl",
            "--config",
            str(tmp_path / "missing.cfg"),
            "--output",
            str(tmp_path),
        ]
    )

    assert status == 2


def test_truncated_extraction(tmp_path):
    rows = [ProductSummary("a_b", 1, 0, 0, 0, 0, True)]

    with patch("featurefinch.console.commands.extract", return_value=rows):
        status = main(
            ["extract", "u.flc", "u.products", "--output", str(tmp_path)]
        )

    assert status == 3


def test_internal_error(tmp_path):
    with patch(
        "featurefinch.console.commands.mine",
        side_effect=InvariantViolation("broken"),
    ):
        status = main(["mine", "deps.jsonl", "--output", str(tmp_path)])

    assert status == 4
