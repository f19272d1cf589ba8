import json

import numpy as np
from pytest import fixture, raises

from featurefinch import __version__
from featurefinch.config.settings import LearnConfig
from featurefinch.learn.evaluation import fit_model
from featurefinch.learn.exceptions import ModelMismatchError
from featurefinch.learn.persistence import (
    FORMAT,
    check_compatible,
    dump_model,
    load_model,
    parse_model,
    save_model,
)
from featurefinch.modelx.records import PathRecord, SequenceEntry


def record(status, functions, atoms=(), spec_id=None):
    sequence = tuple(
        SequenceEntry(f, "unit.flc", line) for line, f in enumerate(functions)
    )
    return PathRecord("AB", spec_id, status, [sequence], list(atoms))


@fixture
def records():
    normals = [
        record("normal", ["main", "send"], ["(Eq 0 checkRes)"])
        for _ in range(8)
    ]
    failures = [
        record("failure", ["main", "check"], ["(Eq 1 checkRes)"], "s1")
        for _ in range(4)
    ]
    return normals + failures


@fixture
def config():
    return LearnConfig(rf_trees=5)


def test_dump_model(records, config):
    model = fit_model(records, "combined", "nb", config)

    document = json.loads(dump_model(model))

    assert document["format"] == FORMAT
    assert document["format_version"] == 1
    assert document["tool_version"] == __version__
    assert len(document["sha1"]) == 40
    assert document["payload"]["vocabulary"] == list(model.vocabulary.tokens)


def test_parse_model(records, config):
    for kind in ("nb", "svm", "rf"):
        model = fit_model(records, "stack", kind, config)

        loaded = parse_model(dump_model(model))

        assert loaded.kind == kind
        assert loaded.source == "stack"
        assert np.array_equal(loaded.predict(records), model.predict(records))


def test_checksum_mismatch(records, config):
    model = fit_model(records, "stack", "nb", config)
    document = json.loads(dump_model(model))
    document["payload"]["source"] = "combined"

    with raises(ModelMismatchError, match="checksum"):
        parse_model(json.dumps(document))


def test_unreadable_model_files():
    with raises(ModelMismatchError):
        parse_model("not json")
    with raises(ModelMismatchError, match="not a featurefinch model"):
        parse_model(json.dumps({"format": "other", "payload": {}}))
    with raises(ModelMismatchError, match="format version"):
        parse_model(
            json.dumps({"format": FORMAT, "format_version": 9, "payload": {}})
        )


def test_save_and_load_model(tmp_path, records, config):
    model = fit_model(records, "stack", "rf", config)
    path = str(tmp_path / "models" / "model.json")

    save_model(model, path)

    assert load_model(path).vocabulary.tokens == model.vocabulary.tokens


def test_load_missing_model(tmp_path):
    with raises(FileNotFoundError):
        load_model(str(tmp_path / "missing.json"))


def test_check_compatible(records, config):
    model = fit_model(records, "constraints", "nb", config)
    bare = [record("normal", ["main"])]

    check_compatible(model, records, "constraints")
    with raises(ModelMismatchError, match="trained on 'constraints'"):
        check_compatible(model, records, "stack")
    with raises(ModelMismatchError, match="no atoms"):
        check_compatible(model, bare)
