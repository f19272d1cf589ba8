from pytest import fixture, raises

from featurefinch.language.features import TRUE, Atom
from featurefinch.language.lowering import resolve_product
from featurefinch.language.parser import parse_unit
from featurefinch.language.products import ProductDef
from featurefinch.modelx.corpus import (
    decode_corpus,
    dep_records,
    emit_corpus,
    encode_corpus,
    path_records,
    read_corpus,
)
from featurefinch.modelx.exceptions import CorpusError
from featurefinch.modelx.records import (
    DepRecord,
    Endpoint,
    PathRecord,
    SequenceEntry,
)
from featurefinch.symex.engine import extract_feature_models

SOURCE = """features A;
int g;
int helper() {
    return g;
}
void main() {
    int x;
    make_symbolic(x, 0, 3);
#if A
    g = x;
#endif
    if (helper() == 2) {
        fail() @spec(s1);
    }
}
"""


@fixture
def extracted():
    unit = parse_unit(SOURCE, "unit.flc")
    program = resolve_product(unit, ProductDef("A", frozenset({"A"})))
    return extract_feature_models(program), program


def test_path_records(extracted):
    result, program = extracted

    records = path_records(result, program)

    assert [r.status for r in records] == ["failure", "normal"]
    failure, normal = records
    assert failure.spec_id == "s1"
    assert failure.product == "A"
    assert failure.call_sequences == [(SequenceEntry("main", "unit.flc", 0),)]
    assert failure.atoms == ["(Eq 2 x)"]
    assert normal.spec_id is None
    assert normal.call_sequences[0] == (
        SequenceEntry("main", "unit.flc", 0),
        SequenceEntry("helper", "unit.flc", 12),
    )


def test_dep_records(extracted):
    result, _ = extracted

    (record,) = dep_records(result)

    assert record.kind == "SL"
    assert record.object == "g"
    assert record.src == Endpoint("unit.flc", 10, Atom("A"), "main")
    assert record.dst == Endpoint("unit.flc", 4, TRUE, "helper")
    assert (record.src_access, record.dst_access) == ("s", "l")


def test_corpus_file(tmp_path, extracted):
    result, program = extracted
    records = path_records(result, program)
    path = str(tmp_path / "corpus" / "paths.jsonl")

    emit_corpus(records, path)

    assert read_corpus(path, PathRecord) == records
    with open(path, encoding="utf-8") as corpus:
        first = corpus.readline()
    assert first.startswith('{"product":"A","spec_id":"s1"')


def test_dependency_corpus_keeps_presence(tmp_path, extracted):
    result, _ = extracted
    records = dep_records(result)
    path = str(tmp_path / "deps.jsonl")

    emit_corpus(records, path)

    assert read_corpus(path, DepRecord) == records


def test_empty_corpus(tmp_path):
    path = str(tmp_path / "empty.jsonl")

    emit_corpus([], path)

    assert read_corpus(path) == []


def test_heterogeneous_corpus(extracted):
    result, program = extracted
    mixed = path_records(result, program) + dep_records(result)

    with raises(CorpusError, match="heterogeneous"):
        encode_corpus(mixed)


def test_malformed_line():
    text = '{"product":"A","status":"normal"}\n'

    with raises(CorpusError, match="paths.jsonl:1"):
        decode_corpus(text, "paths.jsonl")


def test_unexpected_record_kind(tmp_path, extracted):
    result, _ = extracted
    path = str(tmp_path / "deps.jsonl")
    emit_corpus(dep_records(result), path)

    with raises(CorpusError, match="expected PathRecord"):
        read_corpus(path, PathRecord)


def test_missing_corpus(tmp_path):
    with raises(CorpusError, match="cannot read"):
        read_corpus(str(tmp_path / "missing.jsonl"))


def test_path_record_invariants():
    entry = (SequenceEntry("main", "unit.flc", 0),)

    with raises(ValueError):
        PathRecord("A", None, "crashed", [entry])
    with raises(ValueError):
        PathRecord("A", None, "normal", [])
    with raises(ValueError):
        PathRecord("A", "s1", "failure", [entry, entry])

    record = PathRecord("A", None, "normal", [entry], ["(b)", "(a)", "(b)"])
    assert record.atoms == ["(a)", "(b)"]
    assert record.functions() == ["main"]
    assert not record.is_failure
