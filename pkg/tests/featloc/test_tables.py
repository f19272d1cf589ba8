from pytest import raises

from featurefinch.featloc.locators import locate_by_directive
from featurefinch.featloc.tables import (
    format_dependency_table,
    parse_dependency_table,
)
from featurefinch.language.features import And, Atom, Not
from featurefinch.modelx.exceptions import CorpusError
from featurefinch.modelx.records import DepRecord, Endpoint


def located(kind="SL"):
    return locate_by_directive(
        DepRecord(
            product="AB",
            kind=kind,
            src=Endpoint("unit.flc", 10, Atom("A")),
            dst=Endpoint("unit.flc", 20, And((Atom("B"), Not(Atom("A"))))),
            object="g",
        )
    )


def test_format_dependency_table():
    text = format_dependency_table([located(), located("SS")], "# v\n")

    assert text.splitlines() == [
        "# v",
        "kind,src_file,src_line,src_presence,dst_file,dst_line,"
        "dst_presence,src_access,dst_access",
        "SL,unit.flc,10,A,unit.flc,20,B && !A,s,l",
        "SS,unit.flc,10,A,unit.flc,20,B && !A,s,s",
    ]


def test_parse_dependency_table():
    records = [located(), located("SS")]

    parsed = parse_dependency_table(format_dependency_table(records))

    assert [(r.kind, r.source, r.dest, r.dest_access) for r in parsed] == [
        (r.kind, r.source, r.dest, r.dest_access) for r in records
    ]


def test_malformed_table_row():
    text = format_dependency_table([located()]).replace("SL,", "XX,")

    with raises(CorpusError, match="row 2"):
        parse_dependency_table(text)
