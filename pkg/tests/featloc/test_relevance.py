from featurefinch.featloc.relevance import (
    classify_relevance,
    format_relevance,
)
from featurefinch.language.features import TRUE, Atom
from featurefinch.modelx.records import DepRecord, Endpoint


def dep(kind, src_presence, dst_presence, src_fn="main", dst_fn="main"):
    return DepRecord(
        product="A",
        kind=kind,
        src=Endpoint("unit.flc", 1, src_presence, src_fn),
        dst=Endpoint("unit.flc", 2, dst_presence, dst_fn),
        object="g",
    )


DEPS = [
    dep("SL", Atom("A"), Atom("B")),
    dep("SL", Atom("A"), TRUE),
    dep("SL", TRUE, TRUE, "f__role__A"),
    dep("SS", TRUE, Atom("B")),
]


def test_directive_relevance():
    tally = classify_relevance(DEPS)

    assert tally["SL"] == {
        "FR->FR": 1,
        "FR->NFR": 1,
        "NFR->FR": 0,
        "NFR->NFR": 1,
    }
    assert tally["SS"]["NFR->FR"] == 1


def test_name_relevance():
    tally = classify_relevance(DEPS, mode="name")

    assert tally["SL"]["FR->NFR"] == 1
    assert tally["SL"]["NFR->NFR"] == 2
    assert sum(tally["SS"].values()) == 1


def test_format_relevance():
    text = format_relevance(classify_relevance(DEPS), "# run\n")

    assert text.splitlines() == [
        "# run",
        "kind,fr_fr,fr_nfr,nfr_fr,nfr_nfr,total",
        "SL,1,1,0,1,3",
        "SS,0,0,1,0,1",
    ]
