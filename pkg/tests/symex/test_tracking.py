from pytest import raises

from featurefinch.language.features import TRUE, Atom
from featurefinch.language.ir import Location
from featurefinch.symex.state import Access
from featurefinch.symex.tracking import (
    BASE_ADDRESS,
    OBJECT_OFFSET,
    DepPair,
    choose_longest,
    deduplicate,
    sequence_text,
    store_key,
)


def pair(kind, src_line, dst_line, src="main:0", dst="main:3"):
    return DepPair(
        kind=kind,
        src=src,
        dst=dst,
        object="g",
        src_loc=Location("unit.flc", src_line),
        dst_loc=Location("unit.flc", dst_line),
        src_presence=Atom("A"),
        dst_presence=TRUE,
    )


def test_pair_functions():
    dep = pair("SL", 4, 9, src="helper:2", dst="main:7")

    assert dep.src_function == "helper"
    assert dep.dst_function == "main"
    assert dep.key == (
        "SL",
        Location("unit.flc", 4),
        Location("unit.flc", 9),
        "g",
    )


def test_deduplicate_keeps_one_pair_per_location():
    pairs = [
        pair("SL", 8, 9, dst="main:5"),
        pair("SS", 3, 8),
        pair("SL", 8, 9, dst="main:4"),
    ]

    unique = deduplicate(pairs)

    assert [(p.kind, p.src_loc.line) for p in unique] == [
        ("SL", 8),
        ("SS", 3),
    ]
    assert unique[0].dst == "main:4"


def test_store_key_modes():
    access = Access("store", "buf", 2)

    assert store_key(access, BASE_ADDRESS) == "buf"
    assert store_key(access, OBJECT_OFFSET) == ("buf", 2)


def test_choose_longest():
    sequences = {
        1: {(("main", 0),)},
        2: {(("main", 0), ("b", 9)), (("main", 0), ("a", 12))},
        3: {(("main", 0), ("b", 9), ("c", 20))},
    }

    chosen = choose_longest(sequences, 2)

    assert chosen == [
        (("main", 0), ("b", 9), ("c", 20)),
        (("main", 0), ("a", 12)),
    ]
    assert len(choose_longest(sequences, 10)) == 4


def test_choose_longest_needs_positive_limit():
    with raises(ValueError):
        choose_longest({1: {(("main", 0),)}}, 0)


def test_sequence_text():
    assert sequence_text((("main", 0), ("f", 7))) == "main@0/f@7"
