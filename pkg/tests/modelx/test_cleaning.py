from featurefinch.modelx.cleaning import TraceCleaner, clean_trace, is_excluded
from featurefinch.modelx.records import PathRecord, SequenceEntry


def entry(function, line=0):
    return SequenceEntry(function, "unit.flc", line)


def test_is_excluded():
    patterns = ("*_spec__*", "log*")

    assert is_excluded("enc_spec__1", patterns)
    assert is_excluded("logger", patterns)
    assert not is_excluded("main", patterns)


def test_clean_trace():
    sequence = (entry("main"), entry("log", 3), entry("send", 5))

    assert clean_trace(sequence, ["log"]) == (entry("main"), entry("send", 5))
    assert clean_trace((entry("log"),), ["log"]) is None


def test_cleaning_merges_sequences():
    record = PathRecord(
        "base",
        None,
        "normal",
        [
            (entry("main"), entry("log", 3)),
            (entry("main"),),
        ],
    )
    cleaner = TraceCleaner(["log"])

    cleaned = cleaner.clean(record)

    assert cleaned.call_sequences == [(entry("main"),)]
    assert record.call_sequences[0] == (entry("main"), entry("log", 3))


def test_fully_excluded_records_are_dropped():
    kept = PathRecord("base", None, "normal", [(entry("main"),)])
    gone = PathRecord("base", "s1", "failure", [(entry("check"),)])
    cleaner = TraceCleaner(["check"])

    assert cleaner.clean_all([gone, kept]) == [kept]
    assert cleaner.dropped == 1


def test_no_exclusions_keep_records():
    record = PathRecord("base", None, "normal", [(entry("main"),)])

    assert TraceCleaner().clean_all([record]) == [record]
