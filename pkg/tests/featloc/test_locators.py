from pytest import raises

from featurefinch.featloc.exceptions import RoleNameError
from featurefinch.featloc.locators import (
    locate_by_directive,
    locate_by_name,
    make_locator,
    role_feature,
)
from featurefinch.language.features import TRUE, And, Atom, Not
from featurefinch.modelx.records import DepRecord, Endpoint


def dep(src_presence=TRUE, dst_presence=TRUE, src_fn="", dst_fn=""):
    return DepRecord(
        product="AB",
        kind="SL",
        src=Endpoint("unit.flc", 10, src_presence, src_fn),
        dst=Endpoint("unit.flc", 20, dst_presence, dst_fn),
        object="g",
    )


def test_directive_locator():
    source = And((Atom("A"), Not(Atom("B"))))
    located = locate_by_directive(dep(source, Atom("B")))

    assert located.source == source
    assert located.dest == Atom("B")
    assert located.kind == "SL"
    assert (located.source_access, located.dest_access) == ("s", "l")
    assert located.src.line == 10


def test_directive_locator_skips_unconditional_code():
    assert locate_by_directive(dep(Atom("A"), TRUE)) is None
    assert locate_by_directive(dep(TRUE, Atom("A"))) is None


def test_role_feature():
    assert role_feature("printMail__role__Sign") == Atom("Sign")
    assert role_feature("printMail") is None
    assert role_feature("send::Encrypt", "::") == Atom("Encrypt")


def test_malformed_role_segment():
    with raises(RoleNameError, match="printMail__role__"):
        role_feature("printMail__role__")


def test_name_locator():
    record = dep(src_fn="store__role__Sign", dst_fn="check__role__Verify")

    located = locate_by_name(record)

    assert (located.source, located.dest) == (Atom("Sign"), Atom("Verify"))
    assert locate_by_name(dep(src_fn="main", dst_fn="x__role__A")) is None


def test_make_locator():
    record = dep(Atom("A"), Atom("B"), "f__role__C", "g__role__D")

    assert make_locator("directive")(record).source == Atom("A")
    assert make_locator("name")(record).source == Atom("C")
    with raises(ValueError):
        make_locator("guess")
