from fractions import Fraction

from pytest import raises

from featurefinch.mine.rules import (
    BOTH_WAYS,
    ONE_WAY,
    AssociationRule,
    derive_rules,
    filter_rules,
    format_rules,
    merge_directions,
    report_rules,
)

SRC_A = "A_Source_{Store_Load}_Store"
DST_B = "B_Destination_{Store_Load}_Load"
DST_A = "A_Destination_{Store_Load}_Load"


def itemset(*items):
    return frozenset(items)


def test_derive_rules():
    frequent = {
        itemset(SRC_A): Fraction(1, 2),
        itemset(DST_B): Fraction(1, 2),
        itemset(SRC_A, DST_B): Fraction(1, 2),
    }

    rules = derive_rules(frequent, 0.6)

    assert [(set(r.lhs), set(r.rhs)) for r in rules] == [
        ({SRC_A}, {DST_B}),
        ({DST_B}, {SRC_A}),
    ]
    assert all(r.confidence == 1 for r in rules)


def test_confidence_threshold():
    frequent = {
        itemset(SRC_A): Fraction(1, 2),
        itemset(DST_B): Fraction(1),
        itemset(SRC_A, DST_B): Fraction(1, 2),
    }

    rules = derive_rules(frequent, 0.6)

    assert [(set(r.lhs), r.confidence) for r in rules] == [({SRC_A}, 1)]


def test_self_dependencies_are_dropped():
    half = Fraction(1, 2)
    rules = [
        AssociationRule(itemset(SRC_A), itemset(DST_A), half, half),
        AssociationRule(itemset(SRC_A), itemset(DST_B), half, half),
    ]

    assert filter_rules(rules) == rules[1:]


def test_rule_sides_are_disjoint():
    with raises(ValueError):
        AssociationRule(itemset(SRC_A), itemset(SRC_A), 1, 1)


def test_merge_directions():
    half, one = Fraction(1, 2), Fraction(1)
    rules = [
        AssociationRule(itemset(DST_B), itemset(SRC_A), half, one),
        AssociationRule(itemset(SRC_A), itemset(DST_B), half, half),
    ]

    (merged,) = merge_directions(rules)

    assert merged.direction == BOTH_WAYS
    assert merged.lhs == itemset(SRC_A)
    assert merged.confidence == half
    assert merged.text == f"{{{SRC_A}}} ⟺ {{{DST_B}}}"


def test_one_way_rules():
    rule = AssociationRule(itemset(SRC_A), itemset(DST_B), 1, 1)

    (reported,) = merge_directions([rule])

    assert reported.direction == ONE_WAY


def test_format_rules(tmp_path):
    one = Fraction(1)
    rules = [
        AssociationRule(itemset(SRC_A), itemset(DST_B), Fraction(1, 4), one),
        AssociationRule(itemset(DST_B), itemset(SRC_A), Fraction(1, 4), one),
    ]
    expected = [
        "# run",
        "lhs,rhs,direction,support,confidence",
        f"{SRC_A},{DST_B},⟺,0.250000,1.000000",
    ]

    assert format_rules(rules, "# run\n").splitlines() == expected

    path = tmp_path / "rules.csv"
    report_rules(rules, str(path), "# run\n")
    assert path.read_text(encoding="utf-8").splitlines() == expected
