from pytest import mark, raises

from featurefinch.symex.values import (
    Expr,
    SymVar,
    apply,
    as_bool,
    binary,
    evaluate,
    is_boolean,
    make,
    negate,
    sdiv,
    srem,
    to_text,
    unary,
    variables,
)

X = SymVar("x", 1, 32, 0, 3)
Y = SymVar("y", 1, 32, 0, 3)


def test_display_name():
    assert X.name == "x"
    assert SymVar("x", 3, 32, 0, 3).name == "x_3"
    assert str(SymVar("x", 2, 8, 0, 1)) == "x_2"


def test_constants_fold():
    assert binary("+", 2, 3) == 5
    assert binary("<", 2, 3) == 1
    assert binary(">=", 2, 3) == 0
    assert binary("&&", 4, 0) == 0
    assert unary("!", 0) == 1
    assert unary("-", 5) == -5


def test_arithmetic_wraps():
    assert binary("+", 2 ** 31 - 1, 1) == -(2 ** 31)
    assert binary("*", 2 ** 16, 2 ** 16) == 0


@mark.parametrize(
    "left, right, quotient, remainder",
    [(7, 2, 3, 1), (-7, 2, -3, -1), (7, -2, -3, 1), (-7, -2, 3, -1)],
)
def test_division_truncates_toward_zero(left, right, quotient, remainder):
    assert sdiv(left, right) == quotient
    assert srem(left, right) == remainder


def test_division_by_zero_stays_symbolic():
    assert make("SDiv", 4, 0) == Expr("SDiv", (4, 0))
    with raises(ZeroDivisionError):
        apply("SRem", 4, 0)


def test_greater_than_swaps_operands():
    assert to_text(binary(">", X, 3)) == "(Lt 3 x)"
    assert to_text(binary(">=", X, Y)) == "(Le y x)"


def test_commutative_operands_are_ordered():
    assert to_text(binary("==", X, 2)) == "(Eq 2 x)"
    assert binary("==", X, Y) == binary("==", Y, X)
    assert to_text(binary("+", X, 1)) == "(Add 1 x)"


def test_simplifications():
    assert binary("+", X, 0) == X
    assert binary("*", X, 1) == X
    assert binary("*", 0, X) == 0
    assert binary("==", X, X) == 1
    assert binary("<", X, X) == 0


def test_constants_fold_beside_expressions():
    equal = binary("==", X, 1)

    assert binary("&&", equal, 0) == 0
    assert binary("&&", 0, equal) == 0
    assert binary("&&", equal, 1) == equal
    assert binary("||", equal, 1) == 1
    assert binary("||", equal, 0) == equal
    assert binary("*", binary("+", X, 1), 0) == 0
    assert binary("+", binary("*", X, Y), 0) == binary("*", X, Y)


def test_negate_pushes_into_relations():
    assert to_text(negate(binary("==", X, 2))) == "(Ne 2 x)"
    assert to_text(negate(binary("<", X, Y))) == "(Le y x)"
    assert to_text(negate(binary("<=", X, Y))) == "(Lt y x)"
    both = binary("&&", binary("<", X, 2), binary("<", Y, 2))
    assert to_text(negate(both)) == "(Or (Le 2 x) (Le 2 y))"


def test_as_bool():
    assert as_bool(7) == 1
    assert to_text(as_bool(X)) == "(Ne 0 x)"
    relation = binary("<", X, 2)
    assert as_bool(relation) is relation
    assert is_boolean(relation)
    assert not is_boolean(binary("+", X, 1))


def test_evaluate_and_variables():
    value = binary("*", binary("+", X, 1), Y)

    assert evaluate(value, {"x": 2, "y": 3}) == 9
    assert variables(value) == frozenset({X, Y})
    assert variables(4) == frozenset()
    with raises(KeyError):
        evaluate(value, {"x": 2})
