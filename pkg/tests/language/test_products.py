from pytest import mark, raises

from featurefinch.language.exceptions import ProductError
from featurefinch.language.products import (
    ProductDef,
    format_products,
    parse_products,
)


def test_parse_products():
    text = (
        "# products of the line\n"
        "base:\n"
        "\n"
        "sign_verify: Sign, Verify\n"
        "  keys : Keys\n"
    )

    products = parse_products(text, {"Keys", "Sign", "Verify"})

    assert products == [
        ProductDef("base", frozenset()),
        ProductDef("sign_verify", frozenset({"Sign", "Verify"})),
        ProductDef("keys", frozenset({"Keys"})),
    ]


def test_parse_products_without_declared_features():
    products = parse_products("p: Anything\n")

    assert products[0].enabled == {"Anything"}


@mark.parametrize(
    "text,message",
    [
        ("", "empty product file"),
        ("# only a comment\n", "empty product file"),
        ("no colon here\n", "malformed product at line 1"),
        ("p: A\np: B\n", "duplicate product 'p' at line 2"),
        ("p: A, 1B\n", "invalid feature '1B' at line 1"),
        ("p: A, C\n", "undeclared feature 'C' in product 'p'"),
    ],
)
def test_parse_products_errors(text, message):
    with raises(ProductError, match=message):
        parse_products(text, {"A", "B"})


def test_format_products_sorts_features():
    products = [
        ProductDef("sign_verify", frozenset({"Verify", "Sign"})),
        ProductDef("base", frozenset()),
    ]

    text = format_products(products)

    assert text == "sign_verify: Sign, Verify\nbase: \n"
    assert parse_products(text) == products
