from pytest import mark, raises

from featurefinch.hashing.hashers import Hasher, canonical_json


@mark.parametrize(
    "value,hashed_value",
    [
        ("test", "a94a8fe5ccb19ba61c4c0873d391e987982fbbd3"),
        ("", "da39a3ee5e6b4b0d3255bfef95601890afd80709"),
    ],
)
def test_hash(value, hashed_value):
    hasher = Hasher("sha1")
    response = hasher(value)

    assert response == hashed_value


def test_hash_sha256():
    hasher = Hasher("sha256")

    assert hasher("test") == (
        "9f86d081884c7d659a2feaa0c55ad015a3bf4f1b2b0b822cd15d6c15b0f00a08"
    )


def test_hash_document():
    hasher = Hasher()

    assert hasher.document({"b": 1, "a": [2]}) == hasher('{"a":[2],"b":1}')
    assert hasher.document({"a": [2], "b": 1}) == hasher.document(
        {"b": 1, "a": [2]}
    )


def test_canonical_json():
    assert canonical_json({"b": None, "a": "x"}) == '{"a":"x","b":null}'


def test_unknown_algorithm():
    with raises(ValueError, match="Unsupported hash algorithm"):
        Hasher("sha0")
