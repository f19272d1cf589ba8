"""Hashers for fingerprinting serialized models and corpora."""
import hashlib
import json
from typing import Any


def canonical_json(value: Any) -> str:
    """Serialize a JSON value with sorted keys and no whitespace."""
    return json.dumps(value, sort_keys=True, separators=(",", ":"))


class Hasher:
    """Hashes text or JSON documents with one algorithm.

    Attributes:
        algorithm: Name of a `hashlib` algorithm.
    """

    def __init__(self, algorithm: str = "sha1") -> None:
        """Establish the algorithm.

        Args:
            algorithm: Name of a hash algorithm.

        Raises:
            ValueError: If `hashlib` does not know the algorithm.
        """
        if algorithm not in hashlib.algorithms_available:
            raise ValueError(f"Unsupported hash algorithm {algorithm}.")
        self.algorithm = algorithm

    def __call__(self, value: str) -> str:
        """Hex digest of the UTF-8 encoding of a string."""
        hasher = hashlib.new(self.algorithm)
        hasher.update(value.encode("utf-8"))
        return hasher.hexdigest()

    def document(self, value: Any) -> str:
        """Hex digest of the canonical JSON form of a value.

        Two values that differ only in key order share a digest.

        Args:
            value: A JSON-serializable value.

        Returns:
            str: The digest.
        """
        return self(canonical_json(value))
