"""Canonical text forms of model records.

Atoms use the prefix form `(<op> <lhs> <rhs>)` produced by the symbolic
engine; presence conditions use the directive syntax.
"""
from typing import Any, Dict, Iterable, List

from featurefinch.language.features import FeatureExpr, parse_feature_expr
from featurefinch.modelx.records import (
    DepRecord,
    Endpoint,
    PathRecord,
    SequenceEntry,
)
from featurefinch.symex.constraints import AtomicConstraint, serialize_atom


def serialize_atoms(atoms: Iterable[AtomicConstraint]) -> List[str]:
    """Serialize atoms into a sorted list without duplicates."""
    return sorted({serialize_atom(atom) for atom in atoms})


def presence_text(presence: FeatureExpr) -> str:
    """Render a presence condition, e.g. `A && !B`."""
    return presence.to_text()


def path_to_dict(record: PathRecord) -> Dict[str, Any]:
    """Convert a path record to its JSON object with fixed key order."""
    return {
        "product": record.product,
        "spec_id": record.spec_id,
        "status": record.status,
        "call_sequences": [
            [[entry.function, entry.file, entry.line] for entry in seq]
            for seq in record.call_sequences
        ],
        "atoms": list(record.atoms),
        "over_approx": record.over_approx,
        "truncated": record.truncated,
    }


def path_from_dict(data: Dict[str, Any]) -> PathRecord:
    """Build a path record from its JSON object.

    Raises:
        KeyError: If a required key is missing.
        ValueError: If the record breaks a record invariant.
    """
    return PathRecord(
        product=data["product"],
        spec_id=data.get("spec_id"),
        status=data["status"],
        call_sequences=[
            tuple(SequenceEntry(str(f), str(p), int(n)) for f, p, n in seq)
            for seq in data["call_sequences"]
        ],
        atoms=list(data.get("atoms", [])),
        over_approx=bool(data.get("over_approx", False)),
        truncated=bool(data.get("truncated", False)),
    )


def _endpoint_to_dict(endpoint: Endpoint) -> Dict[str, Any]:
    return {
        "file": endpoint.file,
        "line": endpoint.line,
        "presence": presence_text(endpoint.presence),
        "function": endpoint.function,
    }


def _endpoint_from_dict(data: Dict[str, Any]) -> Endpoint:
    return Endpoint(
        file=data["file"],
        line=int(data["line"]),
        presence=parse_feature_expr(data.get("presence", "true")),
        function=data.get("function", ""),
    )


def dep_to_dict(record: DepRecord) -> Dict[str, Any]:
    """Convert a dependency record to its JSON object."""
    return {
        "product": record.product,
        "kind": record.kind,
        "src": _endpoint_to_dict(record.src),
        "dst": _endpoint_to_dict(record.dst),
        "object": record.object,
    }


def dep_from_dict(data: Dict[str, Any]) -> DepRecord:
    """Build a dependency record from its JSON object.

    Raises:
        KeyError: If a required key is missing.
        ValueError: If the kind is not SL or SS.
    """
    return DepRecord(
        product=data.get("product", ""),
        kind=data["kind"],
        src=_endpoint_from_dict(data["src"]),
        dst=_endpoint_from_dict(data["dst"]),
        object=data["object"],
    )
