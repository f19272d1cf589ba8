"""Self-describing JSON model files.

A model file holds the classifier state, the vocabulary and a sha1
checksum of that payload, verified on load.
"""
import json
from typing import Optional, Sequence

from featurefinch import __version__
from featurefinch.filesystem.filesystem import FileSystem
from featurefinch.hashing.hashers import Hasher, canonical_json
from featurefinch.learn.classifiers import CLASSIFIERS
from featurefinch.learn.documents import STACK, Vocabulary
from featurefinch.learn.evaluation import TrainedModel
from featurefinch.learn.exceptions import ModelMismatchError
from featurefinch.modelx.records import PathRecord

FORMAT = "featurefinch-model"
FORMAT_VERSION = 1


def dump_model(model: TrainedModel) -> str:
    """Serialize a trained model.

    Args:
        model: The model.

    Returns:
        str: JSON text ending with a newline.
    """
    payload = {
        "kind": model.kind,
        "source": model.source,
        "vocabulary": list(model.vocabulary.tokens),
        "state": model.classifier.state(),
    }
    document = {
        "format": FORMAT,
        "format_version": FORMAT_VERSION,
        "tool_version": __version__,
        "sha1": Hasher("sha1").document(payload),
        "payload": payload,
    }
    return canonical_json(document) + "\n"


def parse_model(text: str) -> TrainedModel:
    """Rebuild a model from its JSON text.

    Raises:
        ModelMismatchError: If the text is not a model file of this
            format or its checksum does not match.
    """
    try:
        document = json.loads(text)
        payload = document["payload"]
        if document.get("format") != FORMAT:
            raise ValueError("not a featurefinch model")
        if document.get("format_version") != FORMAT_VERSION:
            raise ValueError(
                f"unsupported format version {document.get('format_version')}"
            )
    except (ValueError, KeyError, TypeError) as error:
        raise ModelMismatchError(f"unreadable model file: {error}")

    if Hasher("sha1").document(payload) != document.get("sha1"):
        raise ModelMismatchError("model checksum mismatch")

    try:
        classifier = CLASSIFIERS[payload["kind"]].from_state(
            payload["state"]
        )
    except KeyError as error:
        raise ModelMismatchError(f"incomplete model file: {error}")
    return TrainedModel(
        kind=payload["kind"],
        source=payload["source"],
        vocabulary=Vocabulary(payload["vocabulary"], payload["source"]),
        classifier=classifier,
    )


def save_model(model: TrainedModel, path: str) -> None:
    """Write a model file."""
    FileSystem.write_file(path, dump_model(model))


def load_model(path: str) -> TrainedModel:
    """Read and verify a model file.

    Raises:
        FileNotFoundError: If there is no file at the path.
        ModelMismatchError: If the file is corrupt.
    """
    return parse_model(FileSystem.read_file(path))


def check_compatible(
    model: TrainedModel,
    records: Sequence[PathRecord],
    source: Optional[str] = None,
) -> None:
    """Check that a model can label records.

    Args:
        model: A loaded model.
        records: Records to label.
        source: Data source requested for the records.

    Raises:
        ModelMismatchError: If the sources differ or the model needs
            atoms the records do not carry.
    """
    if source is not None and source != model.source:
        raise ModelMismatchError(
            f"model was trained on {model.source!r} data, "
            f"not {source!r}"
        )
    if (
        model.source != STACK
        and records
        and not any(record.atoms for record in records)
    ):
        raise ModelMismatchError(
            f"model needs {model.source!r} data but the records "
            f"carry no atoms"
        )
