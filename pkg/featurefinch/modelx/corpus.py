"""JSON-Lines corpora of path and dependency records."""
import json
import logging
from typing import List, Optional, Sequence, Union

from featurefinch.filesystem.filesystem import FileSystem
from featurefinch.language.ir import IrProgram
from featurefinch.modelx.exceptions import CorpusError
from featurefinch.modelx.records import (
    FAILURE,
    NORMAL,
    DepRecord,
    Endpoint,
    PathRecord,
    SequenceEntry,
)
from featurefinch.modelx.serialize import (
    dep_from_dict,
    dep_to_dict,
    path_from_dict,
    path_to_dict,
    serialize_atoms,
)
from featurefinch.symex.engine import ExtractionResult, PathOutcome
from featurefinch.symex.state import CallSequence

logger = logging.getLogger(__name__)

Record = Union[PathRecord, DepRecord]


def _sequence(program: IrProgram, sequence: CallSequence):
    return tuple(
        SequenceEntry(function, program.path, line)
        for function, line in sequence
    )


def path_records(
    result: ExtractionResult, program: IrProgram
) -> List[PathRecord]:
    """Build the path records of one product, ordered by path id.

    Args:
        result: Extraction result of the product.
        program: The product's program.

    Returns:
        list: Normal and failure records.
    """
    outcomes: List[tuple] = [
        (outcome, NORMAL) for outcome in result.normal_paths
    ] + [(outcome, FAILURE) for outcome in result.fail_paths]
    outcomes.sort(key=lambda pair: pair[0].id)

    return [
        _path_record(result, program, outcome, status)
        for outcome, status in outcomes
    ]


def _path_record(
    result: ExtractionResult,
    program: IrProgram,
    outcome: PathOutcome,
    status: str,
) -> PathRecord:
    return PathRecord(
        product=result.product,
        spec_id=outcome.spec_id if status == FAILURE else None,
        status=status,
        call_sequences=[
            _sequence(program, seq) for seq in outcome.sequences
        ],
        atoms=serialize_atoms(outcome.atoms),
        over_approx=outcome.over_approx,
        truncated=result.truncated,
    )


def dep_records(result: ExtractionResult) -> List[DepRecord]:
    """Build the dependency records of one product.

    Args:
        result: Extraction result of the product.

    Returns:
        list: SS records then SL records in pair order.
    """
    return [
        DepRecord(
            product=result.product,
            kind=pair.kind,
            src=Endpoint(
                pair.src_loc.file,
                pair.src_loc.line,
                pair.src_presence,
                pair.src_function,
            ),
            dst=Endpoint(
                pair.dst_loc.file,
                pair.dst_loc.line,
                pair.dst_presence,
                pair.dst_function,
            ),
            object=pair.object,
        )
        for pair in result.ss_pairs + result.sl_pairs
    ]


def _to_line(record: Record) -> str:
    if isinstance(record, PathRecord):
        data = path_to_dict(record)
    else:
        data = dep_to_dict(record)
    return json.dumps(data, ensure_ascii=False, separators=(",", ":"))


def encode_corpus(records: Sequence[Record]) -> str:
    """Render records as JSON Lines.

    Raises:
        CorpusError: If the records are of different kinds.
    """
    kinds = {type(record) for record in records}
    if len(kinds) > 1:
        raise CorpusError("heterogeneous corpus")
    return "".join(_to_line(record) + "\n" for record in records)


def emit_corpus(records: Sequence[Record], path: str) -> None:
    """Write records to a JSON-Lines file.

    Zero records produce an empty file; identical records produce
    identical files.

    Args:
        records: Path records or dependency records, not both.
        path: Output file.

    Raises:
        CorpusError: If the records are mixed or the file cannot be
            written.
    """
    text = encode_corpus(records)
    try:
        FileSystem.write_file(path, text)
    except OSError as error:
        raise CorpusError(f"cannot write corpus {path}: {error}")
    logger.info("wrote %d records to %s", len(records), path)


def decode_corpus(text: str, path: str = "<corpus>") -> List[Record]:
    """Parse JSON Lines into records.

    Raises:
        CorpusError: On malformed lines or mixed record kinds.
    """
    records: List[Record] = []
    for number, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            data = json.loads(line)
            if "kind" in data:
                records.append(dep_from_dict(data))
            else:
                records.append(path_from_dict(data))
        except (ValueError, KeyError, TypeError) as error:
            raise CorpusError(f"{path}:{number}: malformed record: {error}")

    if len({type(record) for record in records}) > 1:
        raise CorpusError(f"{path}: heterogeneous corpus")
    return records


def read_corpus(path: str, expect: Optional[type] = None) -> List[Record]:
    """Read a JSON-Lines corpus.

    Args:
        path: Corpus file.
        expect: PathRecord or DepRecord to require one kind.

    Returns:
        list: The records.

    Raises:
        CorpusError: If the file cannot be read, is malformed or holds
            records of another kind.
    """
    try:
        text = FileSystem.read_file(path)
    except OSError as error:
        raise CorpusError(f"cannot read corpus {path}: {error}")

    records = decode_corpus(text, path)
    if expect is not None and records and not isinstance(records[0], expect):
        raise CorpusError(
            f"{path}: expected {expect.__name__} records, "
            f"found {type(records[0]).__name__}"
        )
    return records

