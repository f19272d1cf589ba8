"""Mapping of dependency endpoints to features.

Directive mode takes the presence condition of each endpoint's line.
Name mode reads the feature from a role-style function name such as
`printMail__role__Sign`.
"""
from dataclasses import dataclass
from typing import Callable, Optional

from featurefinch.featloc.exceptions import RoleNameError
from featurefinch.language.features import TRUE, Atom, FeatureExpr
from featurefinch.modelx.records import DepRecord, Endpoint

ROLE_SEPARATOR = "__role__"
DIRECTIVE = "directive"
NAME = "name"


@dataclass(frozen=True)
class FeatureDepRecord:
    """A dependency between two features.

    Attributes:
        source: Feature of the source store.
        dest: Feature of the destination access.
        kind: `SL` or `SS`.
        dest_access: `l` for a load, `s` for a store.
        src: Location of the source.
        dst: Location of the destination.
    """

    source: FeatureExpr
    dest: FeatureExpr
    kind: str
    dest_access: str
    src: Endpoint
    dst: Endpoint

    @property
    def source_access(self) -> str:
        """Access kind of the source, always a store."""
        return "s"


def _record(dep: DepRecord, source, dest) -> FeatureDepRecord:
    return FeatureDepRecord(
        source=source,
        dest=dest,
        kind=dep.kind,
        dest_access=dep.dst_access,
        src=dep.src,
        dst=dep.dst,
    )


def locate_by_directive(dep: DepRecord) -> Optional[FeatureDepRecord]:
    """Label a dependency with the presence conditions of its lines.

    Args:
        dep: A dependency record.

    Returns:
        FeatureDepRecord: The labelled dependency, or None when either
            endpoint is unconditional code.
    """
    if dep.src.presence == TRUE or dep.dst.presence == TRUE:
        return None
    return _record(dep, dep.src.presence, dep.dst.presence)


def role_feature(
    function: str, separator: str = ROLE_SEPARATOR
) -> Optional[Atom]:
    """Read the feature of a role-style function name.

    Args:
        function: Function name, e.g. `printMail__role__Sign`.
        separator: Role marker.

    Returns:
        Atom: The feature, or None if the name has no role marker.

    Raises:
        RoleNameError: If the segment after the marker is not a
            feature name.
    """
    if separator not in function:
        return None
    feature = function.rpartition(separator)[2]
    try:
        return Atom(feature)
    except ValueError:
        raise RoleNameError(
            f"malformed role segment {feature!r} in function {function!r}"
        )


def locate_by_name(
    dep: DepRecord, separator: str = ROLE_SEPARATOR
) -> Optional[FeatureDepRecord]:
    """Label a dependency with the roles of its functions.

    Args:
        dep: A dependency record.
        separator: Role marker.

    Returns:
        FeatureDepRecord: The labelled dependency, or None when either
            function has no role.

    Raises:
        RoleNameError: If a role segment is malformed.
    """
    source = role_feature(dep.src.function, separator)
    dest = role_feature(dep.dst.function, separator)
    if source is None or dest is None:
        return None
    return _record(dep, source, dest)


def make_locator(
    mode: str, separator: str = ROLE_SEPARATOR
) -> Callable[[DepRecord], Optional[FeatureDepRecord]]:
    """Create the locator of a mode.

    Args:
        mode: `directive` or `name`.
        separator: Role marker used by name mode.

    Returns:
        The locator function.

    Raises:
        ValueError: If the mode is not supported.
    """
    if mode == DIRECTIVE:
        return locate_by_directive
    if mode == NAME:
        return lambda dep: locate_by_name(dep, separator)
    raise ValueError(f"Unsupported locator mode {mode}.")
