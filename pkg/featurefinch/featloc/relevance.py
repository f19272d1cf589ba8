"""Tallies of feature-relevant dependency endpoints."""
from typing import Dict, Iterable

from featurefinch.featloc.locators import (
    DIRECTIVE,
    NAME,
    ROLE_SEPARATOR,
    role_feature,
)
from featurefinch.language.features import TRUE
from featurefinch.modelx.records import DEP_KINDS, DepRecord, Endpoint
from featurefinch.support.reports import render_csv

BUCKETS = ("FR->FR", "FR->NFR", "NFR->FR", "NFR->NFR")

Tally = Dict[str, Dict[str, int]]


def _relevant(endpoint: Endpoint, mode: str, separator: str) -> bool:
    if mode == DIRECTIVE:
        return endpoint.presence != TRUE
    if mode == NAME:
        return role_feature(endpoint.function, separator) is not None
    raise ValueError(f"Unsupported locator mode {mode}.")


def classify_relevance(
    deps: Iterable[DepRecord],
    mode: str = DIRECTIVE,
    separator: str = ROLE_SEPARATOR,
) -> Tally:
    """Count dependencies by the relevance of their endpoints.

    An endpoint is feature relevant (FR) when its line is guarded by a
    directive, or in name mode when its function carries a role.

    Args:
        deps: Dependency records.
        mode: `directive` or `name`.
        separator: Role marker used by name mode.

    Returns:
        dict: Per kind, the count of each of the four buckets.
    """
    tally = {kind: dict.fromkeys(BUCKETS, 0) for kind in DEP_KINDS}
    for dep in deps:
        src = "FR" if _relevant(dep.src, mode, separator) else "NFR"
        dst = "FR" if _relevant(dep.dst, mode, separator) else "NFR"
        tally[dep.kind][f"{src}->{dst}"] += 1
    return tally


def format_relevance(tally: Tally, preamble: str = "") -> str:
    """Render a tally as CSV, one row per kind."""
    rows = [
        [kind]
        + [tally[kind][bucket] for bucket in BUCKETS]
        + [sum(tally[kind].values())]
        for kind in DEP_KINDS
    ]
    header = ["kind", "fr_fr", "fr_nfr", "nfr_fr", "nfr_nfr", "total"]
    return render_csv(header, rows, preamble)
