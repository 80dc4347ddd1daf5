"""Importance-based feature orderings.

An ordering lists distinct feature names, most important first.  Global
orderings (one per model) live in plain text files, one feature per line;
local orderings (one per instance) in JSON-lines files with
``{"row_id": ..., "features": [...]}`` records.  Orderings carry rank only;
importance scores never enter the induction algorithm.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .dataset import DecisionTable


@dataclass(frozen=True)
class FeatureOrdering:
    features: tuple[str, ...]
    scope: str = "global"
    instance_key: str | None = None

    def __post_init__(self):
        if not self.features:
            raise ValueError("feature ordering must be nonempty")
        if len(set(self.features)) != len(self.features):
            raise ValueError("duplicate feature in ordering")
        if self.scope not in ("global", "local"):
            raise ValueError(f"unknown ordering scope: {self.scope!r}")


def column_ordering(table: DecisionTable) -> FeatureOrdering:
    """Baseline ordering = attribute column order (the "without" variant)."""
    return FeatureOrdering(table.attribute_names)


def load_global_ordering(path: str) -> FeatureOrdering:
    with open(path, encoding="utf-8") as fh:
        features = [line.strip() for line in fh if line.strip()]
    if not features:
        raise ValueError(f"{path}: empty ordering file")
    if len(set(features)) != len(features):
        raise ValueError(f"{path}: duplicate feature in ordering")
    return FeatureOrdering(tuple(features))


def save_global_ordering(fo: FeatureOrdering, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for name in fo.features:
            fh.write(name + "\n")


def load_local_orderings(path: str) -> dict[str, FeatureOrdering]:
    """Read a JSON-lines file of per-instance orderings keyed by row_id."""
    out: dict[str, FeatureOrdering] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            obj = json.loads(line)
            if "row_id" not in obj:
                raise ValueError(f"{path}:{lineno}: missing row_id")
            rid = str(obj["row_id"])
            if rid in out:
                raise ValueError(f"{path}:{lineno}: duplicate row_id {rid!r}")
            features = [str(f) for f in obj.get("features", [])]
            if not features:
                raise ValueError(f"{path}:{lineno}: empty features list")
            if len(set(features)) != len(features):
                raise ValueError(f"{path}:{lineno}: duplicate feature")
            out[rid] = FeatureOrdering(tuple(features), scope="local", instance_key=rid)
    if not out:
        raise ValueError(f"{path}: no orderings found")
    return out


def save_local_orderings(orderings: dict[str, FeatureOrdering], path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for rid, fo in orderings.items():
            fh.write(json.dumps({"row_id": rid, "features": list(fo.features)}) + "\n")


def validate_ordering(fo: FeatureOrdering, table: DecisionTable) -> FeatureOrdering:
    """Check every ordered feature exists in the table; returns the ordering.

    Orderings may rank a subset of the attributes, but never names the table
    does not know.
    """
    known = set(table.attribute_names)
    unknown = [f for f in fo.features if f not in known]
    if unknown:
        raise ValueError(f"ordering names unknown attributes: {unknown}")
    return fo
