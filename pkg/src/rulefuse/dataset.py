"""Decision-table data model and CSV ingestion.

A decision table holds examples described by typed attributes (nominal or
numeric) plus a class-valued target column.  The target may hold original
labels or the decisions of a black-box model (surrogate training).
"""

from __future__ import annotations

import csv
import math
import random
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

NOMINAL = "nominal"
NUMERIC = "numeric"

#: CSV cell values treated as missing.
MISSING_TOKENS = ("", "?")


@dataclass(frozen=True)
class Attribute:
    """A named, typed column of a decision table.

    ``domain`` is the sorted tuple of observed values for nominal attributes,
    or the observed ``(min, max)`` range for numeric ones (``None`` entries
    when the column is entirely missing).
    """

    name: str
    kind: str
    domain: tuple

    def __post_init__(self):
        if not self.name:
            raise ValueError("attribute name must be nonempty")
        if self.kind not in (NOMINAL, NUMERIC):
            raise ValueError(f"unknown attribute kind: {self.kind!r}")
        if self.kind == NOMINAL and not self.domain:
            raise ValueError(f"nominal attribute {self.name!r} has empty domain")
        if self.kind == NUMERIC and self.domain and self.domain[0] is not None:
            lo, hi = self.domain
            if lo > hi:
                raise ValueError(f"numeric attribute {self.name!r} has min > max")


def _parse_number(token: str) -> float | None:
    """Parse a locale-independent decimal number, rejecting inf/nan tokens."""
    try:
        value = float(token)
    except ValueError:
        return None
    if math.isnan(value) or math.isinf(value):
        return None
    return value


class DecisionTable:
    """Immutable table of examples over typed attributes plus a target column.

    Numeric columns are stored as float64 arrays with NaN marking missing
    cells; nominal columns as object arrays with None marking missing cells.
    Rows carry stable string identifiers used to join external per-row data
    (predictions, local feature orderings).
    """

    def __init__(
        self,
        attributes: Sequence[Attribute],
        columns: Mapping[str, np.ndarray],
        target: Sequence[str],
        row_ids: Sequence[str] | None = None,
        min_classes: int = 2,
    ):
        self.attributes = tuple(attributes)
        names = [a.name for a in self.attributes]
        if len(set(names)) != len(names):
            raise ValueError("duplicate attribute names")
        self._columns = {}
        n_rows = len(target)
        for attr in self.attributes:
            col = np.asarray(columns[attr.name])
            if len(col) != n_rows:
                raise ValueError(f"column {attr.name!r} length mismatch")
            col = col.copy()
            col.setflags(write=False)
            self._columns[attr.name] = col
        self.target = tuple(str(t) for t in target)
        self.classes = _distinct(self.target)
        if len(self.classes) < min_classes:
            raise ValueError("single-class target")
        if row_ids is None:
            row_ids = [str(i) for i in range(n_rows)]
        self.row_ids = tuple(str(r) for r in row_ids)
        if len(self.row_ids) != n_rows:
            raise ValueError("row_ids length mismatch")
        if len(set(self.row_ids)) != n_rows:
            raise ValueError("duplicate row_ids")
        class_index = {c: k for k, c in enumerate(self.classes)}
        codes = np.array([class_index[t] for t in self.target], dtype=np.int64)
        codes.setflags(write=False)
        self._target_codes = codes
        self._attr_by_name = {a.name: a for a in self.attributes}

    def __len__(self) -> int:
        return len(self.target)

    @property
    def attribute_names(self) -> tuple[str, ...]:
        return tuple(a.name for a in self.attributes)

    def attribute(self, name: str) -> Attribute:
        try:
            return self._attr_by_name[name]
        except KeyError:
            raise KeyError(f"unknown attribute: {name!r}") from None

    def column(self, name: str) -> np.ndarray:
        if name not in self._columns:
            raise KeyError(f"unknown attribute: {name!r}")
        return self._columns[name]

    def row(self, i: int) -> dict[str, object]:
        """Row ``i`` as an attribute-name -> value mapping (None = missing)."""
        out = {}
        for attr in self.attributes:
            v = self._columns[attr.name][i]
            if attr.kind == NUMERIC:
                out[attr.name] = None if np.isnan(v) else float(v)
            else:
                out[attr.name] = v
        return out

    def row_index(self, row_id: str) -> int:
        try:
            return self.row_ids.index(str(row_id))
        except ValueError:
            raise KeyError(f"unknown row_id: {row_id!r}") from None

    def class_mask(self, label: str) -> np.ndarray:
        """Boolean mask of rows whose target equals ``label``."""
        if label not in self.classes:
            raise KeyError(f"unknown class: {label!r}")
        return self._target_codes == self.classes.index(label)

    def class_counts(self) -> dict[str, int]:
        return {c: int(np.count_nonzero(self._target_codes == k))
                for k, c in enumerate(self.classes)}

    def majority_class(self) -> str:
        counts = self.class_counts()
        return max(self.classes, key=lambda c: counts[c])

    def take(self, indices: Sequence[int]) -> "DecisionTable":
        """New table holding the given rows, in the given order.

        Split parts may legitimately end up single-class; induction entry
        points enforce the two-class requirement themselves.
        """
        idx = list(indices)
        columns = {name: col[idx] for name, col in self._columns.items()}
        target = [self.target[i] for i in idx]
        row_ids = [self.row_ids[i] for i in idx]
        attrs = [_rebuild_attribute(a, columns[a.name]) for a in self.attributes]
        return DecisionTable(attrs, columns, target, row_ids, min_classes=1)


def _distinct(values: Iterable[str]) -> tuple[str, ...]:
    """Distinct values in first-appearance order."""
    seen = {}
    for v in values:
        seen.setdefault(v, None)
    return tuple(seen)


def _rebuild_attribute(attr: Attribute, column: np.ndarray) -> Attribute:
    """Attribute with its domain recomputed from ``column``.

    Falls back to the parent domain when a nominal column holds no observed
    values (possible in row subsets).
    """
    if attr.kind == NUMERIC:
        finite = column[~np.isnan(column.astype(float))]
        domain = (float(finite.min()), float(finite.max())) if len(finite) else (None, None)
    else:
        observed = sorted({v for v in column if v is not None})
        domain = tuple(observed) if observed else attr.domain
    return Attribute(attr.name, attr.kind, domain)


def _infer_kind(cells: Sequence[str]) -> str:
    """Numeric iff every non-missing cell parses as a finite number."""
    for cell in cells:
        if cell in MISSING_TOKENS:
            continue
        if _parse_number(cell) is None:
            return NOMINAL
    return NUMERIC


def _make_attribute(name: str, kind: str, column: np.ndarray) -> Attribute:
    if kind == NUMERIC:
        finite = column[~np.isnan(column)]
        domain = (float(finite.min()), float(finite.max())) if len(finite) else (None, None)
        return Attribute(name, kind, domain)
    observed = sorted({v for v in column if v is not None})
    if not observed:
        raise ValueError(f"nominal attribute {name!r} has no observed values")
    return Attribute(name, kind, tuple(observed))


def _build_column(cells: Sequence[str], kind: str) -> np.ndarray:
    if kind == NUMERIC:
        out = np.full(len(cells), np.nan, dtype=np.float64)
        for i, cell in enumerate(cells):
            if cell in MISSING_TOKENS:
                continue
            value = _parse_number(cell)
            if value is None:
                raise ValueError(f"cell {cell!r} is not numeric")
            out[i] = value
        return out
    out = np.empty(len(cells), dtype=object)
    for i, cell in enumerate(cells):
        out[i] = None if cell in MISSING_TOKENS else cell
    return out


def load_table(
    path: str,
    schema_override: Mapping[str, str] | None = None,
    target: str | None = None,
) -> DecisionTable:
    """Load a decision table from a comma-separated UTF-8 file.

    The first row is the header.  The last column is the target unless
    ``target`` names another column.  Attribute kinds are inferred from cell
    parseability and may be forced per attribute via ``schema_override``
    (name -> "nominal"/"numeric").  Empty cells and ``?`` are missing.
    """
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise ValueError(f"{path}: empty file") from None
        header = [h.strip() for h in header]
        rows = []
        for lineno, row in enumerate(reader, start=2):
            if len(row) != len(header):
                raise ValueError(f"{path}:{lineno}: ragged row "
                                 f"({len(row)} cells, expected {len(header)})")
            rows.append([c.strip() for c in row])
    if not rows:
        raise ValueError(f"{path}: empty table")

    if target is None:
        target_col = len(header) - 1
    else:
        if target not in header:
            raise ValueError(f"{path}: no such target column: {target!r}")
        target_col = header.index(target)

    target_cells = [r[target_col] for r in rows]
    if any(c in MISSING_TOKENS for c in target_cells):
        raise ValueError(f"{path}: missing value in target column")

    override = dict(schema_override or {})
    attributes = []
    columns = {}
    for j, name in enumerate(header):
        if j == target_col:
            continue
        cells = [r[j] for r in rows]
        kind = override.pop(name, None) or _infer_kind(cells)
        if kind not in (NOMINAL, NUMERIC):
            raise ValueError(f"bad kind {kind!r} for attribute {name!r}")
        col = _build_column(cells, kind)
        attributes.append(_make_attribute(name, kind, col))
        columns[name] = col
    if override:
        raise ValueError(f"schema override names unknown attributes: {sorted(override)}")

    return DecisionTable(attributes, columns, target_cells)


def save_table(table: DecisionTable, path: str, target_name: str = "class") -> None:
    """Write the table back to CSV (missing cells as ``?``).

    Values round-trip: reloading preserves cells, kinds and target for
    naturally typed data.  Use a schema sidecar to pin kinds that inference
    would not reproduce (e.g. numeric-looking nominal codes).
    """
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(list(table.attribute_names) + [target_name])
        for i in range(len(table)):
            row = []
            for attr in table.attributes:
                v = table.column(attr.name)[i]
                if attr.kind == NUMERIC:
                    row.append("?" if np.isnan(v) else repr(float(v)))
                else:
                    row.append("?" if v is None else v)
            row.append(table.target[i])
            writer.writerow(row)


def save_schema(table: DecisionTable, path: str) -> None:
    """Write the ``name,kind`` sidecar for the table's attributes."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        for attr in table.attributes:
            writer.writerow([attr.name, attr.kind])


def load_schema(path: str) -> dict[str, str]:
    """Read a ``name,kind`` sidecar into a schema-override mapping."""
    override = {}
    with open(path, newline="", encoding="utf-8") as fh:
        for lineno, row in enumerate(csv.reader(fh), start=1):
            if not row:
                continue
            if len(row) != 2:
                raise ValueError(f"{path}:{lineno}: expected 'name,kind'")
            name, kind = row[0].strip(), row[1].strip()
            if kind not in (NOMINAL, NUMERIC):
                raise ValueError(f"{path}:{lineno}: bad kind {kind!r}")
            if name in override:
                raise ValueError(f"{path}:{lineno}: duplicate attribute {name!r}")
            override[name] = kind
    return override


def replace_target(table: DecisionTable, predictions: Mapping[str, str]) -> DecisionTable:
    """Return a copy of the table with the target column replaced.

    ``predictions`` maps every row_id to its new label (typically a
    black-box model's decision).  The class set is recomputed.
    """
    new_target = []
    for rid in table.row_ids:
        if rid not in predictions:
            raise ValueError(f"predictions missing row_id {rid!r}")
        new_target.append(str(predictions[rid]))
    columns = {a.name: table.column(a.name) for a in table.attributes}
    return DecisionTable(table.attributes, columns, new_target, table.row_ids)


def split(
    table: DecisionTable, train_fraction: float, seed: int
) -> tuple[DecisionTable, DecisionTable]:
    """Deterministic train/test partition.

    The train part holds ``round(n * train_fraction)`` rows (half rounds up);
    the split is stratified by class when every class has at least two rows.
    Row order within each part follows the original table.
    """
    if not 0.0 < train_fraction < 1.0:
        raise ValueError("train_fraction must be strictly between 0 and 1")
    n = len(table)
    n_train = int(math.floor(n * train_fraction + 0.5))
    rng = random.Random(seed)
    counts = table.class_counts()
    stratified = all(c >= 2 for c in counts.values())

    if stratified:
        train_idx: list[int] = []
        quotas = {}
        floors = {}
        for label in table.classes:
            exact = counts[label] * train_fraction
            floors[label] = int(math.floor(exact))
            quotas[label] = exact - floors[label]
        remainder = n_train - sum(floors.values())
        # distribute leftover seats by largest fractional remainder, ties by class order
        order = sorted(table.classes, key=lambda c: (-quotas[c], table.classes.index(c)))
        bonus = set(order[:remainder])
        for label in table.classes:
            members = [i for i in range(n) if table.target[i] == label]
            rng.shuffle(members)
            k = floors[label] + (1 if label in bonus else 0)
            train_idx.extend(members[:k])
        train_set = set(train_idx)
    else:
        indices = list(range(n))
        rng.shuffle(indices)
        train_set = set(indices[:n_train])

    train = sorted(train_set)
    test = [i for i in range(n) if i not in train_set]
    return table.take(train), table.take(test)
