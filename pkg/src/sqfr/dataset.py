"""Loading, validating and writing per-sample quality-score datasets.

Two interchangeable on-disk formats:

* CSV: UTF-8 with a header row, RFC-4180 quoting. Default columns
  ``group``, ``component``, ``score`` and optional ``sample_id``; names are
  remappable. Row numbers in diagnostics are 1-based physical lines
  (the header is line 1).
* JSON: ``{"components": {"<component>": {"<group>": [score, ...]}}}``.
  Diagnostics carry the JSON path of the offending element.

Loaders canonicalize: components and group labels are ordered
lexicographically and scores within a group ascending, so a dataset's
downstream reports do not depend on input row order. Score arrays are
frozen after loading and safe to share across threads.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import ConfigError, ParseError, ValidationError
from .types import GroupedScores

_FORBIDDEN_LABEL_CHARS = ('"', "\n", "\r")

#: Group-size ratio above which validate() flags a component as unbalanced.
UNBALANCE_RATIO = 10.0


@dataclass
class ScoreRecord:
    """One parsed input row."""

    group_label: str
    component_id: str
    score: float
    sample_id: str | None = None


@dataclass
class Diagnostic:
    severity: str  # "error" | "warning"
    message: str
    location: str | None = None

    def __str__(self) -> str:
        prefix = f"{self.location}: " if self.location else ""
        return f"{prefix}{self.message}"


@dataclass
class Provenance:
    source: str
    row_count: int
    warnings: list[Diagnostic] = field(default_factory=list)


@dataclass
class Dataset:
    """All quality components of one source file, plus parse provenance."""

    components: dict[str, GroupedScores]
    provenance: Provenance = field(compare=False, default_factory=lambda: Provenance("", 0))

    def total_scores(self) -> int:
        return sum(g.size for c in self.components.values() for g in c.groups.values())


def load_csv(
    path,
    group_col: str = "group",
    component_col: str = "component",
    score_col: str = "score",
    sample_col: str = "sample_id",
    strict: bool = True,
) -> Dataset:
    """Parse a CSV score file into a Dataset.

    In strict mode (default) any malformed row raises ParseError citing its
    row number; in lenient mode malformed rows are skipped and recorded as
    warnings in the provenance. Silent data loss can corrupt fairness
    conclusions, hence the strict default.
    """
    path = Path(path)
    warnings: list[Diagnostic] = []
    buckets: dict[str, dict[str, list[float]]] = {}
    rows = 0
    # utf-8-sig: tolerate the BOM spreadsheet exports tend to prepend
    with open(path, newline="", encoding="utf-8-sig") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None:
            raise ParseError(f"{path}: empty file, expected a header row")
        missing = [c for c in (group_col, component_col, score_col) if c not in reader.fieldnames]
        if missing:
            raise ConfigError(
                f"{path}: missing required column(s) {', '.join(map(repr, missing))};"
                f" found {reader.fieldnames}"
            )
        has_sample = sample_col in reader.fieldnames
        for row in reader:
            rows += 1
            line = reader.line_num
            try:
                record = _parse_row(row, line, group_col, component_col, score_col,
                                    sample_col if has_sample else None)
            except ParseError as exc:
                if strict:
                    raise
                warnings.append(Diagnostic("warning", f"skipped row: {exc}", f"row {line}"))
                continue
            buckets.setdefault(record.component_id, {}).setdefault(
                record.group_label, []
            ).append(record.score)
    components = _canonical_components(buckets, str(path))
    return Dataset(components, Provenance(str(path), rows, warnings))


def _parse_row(row, line, group_col, component_col, score_col, sample_col) -> ScoreRecord:
    group = row.get(group_col)
    component = row.get(component_col)
    raw_score = row.get(score_col)
    for name, value in ((group_col, group), (component_col, component), (score_col, raw_score)):
        if value is None or value == "":
            raise ParseError(f"row {line}: missing value in column {name!r}")
    for name, value in ((group_col, group), (component_col, component)):
        if any(ch in value for ch in _FORBIDDEN_LABEL_CHARS):
            raise ParseError(f"row {line}: column {name!r} contains quote or newline characters")
    try:
        score = float(raw_score)
    except ValueError:
        raise ParseError(f"row {line}: score {raw_score!r} is not a number") from None
    if not math.isfinite(score):
        raise ParseError(f"row {line}: score {raw_score!r} is not finite")
    if score < 0:
        raise ParseError(f"row {line}: negative score {raw_score!r}")
    sample = row.get(sample_col) if sample_col else None
    return ScoreRecord(group, component, score, sample or None)


def load_json(path) -> Dataset:
    """Parse a JSON score file into a Dataset (see module docstring for the schema)."""
    path = Path(path)
    with open(path, encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ParseError(f"{path}: invalid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise ParseError(f"{path}: $: expected a top-level object")
    if "components" not in doc:
        raise ParseError(f"{path}: $: missing 'components' key")
    comps = doc["components"]
    if not isinstance(comps, dict):
        raise ParseError(f"{path}: components: expected an object")
    buckets: dict[str, dict[str, list[float]]] = {}
    count = 0
    for cid, groups in comps.items():
        if not isinstance(groups, dict):
            raise ParseError(f"{path}: components.{cid}: expected an object of groups")
        buckets[cid] = {}
        for label, values in groups.items():
            where = f"components.{cid}.{label}"
            if not isinstance(values, list):
                raise ParseError(f"{path}: {where}: expected an array of scores")
            parsed = []
            for idx, value in enumerate(values):
                if isinstance(value, bool) or not isinstance(value, (int, float)):
                    raise ParseError(f"{path}: {where}[{idx}]: expected a number")
                if not math.isfinite(value):
                    raise ParseError(f"{path}: {where}[{idx}]: score is not finite")
                if value < 0:
                    raise ParseError(f"{path}: {where}[{idx}]: negative score {value}")
                parsed.append(float(value))
            buckets[cid][label] = parsed
            count += len(parsed)
    components = _canonical_components(buckets, str(path))
    return Dataset(components, Provenance(str(path), count))


def _canonical_components(buckets, source: str) -> dict[str, GroupedScores]:
    if not buckets:
        raise ValidationError(f"{source}: dataset contains no score records")
    components: dict[str, GroupedScores] = {}
    problems: list[str] = []
    for cid in sorted(buckets):
        groups = {}
        for label in sorted(buckets[cid]):
            arr = np.sort(np.asarray(buckets[cid][label], dtype=np.float64))
            arr.flags.writeable = False
            groups[label] = arr
        grouped = GroupedScores(cid, groups)
        problems.extend(grouped.problems())
        components[cid] = grouped
    if problems:
        raise ValidationError("; ".join(problems))
    return components


def validate(dataset: Dataset) -> list[Diagnostic]:
    """Non-mutating health check; returns diagnostics instead of raising.

    Errors are invariant breaches (possible on hand-built datasets; loaders
    reject them at parse time). Warnings flag inputs that are legal but
    deserve attention: strongly unbalanced group sizes, single-valued
    components, and scores outside the conventional 0-100 scale.
    """
    out: list[Diagnostic] = []
    for cid, grouped in dataset.components.items():
        where = f"component '{cid}'"
        problems = grouped.problems()
        out.extend(Diagnostic("error", p) for p in problems)
        if problems:
            continue
        sizes = grouped.group_sizes()
        ratio = max(sizes.values()) / min(sizes.values())
        if ratio > UNBALANCE_RATIO:
            out.append(
                Diagnostic(
                    "warning",
                    f"group sizes are severely unbalanced (max/min ratio "
                    f"{ratio:.1f} > {UNBALANCE_RATIO:g}): {sizes}",
                    where,
                )
            )
        pooled = grouped.union()
        if pooled.min() == pooled.max():
            out.append(
                Diagnostic(
                    "warning",
                    f"all scores equal ({pooled[0]:g}); every measure is trivially 1",
                    where,
                )
            )
        if pooled.min() < 0 or pooled.max() > 100:
            out.append(
                Diagnostic(
                    "warning",
                    f"scores outside the conventional [0, 100] scale "
                    f"(min {pooled.min():g}, max {pooled.max():g})",
                    where,
                )
            )
    return out


def _as_components(data) -> dict[str, GroupedScores]:
    if isinstance(data, Dataset):
        return data.components
    if isinstance(data, GroupedScores):
        return {data.component_id: data}
    return dict(data)


def dumps_csv(data) -> str:
    """Serialize components to CSV text (component, group, score rows)."""
    components = _as_components(data)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["component", "group", "score"])
    for cid, grouped in components.items():
        for label, scores in grouped.groups.items():
            for score in scores:
                writer.writerow([cid, label, repr(float(score))])
    return buf.getvalue()


def dumps_json(data) -> str:
    """Serialize components to the JSON dataset schema."""
    components = _as_components(data)
    doc = {
        "components": {
            cid: {label: [float(s) for s in scores] for label, scores in grouped.groups.items()}
            for cid, grouped in components.items()
        }
    }
    return json.dumps(doc, indent=2) + "\n"


def save_csv(data, path) -> None:
    Path(path).write_text(dumps_csv(data), encoding="utf-8")


def save_json(data, path) -> None:
    Path(path).write_text(dumps_json(data), encoding="utf-8")
