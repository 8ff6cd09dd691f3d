"""Deterministic tabular reports.

Identical inputs and flags must yield byte-identical CSV/JSON: field order is
fixed by row construction order, heights and other reals are written with 17
significant digits, text is UTF-8 with LF line endings, and no timestamps
enter a report.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field


@dataclass
class Report:
    kind: str  # classification | histogram | moment | paper_regression | match
    rows: list[dict] = field(default_factory=list)
    provenance: list[tuple[str, dict]] = field(default_factory=list)

    def add(self, operation: str, config: dict, **row) -> None:
        self.rows.append(row)
        self.provenance.append((operation, dict(config)))


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format(value, ".17g")
    if value is None:
        return ""
    return str(value)


def to_csv(report: Report) -> str:
    if not report.rows:
        return "kind\n" + report.kind + "\n"
    header = list(report.rows[0].keys())
    lines = [",".join(header)]
    for row in report.rows:
        lines.append(",".join(_fmt(row.get(k)) for k in header))
    return "\n".join(lines) + "\n"


def _jsonable(value):
    if isinstance(value, float):
        # shortest round-trip repr is deterministic for binary64
        return value
    if isinstance(value, (bool, int, str)) or value is None:
        return value
    return str(value)


def to_json(report: Report) -> str:
    payload = {
        "kind": report.kind,
        "rows": [{k: _jsonable(v) for k, v in row.items()} for row in report.rows],
        "provenance": [
            {"operation": op, "config": {k: _jsonable(v) for k, v in cfg.items()}}
            for op, cfg in report.provenance
        ],
    }
    return json.dumps(payload, indent=2) + "\n"


def render(report: Report, fmt: str) -> str:
    if fmt == "csv":
        return to_csv(report)
    if fmt == "json":
        return to_json(report)
    raise ValueError(f"unknown format {fmt!r}")
