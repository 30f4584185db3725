"""Run configuration and the JSON/CSV/table reports written by the CLI."""
from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict, dataclass, field
from typing import Any

from . import __version__

SCHEMA_VERSION = 1
FORMATS = ("json", "csv", "table")


@dataclass
class RunConfig:
    command: str
    params: dict[str, Any] = field(default_factory=dict)
    workers: int = 1
    format: str = "json"
    out: str | None = None
    seed: int = 0
    timing: bool = False

    def __post_init__(self):
        if self.format not in FORMATS:
            raise ValueError(f"unknown format {self.format!r}; expected one of {', '.join(FORMATS)}")
        if self.workers < 1:
            raise ValueError("workers must be at least 1")

    def echo(self) -> dict:
        # workers, out and format change how a run executes or is written,
        # never its results, so they stay out of the report
        return {"command": self.command, "params": self.params, "seed": self.seed}


@dataclass
class Report:
    config: dict
    results: Any
    anomalies: list[dict] = field(default_factory=list)
    timing: dict | None = None
    tool: str = "distext"
    version: str = __version__
    schema_version: int = SCHEMA_VERSION
    rows: list[dict] | None = field(default=None, repr=False, compare=False)

    def to_dict(self) -> dict:
        d = asdict(self)
        d.pop("rows")
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_json(cls, text: str) -> Report:
        d = json.loads(text)
        if d.get("schema_version") != SCHEMA_VERSION:
            raise ValueError(f"unsupported report schema {d.get('schema_version')!r}")
        return cls(**d)

    def results_payload(self) -> str:
        """Canonical serialization of the results, used for determinism checks."""
        return json.dumps(self.results, sort_keys=True)

    def table_rows(self) -> list[dict]:
        if self.rows is not None:
            return self.rows
        if isinstance(self.results, dict):
            return [{k: _cell(v) for k, v in self.results.items()}]
        return [{"value": _cell(self.results)}]

    def to_csv(self) -> str:
        rows = self.table_rows()
        buf = io.StringIO()
        if rows:
            writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
            writer.writeheader()
            writer.writerows({k: _cell(v) for k, v in r.items()} for r in rows)
        return buf.getvalue()

    def to_table(self) -> str:
        rows = [{k: str(_cell(v)) for k, v in r.items()} for r in self.table_rows()]
        if not rows:
            return "(no rows)\n"
        cols = list(rows[0])
        width = {c: max(len(c), *(len(r.get(c, "")) for r in rows)) for c in cols}
        lines = ["  ".join(c.ljust(width[c]) for c in cols), "  ".join("-" * width[c] for c in cols)]
        lines += ["  ".join(r.get(c, "").ljust(width[c]) for c in cols) for r in rows]
        if self.anomalies:
            lines.append(f"anomalies: {len(self.anomalies)}")
        return "\n".join(lines) + "\n"

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return self.to_json()
        if fmt == "csv":
            return self.to_csv()
        if fmt == "table":
            return self.to_table()
        raise ValueError(f"unknown format {fmt!r}")


def _cell(v):
    if isinstance(v, (dict, list)):
        return json.dumps(v, sort_keys=True)
    return v
