"""
Deterministic tabular output.

CSV dialect: comma separated, LF line endings, floats written with 17
significant digits, integers verbatim, and ``# key = value`` lines carrying
the provenance header (before the column row) and an optional footer (after
the data rows).  The JSON form carries the same content.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field


def format_cell(value) -> str:
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, int):
        return str(value)
    value = float(value)
    if not math.isfinite(value):
        raise ValueError(f"non-finite value {value!r} cannot be written")
    return format(value, ".17g")


def parse_cell(text: str):
    try:
        return int(text)
    except ValueError:
        return float(text)


def format_meta(value) -> str:
    if isinstance(value, (list, tuple)):
        return ",".join(format_meta(v) for v in value)
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


@dataclass
class FigureTable:
    name: str
    columns: tuple
    rows: list = field(default_factory=list)
    header: dict = field(default_factory=dict)
    footer: dict = field(default_factory=dict)

    def append(self, row) -> None:
        if len(row) != len(self.columns):
            raise ValueError(f"row has {len(row)} cells, table {self.name!r} has {len(self.columns)} columns")
        self.rows.append(list(row))

    def column(self, name: str) -> list:
        i = list(self.columns).index(name)
        return [r[i] for r in self.rows]

    # -- CSV ---------------------------------------------------------------
    def to_csv(self) -> str:
        lines = [f"# {k} = {format_meta(v)}" for k, v in self.header.items()]
        lines.append(",".join(self.columns))
        lines.extend(",".join(format_cell(c) for c in row) for row in self.rows)
        lines.extend(f"# {k} = {format_meta(v)}" for k, v in self.footer.items())
        return "\n".join(lines) + "\n"

    @classmethod
    def from_csv(cls, text: str, name: str = "") -> "FigureTable":
        header, footer, rows, columns = {}, {}, [], None
        for line in text.split("\n"):
            if not line:
                continue
            if line.startswith("#"):
                key, _, value = line[1:].strip().partition(" = ")
                (header if columns is None else footer)[key] = value
            elif columns is None:
                columns = tuple(line.split(","))
            else:
                rows.append([parse_cell(c) for c in line.split(",")])
        if columns is None:
            raise ValueError("no column row found")
        return cls(name or header.get("table", ""), columns, rows, header, footer)

    # -- JSON --------------------------------------------------------------
    def to_json(self) -> str:
        doc = {
            "table": self.name,
            "header": {k: format_meta(v) for k, v in self.header.items()},
            "columns": list(self.columns),
            "rows": [[int(c) if isinstance(c, bool) else c for c in row] for row in self.rows],
            "footer": {k: format_meta(v) for k, v in self.footer.items()},
        }
        return json.dumps(doc, indent=1) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "FigureTable":
        doc = json.loads(text)
        return cls(doc["table"], tuple(doc["columns"]), doc["rows"], doc["header"], doc["footer"])

    def render(self, fmt: str) -> str:
        if fmt == "csv":
            return self.to_csv()
        if fmt == "json":
            return self.to_json()
        raise ValueError(f"unknown format {fmt!r} (csv|json)")
