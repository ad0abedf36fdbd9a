"""Report tables, deterministic CSV/JSON serialisation and SVG charts.

Undefined values (zero denominators) are carried as None and written as an
empty CSV field or JSON ``null``.
"""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping, Sequence
from xml.sax.saxutils import escape

import numpy as np
import pandas as pd

from gvckit.errors import EmptySeries, IoError, UnknownFormat

FORMATS = ("csv", "json")


@dataclass
class Table:
    columns: list
    rows: list = field(default_factory=list)

    def __post_init__(self):
        width = len(self.columns)
        for k, row in enumerate(self.rows):
            if len(row) != width:
                raise ValueError(f"row {k} has {len(row)} cells for {width} columns")

    @classmethod
    def from_frame(cls, df: pd.DataFrame) -> "Table":
        return cls([str(c) for c in df.columns], [list(r) for r in df.itertuples(index=False, name=None)])


@dataclass
class Chart:
    points: list
    kind: str = "bar"
    title: str = ""
    ylabel: str = ""


@dataclass
class ReportSet:
    tables: dict = field(default_factory=dict)
    charts: dict = field(default_factory=dict)

    def add(self, name: str, table) -> None:
        self.tables[name] = table if isinstance(table, Table) else Table.from_frame(table)

    def update(self, other: "ReportSet") -> None:
        self.tables.update(other.tables)
        self.charts.update(other.charts)


def _clean(value):
    """Normalise a cell to None, bool, int, str or a float rounded to 12 significant digits."""
    if value is None:
        return None
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        if not math.isfinite(value):
            return None
        return float(f"{float(value):.12g}")
    if isinstance(value, str):
        return value
    if pd.isna(value):
        return None
    return str(value)


def _csv_cell(value) -> str:
    value = _clean(value)
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.12g}"
    return str(value)


def table_csv(table: Table) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(table.columns)
    for row in table.rows:
        w.writerow([_csv_cell(v) for v in row])
    return buf.getvalue()


def table_json(table: Table) -> str:
    doc = {"columns": list(table.columns), "rows": [[_clean(v) for v in row] for row in table.rows]}
    return json.dumps(doc, indent=1, allow_nan=False) + "\n"


def write_reports(reports: ReportSet, directory, formats: Sequence[str] = FORMATS) -> list:
    """Write each table once per format plus each chart as SVG.

    Returns the manifest (``[{"file", "rows"}]`` sorted by file name), which is
    also saved as ``manifest.json``.
    """
    formats = list(dict.fromkeys(formats))
    bad = [f for f in formats if f not in FORMATS]
    if bad:
        raise UnknownFormat(f"unknown report formats {bad}")
    directory = Path(directory)
    writers = {"csv": table_csv, "json": table_json}
    manifest = []
    try:
        directory.mkdir(parents=True, exist_ok=True)
        for name in sorted(reports.tables):
            table = reports.tables[name]
            for fmt in formats:
                fname = f"{name}.{fmt}"
                (directory / fname).write_text(writers[fmt](table), encoding="utf-8")
                manifest.append({"file": fname, "rows": len(table.rows)})
        for name in sorted(reports.charts):
            chart = reports.charts[name]
            fname = f"{name}.svg"
            render_chart(chart.points, chart.kind, directory / fname, title=chart.title, ylabel=chart.ylabel)
            manifest.append({"file": fname, "rows": len(chart.points)})
        manifest.sort(key=lambda m: m["file"])
        (directory / "manifest.json").write_text(json.dumps(manifest, indent=1) + "\n", encoding="utf-8")
    except OSError as exc:
        raise IoError(f"cannot write reports to {directory}: {exc}") from exc
    return manifest


# charts

_W, _H = 640, 400
_LEFT, _RIGHT, _TOP, _BOTTOM = 70, 20, 40, 60


def _points(series) -> list:
    if isinstance(series, Mapping):
        pts = list(series.items())
    else:
        pts = [tuple(p) for p in series]
    return [(str(label), float(value)) for label, value in pts]


def _num(v: float) -> str:
    return f"{v:.2f}".rstrip("0").rstrip(".")


def render_chart(series, kind: str = "bar", path=None, title: str = "", ylabel: str = "") -> str:
    """Render ``(label, value)`` points as a standalone SVG bar or line chart.

    Bars draw one ``rect`` per point; a line chart draws a single polyline.
    The SVG text is returned and written to ``path`` when given.
    """
    pts = _points(series)
    if not pts:
        raise EmptySeries("nothing to plot")
    if kind not in ("bar", "line"):
        raise UnknownFormat(f"unknown chart kind {kind!r}")
    values = [v for _, v in pts]
    lo, hi = min(0.0, *values), max(0.0, *values)
    if hi == lo:
        hi = lo + 1.0
    pw, ph = _W - _LEFT - _RIGHT, _H - _TOP - _BOTTOM
    ypos = lambda v: _TOP + ph * (hi - v) / (hi - lo)  # noqa: E731
    step = pw / len(pts)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_W}" height="{_H}" viewBox="0 0 {_W} {_H}">',
        f'<text x="{_W / 2:.0f}" y="24" text-anchor="middle" font-size="16">{escape(title)}</text>',
        f'<line x1="{_LEFT}" y1="{_TOP}" x2="{_LEFT}" y2="{_TOP + ph}" stroke="black"/>',
        f'<line x1="{_LEFT}" y1="{_num(ypos(0.0))}" x2="{_LEFT + pw}" y2="{_num(ypos(0.0))}" stroke="black"/>',
        f'<text x="16" y="{_TOP + ph / 2:.0f}" font-size="12" transform="rotate(-90 16 {_TOP + ph / 2:.0f})" '
        f'text-anchor="middle">{escape(ylabel)}</text>',
    ]
    for tick in np.linspace(lo, hi, 5):
        y = _num(ypos(tick))
        parts.append(f'<text x="{_LEFT - 6}" y="{y}" font-size="11" text-anchor="end">{tick:.4g}</text>')
    coords = []
    for k, (label, value) in enumerate(pts):
        cx = _LEFT + step * (k + 0.5)
        if kind == "bar":
            top, base = ypos(max(value, 0.0)), ypos(min(value, 0.0))
            parts.append(
                f'<rect x="{_num(cx - step * 0.35)}" y="{_num(top)}" width="{_num(step * 0.7)}" '
                f'height="{_num(base - top)}" fill="#4878a8"/>'
            )
        coords.append(f"{_num(cx)},{_num(ypos(value))}")
        parts.append(
            f'<text x="{_num(cx)}" y="{_TOP + ph + 18}" font-size="11" text-anchor="middle">{escape(label)}</text>'
        )
    if kind == "line":
        parts.append(f'<polyline points="{" ".join(coords)}" fill="none" stroke="#4878a8" stroke-width="2"/>')
    parts.append("</svg>")
    svg = "\n".join(parts) + "\n"
    if path is not None:
        try:
            Path(path).write_text(svg, encoding="utf-8")
        except OSError as exc:
            raise IoError(f"cannot write chart {path}: {exc}") from exc
    return svg
