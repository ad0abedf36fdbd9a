"""Reading and writing ICIO bundle directories.

A bundle holds ``meta.json`` plus ``Z.csv``, ``F.csv``, ``va.csv``, ``x.csv``
and optionally ``emp.csv`` and ``wages.csv``. Matrix rows and columns are
labelled ``CCC.SSS``; ``F.csv`` columns carry bare country codes.
"""
from __future__ import annotations

import csv
import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np

from gvckit.errors import DimensionMismatch, Imbalanced, IoError, MissingFile, NegativeEntries, ParseError
from gvckit.icio import BalanceReport, IcioTable, Sector, validate_balance

log = logging.getLogger(__name__)

DEFAULT_TOL = 1e-6
REQUIRED = ("Z", "F", "va", "x")
OPTIONAL = ("emp", "wages")


@dataclass
class BundleLoad:
    table: IcioTable
    balance: BalanceReport
    clamped_mass: float = 0.0


def _read_meta(path: Path):
    try:
        meta = json.loads(path.read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise MissingFile(f"missing {path}") from None
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", row=exc.lineno, col=exc.colno, path=path) from None
    try:
        countries = [str(c) for c in meta["countries"]]
        sectors = []
        for s in meta["sectors"]:
            if isinstance(s, str):
                sectors.append(Sector(s))
            else:
                sectors.append(Sector(str(s["code"]), frozenset(s.get("flags", ()))))
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed meta.json: {exc}", path=path) from None
    return countries, sectors, int(meta.get("year", 0)), str(meta.get("currency", ""))


def _read_csv(path: Path, row_labels: list, col_labels: list) -> np.ndarray:
    try:
        with path.open(newline="", encoding="utf-8") as fh:
            rows = list(csv.reader(fh))
    except FileNotFoundError:
        raise MissingFile(f"missing {path}") from None
    if not rows:
        raise ParseError("empty file", path=path)
    header, body = rows[0], rows[1:]
    if len(body) != len(row_labels) or len(header) - 1 != len(col_labels):
        raise DimensionMismatch(
            f"{path.name} is {len(body)} x {len(header) - 1}, expected {len(row_labels)} x {len(col_labels)}"
        )
    if [h.strip() for h in header[1:]] != col_labels:
        raise ParseError(f"column labels {header[1:]} do not match {col_labels}", row=1, path=path)
    out = np.empty((len(body), len(col_labels)))
    for r, row in enumerate(body, start=2):
        if len(row) != len(header):
            raise DimensionMismatch(f"{path.name} row {r} has {len(row) - 1} values, expected {len(header) - 1}")
        if row[0].strip() != row_labels[r - 2]:
            raise ParseError(f"row label {row[0]!r}, expected {row_labels[r - 2]!r}", row=r, col=1, path=path)
        for c, cell in enumerate(row[1:], start=2):
            try:
                out[r - 2, c - 2] = float(cell)
            except ValueError:
                raise ParseError(f"non-numeric value {cell!r}", row=r, col=c, path=path) from None
    return out


def read_bundle(
    directory,
    tol: float = DEFAULT_TOL,
    allow_imbalance: bool = False,
    clamp_negative: bool = False,
) -> BundleLoad:
    """Parse and validate a bundle, returning the table with its balance report.

    Negative entries are rejected unless ``clamp_negative`` is set, in which
    case they are zeroed and their absolute total reported as ``clamped_mass``.
    """
    directory = Path(directory)
    if not directory.is_dir():
        raise MissingFile(f"bundle directory {directory} does not exist")
    countries, sectors, year, currency = _read_meta(directory / "meta.json")
    labels = [f"{c}.{s.code}" for c in countries for s in sectors]
    arrays = {
        "Z": _read_csv(directory / "Z.csv", labels, labels),
        "F": _read_csv(directory / "F.csv", labels, countries),
    }
    for name in REQUIRED[2:] + OPTIONAL:
        path = directory / f"{name}.csv"
        if name in OPTIONAL and not path.exists():
            continue
        arrays[name] = _read_csv(path, labels, [name])[:, 0]

    clamped = 0.0
    for name, arr in arrays.items():
        bad = ~np.isfinite(arr)
        if bad.any():
            r, c = np.argwhere(bad.reshape(arr.shape[0], -1))[0]
            raise ParseError(f"non-finite value in {name}.csv", row=int(r) + 2, col=int(c) + 2)
        neg = arr < 0
        if neg.any():
            if not clamp_negative:
                raise NegativeEntries(
                    f"{name}.csv has {int(neg.sum())} negative entries; pass clamp_negative to zero them"
                )
            clamped += float(-arr[neg].sum())
            arr[neg] = 0.0
    if clamped:
        log.warning("clamped negative mass %.6g to zero", clamped)

    table = IcioTable(countries, sectors, year, currency=currency, **arrays)
    report = validate_balance(table, tol)
    if not report.passed and not allow_imbalance:
        raise Imbalanced(report)
    return BundleLoad(table, report, clamped)


def load_bundle(directory, tol: float = DEFAULT_TOL, allow_imbalance: bool = False, clamp_negative: bool = False) -> IcioTable:
    return read_bundle(directory, tol, allow_imbalance, clamp_negative).table


def _write_csv(path: Path, header: list, labels: list, M: np.ndarray):
    with path.open("w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for label, row in zip(labels, M):
            w.writerow([label, *(repr(float(v)) for v in row)])


def write_bundle(table: IcioTable, directory, overwrite: bool = True) -> Path:
    """Write a table as a bundle; floats use shortest round-trip repr so reloads are exact."""
    directory = Path(directory)
    try:
        directory.mkdir(parents=True, exist_ok=overwrite)
        meta = {
            "countries": list(table.countries),
            "sectors": [{"code": s.code, "flags": sorted(s.flags)} for s in table.sectors],
            "year": table.year,
            "currency": table.currency,
        }
        (directory / "meta.json").write_text(json.dumps(meta, indent=2) + "\n", encoding="utf-8")
        labels = table.labels()
        _write_csv(directory / "Z.csv", ["", *labels], labels, table.Z)
        _write_csv(directory / "F.csv", ["", *table.countries], labels, table.F)
        for name in REQUIRED[2:] + OPTIONAL:
            vec: Optional[np.ndarray] = getattr(table, name)
            if vec is not None:
                _write_csv(directory / f"{name}.csv", ["", name], labels, vec[:, None])
    except OSError as exc:
        raise IoError(f"cannot write bundle to {directory}: {exc}") from exc
    return directory
