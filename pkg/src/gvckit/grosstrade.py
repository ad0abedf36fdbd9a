"""Product-level gross trade: classification, top products and unit values.

Trade records live in a pandas DataFrame with columns
``flow, year, reporter, partner, product, value, quantity`` (quantity may be
missing). Product codes are kept as strings so leading zeros survive.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

import numpy as np
import pandas as pd

from gvckit.errors import EmptyFlow, ParseError

CATEGORIES = ("raw_materials", "intermediates", "consumer_goods", "capital_goods")
UNCLASSIFIED = "unclassified"
TRADE_COLUMNS = ["flow", "year", "reporter", "partner", "product", "value", "quantity"]
FLOWS = ("export", "import")


@dataclass(frozen=True)
class TradeRecord:
    flow: str
    year: int
    reporter: str
    partner: str
    product: str
    value: float
    quantity: float | None = None


def records_frame(records) -> pd.DataFrame:
    """Normalise an iterable of TradeRecord (or an existing frame) into the column layout."""
    if isinstance(records, pd.DataFrame):
        df = records.copy()
    else:
        df = pd.DataFrame([r.__dict__ for r in records], columns=TRADE_COLUMNS)
    missing = [c for c in TRADE_COLUMNS if c not in df.columns]
    if missing:
        raise ParseError(f"trade records lack columns {missing}")
    df["product"] = df["product"].astype(str)
    df["value"] = df["value"].astype(float)
    df["quantity"] = pd.to_numeric(df["quantity"], errors="coerce")
    bad = set(df["flow"]) - set(FLOWS)
    if bad:
        raise ParseError(f"unknown flow labels {sorted(bad)}")
    if (df["value"] < 0).any() or (df["quantity"] < 0).any():
        raise ParseError("trade values and quantities must be nonnegative")
    return df


def read_trade_csv(path) -> pd.DataFrame:
    df = pd.read_csv(path, dtype={"product": str, "reporter": str, "partner": str, "flow": str})
    return records_frame(df)


def read_classification_csv(path) -> dict:
    df = pd.read_csv(path, dtype=str)
    if list(df.columns[:2]) != ["prefix", "category"]:
        raise ParseError("classification map needs header prefix,category", path=path)
    return classification_map(zip(df["prefix"], df["category"]))


def classification_map(pairs) -> dict:
    """Validate (prefix, category) pairs into a dict; duplicate prefixes are rejected."""
    out = {}
    for prefix, category in (pairs.items() if isinstance(pairs, Mapping) else pairs):
        prefix = str(prefix).strip()
        if category not in CATEGORIES:
            raise ParseError(f"unknown category {category!r} for prefix {prefix!r}")
        if prefix in out:
            raise ParseError(f"duplicate prefix {prefix!r}")
        out[prefix] = category
    return out


def _longest_prefix(code: str, cmap: Mapping[str, str], lengths) -> str:
    for n in lengths:
        hit = cmap.get(code[:n])
        if hit is not None and len(code) >= n:
            return hit
    return UNCLASSIFIED


def classify(records, cmap: Mapping[str, str]):
    """Tag each record with its longest-prefix category.

    Returns ``(annotated, coverage)``: the frame with a ``category`` column and
    the share of total value that found a category (None for zero total).
    """
    if not cmap:
        raise ValueError("classification map is empty")
    df = records_frame(records)
    lengths = sorted({len(p) for p in cmap}, reverse=True)
    df["category"] = [_longest_prefix(code, cmap, lengths) for code in df["product"]]
    total = df["value"].sum()
    covered = df.loc[df["category"] != UNCLASSIFIED, "value"].sum()
    coverage = float(covered / total) if total > 0 else None
    return df, coverage


def top_products(records, flow: str, n: int, key: str = "value") -> pd.DataFrame:
    """Products ranked by total value (or quantity) across partners; ties by product code."""
    if n < 1:
        raise ValueError("n must be at least 1")
    if key not in ("value", "quantity"):
        raise ValueError("key must be 'value' or 'quantity'")
    df = records_frame(records)
    df = df[df["flow"] == flow]
    if df.empty:
        return pd.DataFrame(columns=["product", "value", "quantity"])
    agg = df.groupby("product", sort=True).agg(value=("value", "sum"), quantity=("quantity", "sum"))
    agg = agg.reset_index().sort_values([key, "product"], ascending=[False, True], kind="mergesort")
    return agg.head(n).reset_index(drop=True)


def unit_value_comparison(records):
    """Aggregate unit values per product and flow.

    Returns ``(frame, skipped)`` where the frame has columns
    ``product, export_uv, import_uv, ratio`` (NaN-free: undefined entries are
    None) and ``skipped`` counts rows dropped for missing or zero quantity.
    """
    df = records_frame(records)
    usable = df["quantity"].notna() & (df["quantity"] > 0)
    skipped = int((~usable).sum())
    df = df[usable]
    rows = []
    grouped = df.groupby(["product", "flow"], sort=True)[["value", "quantity"]].sum()
    for product in sorted(set(df["product"])):
        uv = {}
        for flow in FLOWS:
            if (product, flow) in grouped.index:
                v, q = grouped.loc[(product, flow)]
                uv[flow] = float(v / q)
        ex, im = uv.get("export"), uv.get("import")
        ratio = ex / im if ex is not None and im not in (None, 0.0) else None
        rows.append({"product": product, "export_uv": ex, "import_uv": im, "ratio": ratio})
    frame = pd.DataFrame(rows, columns=["product", "export_uv", "import_uv", "ratio"], dtype=object)
    return frame, skipped


def unit_value_deciles(records) -> pd.DataFrame:
    """Deciles (0.1 .. 0.9) of product unit values, one column per flow."""
    uv, _ = unit_value_comparison(records)
    qs = np.round(np.arange(1, 10) / 10, 1)
    out = {}
    for flow, col in (("export", "export_uv"), ("import", "import_uv")):
        vals = np.array([v for v in uv[col] if v is not None], dtype=float)
        out[flow] = np.quantile(vals, qs) if vals.size else [None] * len(qs)
    return pd.DataFrame(out, index=pd.Index(qs, name="quantile"))


def category_shares(annotated: pd.DataFrame, flow: str) -> dict:
    df = annotated[annotated["flow"] == flow]
    total = df["value"].sum()
    if df.empty or total <= 0:
        raise EmptyFlow(f"no {flow} value to share out")
    sums = df.groupby("category", sort=True)["value"].sum()
    return {cat: float(v / total) for cat, v in sums.items()}
