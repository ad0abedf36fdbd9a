"""Command-line entry point: ``gvckit <subcommand> ...``.

Exit codes: 0 success, 2 balance validation failure, 3 input error,
4 numerical failure.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from gvckit import analyses, econometrics, grosstrade
from gvckit.bundle import DEFAULT_TOL, read_bundle
from gvckit.errors import GvcError, InputError
from gvckit.network import bilateral_va_flows, export_graph
from gvckit.reports import FORMATS, ReportSet, Table, write_reports

log = logging.getLogger("gvckit")

ENV_TOL = "GVCKIT_TOL"
GLOBAL_DEFAULTS = {"tol": None, "out": "gvckit-out", "format": None, "allow_imbalance": False, "clamp_negative": False}


@dataclass
class RunConfig:
    command: str
    tol: float = DEFAULT_TOL
    out: Path = Path("gvckit-out")
    formats: list = field(default_factory=lambda: list(FORMATS))
    allow_imbalance: bool = False
    clamp_negative: bool = False
    options: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.tol > 0:
            raise InputError(f"tolerance must be positive, got {self.tol}")
        bad = [f for f in self.formats if f not in FORMATS]
        if bad:
            raise InputError(f"unknown output formats {bad}")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gvckit", description="Trade in value added and GVC indicators.")
    p.add_argument("--tol", type=float, help=f"relative balance tolerance (default {DEFAULT_TOL}, env {ENV_TOL})")
    p.add_argument("--out", help="output directory (default gvckit-out)")
    p.add_argument("--format", action="append", choices=FORMATS, help="report format; repeat for several")
    p.add_argument("--allow-imbalance", action="store_true", default=None)
    p.add_argument("--clamp-negative", action="store_true", default=None,
                   help="zero negative table entries instead of rejecting them")
    p.add_argument("--config", help="JSON file of option values")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", help="check row and column balance of a bundle")
    s.add_argument("bundle")

    s = sub.add_parser("tiva", help="backward, forward and participation measures")
    s.add_argument("bundle")
    s.add_argument("--sector-level", action="store_true", default=None)

    s = sub.add_parser("position", help="upstreamness, sourcing length and chain gap")
    s.add_argument("bundle")

    s = sub.add_parser("labor", help="labour content of trade")
    s.add_argument("bundle")
    s.add_argument("--basis", choices=("persons", "wages"))

    s = sub.add_parser("network", help="bilateral value-added network metrics and graph export")
    s.add_argument("bundle")
    s.add_argument("--degree-threshold", type=float)
    s.add_argument("--graph", action="append", choices=("dot", "graphml"))
    s.add_argument("--min-edge", type=float)

    s = sub.add_parser("gross-trade", help="product-level gross trade analysis")
    s.add_argument("trade_csv")
    s.add_argument("--map", dest="class_map", help="classification map CSV (prefix,category)")
    s.add_argument("--top", type=int)

    s = sub.add_parser("growth", help="decompose export growth between two bundles")
    s.add_argument("bundle0")
    s.add_argument("bundle1")

    s = sub.add_parser("econ", help="correlations, fixed-effects OLS, logit, descriptives")
    s.add_argument("method", choices=("corr", "ols", "logit", "describe"))
    s.add_argument("panel")
    s.add_argument("--y", help="dependent variable (ols) or GVC measure (corr)")
    s.add_argument("--x", action="append", help="regressor / indicator; repeat for several")
    s.add_argument("--fe", action="append", help="fixed-effect variable; repeat for several")
    s.add_argument("--cluster")
    s.add_argument("--outcome")
    s.add_argument("--group")
    s.add_argument("--vars", action="append")

    s = sub.add_parser("report", help="run every analysis the inputs allow")
    s.add_argument("--bundle")
    s.add_argument("--base-bundle", help="earlier-year bundle for the growth decomposition")
    s.add_argument("--trade")
    s.add_argument("--map", dest="class_map")
    s.add_argument("--basis", choices=("persons", "wages"))
    return p


def resolve_config(args: argparse.Namespace) -> RunConfig:
    """Merge option sources: command line, then --config file, then environment, then defaults."""
    values = {k: v for k, v in vars(args).items()}
    file_values = {}
    if args.config:
        try:
            file_values = json.loads(Path(args.config).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise InputError(f"cannot read config {args.config}: {exc}") from exc
        if not isinstance(file_values, dict):
            raise InputError("config file must hold a JSON object")
    for key, val in file_values.items():
        key = key.replace("-", "_")
        if values.get(key) is None:
            values[key] = val
    if values.get("tol") is None and os.environ.get(ENV_TOL):
        try:
            values["tol"] = float(os.environ[ENV_TOL])
        except ValueError:
            raise InputError(f"{ENV_TOL} is not a number: {os.environ[ENV_TOL]!r}") from None
    for key, default in GLOBAL_DEFAULTS.items():
        if values.get(key) is None:
            values[key] = default
    fmt = values.pop("format") or list(FORMATS)
    if isinstance(fmt, str):
        fmt = [fmt]
    globals_ = {k: values.pop(k) for k in ("tol", "out", "allow_imbalance", "clamp_negative")}
    for k in ("config", "verbose"):
        values.pop(k, None)
    return RunConfig(
        command=values.pop("command"),
        tol=float(globals_["tol"] if globals_["tol"] is not None else DEFAULT_TOL),
        out=Path(globals_["out"]),
        formats=list(fmt),
        allow_imbalance=bool(globals_["allow_imbalance"]),
        clamp_negative=bool(globals_["clamp_negative"]),
        options=values,
    )


def _load(cfg: RunConfig, path):
    return read_bundle(path, cfg.tol, cfg.allow_imbalance, cfg.clamp_negative).table


def _econ(cfg: RunConfig) -> ReportSet:
    o = cfg.options
    panel = econometrics.read_panel(o["panel"])
    xs = o.get("x") or []
    rs = ReportSet()
    method = o["method"]
    if method == "corr":
        targets = [o["y"]] if o.get("y") else []
        if not targets or not xs:
            raise InputError("corr needs --y and at least one --x")
        rs.add("econ_correlations", econometrics.correlation_table(panel, targets, xs))
    elif method == "ols":
        if not o.get("y") or not xs:
            raise InputError("ols needs --y and at least one --x")
        fit = econometrics.ols_fe(panel, o["y"], xs, o.get("fe") or [], o.get("cluster"))
        rs.add("econ_ols", fit.table())
        rs.add("econ_ols_diagnostics", _diagnostics(fit))
    elif method == "logit":
        if not xs:
            raise InputError("logit needs at least one --x")
        fit = econometrics.logit_fit(panel, xs, o.get("outcome") or "gvc_participant")
        rs.add("econ_logit", fit.table())
        rs.add("econ_logit_diagnostics", _diagnostics(fit))
    else:
        if not o.get("group") or not o.get("vars"):
            raise InputError("describe needs --group and at least one --vars")
        rs.add("econ_describe", econometrics.describe_by_sector(panel, o["group"], o["vars"]))
    return rs


def _diagnostics(fit) -> Table:
    rows = [["nobs", fit.nobs]] + [[k, v] for k, v in sorted(fit.diagnostics.items())]
    return Table(["statistic", "value"], rows)


def run(cfg: RunConfig) -> int:
    o = cfg.options
    cmd = cfg.command
    rs = ReportSet()
    if cmd == "validate":
        load = read_bundle(o["bundle"], cfg.tol, allow_imbalance=True, clamp_negative=cfg.clamp_negative)
        rs = analyses.balance_report(load.table, cfg.tol)
        write_reports(rs, cfg.out, cfg.formats)
        print(f"balance {'passed' if load.balance.passed else 'FAILED'}: "
              f"row {load.balance.worst_row_residual:.3g}, col {load.balance.worst_col_residual:.3g}")
        return 0 if load.balance.passed else 2
    if cmd == "tiva":
        rs = analyses.tiva_report(_load(cfg, o["bundle"]), sector_level=bool(o.get("sector_level")))
    elif cmd == "position":
        rs = analyses.position_report(_load(cfg, o["bundle"]))
    elif cmd == "labor":
        rs = analyses.labor_report(_load(cfg, o["bundle"]), o.get("basis") or "persons")
    elif cmd == "network":
        table = _load(cfg, o["bundle"])
        rs = analyses.network_report(table, o.get("degree_threshold") or 0.0)
        cfg.out.mkdir(parents=True, exist_ok=True)
        fm = bilateral_va_flows(table)
        for fmt in o.get("graph") or []:
            (cfg.out / f"network.{'gv' if fmt == 'dot' else fmt}").write_text(
                export_graph(fm, fmt, o.get("min_edge") or 0.0), encoding="utf-8")
    elif cmd == "gross-trade":
        records = grosstrade.read_trade_csv(o["trade_csv"])
        cmap = grosstrade.read_classification_csv(o["class_map"]) if o.get("class_map") else None
        rs = analyses.gross_trade_report(records, cmap, o.get("top") or 10)
    elif cmd == "growth":
        rs = analyses.growth_report(_load(cfg, o["bundle0"]), _load(cfg, o["bundle1"]))
    elif cmd == "econ":
        rs = _econ(cfg)
    elif cmd == "report":
        if not (o.get("bundle") or o.get("trade")):
            raise InputError("report needs --bundle and/or --trade")
        if o.get("bundle"):
            table = _load(cfg, o["bundle"])
            rs.update(analyses.full_report(table, cfg.tol, o.get("basis") or "persons"))
            if o.get("base_bundle"):
                rs.update(analyses.growth_report(_load(cfg, o["base_bundle"]), table))
        if o.get("trade"):
            cmap = grosstrade.read_classification_csv(o["class_map"]) if o.get("class_map") else None
            rs.update(analyses.gross_trade_report(grosstrade.read_trade_csv(o["trade"]), cmap))
    manifest = write_reports(rs, cfg.out, cfg.formats)
    for entry in manifest:
        print(f"{cfg.out / entry['file']}\t{entry['rows']} rows")
    return 0


def main(argv: Optional[list] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return run(resolve_config(args))
    except GvcError as exc:
        print(f"gvckit: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code
    except (OSError, ValueError) as exc:
        print(f"gvckit: input error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
