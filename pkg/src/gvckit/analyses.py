"""Assemble indicator outputs into report tables and charts."""
from __future__ import annotations

from typing import Optional

from gvckit import backward, forward, grosstrade, growth, labor, network
from gvckit.errors import MissingVector
from gvckit.icio import IcioTable, exports_vector, validate_balance
from gvckit.leontief import leontief_system
from gvckit.reports import Chart, ReportSet, Table


def balance_report(table: IcioTable, tol: float) -> ReportSet:
    rep = validate_balance(table, tol)
    labels = table.labels()
    rs = ReportSet()
    rs.add(
        "balance_summary",
        Table(
            ["passed", "worst_row_residual", "worst_col_residual", "tolerance"],
            [[rep.passed, rep.worst_row_residual, rep.worst_col_residual, tol]],
        ),
    )
    rs.add(
        "balance_violations",
        Table(["producer", "kind", "residual"], [[labels[i], k, r] for i, k, r in rep.violations]),
    )
    return rs


def tiva_report(table: IcioTable, sector_level: bool = False) -> ReportSet:
    rs = ReportSet()
    dec = backward.dva_fva(table)
    rows = []
    for code, d in dec.items():
        sh = d.shares
        rows.append(
            [code, d.gross_exports, d.dva, d.fva, d.dva_direct, d.dva_indirect, d.dva_reimported,
             sh["dva"], sh["fva"]]
        )
    rs.add(
        "tiva_decomposition",
        Table(["country", "gross_exports", "dva", "fva", "dva_direct", "dva_indirect", "dva_reimported",
               "dva_share", "fva_share"], rows),
    )
    rs.add(
        "tiva_fva_by_source",
        Table(["exporter", "source", "fva"],
              [[c, s, v] for c, d in dec.items() for s, v in d.fva_by_source.items()]),
    )
    i2e = backward.i2e_backward(table)
    rs.add(
        "tiva_i2e_backward",
        Table(["country", "embodied_imports", "total_intermediate_imports", "ratio"],
              [[c, r.embodied_imports, r.total_intermediate_imports, r.ratio] for c, r in i2e.items()]),
    )
    rs.add(
        "tiva_i2e_by_source",
        Table(["country", "source", "embodied_imports"],
              [[c, s, v] for c, r in i2e.items() for s, v in r.by_source.items()]),
    )
    profiles = forward.forward_profiles(table)
    rs.add(
        "tiva_forward",
        Table(["country", "intermediates_share_output", "intermediates_share_exports", "i2e_selling",
               "i2e_selling_share", "dvx", "participation_backward", "participation_forward",
               "participation_total"],
              [[c, p.intermediates_share_output, p.intermediates_share_exports, p.i2e_selling,
                p.i2e_selling_share, p.dvx, p.participation_backward, p.participation_forward,
                p.participation_total] for c, p in profiles.items()]),
    )
    rs.add(
        "tiva_va_by_destination",
        Table(["source", "destination", "value_added"],
              [[c, r, v] for c, p in profiles.items() for r, v in p.va_by_destination.items()]),
    )
    if sector_level:
        part = forward.participation_index(table, level="sector")
        rs.add(
            "tiva_participation_sector",
            Table(["producer", "backward", "forward", "total"],
                  [[k, p.backward, p.forward, p.total] for k, p in part.items()]),
        )
    rs.charts["participation_total"] = Chart(
        [(c, p.participation_total or 0.0) for c, p in profiles.items()],
        kind="bar", title="GVC participation index", ylabel="share of gross exports",
    )
    return rs


def position_report(table: IcioTable) -> ReportSet:
    sys = leontief_system(table)
    labels = table.labels()
    length = backward.sourcing_chain_length(sys)
    U = forward.upstreamness(table)
    gap = forward.chain_gap(table)
    E = exports_vector(table)
    rs = ReportSet()
    rs.add(
        "position",
        Table(["producer", "upstreamness", "sourcing_length", "chain_gap", "gross_exports"],
              [[labels[i], U[i], length[i], gap[i], E[i]] for i in range(table.n)]),
    )
    rs.charts["upstreamness"] = Chart(list(zip(labels, U)), kind="bar", title="Upstreamness", ylabel="stages")
    return rs


def labor_report(table: IcioTable, basis: str = "persons") -> ReportSet:
    rs = ReportSet()
    content = labor.labor_content_of_exports(table, basis)
    jobs = labor.jobs_foreign_final_demand(table, basis)
    channel = labor.jobs_by_channel(table, basis)
    rs.add(
        "labor_exports",
        Table(["country", "basis", "content_total", "content_domestic", "content_foreign",
               "foreign_final_demand", "channel_final_goods", "channel_intermediates"],
              [[c, basis, content[c].total, content[c].domestic, content[c].foreign, jobs[c],
                channel[c].final_goods_trade, channel[c].intermediates_trade] for c in table.countries]),
    )
    if any(s.manufacturing for s in table.sectors):
        manuf = labor.gvc_manufacturing_jobs(table, basis)
        rs.add("labor_gvc_manufacturing",
               Table(["producer", "jobs"], [list(p) for p in zip(table.labels(), manuf)]))
    return rs


def network_report(table: IcioTable, degree_threshold: float = 0.0) -> ReportSet:
    fm = network.bilateral_va_flows(table)
    metrics = network.node_metrics(fm, degree_threshold)
    rs = ReportSet()
    rs.add(
        "network_nodes",
        Table(["country", "out_strength", "in_strength", "degree_out", "degree_in",
               "eigenvector_centrality", "partner_hhi"],
              [[c, m.out_strength, m.in_strength, m.degree_out, m.degree_in, m.eigenvector_centrality,
                m.partner_hhi] for c, m in metrics.items()]),
    )
    rs.add(
        "network_flows",
        Table(["source", "destination", "value_added"],
              [[s, r, fm.W[i, j]] for i, s in enumerate(fm.nodes) for j, r in enumerate(fm.nodes)]),
    )
    return rs


def gross_trade_report(records, cmap: Optional[dict] = None, top_n: int = 10) -> ReportSet:
    rs = ReportSet()
    df = grosstrade.records_frame(records)
    for flow in grosstrade.FLOWS:
        rs.add(f"trade_top_{flow}s", grosstrade.top_products(df, flow, top_n))
    uv, skipped = grosstrade.unit_value_comparison(df)
    rs.add("trade_unit_values", uv)
    rs.add("trade_unit_value_skipped", Table(["skipped_rows"], [[skipped]]))
    rs.add("trade_unit_value_deciles", grosstrade.unit_value_deciles(df).reset_index())
    if cmap:
        annotated, coverage = grosstrade.classify(df, cmap)
        rs.add("trade_classification_coverage", Table(["coverage"], [[coverage]]))
        rows = []
        for flow in grosstrade.FLOWS:
            if (annotated["flow"] == flow).any() and annotated.loc[annotated["flow"] == flow, "value"].sum() > 0:
                for cat, share in grosstrade.category_shares(annotated, flow).items():
                    rows.append([flow, cat, share])
        rs.add("trade_category_shares", Table(["flow", "category", "share"], rows))
        exports = [(cat, sh) for flow, cat, sh in rows if flow == "export"]
        if exports:
            rs.charts["export_category_shares"] = Chart(exports, kind="bar", title="Export composition",
                                                        ylabel="share of export value")
    return rs


def growth_report(t0: IcioTable, t1: IcioTable) -> ReportSet:
    dec = growth.export_growth_decomposition(t0, t1)
    rs = ReportSet()
    rs.add(
        "growth_decomposition",
        Table(["country", "year0", "year1", "delta_exports", "delta_direct", "delta_indirect",
               "delta_reimported", "delta_fva", "contrib_direct", "contrib_indirect", "contrib_reimported",
               "contrib_fva"],
              [[c, t0.year, t1.year, g.delta_exports, g.delta_direct, g.delta_indirect, g.delta_reimported,
                g.delta_fva, g.contributions["dva_direct"], g.contributions["dva_indirect"],
                g.contributions["dva_reimported"], g.contributions["fva"]] for c, g in dec.items()]),
    )
    return rs


def full_report(table: IcioTable, tol: float, basis: str = "persons") -> ReportSet:
    """Balance, TiVA, position, network and (when employment is present) labour tables."""
    rs = balance_report(table, tol)
    rs.update(tiva_report(table))
    rs.update(position_report(table))
    rs.update(network_report(table))
    try:
        rs.update(labor_report(table, basis))
    except MissingVector:
        pass
    return rs

