"""Bilateral value-added flow networks: node metrics and graph export."""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Optional
from xml.sax.saxutils import escape, quoteattr

import numpy as np

from gvckit.errors import DimensionMismatch, DisconnectedAllZero, NoConvergence, UnknownFormat
from gvckit.forward import va_by_destination
from gvckit.icio import IcioTable


@dataclass(frozen=True, eq=False)
class FlowMatrix:
    nodes: tuple
    W: np.ndarray

    def __post_init__(self):
        W = np.array(self.W, dtype=float)
        nodes = tuple(self.nodes)
        if W.shape != (len(nodes), len(nodes)):
            raise DimensionMismatch(f"W has shape {W.shape} for {len(nodes)} nodes")
        if not np.all(np.isfinite(W)) or np.any(W < 0):
            raise ValueError("flow matrix entries must be finite and nonnegative")
        W.flags.writeable = False
        object.__setattr__(self, "W", W)
        object.__setattr__(self, "nodes", nodes)


@dataclass
class NodeMetrics:
    out_strength: float
    in_strength: float
    degree_out: int
    degree_in: int
    eigenvector_centrality: float
    partner_hhi: Optional[float]


def bilateral_va_flows(table: IcioTable) -> FlowMatrix:
    return FlowMatrix(table.countries, va_by_destination(table))


def eigenvector_centrality(W: np.ndarray, tol: float = 1e-10, max_iter: int = 1000) -> np.ndarray:
    """Dominant eigenvector of the symmetrized off-diagonal flows, unit Euclidean norm.

    Iterates on ``M + s*I`` with ``s`` the largest row sum of ``M``; the shift
    keeps bipartite patterns such as stars from oscillating and leaves the
    eigenvector unchanged.
    """
    W = np.asarray(W, dtype=float)
    n = W.shape[0]
    M = (W + W.T) / 2.0
    np.fill_diagonal(M, 0.0)
    if n == 0:
        return np.zeros(0)
    if not M.any():
        warnings.warn("no off-diagonal flows; centrality is uniform", DisconnectedAllZero, stacklevel=2)
        return np.full(n, 1.0 / np.sqrt(n))
    M = M / M.max()
    shifted = M + M.sum(axis=1).max() * np.eye(n)
    y = np.full(n, 1.0 / np.sqrt(n))
    for _ in range(max_iter):
        z = shifted @ y
        z /= np.linalg.norm(z)
        if np.abs(z - y).max() < tol:
            return z
        y = z
    raise NoConvergence(f"power iteration did not converge in {max_iter} iterations")


def node_metrics(fm: FlowMatrix, degree_threshold: float = 0.0) -> dict:
    W = fm.W
    n = len(fm.nodes)
    if n == 0:
        raise DimensionMismatch("flow matrix has no nodes")
    off = W.copy()
    np.fill_diagonal(off, 0.0)
    out_s = off.sum(axis=1)
    in_s = off.sum(axis=0)
    edges = off > degree_threshold
    np.fill_diagonal(edges, False)
    centrality = eigenvector_centrality(W)
    metrics = {}
    for k, node in enumerate(fm.nodes):
        hhi = float(((off[k] / out_s[k]) ** 2).sum()) if out_s[k] > 0 else None
        metrics[node] = NodeMetrics(
            out_strength=float(out_s[k]),
            in_strength=float(in_s[k]),
            degree_out=int(edges[k].sum()),
            degree_in=int(edges[:, k].sum()),
            eigenvector_centrality=float(centrality[k]),
            partner_hhi=hhi,
        )
    return metrics


def _edges(fm: FlowMatrix, min_edge: float):
    order = sorted(range(len(fm.nodes)), key=lambda k: fm.nodes[k])
    for s in order:
        for r in order:
            if s != r and fm.W[s, r] >= min_edge:
                yield fm.nodes[s], fm.nodes[r], float(fm.W[s, r])


def _dot(fm: FlowMatrix, min_edge: float) -> str:
    q = lambda s: '"' + str(s).replace("\\", "\\\\").replace('"', '\\"') + '"'  # noqa: E731
    lines = ["digraph gvc {"]
    lines += [f"  {q(node)};" for node in sorted(fm.nodes)]
    for s, r, w in _edges(fm, min_edge):
        lines.append(f'  {q(s)} -> {q(r)} [label="{w:.4f}", weight={w!r}];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _graphml(fm: FlowMatrix, min_edge: float) -> str:
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        '<graphml xmlns="http://graphml.graphdrawing.org/xmlns">',
        '  <key id="weight" for="edge" attr.name="weight" attr.type="double"/>',
        '  <graph id="gvc" edgedefault="directed">',
    ]
    lines += [f"    <node id={quoteattr(str(node))}/>" for node in sorted(fm.nodes)]
    for k, (s, r, w) in enumerate(_edges(fm, min_edge)):
        lines.append(f"    <edge id=\"e{k}\" source={quoteattr(str(s))} target={quoteattr(str(r))}>")
        lines.append(f'      <data key="weight">{escape(repr(w))}</data>')
        lines.append("    </edge>")
    lines += ["  </graph>", "</graphml>"]
    return "\n".join(lines) + "\n"


def export_graph(fm: FlowMatrix, format: str = "dot", min_edge: float = 0.0) -> str:
    """Directed weighted graph of cross-border flows with weight >= ``min_edge``."""
    writers = {"dot": _dot, "graphml": _graphml}
    if format not in writers:
        raise UnknownFormat(f"unknown graph format {format!r}; expected one of {sorted(writers)}")
    return writers[format](fm, min_edge)
