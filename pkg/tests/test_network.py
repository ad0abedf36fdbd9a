import warnings
import xml.etree.ElementTree as ET

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gvckit.errors import DisconnectedAllZero, UnknownFormat
from gvckit.network import FlowMatrix, bilateral_va_flows, eigenvector_centrality, export_graph, node_metrics
from gvckit.synthetic import random_table

S = np.sqrt(0.5)


def test_bilateral_flows(e2, noint, aut):
    fm = bilateral_va_flows(e2)
    np.testing.assert_allclose(
        fm.W, np.array([[511, 259], [204, 456]]) / 11, rtol=1e-9
    )
    np.testing.assert_allclose(fm.W.sum(axis=1), [70, 60], rtol=1e-12)
    np.testing.assert_allclose(bilateral_va_flows(noint).W, noint.F)
    assert bilateral_va_flows(aut).W.tolist() == [[80.0]]


def test_two_node_symmetric():
    m = node_metrics(FlowMatrix(("A", "B"), [[5, 10], [10, 3]]))
    assert m["A"].eigenvector_centrality == pytest.approx(S, abs=1e-10)
    assert m["B"].eigenvector_centrality == pytest.approx(S, abs=1e-10)
    assert m["A"].partner_hhi == 1.0


def test_star():
    W = np.zeros((3, 3))
    W[0, 1:] = W[1:, 0] = 10.0
    m = node_metrics(FlowMatrix(("H", "L1", "L2"), W))
    assert m["H"].eigenvector_centrality == pytest.approx(S, abs=1e-9)
    assert m["L1"].eigenvector_centrality == pytest.approx(0.5, abs=1e-9)
    assert m["L2"].eigenvector_centrality == pytest.approx(0.5, abs=1e-9)
    assert m["H"].degree_out == 2 and m["L1"].degree_in == 1
    assert m["H"].partner_hhi == pytest.approx(0.5)


def test_star_against_eigendecomposition(rng):
    W = rng.uniform(0, 5, size=(6, 6)) * (rng.random((6, 6)) < 0.6)
    W[0, 1] = 3.0
    M = (W + W.T) / 2
    np.fill_diagonal(M, 0)
    vals, vecs = np.linalg.eigh(M)
    ref = np.abs(vecs[:, -1])
    np.testing.assert_allclose(eigenvector_centrality(W), ref, atol=1e-8)


def test_single_country(aut):
    with pytest.warns(DisconnectedAllZero):
        m = node_metrics(bilateral_va_flows(aut))["A"]
    assert m.out_strength == 0.0
    assert m.partner_hhi is None
    assert m.eigenvector_centrality == 1.0


def test_degree_threshold():
    m = node_metrics(FlowMatrix(("A", "B", "C"), [[0, 5, 1], [2, 0, 0], [0, 0, 0]]), degree_threshold=1.5)
    assert m["A"].degree_out == 1
    assert m["C"].degree_in == 0


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), n=st.integers(2, 8), scale=st.floats(1e-3, 1e6))
def test_strength_balance_and_scaling(seed, n, scale):
    W = np.random.default_rng(seed).uniform(0.1, 10, size=(n, n))
    a = node_metrics(FlowMatrix(tuple(map(str, range(n))), W))
    b = node_metrics(FlowMatrix(tuple(map(str, range(n))), W * scale))
    assert sum(m.out_strength for m in a.values()) == pytest.approx(sum(m.in_strength for m in a.values()))
    cent = np.array([m.eigenvector_centrality for m in a.values()])
    assert np.linalg.norm(cent) == pytest.approx(1.0, abs=1e-12)
    assert (cent >= 0).all()
    for k in a:
        assert b[k].eigenvector_centrality == pytest.approx(a[k].eigenvector_centrality, abs=1e-8)


def test_dot_export(e2):
    text = export_graph(bilateral_va_flows(e2), "dot", min_edge=0)
    assert '"A" -> "B" [label="23.5455"' in text
    assert text.startswith("digraph")


def test_graphml_threshold(e2):
    doc = ET.fromstring(export_graph(bilateral_va_flows(e2), "graphml", min_edge=100))
    ns = {"g": "http://graphml.graphdrawing.org/xmlns"}
    assert len(doc.findall(".//g:node", ns)) == 2
    assert len(doc.findall(".//g:edge", ns)) == 0
    key = doc.find("g:key", ns)
    assert key.get("attr.name") == "weight" and key.get("attr.type") == "double"


def test_graphml_weights(e2):
    doc = ET.fromstring(export_graph(bilateral_va_flows(e2), "graphml"))
    ns = {"g": "http://graphml.graphdrawing.org/xmlns"}
    edges = doc.findall(".//g:edge", ns)
    assert [(e.get("source"), e.get("target")) for e in edges] == [("A", "B"), ("B", "A")]
    assert float(edges[0].find("g:data", ns).text) == pytest.approx(259 / 11)


def test_unknown_format(e2):
    with pytest.raises(UnknownFormat):
        export_graph(bilateral_va_flows(e2), "gexf")


def test_deterministic_order(rng):
    t = random_table(rng, 5, 1)
    fm = bilateral_va_flows(t)
    reordered = FlowMatrix(fm.nodes[::-1], fm.W[::-1, ::-1])
    assert export_graph(fm, "dot") == export_graph(reordered, "dot")
