import numpy as np
import pandas as pd
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gvckit.errors import EmptyFlow, ParseError
from gvckit.grosstrade import (
    TradeRecord,
    category_shares,
    classification_map,
    classify,
    read_classification_csv,
    read_trade_csv,
    top_products,
    unit_value_comparison,
    unit_value_deciles,
)


def rec(product, value, flow="export", quantity=None, partner="P1"):
    return TradeRecord(flow, 2020, "IND", partner, product, value, quantity)


def test_classify_prefix():
    cmap = {"8471": "capital_goods"}
    df, _ = classify([rec("847130", 10.0), rec("999999", 5.0)], cmap)
    assert df["category"].tolist() == ["capital_goods", "unclassified"]


def test_longest_prefix_wins():
    cmap = classification_map({"84": "intermediates", "8471": "capital_goods"})
    df, _ = classify([rec("847130", 1.0), rec("840100", 1.0)], cmap)
    assert df["category"].tolist() == ["capital_goods", "intermediates"]


def test_coverage():
    _, cov = classify([rec("847130", 60.0), rec("999999", 40.0)], {"8471": "capital_goods"})
    assert cov == pytest.approx(0.6)


def test_classify_idempotent():
    cmap = {"8471": "capital_goods", "27": "raw_materials"}
    records = [rec("847130", 60.0), rec("270900", 40.0), rec("1", 3.0)]
    once, c1 = classify(records, cmap)
    twice, c2 = classify(once.drop(columns="category"), cmap)
    pd.testing.assert_frame_equal(once, twice)
    assert c1 == c2


def test_map_validation():
    with pytest.raises(ParseError):
        classification_map([("84", "capital_goods"), ("84", "intermediates")])
    with pytest.raises(ParseError):
        classification_map({"84": "toys"})
    with pytest.raises(ValueError):
        classify([rec("1", 1.0)], {})


def test_top_products_tie_break():
    records = [rec("P3", 50.0), rec("P1", 100.0), rec("P2", 50.0)]
    top = top_products(records, "export", 2)
    assert top["product"].tolist() == ["P1", "P2"]


def test_top_products_empty_and_single():
    assert top_products([], "export", 3).empty
    top = top_products([rec("P9", 7.0)], "export", 1)
    assert top.to_dict("records") == [{"product": "P9", "value": 7.0, "quantity": 0.0}]


def test_top_products_aggregates_partners():
    records = [rec("P1", 10.0, partner="X"), rec("P1", 15.0, partner="Y"), rec("P2", 20.0)]
    assert top_products(records, "export", 5)["value"].tolist() == [25.0, 20.0]


@settings(max_examples=30, deadline=None)
@given(st.permutations(list(range(8))), st.lists(st.integers(0, 4), min_size=8, max_size=8))
def test_top_products_order_independent(perm, values):
    records = [rec(f"P{k}", float(v)) for k, v in enumerate(values)]
    a = top_products(records, "export", 4)
    b = top_products([records[p] for p in perm], "export", 4)
    pd.testing.assert_frame_equal(a, b)


def test_unit_values():
    records = [
        rec("P", 200.0, "export", 10.0),
        rec("P", 150.0, "import", 10.0),
        rec("Q", 30.0, "export", None),
        rec("R", 12.0, "import", 4.0),
    ]
    uv, skipped = unit_value_comparison(records)
    p = uv.set_index("product").loc["P"]
    assert (p["export_uv"], p["import_uv"]) == (20.0, 15.0)
    assert p["ratio"] == pytest.approx(4 / 3)
    r = uv.set_index("product").loc["R"]
    assert r["export_uv"] is None and r["ratio"] is None and r["import_uv"] == 3.0
    assert skipped == 1
    assert "Q" not in set(uv["product"])


def test_unit_values_aggregate_not_average():
    records = [rec("P", 10.0, quantity=1.0), rec("P", 90.0, quantity=9.0), rec("P", 100.0, quantity=1.0)]
    uv, _ = unit_value_comparison(records)
    assert uv.loc[0, "export_uv"] == pytest.approx(200 / 11)


def test_deciles():
    records = [rec(f"P{k}", float(k + 1), quantity=1.0) for k in range(11)]
    dec = unit_value_deciles(records)
    np.testing.assert_allclose(dec["export"], np.arange(2, 11))
    assert dec["import"].isna().all()


def test_category_shares():
    df, _ = classify([rec("8471", 70.0), rec("2709", 30.0)], {"8471": "capital_goods", "2709": "intermediates"})
    assert category_shares(df, "export") == {"capital_goods": 0.7, "intermediates": 0.3}
    one, _ = classify([rec("8471", 5.0)], {"8471": "capital_goods"})
    assert category_shares(one, "export") == {"capital_goods": 1.0}
    with pytest.raises(EmptyFlow):
        category_shares(df, "import")


@settings(max_examples=40, deadline=None)
@given(st.lists(st.tuples(st.sampled_from(["11", "22", "33", "44", "99"]), st.floats(0.01, 1e6)), min_size=1, max_size=30))
def test_category_shares_sum_to_one(items):
    cmap = {"11": "raw_materials", "22": "intermediates", "33": "consumer_goods", "44": "capital_goods"}
    df, _ = classify([rec(p + "0000", v) for p, v in items], cmap)
    shares = category_shares(df, "export")
    assert sum(shares.values()) == pytest.approx(1.0, abs=1e-12)
    assert all(0.0 <= s <= 1.0 for s in shares.values())


def test_csv_readers(tmp_path):
    trade = tmp_path / "trade.csv"
    trade.write_text(
        "flow,year,reporter,partner,product,value,quantity\n"
        "export,2020,IND,USA,010110,100,5\n"
        "import,2020,IND,CHN,847130,50,\n"
    )
    df = read_trade_csv(trade)
    assert df["product"].tolist() == ["010110", "847130"]
    assert np.isnan(df.loc[1, "quantity"])
    cmap = tmp_path / "map.csv"
    cmap.write_text("prefix,category\n01,raw_materials\n8471,capital_goods\n")
    assert read_classification_csv(cmap) == {"01": "raw_materials", "8471": "capital_goods"}


def test_rejects_bad_flow(tmp_path):
    trade = tmp_path / "trade.csv"
    trade.write_text("flow,year,reporter,partner,product,value,quantity\nreexport,2020,A,B,1,1,1\n")
    with pytest.raises(ParseError):
        read_trade_csv(trade)
