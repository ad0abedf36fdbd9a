"""
Product-level gross trade
=========================

Classifies a handful of trade records into broad end-use categories, ranks
products, and compares export and import unit values.
"""

from gvckit import grosstrade
from gvckit.grosstrade import TradeRecord

records = [
    TradeRecord("export", 2015, "IND", "USA", "010110", 120.0, 12.0),
    TradeRecord("export", 2015, "IND", "DEU", "847130", 300.0, 2.0),
    TradeRecord("export", 2015, "IND", "CHN", "2709", 80.0, None),
    TradeRecord("import", 2015, "IND", "CHN", "847130", 500.0, 5.0),
    TradeRecord("import", 2015, "IND", "SAU", "2709", 900.0, 90.0),
    TradeRecord("import", 2015, "IND", "JPN", "8703", 250.0, 10.0),
]
cmap = grosstrade.classification_map(
    {"01": "raw_materials", "27": "raw_materials", "84": "capital_goods", "8703": "consumer_goods"}
)

annotated, coverage = grosstrade.classify(records, cmap)
print(annotated[["flow", "product", "value", "category"]])
print(f"classified share of value: {coverage:.1%}")
print("export composition:", grosstrade.category_shares(annotated, "export"))

print("\nTop imports:\n", grosstrade.top_products(records, "import", 2))

uv, skipped = grosstrade.unit_value_comparison(records)
print("\nUnit values (records without quantity skipped: %d):\n" % skipped, uv)
