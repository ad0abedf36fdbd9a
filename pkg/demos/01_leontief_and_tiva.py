"""
Value added in exports, step by step
====================================

Walks through the two-country reference table: technical coefficients, the
Leontief inverse, and the split of each country's gross exports into domestic
and foreign value added. Then repeats the exercise on a random 5 x 4 table.
"""

import numpy as np

from gvckit import dva_fva, fixtures, i2e_backward, leontief_system
from gvckit.synthetic import random_table

np.set_printoptions(precision=4, suppress=True)


# =============================================================================
# THE REFERENCE TABLE
# =============================================================================

table = fixtures.e2()
print("Producers:", table.labels())
print("Intermediate flows Z:\n", table.Z)
print("Final demand F (columns = destination country):\n", table.F)

system = leontief_system(table)
print("\nA = Z / x (column-wise):\n", system.A)
print("B = (I - A)^-1:\n", system.B)
print("value added per unit of output v:", system.v)
print("check v.B = 1 per column:", system.v @ system.B)


# =============================================================================
# DECOMPOSING GROSS EXPORTS
# =============================================================================

print("\nExporter  gross    DVA      FVA      direct   indirect reimported")
for code, d in dva_fva(table).items():
    print(f"{code:8s}  {d.gross_exports:7.3f}  {d.dva:7.3f}  {d.fva:7.3f}  "
          f"{d.dva_direct:7.3f}  {d.dva_indirect:7.3f}  {d.dva_reimported:7.3f}")

# imported intermediates that end up inside exports, seen from the buyer
for code, r in i2e_backward(table).items():
    print(f"{code}: embodied imports {r.embodied_imports:.4f} of {r.total_intermediate_imports:.1f} "
          f"-> ratio {r.ratio:.4f}")


# =============================================================================
# A BIGGER RANDOM TABLE
# =============================================================================

big = random_table(np.random.default_rng(0), 5, 4)
dec = dva_fva(big)
shares = {c: round(d.shares["fva"], 4) for c, d in dec.items()}
print("\nFVA share of gross exports, random 5-country table:", shares)

# foreign value added by source country for the first exporter
first = big.countries[0]
print(f"FVA in {first}'s exports by source:",
      {s: round(v, 2) for s, v in dec[first].fva_by_source.items()})
