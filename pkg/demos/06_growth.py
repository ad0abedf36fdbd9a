"""
Where export growth comes from
==============================

Compares two years of the same table and splits the change in each country's
gross exports into direct, indirect and re-imported domestic value added plus
foreign value added.
"""

import numpy as np

from gvckit.growth import export_growth_decomposition
from gvckit.synthetic import random_table

rng = np.random.default_rng(4)
t0 = random_table(rng, 4, 3, year=2010)
t1 = random_table(rng, 4, 3, year=2015)

print("country  d_exports  direct    indirect  reimported  fva")
for code, g in export_growth_decomposition(t0, t1).items():
    print(f"{code:7s}  {g.delta_exports:9.2f}  {g.delta_direct:8.2f}  {g.delta_indirect:8.2f}  "
          f"{g.delta_reimported:10.2f}  {g.delta_fva:7.2f}")
    shares = {k: f"{v:+.1%}" for k, v in g.contributions.items()}
    print("         contributions relative to base exports:", shares)
