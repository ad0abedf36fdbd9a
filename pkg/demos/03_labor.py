"""
Jobs embodied in trade
======================

Employment (or the wage bill) needed to produce exports, how much of it sits
at home, and how many jobs foreign final demand supports.
"""

import numpy as np

from gvckit import fixtures
from gvckit.labor import jobs_by_channel, jobs_foreign_final_demand, labor_account, labor_content_of_exports
from gvckit.synthetic import random_table

table = fixtures.e2()

for code, c in labor_content_of_exports(table).items():
    print(f"{code}: {c.total:.3f} jobs in exports ({c.domestic:.3f} at home, {c.foreign:.3f} abroad)")

print("jobs supported by foreign final demand:",
      {k: round(v, 3) for k, v in jobs_foreign_final_demand(table).items()})

for code, ch in jobs_by_channel(table).items():
    print(f"{code}: {ch.final_goods_trade:.3f} via final goods, {ch.intermediates_trade:.3f} via intermediates")

# wages instead of persons, on a table that carries a wage vector
big = random_table(np.random.default_rng(2), 3, 4)
acct = labor_account(big, basis="wages")
print("\nwage bill in exports:", {k: round(v.total, 2) for k, v in acct.jobs_in_exports.items()})
print("GVC manufacturing wage bill:", {k: round(v, 2) for k, v in acct.gvc_manufacturing_jobs.items()})
