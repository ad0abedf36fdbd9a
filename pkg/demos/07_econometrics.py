"""
Cross-country and firm-level regressions
========================================

A synthetic recipe reproducing the kind of tables a GVC study reports:
correlations of a participation measure with country indicators, a
fixed-effects regression of wages on GVC exposure, and a logit of firm
participation on firm characteristics.
"""

import numpy as np
import pandas as pd

from gvckit.econometrics import correlation_table, describe_by_sector, logit_fit, ols_fe

rng = np.random.default_rng(5)

# ---- country panel: participation and logistics/tariff indicators
countries = [f"C{i:02d}" for i in range(30)]
lpi = rng.uniform(2.0, 4.2, 30)
tariff = rng.uniform(0.0, 15.0, 30)
gvc = 0.1 + 0.08 * lpi - 0.01 * tariff + rng.normal(0, 0.03, 30)
countries_df = pd.DataFrame({"id": countries, "gvc": gvc, "lpi": lpi, "tariff": tariff})
print(correlation_table(countries_df, ["gvc"], ["lpi", "tariff"]), "\n")

# ---- sector-year panel: wages on GVC exposure with sector and year effects
rows = []
for sector in range(8):
    effect = rng.normal(0, 1)
    for year in range(2000, 2015):
        exposure = rng.uniform(0, 0.5)
        rows.append({"sector": f"S{sector}", "year": year, "gvc_exposure": exposure,
                     "log_wage": 2 + effect + 0.02 * (year - 2000) + 0.6 * exposure + rng.normal(0, 0.05)})
panel = pd.DataFrame(rows)
fit = ols_fe(panel, "log_wage", ["gvc_exposure"], ["sector", "year"], cluster_var="sector")
print(fit.table(), "\n", {k: fit.diagnostics[k] for k in ("r2", "se_type", "clusters")}, "\n")
print(describe_by_sector(panel, "sector", ["log_wage"]).head(), "\n")

# ---- firms: who joins value chains?
n = 400
firms = pd.DataFrame({
    "size": rng.lognormal(3, 1, n),
    "foreign_owned": (rng.random(n) < 0.2).astype(float),
    "productivity": rng.normal(0, 1, n),
})
index = -2 + 0.01 * firms["size"] + 1.2 * firms["foreign_owned"] + 0.8 * firms["productivity"]
firms["gvc_participant"] = (rng.random(n) < 1 / (1 + np.exp(-index))).astype(float)
logit = logit_fit(firms, ["size", "foreign_owned", "productivity"])
print(logit.table())
print("iterations:", logit.diagnostics["iterations"], "log-likelihood:", round(logit.diagnostics["loglik"], 3))
