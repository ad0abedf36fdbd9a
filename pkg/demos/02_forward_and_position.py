"""
Forward linkages and position in the chain
==========================================

Seller-side indicators (intermediates shares, I2E selling, DVX), the
participation index, upstreamness, sourcing length and the chain gap.
"""

import numpy as np

from gvckit import (
    chain_gap,
    dvx,
    fixtures,
    i2e_selling,
    intermediates_shares,
    leontief_system,
    participation_index,
    sourcing_chain_length,
    upstreamness,
)
from gvckit.synthetic import random_table

table = fixtures.e2()

for code, s in intermediates_shares(table).items():
    print(f"{code}: intermediates are {s.share_in_output:.2%} of output, {s.share_in_exports:.2%} of exports")

for code, s in i2e_selling(table).items():
    print(f"{code}: intermediates sold abroad and re-exported {s.value:.4f} ({s.share_of_exports:.2%} of exports)")

print("DVX (value added in partners' exports):", {k: round(v, 4) for k, v in dvx(table).items()})
print("DVX through domestic chains only:", {k: round(v, 4) for k, v in dvx(table, domestic_only=True).items()})

for code, p in participation_index(table).items():
    print(f"{code}: participation {p.total:.4f} = backward {p.backward:.4f} + forward {p.forward:.4f}")


# =============================================================================
# POSITION
# =============================================================================

print("\nupstreamness:", upstreamness(table))
print("sourcing length (column sums of B):", sourcing_chain_length(leontief_system(table)))

big = random_table(np.random.default_rng(1), 4, 6)
U = upstreamness(big)
gap = chain_gap(big)
order = np.argsort(-U)[:5]
print("\nMost upstream producers in a random 4 x 6 table:")
for i in order:
    print(f"  {big.labels()[i]}  U={U[i]:.3f}  chain gap={gap[i]:+.3f}")
