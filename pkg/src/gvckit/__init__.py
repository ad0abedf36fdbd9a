"""Trade-in-value-added and global value chain indicators from input-output tables."""

from gvckit.backward import dva_fva, i2e_backward, sourcing_chain_length, va_source_matrix
from gvckit.bundle import load_bundle, read_bundle, write_bundle
from gvckit.forward import (
    chain_gap,
    dvx,
    i2e_selling,
    intermediates_shares,
    participation_index,
    upstreamness,
    va_by_destination,
)
from gvckit.icio import IcioTable, Sector, aggregate, exports_vector, validate_balance
from gvckit.leontief import (
    LeontiefSystem,
    leontief_inverse,
    leontief_system,
    technical_coefficients,
    va_coefficients,
)

__version__ = "0.1.0"
