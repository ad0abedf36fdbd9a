"""Two-period decomposition of gross export growth into value-added components."""
from __future__ import annotations

from dataclasses import dataclass, field

from gvckit.backward import dva_fva
from gvckit.errors import SchemeMismatch
from gvckit.icio import IcioTable

COMPONENTS = ("dva_direct", "dva_indirect", "dva_reimported", "fva")


@dataclass
class GrowthDecomposition:
    country: str
    delta_exports: float
    delta_direct: float
    delta_indirect: float
    delta_reimported: float
    delta_fva: float
    contributions: dict = field(default_factory=dict)


def _scheme(t: IcioTable):
    return t.countries, tuple(s.code for s in t.sectors)


def export_growth_decomposition(t0: IcioTable, t1: IcioTable) -> dict:
    """Level changes of each export component between two tables.

    Since DVA + FVA equals gross exports in each year, the four deltas add up
    to the change in gross exports. Contributions are normalised by base-year
    exports (None when those are zero).
    """
    if _scheme(t0) != _scheme(t1):
        raise SchemeMismatch("tables use different country or sector schemes")
    d0, d1 = dva_fva(t0), dva_fva(t1)
    out = {}
    for code in t0.countries:
        a, b = d0[code], d1[code]
        delta = {k: getattr(b, k) - getattr(a, k) for k in COMPONENTS}
        dx = b.gross_exports - a.gross_exports
        base = a.gross_exports
        out[code] = GrowthDecomposition(
            country=code,
            delta_exports=dx,
            delta_direct=delta["dva_direct"],
            delta_indirect=delta["dva_indirect"],
            delta_reimported=delta["dva_reimported"],
            delta_fva=delta["fva"],
            contributions={k: (v / base if base > 0 else None) for k, v in delta.items()},
        )
    return out
