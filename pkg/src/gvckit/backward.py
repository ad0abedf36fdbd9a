"""Buyer-side measures: where exports are made and whose value added they carry."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from gvckit.errors import DimensionMismatch
from gvckit.icio import IcioTable, country_columns, country_rows, exports_vector
from gvckit.leontief import LeontiefSystem, domestic_inverse, leontief_system


@dataclass
class SourceDecomposition:
    exporter: str
    gross_exports: float
    dva: float
    fva: float
    dva_direct: float
    dva_indirect: float
    dva_reimported: float
    fva_by_source: dict = field(default_factory=dict)

    @property
    def zero_exports(self) -> bool:
        return self.gross_exports <= 0.0

    @property
    def shares(self) -> dict:
        """Each component over gross exports; values are None when exports are zero."""
        names = ("dva", "fva", "dva_direct", "dva_indirect", "dva_reimported")
        if self.zero_exports:
            return {k: None for k in names}
        return {k: getattr(self, k) / self.gross_exports for k in names}


@dataclass
class ImportsInExports:
    country: str
    embodied_imports: float
    total_intermediate_imports: float
    by_source: dict = field(default_factory=dict)

    @property
    def ratio(self) -> Optional[float]:
        if self.total_intermediate_imports <= 0.0:
            return None
        return self.embodied_imports / self.total_intermediate_imports


def va_source_matrix(sys: LeontiefSystem, E: np.ndarray) -> np.ndarray:
    """T[i, j] = v[i] * B[i, j] * E[j]: value added of producer i carried by j's exports."""
    E = np.asarray(E, dtype=float)
    if E.shape != (sys.n,):
        raise DimensionMismatch(f"exports vector has shape {E.shape}, expected ({sys.n},)")
    return sys.v[:, None] * sys.B * E[None, :]


def va_content_by_country(table: IcioTable, sys: LeontiefSystem, E: np.ndarray) -> np.ndarray:
    """Producer-by-exporting-country matrix: value added of producer i in country c's exports."""
    return sys.v[:, None] * country_columns(table, sys.B * E[None, :])


def domestic_inverses(table: IcioTable, sys: LeontiefSystem) -> list:
    return [domestic_inverse(sys.A, table.block(c)) for c in range(table.n_countries)]


def dva_fva(table: IcioTable, by_sector: bool = False) -> dict:
    """Split each country's gross exports into domestic and foreign value added.

    Domestic value added is further split into value added of the exporting
    sectors themselves, of domestic upstream suppliers (domestic Leontief
    block), and of domestic content that returns through foreign inputs
    (global minus domestic Leontief block). With ``by_sector`` the foreign
    breakdown is keyed ``"CCC.SSS"`` instead of by country.
    """
    sys = leontief_system(table)
    E = exports_vector(table)
    content = va_content_by_country(table, sys, E)
    labels = table.labels()
    ldd = domestic_inverses(table, sys)
    out = {}
    for c, code in enumerate(table.countries):
        blk = table.block(c)
        v_c, e_c = sys.v[blk], E[blk]
        direct = float(v_c @ e_c)
        indirect = float(v_c @ ((ldd[c] - np.eye(len(e_c))) @ e_c))
        reimported = float(v_c @ ((sys.B[blk, blk] - ldd[c]) @ e_c))
        col = content[:, c]
        by_country = country_rows(table, col)
        foreign = {}
        for s, scode in enumerate(table.countries):
            if s == c:
                continue
            if by_sector:
                for i in range(table.block(s).start, table.block(s).stop):
                    foreign[labels[i]] = float(col[i])
            else:
                foreign[scode] = float(by_country[s])
        out[code] = SourceDecomposition(
            exporter=code,
            gross_exports=float(e_c.sum()),
            dva=float(by_country[c]),
            fva=float(by_country.sum() - by_country[c]),
            dva_direct=direct,
            dva_indirect=max(indirect, 0.0),
            dva_reimported=max(reimported, 0.0),
            fva_by_source=foreign,
        )
    return out


def i2e_backward(table: IcioTable) -> dict:
    """Imported intermediates embodied in each country's exports."""
    sys = leontief_system(table)
    E = exports_vector(table)
    ldd = domestic_inverses(table, sys)
    out = {}
    for c, code in enumerate(table.countries):
        blk = table.block(c)
        requirement = ldd[c] @ E[blk]
        by_source = {}
        total = 0.0
        for s, scode in enumerate(table.countries):
            if s == c:
                continue
            src = table.block(s)
            by_source[scode] = float((sys.A[src, blk] @ requirement).sum())
            total += float(table.Z[src, blk].sum())
        out[code] = ImportsInExports(
            country=code,
            embodied_imports=float(sum(by_source.values())),
            total_intermediate_imports=total,
            by_source=by_source,
        )
    return out


def sourcing_chain_length(sys: LeontiefSystem) -> np.ndarray:
    """Average number of production stages embodied in each producer's output (column sums of B)."""
    return sys.B.sum(axis=0)
