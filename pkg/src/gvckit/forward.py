"""Seller-side measures, upstreamness, chain gaps and the participation index."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from gvckit.backward import domestic_inverses, dva_fva, va_content_by_country
from gvckit.errors import NonProductive, ZeroExports, ZeroOutput
from gvckit.icio import IcioTable, country_rows, exports_vector
from gvckit.leontief import leontief_inverse, leontief_system


def _ratio(num: float, den: float) -> Optional[float]:
    return num / den if den > 0 else None


@dataclass
class IntermediatesShares:
    share_in_output: Optional[float]
    share_in_exports: Optional[float]


@dataclass
class SellingI2E:
    value: float
    share_of_exports: Optional[float]


@dataclass
class Participation:
    backward: Optional[float]
    forward: Optional[float]
    total: Optional[float]


@dataclass
class ForwardProfile:
    country: str
    intermediates_share_output: Optional[float]
    intermediates_share_exports: Optional[float]
    i2e_selling: float
    i2e_selling_share: Optional[float]
    dvx: float
    va_by_destination: dict
    upstreamness: np.ndarray
    chain_gap: np.ndarray
    participation_backward: Optional[float]
    participation_forward: Optional[float]
    participation_total: Optional[float]
    sector_codes: tuple = field(default=())


def intermediates_shares(table: IcioTable) -> dict:
    E = exports_vector(table)
    foreign = ~table.domestic_mask()
    out = {}
    for c, code in enumerate(table.countries):
        blk = table.block(c)
        sold = table.Z[blk].sum()
        exported = table.Z[blk][foreign[blk]].sum()
        out[code] = IntermediatesShares(
            share_in_output=_ratio(float(sold), float(table.x[blk].sum())),
            share_in_exports=_ratio(float(exported), float(E[blk].sum())),
        )
    return out


def i2e_selling(table: IcioTable) -> dict:
    """Intermediates a country sells that buyers embody in their own exports."""
    sys = leontief_system(table)
    E = exports_vector(table)
    ldd = domestic_inverses(table, sys)
    requirement = [ldd[r] @ E[table.block(r)] for r in range(table.n_countries)]
    out = {}
    for s, code in enumerate(table.countries):
        src = table.block(s)
        value = 0.0
        for r in range(table.n_countries):
            if r != s:
                value += float((sys.A[src, table.block(r)] @ requirement[r]).sum())
        out[code] = SellingI2E(value, _ratio(value, float(E[src].sum())))
    return out


def dvx(table: IcioTable, domestic_only: bool = False) -> dict:
    """Domestic value added embodied in other countries' gross exports.

    The default weights by third countries' full gross exports. With
    ``domestic_only`` the value added is traced only through the seller's
    domestic chain, a direct intermediate shipment, and the buyer's domestic
    output for export; that variant never exceeds the default.
    """
    sys = leontief_system(table)
    E = exports_vector(table)
    if not domestic_only:
        content = country_rows(table, va_content_by_country(table, sys, E))
        return {
            code: float(content[c].sum() - content[c, c]) for c, code in enumerate(table.countries)
        }
    ldd = domestic_inverses(table, sys)
    requirement = [ldd[r] @ E[table.block(r)] for r in range(table.n_countries)]
    out = {}
    for s, code in enumerate(table.countries):
        src = table.block(s)
        weights = sys.v[src] @ ldd[s]
        total = 0.0
        for r in range(table.n_countries):
            if r != s:
                total += float(weights @ (sys.A[src, table.block(r)] @ requirement[r]))
        out[code] = total
    return out


def va_by_destination(table: IcioTable) -> np.ndarray:
    """C x C matrix: value added of country s absorbed by final demand in country r."""
    sys = leontief_system(table)
    return country_rows(table, sys.v[:, None] * (sys.B @ table.F))


def _upstreamness(Z: np.ndarray, x: np.ndarray) -> np.ndarray:
    if np.any(x <= 0):
        raise ZeroOutput(f"upstreamness needs strictly positive output; {int((x <= 0).sum())} zero entries")
    delta = Z / x[:, None]
    try:
        U = leontief_inverse(delta).sum(axis=1)
    except NonProductive as exc:
        raise NonProductive(f"I - Delta is not invertible: {exc}") from exc
    return U


def upstreamness(table: IcioTable) -> np.ndarray:
    """Average number of stages between each producer and final demand (>= 1)."""
    return _upstreamness(table.Z, table.x)


def chain_gap(table: IcioTable) -> np.ndarray:
    """Domestic selling-chain length minus domestic sourcing-chain length, per producer.

    Both lengths use only the producer's own-country block: flows to and from
    other countries count as final sales and primary inputs respectively.
    """
    if np.any(table.x <= 0):
        raise ZeroOutput("chain gap needs strictly positive output")
    sys = leontief_system(table)
    gap = np.empty(table.n)
    for c in range(table.n_countries):
        blk = table.block(c)
        u_dom = _upstreamness(table.Z[blk, blk], table.x[blk])
        n_dom = leontief_inverse(sys.A[blk, blk]).sum(axis=0)
        gap[blk] = u_dom - n_dom
    return gap


def participation_index(table: IcioTable, country: Optional[str] = None, level: str = "country"):
    """Backward (FVA) and forward (DVX) participation over gross exports.

    Returns a mapping from country (or ``"CCC.SSS"`` producer label when
    ``level="sector"``) to Participation. Entries with zero exports carry None
    values; asking for a single such ``country`` raises ZeroExports.
    """
    if level not in ("country", "sector"):
        raise ValueError(f"level must be 'country' or 'sector', not {level!r}")
    sys = leontief_system(table)
    E = exports_vector(table)
    if level == "sector":
        T = sys.v[:, None] * sys.B * E[None, :]
        domestic = table.domestic_mask()
        fva = np.where(domestic, 0.0, T).sum(axis=0)
        dvx_ = np.where(domestic, 0.0, T).sum(axis=1)
        keys, exports, backs, fores = table.labels(), E, fva, dvx_
    else:
        dec = dva_fva(table)
        fwd = dvx(table)
        keys = list(table.countries)
        exports = [dec[k].gross_exports for k in keys]
        backs = [dec[k].fva for k in keys]
        fores = [fwd[k] for k in keys]
    out = {}
    for key, e, b, f in zip(keys, exports, backs, fores):
        if e > 0:
            out[key] = Participation(b / e, f / e, (b + f) / e)
        else:
            out[key] = Participation(None, None, None)
    if country is not None:
        if level != "country":
            raise ValueError("country selection is only supported at country level")
        if country not in out:
            raise KeyError(f"unknown country {country!r}")
        result = out[country]
        if result.total is None:
            raise ZeroExports(f"{country} has zero gross exports; participation index undefined")
        return result
    return out


def forward_profiles(table: IcioTable) -> dict:
    """All seller-side measures for every country in one pass."""
    shares = intermediates_shares(table)
    selling = i2e_selling(table)
    forward = dvx(table)
    dest = va_by_destination(table)
    U = upstreamness(table)
    gap = chain_gap(table)
    part = participation_index(table)
    out = {}
    for c, code in enumerate(table.countries):
        blk = table.block(c)
        out[code] = ForwardProfile(
            country=code,
            intermediates_share_output=shares[code].share_in_output,
            intermediates_share_exports=shares[code].share_in_exports,
            i2e_selling=selling[code].value,
            i2e_selling_share=selling[code].share_of_exports,
            dvx=forward[code],
            va_by_destination={r: float(dest[c, k]) for k, r in enumerate(table.countries)},
            upstreamness=U[blk].copy(),
            chain_gap=gap[blk].copy(),
            participation_backward=part[code].backward,
            participation_forward=part[code].forward,
            participation_total=part[code].total,
            sector_codes=tuple(s.code for s in table.sectors),
        )
    return out
