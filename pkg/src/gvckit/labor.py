"""Jobs and labour-cost content of trade.

Every measure runs on either head counts (``basis="persons"``, from ``emp``)
or labour cost (``basis="wages"``); the algebra is identical.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from gvckit.backward import domestic_inverses
from gvckit.errors import MissingVector, NoManufacturingSectors
from gvckit.icio import IcioTable, country_columns, exports_vector
from gvckit.leontief import leontief_system

BASES = {"persons": "emp", "wages": "wages"}


@dataclass
class ExportLaborContent:
    total: float
    domestic: float
    foreign: float


@dataclass
class ChannelJobs:
    final_goods_trade: float
    intermediates_trade: float


@dataclass
class LaborAccount:
    basis: str
    l: np.ndarray
    jobs_in_exports: dict = field(default_factory=dict)
    jobs_foreign_final_demand: dict = field(default_factory=dict)
    jobs_by_channel: dict = field(default_factory=dict)
    gvc_manufacturing_jobs: dict = field(default_factory=dict)


def labor_coefficients(table: IcioTable, basis: str = "persons") -> np.ndarray:
    try:
        attr = BASES[basis]
    except KeyError:
        raise ValueError(f"basis must be one of {sorted(BASES)}, not {basis!r}") from None
    vec = getattr(table, attr)
    if vec is None:
        raise MissingVector(f"table has no {attr} vector (basis={basis!r})")
    out = np.zeros(table.n)
    ok = table.x > 0
    out[ok] = vec[ok] / table.x[ok]
    return out


def labor_content_of_exports(table: IcioTable, basis: str = "persons") -> dict:
    """Labour embodied in each country's gross exports, split by where it is employed."""
    l = labor_coefficients(table, basis)
    sys = leontief_system(table)
    E = exports_vector(table)
    content = l[:, None] * country_columns(table, sys.B * E[None, :])
    out = {}
    for c, code in enumerate(table.countries):
        col = content[:, c]
        domestic = float(col[table.block(c)].sum())
        total = float(col.sum())
        out[code] = ExportLaborContent(total, domestic, max(total - domestic, 0.0))
    return out


def _foreign_final_demand(table: IcioTable, c: int) -> np.ndarray:
    return table.F.sum(axis=1) - table.F[:, c]


def jobs_foreign_final_demand(table: IcioTable, basis: str = "persons") -> dict:
    """Jobs in each country sustained by final demand of all other countries."""
    l = labor_coefficients(table, basis)
    sys = leontief_system(table)
    out = {}
    for c, code in enumerate(table.countries):
        blk = table.block(c)
        out[code] = float(l[blk] @ (sys.B[blk] @ _foreign_final_demand(table, c)))
    return out


def jobs_by_channel(table: IcioTable, basis: str = "persons") -> dict:
    """Split foreign-demand jobs into a final-goods-exports channel and the rest.

    The final-goods channel is the labour reached by propagating the country's
    own final-goods exports through its domestic input structure only.
    """
    l = labor_coefficients(table, basis)
    sys = leontief_system(table)
    ldd = domestic_inverses(table, sys)
    total = jobs_foreign_final_demand(table, basis)
    out = {}
    for c, code in enumerate(table.countries):
        blk = table.block(c)
        exported_final = _foreign_final_demand(table, c)[blk]
        final = float(l[blk] @ (ldd[c] @ exported_final))
        out[code] = ChannelJobs(final, max(total[code] - final, 0.0))
    return out


def gvc_manufacturing_jobs(table: IcioTable, basis: str = "persons") -> np.ndarray:
    """Jobs in every producer that serve final demand for manufactured goods."""
    manuf = np.array([s.manufacturing for s in table.sectors] * table.n_countries)
    if not manuf.any():
        raise NoManufacturingSectors("no sector is flagged manufacturing")
    l = labor_coefficients(table, basis)
    sys = leontief_system(table)
    f = np.where(manuf, table.F.sum(axis=1), 0.0)
    return l * (sys.B @ f)


def labor_account(table: IcioTable, basis: str = "persons") -> LaborAccount:
    labels = table.labels()
    has_manuf = any(s.manufacturing for s in table.sectors)
    jobs = gvc_manufacturing_jobs(table, basis) if has_manuf else np.zeros(0)
    return LaborAccount(
        basis=basis,
        l=labor_coefficients(table, basis),
        jobs_in_exports=labor_content_of_exports(table, basis),
        jobs_foreign_final_demand=jobs_foreign_final_demand(table, basis),
        jobs_by_channel=jobs_by_channel(table, basis),
        gvc_manufacturing_jobs=dict(zip(labels, map(float, jobs))) if has_manuf else {},
    )
