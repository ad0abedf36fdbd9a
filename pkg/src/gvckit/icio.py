"""Inter-country input-output table model, balance checks, exports and aggregation.

Producers are ordered country-major: producer ``c * n_sectors + s`` is sector
``s`` of country ``c``. Every matrix in the package follows that order.
"""
from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence

import numpy as np

from gvckit.errors import DimensionMismatch, NegativeEntries, UnmappedCode

MANUFACTURING = "manufacturing"
SERVICES = "services"
SECTOR_FLAGS = frozenset({MANUFACTURING, SERVICES})


@dataclass(frozen=True)
class Sector:
    code: str
    flags: frozenset = frozenset()

    def __post_init__(self):
        flags = frozenset(self.flags)
        unknown = flags - SECTOR_FLAGS
        if unknown:
            raise ValueError(f"unknown sector flags {sorted(unknown)} for {self.code!r}")
        object.__setattr__(self, "flags", flags)

    @property
    def manufacturing(self) -> bool:
        return MANUFACTURING in self.flags

    @property
    def services(self) -> bool:
        return SERVICES in self.flags


def _frozen(a, name, ndim) -> np.ndarray:
    arr = np.array(a, dtype=float, copy=True)
    if arr.ndim != ndim:
        raise DimensionMismatch(f"{name} must be {ndim}-dimensional, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise NegativeEntries(f"{name} contains non-finite entries")
    if np.any(arr < 0):
        raise NegativeEntries(
            f"{name} contains {int((arr < 0).sum())} negative entries "
            f"(total {float(arr[arr < 0].sum()):.6g})"
        )
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True, eq=False)
class IcioTable:
    """A multi-country, multi-sector input-output snapshot.

    ``Z`` is N x N (intermediate sales from row producer to column producer),
    ``F`` is N x C (final goods from producer i absorbed in country r),
    ``va`` and ``x`` have length N. ``emp`` (persons) and ``wages`` (currency)
    are optional. Arrays are copied and made read-only on construction.
    """

    countries: tuple
    sectors: tuple
    year: int
    Z: np.ndarray
    F: np.ndarray
    va: np.ndarray
    x: np.ndarray
    emp: Optional[np.ndarray] = None
    wages: Optional[np.ndarray] = None
    currency: str = ""
    _country_of: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        countries = tuple(str(c) for c in self.countries)
        sectors = tuple(s if isinstance(s, Sector) else Sector(str(s)) for s in self.sectors)
        if not countries or not sectors:
            raise DimensionMismatch("a table needs at least one country and one sector")
        if len(set(countries)) != len(countries):
            raise DimensionMismatch("duplicate country codes")
        if len({s.code for s in sectors}) != len(sectors):
            raise DimensionMismatch("duplicate sector codes")
        n, c = len(countries) * len(sectors), len(countries)
        set_ = lambda k, v: object.__setattr__(self, k, v)  # noqa: E731
        set_("countries", countries)
        set_("sectors", sectors)
        set_("year", int(self.year))
        for name, ndim, shape in (
            ("Z", 2, (n, n)),
            ("F", 2, (n, c)),
            ("va", 1, (n,)),
            ("x", 1, (n,)),
            ("emp", 1, (n,)),
            ("wages", 1, (n,)),
        ):
            value = getattr(self, name)
            if value is None:
                continue
            arr = _frozen(value, name, ndim)
            if arr.shape != shape:
                raise DimensionMismatch(f"{name} has shape {arr.shape}, expected {shape}")
            set_(name, arr)
        owner = np.repeat(np.arange(c), len(sectors))
        owner.flags.writeable = False
        set_("_country_of", owner)

    @classmethod
    def from_flows(cls, countries, sectors, Z, F, year=0, emp=None, wages=None, currency=""):
        """Build a balanced table, deriving output from row sums and value added as the residual."""
        Z = np.asarray(Z, dtype=float)
        F = np.asarray(F, dtype=float)
        x = Z.sum(axis=1) + F.sum(axis=1)
        va = x - Z.sum(axis=0)
        return cls(countries, sectors, year, Z, F, va, x, emp=emp, wages=wages, currency=currency)

    @property
    def n_countries(self) -> int:
        return len(self.countries)

    @property
    def n_sectors(self) -> int:
        return len(self.sectors)

    @property
    def n(self) -> int:
        return self.n_countries * self.n_sectors

    @property
    def country_of(self) -> np.ndarray:
        """Country index of each producer."""
        return self._country_of

    def block(self, c: int) -> slice:
        """Producer index range of country number ``c``."""
        s = self.n_sectors
        return slice(c * s, (c + 1) * s)

    def country_index(self, code: str) -> int:
        try:
            return self.countries.index(code)
        except ValueError:
            raise KeyError(f"unknown country {code!r}") from None

    def labels(self) -> list:
        return [f"{c}.{s.code}" for c in self.countries for s in self.sectors]

    def domestic_mask(self) -> np.ndarray:
        """N x N boolean mask, True where row and column producer share a country."""
        return self._country_of[:, None] == self._country_of[None, :]

    def replace(self, **changes) -> "IcioTable":
        return dataclasses.replace(self, **changes)

    def scaled(self, factor: float) -> "IcioTable":
        """Multiply every monetary field by ``factor``; employment is left untouched."""
        return self.replace(
            Z=self.Z * factor,
            F=self.F * factor,
            va=self.va * factor,
            x=self.x * factor,
            wages=None if self.wages is None else self.wages * factor,
        )


@dataclass
class BalanceReport:
    passed: bool
    worst_row_residual: float
    worst_col_residual: float
    violations: list = field(default_factory=list)


def validate_balance(table: IcioTable, tol: float = 1e-9) -> BalanceReport:
    """Row and column accounting check with residuals scaled by ``max(1, x)``."""
    n, c = table.n, table.n_countries
    if table.Z.shape != (n, n) or table.F.shape != (n, c):
        raise DimensionMismatch("Z must be N x N and F must be N x C")
    scale = np.maximum(1.0, table.x)
    row = np.abs(table.x - table.Z.sum(axis=1) - table.F.sum(axis=1)) / scale
    col = np.abs(table.x - table.Z.sum(axis=0) - table.va) / scale
    violations = [(int(i), "row", float(row[i])) for i in np.flatnonzero(row > tol)]
    violations += [(int(j), "col", float(col[j])) for j in np.flatnonzero(col > tol)]
    if table.wages is not None:
        excess = (table.wages - table.va) / scale
        violations += [(int(i), "wages", float(excess[i])) for i in np.flatnonzero(excess > tol)]
    return BalanceReport(
        passed=not violations,
        worst_row_residual=float(row.max(initial=0.0)),
        worst_col_residual=float(col.max(initial=0.0)),
        violations=violations,
    )


def country_columns(table: IcioTable, M: np.ndarray) -> np.ndarray:
    """Sum the producer columns of ``M`` (rows x N) into country columns (rows x C)."""
    s = table.n_sectors
    return M.reshape(M.shape[0], table.n_countries, s).sum(axis=2)


def country_rows(table: IcioTable, v: np.ndarray) -> np.ndarray:
    """Sum a producer-indexed vector (or leading axis) into countries."""
    v = np.asarray(v)
    return v.reshape((table.n_countries, table.n_sectors) + v.shape[1:]).sum(axis=1)


def exports_vector(table: IcioTable) -> np.ndarray:
    """Gross exports of each producer: intermediate plus final sales to other countries."""
    sales = country_columns(table, table.Z) + table.F
    own = sales[np.arange(table.n), table.country_of]
    return np.maximum(sales.sum(axis=1) - own, 0.0)


def _group_index(codes: Sequence[str], mapping: Mapping[str, str], what: str):
    missing = [c for c in codes if c not in mapping]
    if missing:
        raise UnmappedCode(f"{what} codes missing from map: {missing}")
    new = list(dict.fromkeys(mapping[c] for c in codes))
    return new, np.array([new.index(mapping[c]) for c in codes], dtype=int)


def _sum_axis(a: np.ndarray, index: np.ndarray, size: int, axis: int) -> np.ndarray:
    moved = np.moveaxis(a, axis, 0)
    out = np.zeros((size,) + moved.shape[1:])
    np.add.at(out, index, moved)  # accumulates in ascending source index
    return np.moveaxis(out, 0, axis)


def aggregate(
    table: IcioTable,
    country_groups: Mapping[str, str],
    sector_groups: Mapping[str, str],
) -> IcioTable:
    """Regroup countries and sectors; new codes keep their order of first appearance.

    Aggregated sectors carry the union of their members' flags.
    """
    new_countries, cidx = _group_index(table.countries, country_groups, "country")
    sector_codes = [s.code for s in table.sectors]
    new_sector_codes, sidx = _group_index(sector_codes, sector_groups, "sector")
    flags = [frozenset() for _ in new_sector_codes]
    for s, g in zip(table.sectors, sidx):
        flags[g] = flags[g] | s.flags
    new_sectors = tuple(Sector(code, f) for code, f in zip(new_sector_codes, flags))

    pidx = (cidx[:, None] * len(new_sectors) + sidx[None, :]).ravel()
    n_new = len(new_countries) * len(new_sectors)

    Z = _sum_axis(_sum_axis(table.Z, pidx, n_new, 0), pidx, n_new, 1)
    F = _sum_axis(_sum_axis(table.F, pidx, n_new, 0), cidx, len(new_countries), 1)
    vec = lambda v: None if v is None else _sum_axis(v, pidx, n_new, 0)  # noqa: E731
    return IcioTable(
        new_countries,
        new_sectors,
        table.year,
        Z,
        F,
        vec(table.va),
        vec(table.x),
        emp=vec(table.emp),
        wages=vec(table.wages),
        currency=table.currency,
    )
