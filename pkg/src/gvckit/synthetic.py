"""Random balanced tables for property tests and benchmarks."""
from __future__ import annotations

import numpy as np

from gvckit.icio import MANUFACTURING, SERVICES, IcioTable, Sector


def random_coefficients(rng: np.random.Generator, n: int, max_share: float = 0.6, density: float = 1.0) -> np.ndarray:
    """Nonnegative n x n matrix whose column sums lie in (0, max_share]."""
    A = rng.random((n, n))
    if density < 1.0:
        A *= rng.random((n, n)) < density
    sums = A.sum(axis=0)
    sums[sums == 0] = 1.0
    return A / sums * rng.uniform(0.05, max_share, size=n)


def random_table(
    rng: np.random.Generator,
    n_countries: int,
    n_sectors: int,
    max_share: float = 0.6,
    labor: bool = True,
    home_bias: float = 4.0,
    year: int = 2015,
) -> IcioTable:
    """A balanced table built from random coefficients and final demand.

    Output is solved from ``x = A x + F 1`` so both accounting identities hold
    up to rounding. Domestic blocks are weighted by ``home_bias``.
    """
    n = n_countries * n_sectors
    A = random_coefficients(rng, n, max_share)
    owner = np.repeat(np.arange(n_countries), n_sectors)
    home = owner[:, None] == owner[None, :]
    sums = A.sum(axis=0)
    A = np.where(home, A * home_bias, A)
    A *= sums / A.sum(axis=0)
    F = rng.uniform(1.0, 100.0, size=(n, n_countries))
    F[np.arange(n), owner] *= home_bias
    x = np.linalg.solve(np.eye(n) - A, F.sum(axis=1))
    Z = A * x[None, :]
    x = Z.sum(axis=1) + F.sum(axis=1)
    va = x - Z.sum(axis=0)
    sectors = []
    for s in range(n_sectors):
        flags = frozenset({MANUFACTURING}) if s % 2 == 0 else frozenset({SERVICES})
        sectors.append(Sector(f"S{s + 1:02d}", flags))
    countries = tuple(f"C{c:02d}" for c in range(n_countries))
    emp = wages = None
    if labor:
        emp = x * rng.uniform(0.05, 1.0, size=n)
        wages = va * rng.uniform(0.2, 0.9, size=n)
    return IcioTable(countries, tuple(sectors), year, Z, F, va, x, emp=emp, wages=wages, currency="USD")
