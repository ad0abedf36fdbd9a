"""Technical coefficients, the global Leontief inverse and value-added coefficients."""
from __future__ import annotations

import logging
import weakref
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from gvckit.errors import NonProductive
from gvckit.icio import IcioTable

log = logging.getLogger(__name__)

DENSE_LIMIT = 5000
_BLOCK = 512
_NEG_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class LeontiefSystem:
    A: np.ndarray
    B: np.ndarray
    v: np.ndarray
    table_ref: str = ""

    @property
    def n(self) -> int:
        return self.v.shape[0]


def _safe_divide_columns(M: np.ndarray, d: np.ndarray) -> np.ndarray:
    out = np.zeros_like(M, dtype=float)
    ok = d > 0
    out[:, ok] = M[:, ok] / d[ok]
    return out


def technical_coefficients(table: IcioTable) -> np.ndarray:
    """A[i, j] = Z[i, j] / x[j]; zero-output columns are all zeros."""
    return _safe_divide_columns(table.Z, table.x)


def va_coefficients(table: IcioTable) -> np.ndarray:
    v = np.zeros(table.n)
    ok = table.x > 0
    v[ok] = table.va[ok] / table.x[ok]
    return v


def spectral_radius_estimate(A: np.ndarray, iterations: int = 50) -> float:
    """Power-iteration estimate of the spectral radius of a nonnegative matrix."""
    n = A.shape[0]
    if n == 0:
        return 0.0
    y = np.full(n, 1.0 / n)
    estimate = 0.0
    for _ in range(iterations):
        z = A @ y
        norm = np.abs(z).sum()
        if norm == 0.0:
            return 0.0
        estimate = norm / np.abs(y).sum()
        y = z / norm
    return float(estimate)


def _solve_identity(M: np.ndarray) -> np.ndarray:
    n = M.shape[0]
    if n <= DENSE_LIMIT:
        return np.linalg.solve(M, np.eye(n))
    lu = scipy.linalg.lu_factor(M, check_finite=False)
    out = np.empty((n, n))
    for start in range(0, n, _BLOCK):
        stop = min(n, start + _BLOCK)
        rhs = np.zeros((n, stop - start))
        rhs[np.arange(start, stop), np.arange(stop - start)] = 1.0
        out[:, start:stop] = scipy.linalg.lu_solve(lu, rhs, check_finite=False)
    return out


def leontief_inverse(A: np.ndarray) -> np.ndarray:
    """Return ``(I - A)^-1`` for a nonnegative coefficient matrix.

    Raises NonProductive when the solve is singular or produces negative
    entries; for nonnegative ``A`` the inverse is nonnegative exactly when the
    spectral radius is below one.
    """
    A = np.asarray(A, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError(f"A must be square, got shape {A.shape}")
    n = A.shape[0]
    radius = spectral_radius_estimate(A)
    if radius >= 1.0 + 1e-6:
        log.warning("spectral radius estimate %.6g >= 1; system is likely non-productive", radius)
    M = np.eye(n) - A
    try:
        B = _solve_identity(M)
    except (np.linalg.LinAlgError, scipy.linalg.LinAlgError) as exc:
        raise NonProductive(f"I - A is singular: {exc}") from exc
    if not np.all(np.isfinite(B)):
        raise NonProductive("I - A is numerically singular")
    if n and B.min() < -_NEG_TOL * max(1.0, np.abs(B).max()):
        raise NonProductive(
            f"Leontief inverse has negative entries (min {B.min():.3g}); "
            f"spectral radius estimate {radius:.6g}"
        )
    np.maximum(B, 0.0, out=B)
    return B


_SYSTEMS: "weakref.WeakKeyDictionary[IcioTable, LeontiefSystem]" = weakref.WeakKeyDictionary()


def leontief_system(table: IcioTable) -> LeontiefSystem:
    """Coefficient system of a table, memoized per table object."""
    cached = _SYSTEMS.get(table)
    if cached is not None:
        return cached
    A = technical_coefficients(table)
    B = leontief_inverse(A)
    v = va_coefficients(table)
    for arr in (A, B, v):
        arr.flags.writeable = False
    system = LeontiefSystem(A, B, v, table_ref=f"{table.year}:{id(table):x}")
    _SYSTEMS[table] = system
    return system


def domestic_inverse(A: np.ndarray, block: slice) -> np.ndarray:
    """``(I - A^cc)^-1`` for one country's diagonal block."""
    return leontief_inverse(A[block, block])
