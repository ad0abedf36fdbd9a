"""Correlations, fixed-effects OLS and a firm-level logit of GVC entry.

Panels are plain pandas DataFrames with an ``id`` column and one column per
variable; missing values are NaN and are dropped listwise per estimation.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np
import pandas as pd
from scipy.special import expit

from gvckit.errors import (
    NoConvergence,
    NoVariation,
    ParseError,
    RankDeficient,
    Separation,
    TooFewObservations,
    UnknownVariable,
    ZeroVariance,
)

DEMEAN_TOL = 1e-10
DEMEAN_MAX_ITER = 10_000
LOGIT_TOL = 1e-8
LOGIT_MAX_ITER = 100
SEPARATION_BOUND = 30.0


@dataclass
class FitResult:
    names: list
    coef: np.ndarray
    se: np.ndarray
    nobs: int
    diagnostics: dict = field(default_factory=dict)
    fitted: Optional[np.ndarray] = None

    def __post_init__(self):
        if not (len(self.names) == len(self.coef) == len(self.se)):
            raise ValueError("names, coefficients and standard errors differ in length")

    def params(self) -> dict:
        return dict(zip(self.names, map(float, self.coef)))

    def table(self) -> pd.DataFrame:
        return pd.DataFrame({"term": self.names, "coef": self.coef, "se": self.se})


@dataclass(frozen=True)
class FirmRecord:
    id: str
    size: float
    age: float
    foreign_owned: int
    skill_share: float
    productivity: float
    gvc_participant: int

    def __post_init__(self):
        if self.size < 0 or self.age < 0:
            raise ValueError("size and age must be nonnegative")
        if not 0.0 <= self.skill_share <= 1.0:
            raise ValueError("skill_share must lie in [0, 1]")
        if self.foreign_owned not in (0, 1) or self.gvc_participant not in (0, 1):
            raise ValueError("foreign_owned and gvc_participant are 0/1 indicators")


def read_panel(path) -> pd.DataFrame:
    """Read a panel or firm CSV: header of variable names, ``id`` column, empty field = missing."""
    df = pd.read_csv(path, dtype={"id": str}, keep_default_na=False, na_values=[""])
    if "id" not in df.columns:
        raise ParseError("panel CSV needs an 'id' column", path=path)
    if df.columns.duplicated().any():
        raise ParseError("duplicate variable names", path=path)
    if df.empty:
        raise TooFewObservations("panel has no rows")
    return df


def _require(df: pd.DataFrame, names: Iterable[str]):
    missing = [n for n in names if n not in df.columns]
    if missing:
        raise UnknownVariable(f"unknown variables: {missing}")


def pearson(x, y) -> float:
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape:
        raise ValueError("series differ in length")
    keep = ~(np.isnan(x) | np.isnan(y))
    x, y = x[keep], y[keep]
    if x.size < 3:
        raise TooFewObservations(f"correlation needs at least 3 observations, got {x.size}")
    dx, dy = x - x.mean(), y - y.mean()
    sxx, syy = dx @ dx, dy @ dy
    if sxx <= 0 or syy <= 0:
        raise ZeroVariance("a series has zero variance")
    return float(np.clip((dx @ dy) / np.sqrt(sxx * syy), -1.0, 1.0))


def correlation_table(panel: pd.DataFrame, targets: Sequence[str], indicators: Sequence[str]) -> pd.DataFrame:
    """Pairwise Pearson correlations between GVC measures and country indicators."""
    _require(panel, list(targets) + list(indicators))
    rows = []
    for t in targets:
        for k in indicators:
            pair = panel[[t, k]].dropna()
            rows.append({"measure": t, "indicator": k, "n": len(pair), "r": pearson(pair[t], pair[k])})
    return pd.DataFrame(rows)


def knowledge_center_distance(panel: pd.DataFrame, columns: Sequence[str], name: str = "dist_knowledge") -> pd.DataFrame:
    """Add the distance to the closest of several knowledge centres as ``name``."""
    _require(panel, columns)
    out = panel.copy()
    out[name] = panel[list(columns)].min(axis=1, skipna=False)
    return out


def firm_gvc_shares(
    firms: pd.DataFrame,
    imported_inputs: str = "imported_inputs",
    total_inputs: str = "total_inputs",
    sales_to_multinationals: str = "sales_to_multinationals",
    sales: str = "sales",
    exports: str = "exports",
) -> pd.DataFrame:
    """Firm-level link measures: imported input share, sales share to multinationals, export share."""
    _require(firms, [imported_inputs, total_inputs, sales_to_multinationals, sales, exports])
    out = firms.copy()
    ratio = lambda a, b: firms[a] / firms[b].where(firms[b] > 0)  # noqa: E731
    out["import_input_share"] = ratio(imported_inputs, total_inputs)
    out["mne_sales_share"] = ratio(sales_to_multinationals, sales)
    out["export_share"] = ratio(exports, sales)
    return out


def describe_by_sector(panel: pd.DataFrame, group_var: str, stats_vars: Sequence[str]) -> pd.DataFrame:
    """Mean, median and nonmissing count of each variable within each group.

    One row per (group, variable); groups with no observed values get a count
    of zero and None for mean and median.
    """
    _require(panel, [group_var, *stats_vars])
    rows = []
    for group, sub in panel.groupby(group_var, sort=True):
        for var in stats_vars:
            vals = sub[var].dropna().astype(float)
            rows.append(
                {
                    group_var: group,
                    "variable": var,
                    "count": int(vals.size),
                    "mean": float(vals.mean()) if vals.size else None,
                    "median": float(vals.median()) if vals.size else None,
                }
            )
    frame = pd.DataFrame(rows, columns=[group_var, "variable", "count", "mean", "median"])
    for col in ("mean", "median"):
        frame[col] = pd.Series([r[col] for r in rows], dtype=object)
    return frame


def demean(M: np.ndarray, groups: Sequence[np.ndarray], tol: float = DEMEAN_TOL) -> np.ndarray:
    """Sweep out group means for one or more fixed-effect dimensions.

    Alternates over the dimensions until no cell moves by more than ``tol``.
    ``groups`` holds integer codes (0..G-1) per dimension.
    """
    M = np.array(M, dtype=float, copy=True)
    if not groups:
        return M
    squeeze = M.ndim == 1
    if squeeze:
        M = M[:, None]
    counts = [np.bincount(g) for g in groups]
    for _ in range(DEMEAN_MAX_ITER):
        change = 0.0
        for g, cnt in zip(groups, counts):
            means = np.zeros((cnt.size, M.shape[1]))
            np.add.at(means, g, M)
            means /= np.maximum(cnt, 1)[:, None]
            M -= means[g]
            change = max(change, float(np.abs(means).max(initial=0.0)))
        if change < tol or len(groups) == 1:
            break
    else:
        raise NoConvergence("fixed-effect demeaning did not converge")
    return M[:, 0] if squeeze else M


def _check_rank(X: np.ndarray, raw: np.ndarray, names: Sequence[str], tol: float = 1e-9):
    accepted = []
    for j, name in enumerate(names):
        col = X[:, j]
        scale = max(np.linalg.norm(raw[:, j]), 1e-300)
        if accepted:
            Q = X[:, accepted]
            coef, *_ = np.linalg.lstsq(Q, col, rcond=None)
            col = col - Q @ coef
        if np.linalg.norm(col) <= tol * scale:
            raise RankDeficient(name)
        accepted.append(j)


def ols_fe(
    panel: pd.DataFrame,
    y: str,
    xs: Sequence[str],
    fe_vars: Sequence[str] = (),
    cluster_var: Optional[str] = None,
    add_constant: Optional[bool] = None,
) -> FitResult:
    """Least squares after sweeping out fixed effects.

    Without fixed effects an intercept ``const`` is included unless
    ``add_constant=False``. Standard errors are HC1 heteroskedasticity-robust,
    or CR1 cluster-robust when ``cluster_var`` is given; the residual degrees of
    freedom subtract the absorbed fixed-effect levels.
    """
    xs = list(xs)
    fe_vars = list(fe_vars)
    used = [y, *xs, *fe_vars] + ([cluster_var] if cluster_var else [])
    _require(panel, used)
    data = panel[list(dict.fromkeys(used))].dropna()
    dropped = len(panel) - len(data)
    if add_constant is None:
        add_constant = not fe_vars
    names = (["const"] if add_constant else []) + xs

    Xraw = data[xs].to_numpy(dtype=float)
    if add_constant:
        Xraw = np.column_stack([np.ones(len(data)), Xraw])
    yraw = data[y].to_numpy(dtype=float)
    groups = [pd.factorize(data[f], sort=True)[0] for f in fe_vars]
    absorbed = sum(int(g.max()) + 1 for g in groups) - max(len(groups) - 1, 0) if groups else 0

    n, k = Xraw.shape
    dof = n - k - absorbed
    if dof <= 0:
        raise TooFewObservations(f"{n} observations for {k + absorbed} parameters")

    X = demean(Xraw, groups)
    yt = demean(yraw, groups)
    _check_rank(X, Xraw, names)

    XtX_inv = np.linalg.inv(X.T @ X)
    beta = XtX_inv @ (X.T @ yt)
    resid = yt - X @ beta
    ssr = float(resid @ resid)
    tss = float(((yt - yt.mean()) ** 2).sum()) if (add_constant or groups) else float(yt @ yt)

    if cluster_var:
        cl = pd.factorize(data[cluster_var], sort=True)[0]
        n_cl = int(cl.max()) + 1
        if n_cl < 2:
            raise TooFewObservations("cluster-robust errors need at least 2 clusters")
        scores = np.zeros((n_cl, k))
        np.add.at(scores, cl, X * resid[:, None])
        meat = scores.T @ scores
        factor = n_cl / (n_cl - 1) * (n - 1) / dof
        se_kind = "cluster"
    else:
        Xe = X * resid[:, None]
        meat = Xe.T @ Xe
        factor = n / dof
        n_cl = None
        se_kind = "hc1"
    V = factor * XtX_inv @ meat @ XtX_inv
    se = np.sqrt(np.clip(np.diag(V), 0.0, None))
    return FitResult(
        names=names,
        coef=beta,
        se=se,
        nobs=n,
        diagnostics={
            "r2": 1.0 - ssr / tss if tss > 0 else None,
            "ssr": ssr,
            "resid_var": ssr / dof,
            "df_resid": dof,
            "absorbed": absorbed,
            "dropped_rows": dropped,
            "se_type": se_kind,
            "clusters": n_cl,
        },
        fitted=yraw - resid,
    )


def logit_loglik(beta: np.ndarray, X: np.ndarray, y: np.ndarray) -> float:
    eta = X @ beta
    # log(1 + exp(eta)) without overflow
    return float(y @ eta - np.logaddexp(0.0, eta).sum())


def logit_score(beta: np.ndarray, X: np.ndarray, y: np.ndarray) -> np.ndarray:
    return X.T @ (y - expit(X @ beta))


def logit_information(beta: np.ndarray, X: np.ndarray) -> np.ndarray:
    p = expit(X @ beta)
    return (X * (p * (1.0 - p))[:, None]).T @ X


def _logit_design(data, xs: Sequence[str], outcome: str):
    if not isinstance(data, pd.DataFrame):
        data = pd.DataFrame([r.__dict__ for r in data])
    _require(data, [*xs, outcome])
    sub = data[[*xs, outcome]].dropna()
    X = np.column_stack([np.ones(len(sub)), sub[list(xs)].to_numpy(dtype=float)])
    y = sub[outcome].to_numpy(dtype=float)
    return X, y, len(data) - len(sub)


def logit_fit(data, xs: Sequence[str], outcome: str = "gvc_participant") -> FitResult:
    """Maximum-likelihood logit by Newton-Raphson.

    ``data`` is a DataFrame or an iterable of FirmRecord. An intercept
    ``const`` is always included. Standard errors come from the inverse
    observed information at the optimum.
    """
    X, y, dropped = _logit_design(data, xs, outcome)
    names = ["const", *xs]
    n, k = X.shape
    if n <= k:
        raise TooFewObservations(f"{n} observations for {k} parameters")
    if not np.any(y == 1) or not np.any(y == 0):
        raise NoVariation("outcome takes a single value")
    if not np.all((y == 0) | (y == 1)):
        raise ValueError("logit outcome must be 0/1")

    beta = np.zeros(k)
    ll = logit_loglik(beta, X, y)
    for it in range(1, LOGIT_MAX_ITER + 1):
        grad = logit_score(beta, X, y)
        H = logit_information(beta, X)
        try:
            step = np.linalg.solve(H, grad)
        except np.linalg.LinAlgError as exc:
            raise Separation("information matrix became singular; outcome is (quasi-)separated") from exc
        t = 1.0
        while True:
            candidate = beta + t * step
            ll_new = logit_loglik(candidate, X, y)
            if ll_new >= ll - 1e-12 * abs(ll) or t < 1e-8:
                break
            t /= 2.0
        change = np.abs(candidate - beta).max()
        beta, ll = candidate, ll_new
        if np.abs(beta).max() > SEPARATION_BOUND:
            raise Separation(
                f"coefficients diverge (max |coef| = {np.abs(beta).max():.1f}); "
                "a regressor (nearly) perfectly predicts the outcome"
            )
        if change < LOGIT_TOL:
            break
    else:
        raise NoConvergence(f"Newton-Raphson did not converge in {LOGIT_MAX_ITER} iterations")

    cov = np.linalg.inv(logit_information(beta, X))
    return FitResult(
        names=names,
        coef=beta,
        se=np.sqrt(np.clip(np.diag(cov), 0.0, None)),
        nobs=n,
        diagnostics={
            "iterations": it,
            "loglik": ll,
            "converged": True,
            "gradient_max": float(np.abs(logit_score(beta, X, y)).max()),
            "dropped_rows": dropped,
        },
        fitted=expit(X @ beta),
    )
