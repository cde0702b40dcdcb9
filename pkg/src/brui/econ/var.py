"""Least-squares VAR(p) estimation and lag-order selection."""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from .transforms import MacroPanel


class VarError(ValueError):
    pass


class SingularRegressorError(VarError):
    pass


class UnstableVarWarning(RuntimeWarning):
    pass


@dataclass
class VarModel:
    """Estimated VAR(p) with intercept.

    ``coefs[i]`` is the k x k matrix on lag ``i + 1``. ``sigma`` is the
    residual cross-product divided by the number of usable observations
    ``T - p`` (no degrees-of-freedom correction for estimated parameters).
    """

    lag_order: int
    intercept: np.ndarray
    coefs: np.ndarray
    sigma: np.ndarray
    residuals: np.ndarray
    nobs: int
    names: list[str] = field(default_factory=list)

    @property
    def k(self) -> int:
        return self.intercept.shape[0]

    def companion(self) -> np.ndarray:
        k, p = self.k, self.lag_order
        comp = np.zeros((k * p, k * p))
        comp[:k] = np.hstack(list(self.coefs))
        comp[k:, :-k] = np.eye(k * (p - 1))
        return comp

    def spectral_radius(self) -> float:
        return float(np.max(np.abs(np.linalg.eigvals(self.companion()))))

    def is_stable(self) -> bool:
        return self.spectral_radius() < 1.0


def _as_array(data) -> tuple[np.ndarray, list[str]]:
    if isinstance(data, MacroPanel):
        return data.values, list(data.names)
    arr = np.asarray(data, dtype=float)
    if arr.ndim == 1:
        arr = arr[:, None]
    return arr, [f"y{i + 1}" for i in range(arr.shape[1])]


def lagged_design(y: np.ndarray, p: int) -> tuple[np.ndarray, np.ndarray]:
    """Regressand rows ``y[p:]`` and regressors ``[1, y[t-1], ..., y[t-p]]``."""
    T = y.shape[0]
    X = np.hstack([np.ones((T - p, 1))] + [y[p - i : T - i] for i in range(1, p + 1)])
    return y[p:], X


def fit_var(data, p: int, *, warn_unstable: bool = True) -> VarModel:
    """Estimate a VAR(p) with intercept by equation-wise least squares.

    *data* is a :class:`MacroPanel` or a ``(T, k)`` array. Raises
    :class:`VarError` when ``T <= k * p + 1`` and
    :class:`SingularRegressorError` when the regressor matrix is rank
    deficient (e.g. a constant series).
    """
    y, names = _as_array(data)
    T, k = y.shape
    if p < 1:
        raise VarError(f"lag order must be >= 1, got {p}")
    if T <= k * p + 1:
        raise VarError(f"sample of {T} observations too short for a {k}-variable VAR({p})")
    if not np.all(np.isfinite(y)):
        raise VarError("data contain non-finite values")

    Y, X = lagged_design(y, p)
    B, _, rank, _ = np.linalg.lstsq(X, Y, rcond=None)
    if rank < X.shape[1]:
        raise SingularRegressorError(
            f"regressor matrix has rank {rank} < {X.shape[1]} (constant or collinear series?)"
        )
    resid = Y - X @ B
    n = T - p
    sigma = resid.T @ resid / n
    sigma = (sigma + sigma.T) / 2
    coefs = B[1:].T.reshape(k, p, k).transpose(1, 0, 2)
    model = VarModel(p, B[0].copy(), np.ascontiguousarray(coefs), sigma, resid, n, names)
    if warn_unstable and not model.is_stable():
        warnings.warn(
            f"estimated VAR({p}) is not stable (spectral radius {model.spectral_radius():.4f})",
            UnstableVarWarning,
            stacklevel=2,
        )
    return model


def information_criteria(model: VarModel) -> dict[str, float]:
    """AIC, BIC and HQ from the ML covariance (divisor ``nobs``)."""
    n, k = model.nobs, model.k
    sign, logdet = np.linalg.slogdet(model.sigma)
    if sign <= 0:
        logdet = -np.inf
    params = k * (k * model.lag_order + 1)
    return {
        "aic": logdet + 2.0 * params / n,
        "bic": logdet + np.log(n) * params / n,
        "hq": logdet + 2.0 * np.log(np.log(n)) * params / n,
    }


def max_feasible_lag(T: int, k: int) -> int:
    """Largest p for which every VAR(1..p) on the common sample has a full-rank residual covariance."""
    p = 0
    while T - (p + 1) - (k * (p + 1) + 1) >= k:
        p += 1
    return p


def select_lag(data, p_max: int, criterion: str = "aic") -> int:
    """Pick the lag order in ``1..p_max`` minimizing an information criterion.

    All candidates are fitted on the same sample, dropping the first
    ``p_max`` observations' worth of presample for each. Ties go to the
    smaller order.
    """
    criterion = criterion.lower()
    if criterion not in ("aic", "bic", "hq"):
        raise ValueError(f"unknown information criterion {criterion!r}")
    y, _ = _as_array(data)
    T, k = y.shape
    if p_max < 1:
        raise VarError(f"p_max must be >= 1, got {p_max}")
    if p_max > max_feasible_lag(T, k):
        raise VarError(
            f"p_max={p_max} infeasible for {T} observations of {k} variables "
            f"(largest feasible lag is {max_feasible_lag(T, k)})"
        )
    if p_max == 1:
        return 1
    best_p, best = 1, np.inf
    for p in range(1, p_max + 1):
        sub = y[p_max - p :]
        value = information_criteria(fit_var(sub, p, warn_unstable=False))[criterion]
        if value < best:
            best_p, best = p, value
    return best_p


def simulate_var(
    coefs: np.ndarray,
    T: int,
    rng: np.random.Generator,
    *,
    intercept: np.ndarray | None = None,
    chol: np.ndarray | None = None,
    burn: int = 100,
) -> np.ndarray:
    """Draw ``T`` observations from a Gaussian VAR, discarding ``burn`` start-up draws."""
    coefs = np.asarray(coefs, dtype=float)
    if coefs.ndim == 2:
        coefs = coefs[None]
    p, k, _ = coefs.shape
    c = np.zeros(k) if intercept is None else np.asarray(intercept, dtype=float)
    L = np.eye(k) if chol is None else np.asarray(chol, dtype=float)
    shocks = rng.standard_normal((T + burn, k)) @ L.T
    y = np.zeros((T + burn + p, k))
    for t in range(p, T + burn + p):
        y[t] = c + shocks[t - p]
        for i in range(p):
            y[t] += coefs[i] @ y[t - 1 - i]
    return y[p + burn :]
