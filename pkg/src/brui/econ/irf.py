"""Cholesky-orthogonalized impulse responses and percentile bootstrap bands.

Response arrays are laid out ``(horizon, shock, response)``.

Bootstrap replications draw from PCG64 generators spawned from a single
``numpy.random.SeedSequence(seed)``: replication ``r`` always uses child
``r``, so serial and threaded runs produce identical draws.
"""

from __future__ import annotations

import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .var import UnstableVarWarning, VarError, VarModel, _as_array, fit_var


class NotPositiveDefiniteError(ValueError):
    pass


class BootstrapError(RuntimeError):
    pass


def cholesky_factor(sigma: np.ndarray, tol: float = 1e-12) -> np.ndarray:
    """Lower-triangular ``L`` with ``L @ L.T == sigma``.

    Raises :class:`NotPositiveDefiniteError` when a pivot falls to
    ``tol * max(diag(sigma))`` or below.
    """
    a = np.asarray(sigma, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"covariance must be square, got shape {a.shape}")
    scale = float(np.max(np.abs(np.diag(a)))) if a.size else 0.0
    if not np.allclose(a, a.T, rtol=1e-10, atol=1e-14 * max(scale, 1.0)):
        raise ValueError("covariance matrix is not symmetric")
    n = a.shape[0]
    L = np.zeros_like(a)
    floor = tol * scale
    for j in range(n):
        pivot = a[j, j] - np.dot(L[j, :j], L[j, :j])
        if not pivot > floor:
            raise NotPositiveDefiniteError(f"matrix is not positive definite (pivot {j} = {pivot:.3g})")
        L[j, j] = np.sqrt(pivot)
        for i in range(j + 1, n):
            L[i, j] = (a[i, j] - np.dot(L[i, :j], L[j, :j])) / L[j, j]
    return L


def ma_coefficients(coefs: np.ndarray, horizon: int) -> np.ndarray:
    """MA matrices ``Psi_0 = I``, ``Psi_h = sum_i A_i Psi_{h-i}`` for ``h <= horizon``."""
    p, k, _ = coefs.shape
    psi = np.zeros((horizon + 1, k, k))
    psi[0] = np.eye(k)
    for h in range(1, horizon + 1):
        for i in range(1, min(h, p) + 1):
            psi[h] += coefs[i - 1] @ psi[h - i]
    return psi


def orthogonal_ma(coefs: np.ndarray, chol: np.ndarray, horizon: int) -> np.ndarray:
    """``Psi_h @ L`` for each horizon, indexed ``[h, response, shock]``."""
    theta = ma_coefficients(coefs, horizon) @ chol
    theta[0] = chol
    return theta


def impulse_response(model: VarModel, horizon: int) -> np.ndarray:
    """Responses to one-standard-deviation orthogonal shocks, ``(h, shock, response)``."""
    if horizon < 0:
        raise ValueError(f"horizon must be >= 0, got {horizon}")
    L = cholesky_factor(model.sigma)
    return orthogonal_ma(model.coefs, L, horizon).transpose(0, 2, 1).copy()


@dataclass
class IrfResult:
    point: np.ndarray
    lower: np.ndarray
    upper: np.ndarray
    level: float
    reps: int
    discarded: int
    seed: int
    names: list[str] = field(default_factory=list)

    @property
    def horizons(self) -> np.ndarray:
        return np.arange(self.point.shape[0])

    def long_rows(self):
        """Yield ``(horizon, shock, response, point, lower, upper)`` tuples."""
        H, k, _ = self.point.shape
        for h in range(H):
            for j in range(k):
                for i in range(k):
                    yield (h, self.names[j], self.names[i],
                           self.point[h, j, i], self.lower[h, j, i], self.upper[h, j, i])


def _pseudo_series(model: VarModel, y: np.ndarray, resid: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    p = model.lag_order
    n = resid.shape[0]
    draws = resid[rng.integers(0, n, size=n)]
    out = np.empty_like(y)
    out[:p] = y[:p]
    lagged = [model.coefs[i] for i in range(p)]
    for t in range(p, y.shape[0]):
        val = model.intercept + draws[t - p]
        for i in range(p):
            val = val + lagged[i] @ out[t - 1 - i]
        out[t] = val
    return out


def _replicate(model, y, resid, horizon, seq):
    rng = np.random.Generator(np.random.PCG64(seq))
    star = _pseudo_series(model, y, resid, rng)
    try:
        refit = fit_var(star, model.lag_order, warn_unstable=False)
        return impulse_response(refit, horizon)
    except (VarError, NotPositiveDefiniteError, np.linalg.LinAlgError):
        return None


def bootstrap_irf(
    model: VarModel,
    data,
    horizon: int,
    reps: int = 999,
    level: float = 90.0,
    seed: int = 0,
    workers: int = 1,
    max_discard: float = 0.10,
) -> IrfResult:
    """Residual recursive-design percentile bootstrap for orthogonalized IRFs.

    Each replication resamples the centered residuals with replacement,
    rebuilds a pseudo-series from the estimated coefficients starting at the
    first ``p`` observed values, re-estimates the whole VAR (coefficients and
    covariance) and recomputes the responses. Bands are the
    ``(100 - level) / 2`` and ``(100 + level) / 2`` percentiles per cell,
    linearly interpolated between order statistics.

    Replications whose refit fails are dropped; more than ``max_discard`` of
    them dropped raises :class:`BootstrapError`.
    """
    if reps < 1:
        raise ValueError(f"reps must be >= 1, got {reps}")
    if not 0 < level < 100:
        raise ValueError(f"level must lie in (0, 100), got {level}")
    y, _ = _as_array(data)
    if y.shape[0] != model.nobs + model.lag_order:
        raise ValueError("data length does not match the fitted model")

    point = impulse_response(model, horizon)
    resid = model.residuals - model.residuals.mean(axis=0)
    children = np.random.SeedSequence(seed).spawn(reps)

    with warnings.catch_warnings():
        warnings.simplefilter("ignore", UnstableVarWarning)
        if workers > 1:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                results = list(pool.map(lambda s: _replicate(model, y, resid, horizon, s), children))
        else:
            results = [_replicate(model, y, resid, horizon, s) for s in children]

    kept = [r for r in results if r is not None]
    discarded = reps - len(kept)
    if not kept or discarded > max_discard * reps:
        raise BootstrapError(f"{discarded} of {reps} bootstrap replications failed to refit")
    stack = np.stack(kept)
    lo, hi = np.percentile(stack, [(100 - level) / 2, (100 + level) / 2], axis=0, method="linear")
    return IrfResult(point, lo, hi, float(level), reps, discarded, int(seed), list(model.names))
