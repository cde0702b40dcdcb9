"""Cholesky forecast-error variance decomposition."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .irf import cholesky_factor, orthogonal_ma
from .var import VarModel


class DegenerateVarianceError(ValueError):
    pass


@dataclass
class FevdTable:
    """Percent shares indexed ``[horizon - 1, response, shock]``; rows sum to 100."""

    shares: np.ndarray
    names: list[str] = field(default_factory=list)

    @property
    def horizons(self) -> np.ndarray:
        return np.arange(1, self.shares.shape[0] + 1)

    def for_response(self, name_or_index) -> np.ndarray:
        i = self.names.index(name_or_index) if isinstance(name_or_index, str) else name_or_index
        return self.shares[:, i, :]


def fevd(model: VarModel, horizon: int) -> FevdTable:
    if horizon < 1:
        raise ValueError(f"horizon must be >= 1, got {horizon}")
    theta = orthogonal_ma(model.coefs, cholesky_factor(model.sigma), horizon - 1)
    contrib = np.cumsum(theta**2, axis=0)
    total = contrib.sum(axis=2, keepdims=True)
    if np.any(total <= 0):
        h, i, _ = np.argwhere(total <= 0)[0]
        raise DegenerateVarianceError(f"variable {i} has zero forecast-error variance at horizon {h + 1}")
    # ratio first so a lone nonzero contribution gives exactly 100
    return FevdTable((contrib / total) * 100.0, list(model.names))
