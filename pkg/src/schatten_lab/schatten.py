"""Schatten norms, quasinorms (0<s<1), antinorms (s<0) and Ky Fan norms."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .linalg_core import svd_vals

POSITIVITY = 1e-12


@dataclass(frozen=True)
class Exponent:
    value: float

    def __post_init__(self):
        if self.value == 0 or not np.isfinite(self.value):
            raise DomainError(f"exponent must be finite and nonzero, got {self.value}")

    @property
    def kind(self) -> str:
        if self.value >= 1:
            return "norm"
        if self.value > 0:
            return "quasinorm"
        return "antinorm"

    @property
    def conjugate(self) -> float:
        return conjugate_exponent(self.value)

    def __float__(self):
        return float(self.value)


def _exp(s) -> float:
    return float(Exponent(float(s)).value)


def conjugate_exponent(s: float) -> float:
    """``s / (s - 1)``: the Holder conjugate for ``s > 1``, negative for ``0 < s < 1``."""
    s = float(s)
    if s == 1:
        raise DomainError("s = 1 has no finite conjugate exponent")
    return s / (s - 1)


def vector_s_power(x, s) -> float:
    """``sum |x_i|**s``."""
    s = _exp(s)
    x = np.abs(np.asarray(x)).astype(float).ravel()
    if s < 0 and np.any(x == 0):
        raise DomainError("zero entry with a negative exponent")
    return float(np.sum(x**s))


def vector_s(x, s) -> float:
    s = _exp(s)
    return vector_s_power(x, s) ** (1 / s)


def _singular_values(X, s: float) -> np.ndarray:
    sig = svd_vals(X)
    if s < 0 and sig[-1] <= POSITIVITY * max(1.0, sig[0]):
        raise DomainError(f"antinorm (s={s}) of a singular matrix: sigma_min = {sig[-1]:.3e}")
    return sig


def schatten_s_power(X, s) -> float:
    """``Tr |X|^s = sum sigma_i^s``; avoids the outer root."""
    s = _exp(s)
    return float(np.sum(_singular_values(X, s) ** s))


def schatten(X, s) -> float:
    s = _exp(s)
    return schatten_s_power(X, s) ** (1 / s)


def schatten_antinorm_or_zero(X, s) -> float:
    """Antinorm extended by continuity: 0 when ``X`` is numerically singular."""
    s = _exp(s)
    if s > 0:
        return schatten(X, s)
    sig = svd_vals(X)
    if sig[-1] <= POSITIVITY * max(1.0, sig[0]):
        return 0.0
    return float(np.sum(sig**s)) ** (1 / s)


def kyfan(X, k: int) -> float:
    """Sum of the ``k`` largest singular values."""
    sig = svd_vals(X)
    if not 1 <= k <= len(sig):
        raise ValueError(f"k must lie in [1, {len(sig)}], got {k}")
    return float(np.sum(sig[:k]))


def trace_norm(X) -> float:
    return float(np.sum(svd_vals(X)))
