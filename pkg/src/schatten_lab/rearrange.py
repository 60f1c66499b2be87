"""Singular-value rearrangement inequalities for ``s < 1``.

``V(a, b) = ||a + b||_s^s + ||a - b||_s^s`` on vectors and
``F = ||C+D||_s^s + ||C-D||_s^s`` on matrices.  The first theorem compares
``F`` with ``V(sigma_up(C), sigma_down(D))`` and the second with
``V(sigma_up(C), sigma_up(D))``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .linalg_core import (
    abs_matrix,
    as_hermitian,
    as_square,
    haar_unitary,
    is_hermitian,
    min_eig,
    random_hermitian,
    random_psd,
    svd_vals,
)
from .reports import GapReport, gap_report
from .schatten import schatten_s_power, vector_s_power

ADMISSIBLE_TOL = 1e-12
SINGULAR_TOL = 1e-10


def _psd_margin(X) -> float:
    return min_eig(as_hermitian(X, atol=1e-9))


def svr1_admissible(C, D, tol: float = ADMISSIBLE_TOL) -> bool:
    """``C >= |D| >= 0`` and ``sigma_min(C) >= sigma_max(D)``."""
    C, D = as_square(C), as_square(D)
    if not is_hermitian(C, atol=1e-9):
        return False
    scale = max(1.0, float(np.abs(C).max()))
    if _psd_margin(C - abs_matrix(D)) < -tol * scale:
        return False
    return bool(svd_vals(C)[-1] >= svd_vals(D)[0] - tol * scale)


def svr2_admissible(C, D, tol: float = ADMISSIBLE_TOL) -> bool:
    """``C >= D >= 0``."""
    C, D = as_square(C), as_square(D)
    if not (is_hermitian(C, atol=1e-9) and is_hermitian(D, atol=1e-9)):
        return False
    scale = max(1.0, float(np.abs(C).max()))
    return bool(_psd_margin(D) >= -tol * scale and _psd_margin(C - D) >= -tol * scale)


def _check_s(s):
    if not s < 1 or s == 0:
        raise DomainError("rearrangement inequalities need s < 1, s != 0")


def _sides(C, D, s, d_order: str):
    cu = svd_vals(C)[::-1]
    d = svd_vals(D)
    d = d if d_order == "down" else d[::-1]
    diff = cu - d
    if s < 0 and np.any(np.abs(diff) <= SINGULAR_TOL * max(1.0, cu[-1])):
        raise DomainError("sigma_up(C) - sigma(D) has a zero entry; antinorm undefined")
    F = schatten_s_power(C + D, s) + schatten_s_power(C - D, s)
    V = vector_s_power(cu + d, s) + vector_s_power(diff, s)
    return F, V


def svr1_gap(C, D, s: float, tol: float = 1e-9) -> GapReport:
    """``F - V(sigma_up(C), sigma_down(D))``: nonnegative for ``0<s<1``, nonpositive for ``s<0``."""
    _check_s(s)
    C, D = as_square(C), as_square(D)
    admissible = svr1_admissible(C, D)
    F, V = _sides(C, D, s, "down")
    return gap_report(F, V, expect="ge" if s > 0 else "le", tol=tol, asserted=admissible, s=s, theorem="svr1")


def svr2_gap(C, D, s: float, tol: float = 1e-9) -> GapReport:
    """``V(sigma_up(C), sigma_up(D)) - F``: nonnegative for ``0<s<1``, nonpositive for ``s<0``."""
    _check_s(s)
    C, D = as_square(C), as_square(D)
    admissible = svr2_admissible(C, D)
    F, V = _sides(C, D, s, "up")
    return gap_report(V, F, expect="ge" if s > 0 else "le", tol=tol, asserted=admissible, s=s, theorem="svr2")


# ---------------------------------------------------------------------------
# samplers


def svr1_pair(n: int, seed=None, eps: float = 0.1) -> tuple[np.ndarray, np.ndarray]:
    """Hermitian ``D`` and ``C = Q + (sigma_max(D) + eps) I`` with ``Q >= 0``."""
    rng = np.random.default_rng(seed)
    D = random_hermitian(n, rng)
    Q = random_psd(n, rng)
    return Q + (svd_vals(D)[0] + eps) * np.eye(n), D


def svr2_pair(n: int, seed=None, eps: float = 0.1) -> tuple[np.ndarray, np.ndarray]:
    """``D >= 0`` and ``C = D + Q + eps I`` with ``Q >= 0``."""
    rng = np.random.default_rng(seed)
    D = random_psd(n, rng)
    Q = random_psd(n, rng)
    return D + Q + eps * np.eye(n), D


# ---------------------------------------------------------------------------
# necessity probe


@dataclass(frozen=True)
class NecessityRecord:
    """One probe with ``D`` unitary and ``C > I``.

    Here ``sigma_up(D) = sigma_down(D)``, so both theorems compare ``F`` with
    the same vector side and exactly one of their conclusions can hold
    strictly.  ``svr1_violated`` / ``svr2_violated`` flag strict failures.
    """

    trial: int
    n: int
    s: float
    svr1: GapReport
    svr2: GapReport
    svr1_admissible: bool
    svr2_admissible: bool

    @property
    def svr1_violated(self) -> bool:
        return self.svr1.verdict.value == "violated"

    @property
    def svr2_violated(self) -> bool:
        return self.svr2.verdict.value == "violated"


def necessity_instance(C, D, s: float, trial: int = 0) -> NecessityRecord:
    r1 = svr1_gap(C, D, s)
    r2 = svr2_gap(C, D, s)
    return NecessityRecord(trial, C.shape[0], s, r1, r2, r1.asserted, r2.asserted)


def svr_necessity_probe(seed=0, trials: int = 100, s: float = 0.5, dims=(2, 3, 4)) -> list[NecessityRecord]:
    """Sample ``D`` Haar unitary and ``C = I + delta I + u P`` with ``P >= 0``."""
    _check_s(s)
    rng = np.random.default_rng(seed)
    out = []
    for i in range(trials):
        n = int(dims[i % len(dims)])
        D = haar_unitary(n, rng)
        C = (1 + rng.uniform(0.01, 1.0)) * np.eye(n) + rng.uniform(0.01, 1.0) * random_psd(n, rng)
        try:
            out.append(necessity_instance(C, D, s, i))
        except DomainError:
            continue
    return out
