"""2x2 constructions, the rotation sweep of the reverse Hanner gap, and counterexample search."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import bisect

from .errors import DomainError, InadmissibleTargetError
from .hanner import hanner_side
from .parallel import pmap, trial_rng

FIGURE1 = ((-3.0, -5.5), (3.4, -5.6))
SINGULAR_TOL = 1e-12


def _pair(v) -> tuple[float, float]:
    v = tuple(float(x) for x in v)
    if len(v) != 2:
        raise DomainError(f"expected an eigenvalue pair, got {v}")
    return max(v), min(v)


def rotation(t: float) -> np.ndarray:
    c, s = math.cos(t), math.sin(t)
    return np.array([[c, -s], [s, c]])


# ---------------------------------------------------------------------------
# constructive lemma


def quartic_product(lamA, lamB, target: float) -> float:
    """``(a1+b1-tau)(a2+b2-tau)(a1+b2-tau)(a2+b1-tau)``; the target is realisable iff this is <= 0."""
    (a1, a2), (b1, b2) = _pair(lamA), _pair(lamB)
    tau = float(target)
    return (a1 + b1 - tau) * (a2 + b2 - tau) * (a1 + b2 - tau) * (a2 + b1 - tau)


@dataclass(frozen=True)
class TwoByTwoSpec:
    """Eigenvalues of ``A`` and ``B`` and a chosen eigenvalue ``target`` of ``A+B``.

    ``which`` is 1 or 2 and names the position of ``target`` in the
    descending spectrum of ``A+B``.  Pairs are stored in descending order.
    """

    lamA: tuple[float, float]
    lamB: tuple[float, float]
    target: float
    which: int = 1

    def __post_init__(self):
        object.__setattr__(self, "lamA", _pair(self.lamA))
        object.__setattr__(self, "lamB", _pair(self.lamB))
        object.__setattr__(self, "target", float(self.target))
        if self.which not in (1, 2):
            raise DomainError("which must be 1 or 2")
        if self.lamA[0] == self.lamA[1] or self.lamB[0] == self.lamB[1]:
            raise DomainError("the lemma needs distinct eigenvalues for A and for B")

    @property
    def scale(self) -> float:
        return max(1.0, *map(abs, self.lamA + self.lamB), abs(self.target))

    @property
    def admissible(self) -> bool:
        """Range and cross-sum conditions on the target."""
        (a1, a2), (b1, b2) = self.lamA, self.lamB
        tau, eps = self.target, 1e-12 * self.scale
        if not a2 + b2 - eps <= tau <= a1 + b1 + eps:
            return False
        c1, c2 = a1 + b2, a2 + b1
        return (tau >= max(c1, c2) - eps) or (tau <= min(c1, c2) + eps)


@dataclass(frozen=True)
class Construction:
    A: np.ndarray
    B: np.ndarray
    x1: float
    x2: float
    x3: float
    eigenvalues_B: np.ndarray
    eigenvalues_sum: np.ndarray
    residual_B: float
    residual_target: float

    def to_dict(self) -> dict:
        return {
            "B": [[self.x1, self.x2], [self.x2, self.x3]],
            "x1": self.x1,
            "x2": self.x2,
            "x3": self.x3,
            "eigenvalues_B": [float(v) for v in self.eigenvalues_B],
            "eigenvalues_A_plus_B": [float(v) for v in self.eigenvalues_sum],
            "residual_B": self.residual_B,
            "residual_target": self.residual_target,
        }


def construct_2x2(spec: TwoByTwoSpec, tol: float = 1e-9) -> Construction:
    """``B = [[x1, x2], [x2, x3]]`` with eigenvalues ``lamB`` and ``target`` an eigenvalue of ``diag(lamA) + B``.

    ``x2`` is taken real and nonnegative.  The diagonal entries are
    ``x1 = (a1(a2+T) + b1 b2 + tau(tau-S)) / Delta`` and
    ``x3 = -(a2(a1+T) + b1 b2 + tau(tau-S)) / Delta`` with ``T = b1+b2``,
    ``S = a1+a2+T`` and ``Delta = a1-a2``; ``x2^2 = -Pi / Delta^2`` with
    ``Pi`` the quartic product.
    """
    (a1, a2), (b1, b2) = spec.lamA, spec.lamB
    tau = spec.target
    T = b1 + b2
    S = a1 + a2 + T
    delta = a1 - a2
    Pi = quartic_product(spec.lamA, spec.lamB, tau)
    if Pi > 1e-12 * spec.scale**4:
        raise InadmissibleTargetError(f"target {tau} is not realisable (quartic product {Pi:.6g} > 0)")
    x1 = (a1 * (a2 + T) + b1 * b2 + tau * (tau - S)) / delta
    x3 = -(a2 * (a1 + T) + b1 * b2 + tau * (tau - S)) / delta
    x2 = math.sqrt(max(0.0, -Pi)) / abs(delta)
    A = np.diag([a1, a2])
    B = np.array([[x1, x2], [x2, x3]])
    evB = np.linalg.eigvalsh(B)[::-1]
    evS = np.linalg.eigvalsh(A + B)[::-1]
    res_B = float(np.max(np.abs(evB - np.array([b1, b2]))))
    res_t = float(abs(evS[spec.which - 1] - tau))
    if res_t > tol * spec.scale:
        other = 3 - spec.which
        if abs(evS[other - 1] - tau) <= tol * spec.scale:
            raise InadmissibleTargetError(f"target {tau} is eigenvalue {other} of A+B, not {spec.which}")
        raise InadmissibleTargetError(f"construction missed the target by {res_t:.3e}")
    return Construction(A, B, x1, x2, x3, evB, evS, res_B, res_t)


def random_spec(rng, lo: float = -8.0, hi: float = 8.0, min_gap: float = 0.05) -> TwoByTwoSpec:
    """Admissible spec with eigenvalues uniform on ``[lo, hi]`` and spectral gaps >= ``min_gap``."""
    while True:
        a = np.sort(rng.uniform(lo, hi, 2))[::-1]
        b = np.sort(rng.uniform(lo, hi, 2))[::-1]
        if a[0] - a[1] < min_gap or b[0] - b[1] < min_gap:
            continue
        c_lo, c_hi = sorted((a[0] + b[1], a[1] + b[0]))
        if rng.uniform() < 0.5:
            tau = rng.uniform(c_hi, a[0] + b[0])
        else:
            tau = rng.uniform(a[1] + b[1], c_lo)
        which = 1 if tau >= (a.sum() + b.sum()) / 2 else 2
        return TwoByTwoSpec(tuple(a), tuple(b), float(tau), which)


# ---------------------------------------------------------------------------
# rotation sweep


@dataclass(frozen=True)
class SweepRecord:
    t: float
    gap: float
    s: float
    lamA: tuple[float, float]
    lamB: tuple[float, float]
    singular: bool = False

    def to_dict(self) -> dict:
        return {
            "t": self.t,
            "s": self.s,
            "gap": None if self.singular else self.gap,
            "lamA": list(self.lamA),
            "lamB": list(self.lamB),
            "singular": self.singular,
        }


def _vec_norm(v, s):
    v = np.abs(np.asarray(v, dtype=float))
    if s < 0 and np.any(v == 0):
        return 0.0
    return float(np.sum(v**s)) ** (1 / s)


def sweep_gap_array(lamA, lamB, s: float, t) -> tuple[np.ndarray, np.ndarray]:
    """Gap ``F(t) - H`` on an array of angles and a singularity mask.

    ``F(t) = ||A + B_t||_s^s + ||A - B_t||_s^s`` with ``A = diag(lamA)`` and
    ``B_t = R(t) diag(lamB) R(t)^T``; ``H`` uses the vector norms of the
    eigenvalue pairs.  A positive gap contradicts the reverse Hanner
    direction for ``0 < s < 1``, a negative one for ``s < 0``.
    """
    if s == 0 or s >= 1:
        raise DomainError("sweep needs s < 1, s != 0")
    lamA, lamB = _pair(lamA), _pair(lamB)
    t = np.atleast_1d(np.asarray(t, dtype=float))
    c, sn = np.cos(t), np.sin(t)
    b1, b2 = lamB
    # R diag(b1, b2) R^T entries
    B11 = b1 * c * c + b2 * sn * sn
    B22 = b1 * sn * sn + b2 * c * c
    B12 = (b1 - b2) * c * sn
    H = hanner_side(_vec_norm(lamA, s), _vec_norm(lamB, s), s)
    F = np.zeros_like(t)
    singular = np.zeros(t.shape, dtype=bool)
    scale = max(1.0, *map(abs, lamA + lamB))
    for sign in (1.0, -1.0):
        p = lamA[0] + sign * B11
        q = lamA[1] + sign * B22
        r = sign * B12
        mean = (p + q) / 2
        rad = np.hypot((p - q) / 2, r)
        ev = np.abs(np.stack([mean + rad, mean - rad]))
        if s < 0:
            bad = np.min(ev, axis=0) <= SINGULAR_TOL * scale
            singular |= bad
            ev = np.where(ev == 0, 1.0, ev)
        F += np.sum(ev**s, axis=0)
    gap = F - H
    gap[singular] = np.nan
    return gap, singular


def sweep_gap(lamA, lamB, s: float, t: float) -> float:
    return float(sweep_gap_array(lamA, lamB, s, [t])[0][0])


def rotation_sweep(lamA, lamB, s: float, grid: int = 721) -> list[SweepRecord]:
    """Uniform grid of ``grid`` angles on ``[0, pi]``."""
    if grid < 2:
        raise ValueError("grid must be >= 2")
    lamA, lamB = _pair(lamA), _pair(lamB)
    t = np.linspace(0.0, math.pi, int(grid))
    gap, singular = sweep_gap_array(lamA, lamB, s, t)
    return [SweepRecord(float(ti), float(g), float(s), lamA, lamB, bool(m)) for ti, g, m in zip(t, gap, singular)]


def sign_changes(records: list[SweepRecord], xtol: float = 1e-6) -> list[float]:
    """Roots of the gap between consecutive finite grid points of opposite sign, refined by bisection."""
    roots = []
    for r0, r1 in zip(records, records[1:]):
        if r0.singular or r1.singular:
            continue
        if r0.gap == 0.0:
            roots.append(r0.t)
            continue
        if r0.gap * r1.gap < 0:
            f = lambda t: sweep_gap(r0.lamA, r0.lamB, r0.s, t)  # noqa: E731
            roots.append(float(bisect(f, r0.t, r1.t, xtol=xtol)))
    return roots


def commuting_gap(lamA, lamB, s: float, t: float = 0.0) -> float:
    """Gap of the commuting configurations ``t = 0`` (aligned) or ``t = pi/2`` (swapped)."""
    lamA, lamB = np.array(_pair(lamA)), np.array(_pair(lamB))
    b = lamB if abs(math.cos(t)) >= abs(math.sin(t)) else lamB[::-1]
    F = float(np.sum(np.abs(lamA + b) ** s) + np.sum(np.abs(lamA - b) ** s))
    return F - hanner_side(_vec_norm(lamA, s), _vec_norm(lamB, s), s)


# ---------------------------------------------------------------------------
# counterexample search


def is_violation(gap: float, s: float, tol: float = 1e-9, scale: float = 1.0) -> bool:
    if not np.isfinite(gap):
        return False
    return gap > tol * scale if s > 0 else gap < -tol * scale


@dataclass(frozen=True)
class Counterexample:
    trial: int
    lamA: tuple[float, float]
    lamB: tuple[float, float]
    s: float
    t: float
    gap: float
    violating_points: int
    psd_pair: bool = False

    def recompute(self) -> float:
        return sweep_gap(self.lamA, self.lamB, self.s, self.t)

    def to_dict(self) -> dict:
        return {
            "trial": self.trial,
            "lamA": list(self.lamA),
            "lamB": list(self.lamB),
            "s": self.s,
            "t": self.t,
            "gap": self.gap,
            "violating_points": self.violating_points,
            "psd_pair": self.psd_pair,
        }


def _psd_pair_mask(lamA, lamB, t) -> np.ndarray:
    """``A +- B_t >= 0`` on each angle."""
    c, sn = np.cos(t), np.sin(t)
    b1, b2 = lamB
    B11 = b1 * c * c + b2 * sn * sn
    B22 = b1 * sn * sn + b2 * c * c
    B12 = (b1 - b2) * c * sn
    ok = np.ones(t.shape, dtype=bool)
    for sign in (1.0, -1.0):
        p, q, r = lamA[0] + sign * B11, lamA[1] + sign * B22, sign * B12
        ok &= (p + q) / 2 - np.hypot((p - q) / 2, r) >= -1e-12
    return ok


def _search_one(lamA, lamB, s_list, grid, psd_only, trial, tol):
    t = np.linspace(0.0, math.pi, grid)
    mask = _psd_pair_mask(lamA, lamB, t) if psd_only else np.ones(t.shape, dtype=bool)
    scale = max(1.0, *map(abs, lamA + lamB))
    found = []
    for s in s_list:
        gap, _ = sweep_gap_array(lamA, lamB, s, t)
        bad = np.array([is_violation(g, s, tol, scale) for g in gap]) & mask
        if not bad.any():
            continue
        signed = np.where(bad, gap if s > 0 else -gap, -np.inf)
        i = int(np.argmax(signed))
        found.append(Counterexample(trial, lamA, lamB, float(s), float(t[i]), float(gap[i]), int(bad.sum()), psd_only))
    return found


def counterexample_search(
    s_list=(0.25, 0.5, 0.75, -0.5),
    dim: int = 2,
    trials: int = 200,
    seed: int = 0,
    grid: int = 181,
    psd_only: bool = False,
    include_figure1: bool = True,
    threads: int = 0,
    tol: float = 1e-9,
) -> list[Counterexample]:
    """Random eigenvalue pairs on ``[-8, 8]`` swept over the rotation angle.

    Each (trial, s) with at least one violating grid angle contributes one
    record at its worst angle.  Trial 0 is the Figure 1 configuration when
    ``include_figure1`` is set.  With ``psd_only`` only angles where
    ``A +- B_t >= 0`` are eligible.
    """
    if dim != 2:
        raise DomainError("the constructive search is 2x2 only")
    s_list = [float(s) for s in s_list]
    if not s_list or trials < 1:
        return []

    def job(i):
        if include_figure1 and i == 0:
            lamA, lamB = _pair(FIGURE1[0]), _pair(FIGURE1[1])
        else:
            spec = random_spec(trial_rng(seed, i))
            lamA, lamB = spec.lamA, spec.lamB
        return _search_one(lamA, lamB, s_list, grid, psd_only, i, tol)

    out = []
    for chunk in pmap(job, range(trials), threads):
        out.extend(chunk)
    return out
