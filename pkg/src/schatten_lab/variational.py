"""Variational representations and the Holder family of inequalities.

Norms written ``|||.|||`` are unitarily invariant and are selected by a short
string: ``"trace"``, ``"kyfan:k"`` or ``"schatten:t"`` (``t >= 1``).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError
from .linalg_core import (
    as_hermitian,
    as_square,
    eigvals_desc,
    geometric_mean0,
    ginibre,
    hermitize,
    is_psd,
    min_eig,
    polar,
    random_pd,
    svd_vals,
)
from .reports import GapReport, gap_report
from .schatten import (
    conjugate_exponent,
    schatten,
    schatten_antinorm_or_zero,
    trace_norm,
)

# ---------------------------------------------------------------------------
# unitarily invariant norms


@dataclass(frozen=True)
class NormSpec:
    kind: str = "trace"
    param: float | None = None

    def __post_init__(self):
        if self.kind not in ("trace", "kyfan", "schatten"):
            raise ValueError(f"unknown norm kind {self.kind!r}")
        if self.kind == "kyfan" and (self.param is None or int(self.param) != self.param or self.param < 1):
            raise ValueError("kyfan norm needs a positive integer k")
        if self.kind == "schatten" and (self.param is None or self.param < 1):
            raise ValueError("schatten norm here needs t >= 1")

    @classmethod
    def parse(cls, text) -> "NormSpec":
        if isinstance(text, NormSpec):
            return text
        kind, _, arg = str(text).partition(":")
        return cls(kind, float(arg) if arg else None)

    def gauge(self, values) -> float:
        """Symmetric gauge function applied to nonnegative ``values``."""
        v = np.sort(np.abs(np.asarray(values, dtype=float)))[::-1]
        if self.kind == "trace":
            return float(v.sum())
        if self.kind == "kyfan":
            k = int(self.param)
            if k > v.size:
                raise ValueError(f"k={k} exceeds dimension {v.size}")
            return float(v[:k].sum())
        return float(np.sum(v**self.param) ** (1 / self.param))

    def __str__(self):
        return self.kind if self.param is None else f"{self.kind}:{self.param:g}"


def abs_power_norm(X, gamma: float, norm="trace") -> float:
    """``||| |X|^gamma |||``; negative ``gamma`` needs ``X`` invertible."""
    sig = svd_vals(X)
    if gamma < 0 and sig[-1] <= 1e-12 * max(1.0, sig[0]):
        raise DomainError("negative power of a singular matrix")
    return NormSpec.parse(norm).gauge(sig**gamma)


def _random_invertible(n, rng, cond_cap: float = 1e3):
    while True:
        Z = ginibre(n, rng) + 0.5 * np.eye(n)
        sig = svd_vals(Z)
        if sig[0] / sig[-1] < cond_cap:
            return Z


# ---------------------------------------------------------------------------
# duality


def dual_norm_maximizer(A, p: float) -> np.ndarray:
    """``B = U|A|^{p-1} / || |A|^{p-1} ||_q`` from the polar decomposition ``A = U|A|``."""
    U, P = polar(A)
    w, V = np.linalg.eigh(P)
    M = (V * np.clip(w, 0, None) ** (p - 1)) @ V.conj().T
    B = U @ M
    q = conjugate_exponent(p)
    return B / schatten(B, q)


def dual_norm_value(A, p: float, trials: int = 200, seed=0, tol: float = 1e-9) -> GapReport:
    """``||A||_p`` against sampled ``|Tr[A B*]|`` over ``||B||_q = 1``.

    ``gap = ||A||_p - max(sampled, analytic)``; the context carries how far
    the analytic maximizer is from attaining the norm.
    """
    if p <= 1:
        raise DomainError("dual representation needs p > 1")
    A = as_square(A)
    q = conjugate_exponent(p)
    rng = np.random.default_rng(seed)
    n = A.shape[0]
    best = 0.0
    for _ in range(trials):
        B = ginibre(n, rng)
        B /= schatten(B, q)
        best = max(best, abs(np.trace(A @ B.conj().T)))
    norm = schatten(A, p)
    Bstar = dual_norm_maximizer(A, p)
    attained = float(np.real(np.trace(A @ Bstar.conj().T)))
    return gap_report(
        norm,
        max(best, attained),
        tol=tol,
        p=p,
        sampled_sup=float(best),
        attained=attained,
        attain_error=abs(attained - norm),
        witness_norm_q=schatten(Bstar, q),
    )


def dual_quasinorm_witness(A, s: float, trials: int = 100, seed=0, tol: float = 1e-9) -> tuple[np.ndarray, GapReport]:
    """Minimizer of ``||A B||_1`` over positive ``B`` with ``||B||_r = 1``, ``r = s/(s-1)``.

    The witness is ``B = |A|^{s-1} / ||A||_s^{s-1}``.  Random positive
    competitors are sampled; the report's ``lhs`` is the smallest value
    found among them and the witness, ``rhs`` is ``||A||_s``.
    """
    if not s < 1 or s == 0:
        raise DomainError("quasinorm duality needs s < 1, s != 0")
    A = as_square(A)
    sig = svd_vals(A)
    if sig[-1] <= 1e-12 * max(1.0, sig[0]):
        raise DomainError("duality witness needs |A| invertible")
    r = conjugate_exponent(s)
    _, P = polar(A)
    w, V = np.linalg.eigh(P)
    norm = schatten(A, s)
    B = hermitize((V * w ** (s - 1)) @ V.conj().T) / norm ** (s - 1)
    witness_value = trace_norm(A @ B)
    rng = np.random.default_rng(seed)
    n = A.shape[0]
    sampled = np.inf
    for _ in range(trials):
        Bp = random_pd(n, rng)
        Bp /= schatten(Bp, r)
        sampled = min(sampled, trace_norm(A @ Bp))
    report = gap_report(
        min(sampled, witness_value),
        norm,
        tol=tol,
        s=s,
        r=r,
        witness_value=witness_value,
        sampled_inf=float(sampled),
        attain_error=abs(witness_value - norm),
        witness_norm_r=schatten(B, r),
    )
    return B, report


# ---------------------------------------------------------------------------
# reverse Holder and Minkowski


def reverse_holder_gap(A, B, s: float, tol: float = 1e-9) -> GapReport:
    """``||AB||_1 - ||A||_s ||B||_r`` with ``r = s/(s-1)``; the negative-exponent factor is 0 when singular."""
    if not s < 1 or s == 0:
        raise DomainError("reverse Holder needs s < 1, s != 0")
    r = conjugate_exponent(s)
    lhs = trace_norm(as_square(A) @ as_square(B))
    rhs = schatten_antinorm_or_zero(A, s) * schatten_antinorm_or_zero(B, r)
    return gap_report(lhs, rhs, tol=tol, s=s, r=r)


def _check_triple(r, p, q, tol=1e-12):
    if not abs(1 / r - (1 / p + 1 / q)) <= tol * max(1.0, abs(1 / r)):
        raise DomainError(f"inconsistent exponents: 1/{r} != 1/{p} + 1/{q}")


def general_reverse_holder_gap(A, B, r: float, p: float, q: float, norm="trace", tol: float = 1e-9) -> GapReport:
    """``||| |AB|^r |||^{1/r} - ||| |A|^p |||^{1/p} ||| |B|^q |||^{1/q}`` with ``1/r = 1/p + 1/q``, ``r, p > 0 > q``."""
    if not (r > 0 and p > 0 and q < 0):
        raise DomainError("need r > 0, p > 0 and q < 0")
    _check_triple(r, p, q)
    spec = NormSpec.parse(norm)
    A = as_square(A)
    B = as_square(B)
    lhs = abs_power_norm(A @ B, r, spec) ** (1 / r)
    rhs = abs_power_norm(A, p, spec) ** (1 / p) * abs_power_norm(B, q, spec) ** (1 / q)
    return gap_report(lhs, rhs, tol=tol, r=r, p=p, q=q, norm=str(spec))


def _require_psd(X, strict: bool, what: str):
    X = as_hermitian(X)
    if strict:
        if min_eig(X) <= 0:
            raise DomainError(f"{what} must be positive definite")
    elif not is_psd(X):
        raise DomainError(f"{what} must be positive semidefinite")
    return X


def reverse_minkowski_gap(A, B, s: float, tol: float = 1e-9) -> GapReport:
    """``||A+B||_s - ||A||_s - ||B||_s`` for positive ``A, B``."""
    if not s < 1 or s == 0:
        raise DomainError("reverse Minkowski needs s < 1, s != 0")
    A = _require_psd(A, s < 0, "A")
    B = _require_psd(B, s < 0, "B")
    a, b = schatten(A, s), schatten(B, s)
    return gap_report(schatten(A + B, s), a + b, tol=tol, s=s, norm_a=a, norm_b=b)


@dataclass(frozen=True)
class DualityChain:
    """Numerical trace of the duality proof of reverse Minkowski.

    ``||A+B||_s = Tr[(A+B) W] = Tr[A W] + Tr[B W] >= ||A||_s + ||B||_s`` with
    ``W`` the witness of ``A+B``.
    """

    norm_sum: float
    trace_sum: float
    trace_a: float
    trace_b: float
    norm_a: float
    norm_b: float
    reports: list = field(default_factory=list)

    @property
    def representation_error(self) -> float:
        return abs(self.norm_sum - self.trace_sum)


def reverse_minkowski_via_duality(A, B, s: float, tol: float = 1e-9) -> DualityChain:
    A = _require_psd(A, True, "A")
    B = _require_psd(B, True, "B")
    W, _ = dual_quasinorm_witness(A + B, s, trials=0)
    ta = float(np.real(np.trace(A @ W)))
    tb = float(np.real(np.trace(B @ W)))
    na, nb = schatten(A, s), schatten(B, s)
    norm_sum = schatten(A + B, s)
    reports = [
        gap_report(ta, na, tol=tol, step="Tr[AW] >= ||A||_s"),
        gap_report(tb, nb, tol=tol, step="Tr[BW] >= ||B||_s"),
        gap_report(ta + tb, na + nb, tol=tol, step="sum"),
    ]
    return DualityChain(norm_sum, ta + tb, ta, tb, na, nb, reports)


# ---------------------------------------------------------------------------
# factorization propositions


def _canonical_split(A, p: float):
    """``B = U|A|^{1/p}``, ``C = |A|^{1 - 1/p}`` so that ``BC = A``."""
    U, P = polar(A)
    w, V = np.linalg.eigh(P)
    w = np.clip(w, 0, None)
    Bm = U @ ((V * w ** (1 / p)) @ V.conj().T)
    with np.errstate(divide="ignore"):
        Cm = (V * w ** (1 - 1 / p)) @ V.conj().T
    return Bm, Cm


@dataclass(frozen=True)
class FactorizationOutcome:
    """Sampled extremum of the two variational forms against ``||| |A|^alpha |||``."""

    target: float
    canonical_product: float
    canonical_mean: float
    sampled_product: float
    sampled_mean: float
    report: GapReport

    @property
    def canonical_error(self) -> float:
        return max(abs(self.canonical_product - self.target), abs(self.canonical_mean - self.target))


def prop_factorization_check(A, alpha: float, p: float, norm="trace", trials: int = 100, seed=0, tol: float = 1e-9) -> FactorizationOutcome:
    """Minimum over ``A = BC`` of ``||| |B|^{ap} |||^{1/p} ||| |C|^{aq} |||^{1/q}`` and of the mean form."""
    if alpha <= 0 or p <= 1:
        raise DomainError("need alpha > 0 and p > 1")
    q = conjugate_exponent(p)
    spec = NormSpec.parse(norm)
    A = as_square(A)

    def forms(Bm, Cm):
        b = abs_power_norm(Bm, alpha * p, spec)
        c = abs_power_norm(Cm, alpha * q, spec)
        return b ** (1 / p) * c ** (1 / q), b / p + c / q

    target = abs_power_norm(A, alpha, spec)
    B0, C0 = _canonical_split(A, p)
    cp, cm = forms(B0, C0)
    rng = np.random.default_rng(seed)
    sp = sm = np.inf
    for _ in range(trials):
        Z = _random_invertible(A.shape[0], rng)
        prod, mean = forms(B0 @ Z, np.linalg.solve(Z, C0))
        sp, sm = min(sp, prod), min(sm, mean)
    worst = min(sp, sm, cp, cm)
    report = gap_report(worst, target, tol=tol, alpha=alpha, p=p, norm=str(spec))
    return FactorizationOutcome(target, cp, cm, float(sp), float(sm), report)


def prop3_factorization_check(A, alpha: float, p: float, norm="trace", trials: int = 100, seed=0, tol: float = 1e-9) -> FactorizationOutcome:
    """Maximum over ``A = BC`` of ``||| |B|^{ap} |||^{1/p} ||| |C|^{-ar} |||^{-1/r}`` and of ``(1/p)||| |B|^{ap} ||| - (1/r)||| |C|^{-ar} |||``."""
    if alpha <= 0 or not 0 < p < 1:
        raise DomainError("need alpha > 0 and 0 < p < 1")
    A = as_square(A)
    sig = svd_vals(A)
    if sig[-1] <= 1e-12 * max(1.0, sig[0]):
        raise DomainError("A must be invertible")
    r = p / (1 - p)
    spec = NormSpec.parse(norm)

    def forms(Bm, Cm):
        b = abs_power_norm(Bm, alpha * p, spec)
        c = abs_power_norm(Cm, -alpha * r, spec)
        return b ** (1 / p) * c ** (-1 / r), b / p - c / r

    target = abs_power_norm(A, alpha, spec)
    # B = U|A|^{1/p}, C = |A|^{-1/r}
    B0, C0 = _canonical_split(A, p)
    cp, cm = forms(B0, C0)
    rng = np.random.default_rng(seed)
    sp = sm = -np.inf
    for _ in range(trials):
        Z = _random_invertible(A.shape[0], rng)
        prod, mean = forms(B0 @ Z, np.linalg.solve(Z, C0))
        sp, sm = max(sp, prod), max(sm, mean)
    worst = max(sp, sm, cp, cm)
    report = gap_report(worst, target, expect="le", tol=tol, alpha=alpha, p=p, r=r, norm=str(spec))
    return FactorizationOutcome(target, cp, cm, float(sp), float(sm), report)


def prop2_infimum_check(X, Y, alpha: float, p: float, norm="trace", trials: int = 100, seed=0, tol: float = 1e-9) -> FactorizationOutcome:
    """Infimum over invertible ``Z`` of the Holder bounds for ``XZ`` and ``Z^{-1}Y``.

    The sample always includes ``Z = I``.  When ``X`` and ``Y`` are
    invertible the optimal ``Z = X^{-1} U|XY|^{1/p}`` is included as the
    canonical entry.
    """
    if alpha <= 0 or p <= 1:
        raise DomainError("need alpha > 0 and p > 1")
    q = conjugate_exponent(p)
    spec = NormSpec.parse(norm)
    X, Y = as_square(X), as_square(Y)
    n = X.shape[0]

    def forms(Z):
        b = abs_power_norm(X @ Z, alpha * p, spec)
        c = abs_power_norm(np.linalg.solve(Z, Y), alpha * q, spec)
        return b ** (1 / p) * c ** (1 / q), b / p + c / q

    target = abs_power_norm(X @ Y, alpha, spec)
    invertible = min(svd_vals(X)[-1], svd_vals(Y)[-1]) > 1e-12
    if invertible:
        B0, _ = _canonical_split(X @ Y, p)
        cp, cm = forms(np.linalg.solve(X, B0))
    else:
        cp, cm = forms(np.eye(n))
    rng = np.random.default_rng(seed)
    sp, sm = forms(np.eye(n))
    for _ in range(trials):
        prod, mean = forms(_random_invertible(n, rng))
        sp, sm = min(sp, prod), min(sm, mean)
    worst = min(sp, sm, cp, cm)
    report = gap_report(worst, target, tol=tol, alpha=alpha, p=p, norm=str(spec), invertible=bool(invertible))
    return FactorizationOutcome(target, cp, cm, float(sp), float(sm), report)


# ---------------------------------------------------------------------------
# geometric mean corollary


def geomean_kyfan_check(A, B, k: int, tol: float = 1e-9) -> GapReport:
    """``(1/k) sum_{j<=k} lambda_j(A b0 B) >= (prod top-k lambda(A))^{1/2k} (prod bottom-k lambda(B))^{1/2k}``."""
    A = _require_psd(A, True, "A")
    B = _require_psd(B, True, "B")
    n = A.shape[0]
    if not 1 <= k <= n:
        raise ValueError(f"k must lie in [1, {n}], got {k}")
    G = geometric_mean0(A, B)
    lhs = float(np.mean(eigvals_desc(G)[:k]))
    la, lb = eigvals_desc(A), eigvals_desc(B)
    log_rhs = (np.sum(np.log(la[:k])) + np.sum(np.log(lb[::-1][:k]))) / (2 * k)
    return gap_report(lhs, float(np.exp(log_rhs)), tol=tol, k=k)
