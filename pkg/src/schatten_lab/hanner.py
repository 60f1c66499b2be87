"""Hanner and reverse Hanner gaps, Taylor-coefficient machinery and the equality characterization.

Throughout, ``F`` denotes ``||C+D||_s^s + ||C-D||_s^s`` and ``H`` denotes
``(||C||_s + ||D||_s)^s + | ||C||_s - ||D||_s |^s``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError
from .linalg_core import (
    abs_matrix,
    as_hermitian,
    as_square,
    calibrate_constant,
    commutator_norm,
    eigh,
    is_hermitian,
    is_psd,
    make_scheme,
    matrix_power_spectral,
    min_eig,
    power_for_endpoints,
)
from .reports import GapReport, gap_report
from .schatten import (
    POSITIVITY,
    schatten,
    schatten_antinorm_or_zero,
    schatten_s_power,
    vector_s_power,
)

EQUALITY_RTOL = 1e-8


def pochhammer_falling(s: float, k: int) -> float:
    """``(s)_k = s (s-1) ... (s-k+1)`` with ``(s)_0 = 1``."""
    if k < 0 or int(k) != k:
        raise ValueError("k must be a nonnegative integer")
    out = 1.0
    for j in range(int(k)):
        out *= s - j
    return out


def _abs_pow(v: float, s: float) -> float:
    v = abs(v)
    if v == 0:
        return math.inf if s < 0 else 0.0
    return v**s


def hanner_side(a: float, b: float, s: float) -> float:
    """``(a+b)^s + |a-b|^s``."""
    return _abs_pow(a + b, s) + _abs_pow(a - b, s)


def _vec_norm_or_zero(x, s):
    x = np.abs(np.asarray(x, dtype=float)).ravel()
    if s < 0 and np.any(x <= POSITIVITY * max(1.0, x.max())):
        return 0.0
    return float(np.sum(x**s)) ** (1 / s)


# ---------------------------------------------------------------------------
# Hanner (p >= 1)


def _hanner_expect(p: float) -> str:
    return "ge" if p <= 2 else "le"


def vector_hanner_gap(x, y, p: float, tol: float = 1e-9) -> GapReport:
    """``F - H`` for vectors: nonnegative for ``1 <= p <= 2``, nonpositive for ``p >= 2``."""
    if p < 1:
        raise DomainError("Hanner needs p >= 1; use vector_reverse_hanner_gap for s < 1")
    x = np.asarray(x, dtype=float).ravel()
    y = np.asarray(y, dtype=float).ravel()
    if x.shape != y.shape:
        raise DomainError("length mismatch")
    a = float(np.sum(np.abs(x) ** p)) ** (1 / p)
    b = float(np.sum(np.abs(y) ** p)) ** (1 / p)
    lhs = vector_s_power(x + y, p) + vector_s_power(x - y, p)
    return gap_report(lhs, hanner_side(a, b, p), expect=_hanner_expect(p), tol=tol, p=p)


def hanner_regime(C, D, p: float) -> str | None:
    """Name of the regime where matrix Hanner is known, or ``None``."""
    if p == 2 or (p > 2 and float(p).is_integer() and int(p) % 2 == 0):
        return "even"
    if is_hermitian(C) and is_hermitian(D):
        if is_psd(as_hermitian(C) + as_hermitian(D)) and is_psd(as_hermitian(C) - as_hermitian(D)):
            return "psd-pair"
    if 1 <= p <= 4 / 3 or p >= 4:
        return "general"
    a, b = schatten(C, p), schatten(D, p)
    if abs(a - b) <= 1e-12 * max(1.0, a):
        return "equal-norms"
    return None


def matrix_hanner_gap(C, D, p: float, tol: float = 1e-9) -> GapReport:
    """``F - H`` for matrices with ``p >= 1``; asserted only in a known regime."""
    if p < 1:
        raise DomainError("Hanner needs p >= 1; use matrix_reverse_hanner_gap for s < 1")
    C, D = as_square(C), as_square(D)
    a, b = schatten(C, p), schatten(D, p)
    lhs = schatten_s_power(C + D, p) + schatten_s_power(C - D, p)
    regime = hanner_regime(C, D, p)
    return gap_report(
        lhs,
        hanner_side(a, b, p),
        expect=_hanner_expect(p),
        tol=tol,
        asserted=regime is not None,
        p=p,
        regime=regime,
        norm_c=a,
        norm_d=b,
    )


# ---------------------------------------------------------------------------
# reverse Hanner (s < 1)


def _reverse_expect(s: float) -> str:
    return "ge" if s > 0 else "le"


def _check_s(s):
    if not s < 1 or s == 0:
        raise DomainError("reverse Hanner needs s < 1, s != 0")


def in_vector_domain(x, y) -> bool:
    """Componentwise ``|y_i| <= |x_i|``."""
    return bool(np.all(np.abs(np.asarray(y, dtype=float)) <= np.abs(np.asarray(x, dtype=float))))


def vector_reverse_hanner_gap(x, y, s: float, tol: float = 1e-9) -> GapReport:
    """``H - F`` for vectors.

    Nonnegative for ``0 < s < 1`` and nonpositive for ``s < 0`` when
    ``|y_i| <= |x_i|`` for every ``i``.  Outside that domain the report is
    recorded with ``asserted=False``.
    """
    _check_s(s)
    x = np.asarray(x, dtype=float).ravel()
    y = np.asarray(y, dtype=float).ravel()
    if x.shape != y.shape:
        raise DomainError("length mismatch")
    if s < 0 and np.any(np.abs(x) == np.abs(y)):
        raise DomainError("x +- y has a zero entry; the antinorm is undefined")
    domain = in_vector_domain(x, y)
    a, b = _vec_norm_or_zero(x, s), _vec_norm_or_zero(y, s)
    rhs = vector_s_power(x + y, s) + vector_s_power(x - y, s)
    return gap_report(
        hanner_side(a, b, s),
        rhs,
        expect=_reverse_expect(s),
        tol=tol,
        asserted=domain,
        s=s,
        domain=domain,
        norm_x=a,
        norm_y=b,
    )


def psd_pair_domain(C, D, strict: bool = False, tol: float = 1e-12) -> bool:
    """``C + D`` and ``C - D`` positive semidefinite (definite when ``strict``)."""
    if not (is_hermitian(C) and is_hermitian(D)):
        return False
    C, D = as_hermitian(C), as_hermitian(D)
    scale = max(1.0, float(np.abs(C).max()))
    lo = min(min_eig(C + D), min_eig(C - D))
    return lo > tol * scale if strict else lo >= -tol * scale


def matrix_reverse_hanner_gap(C, D, s: float, tol: float = 1e-9) -> GapReport:
    """``H - F`` for matrices; asserted when ``C +- D >= 0`` (``> 0`` for ``s < 0``)."""
    _check_s(s)
    C, D = as_square(C), as_square(D)
    domain = psd_pair_domain(C, D, strict=s < 0)
    a, b = schatten_antinorm_or_zero(C, s), schatten_antinorm_or_zero(D, s)
    rhs = schatten_s_power(C + D, s) + schatten_s_power(C - D, s)
    return gap_report(
        hanner_side(a, b, s),
        rhs,
        expect=_reverse_expect(s),
        tol=tol,
        asserted=domain,
        s=s,
        domain=domain,
        norm_c=a,
        norm_d=b,
        commutator=commutator_norm(C, D),
    )


# ---------------------------------------------------------------------------
# Taylor machinery


@dataclass(frozen=True)
class TaylorSide:
    """Even Taylor coefficients of ``r -> (a + r b)^s + (a - r b)^s``.

    ``coefficients[k]`` multiplies ``r^{2k}``.  ``remainder`` bounds the
    tail after ``K`` terms by the first omitted term times
    ``1 / (1 - (b/a)^2)``; it is ``nan`` when the ratio exceeds 0.95.
    """

    s: float
    norm_c: float
    norm_d: float
    coefficients: np.ndarray
    truncation: int
    remainder: float

    @property
    def ratio(self) -> float:
        return self.norm_d / self.norm_c

    def partial_sums(self, r: float = 1.0) -> np.ndarray:
        k = np.arange(self.coefficients.size)
        return np.cumsum(self.coefficients * r ** (2 * k))

    def value(self, r: float = 1.0) -> float:
        return hanner_side(self.norm_c, r * self.norm_d, self.s)


def taylor_coefficient(a: float, b: float, s: float, k: int) -> float:
    """``2 (s)_{2k} / (2k)! * b^{2k} a^{s-2k}``."""
    if b == 0:
        return 2.0 * a**s if k == 0 else 0.0
    log_mag = (2 * k) * math.log(b) + (s - 2 * k) * math.log(a) - math.lgamma(2 * k + 1)
    return 2.0 * pochhammer_falling(s, 2 * k) * math.exp(log_mag)


def scalar_taylor_side(norm_c: float, norm_d: float, s: float, K: int = 20) -> TaylorSide:
    _check_s(s)
    if not norm_c > norm_d >= 0:
        raise DomainError("need ||C||_s > ||D||_s >= 0")
    coeffs = np.array([taylor_coefficient(norm_c, norm_d, s, k) for k in range(K + 1)])
    rho2 = (norm_d / norm_c) ** 2
    if rho2 > 0.95**2:
        remainder = math.nan
    else:
        remainder = abs(taylor_coefficient(norm_c, norm_d, s, K + 1)) / (1 - rho2)
    return TaylorSide(s, float(norm_c), float(norm_d), coeffs, int(K), remainder)


def partial_sum_bound_check(x, y, s: float, K: int = 20, tol: float = 1e-9) -> GapReport:
    """Every partial sum ``S_{2k}(1)`` bounds ``F(1)``: above for ``0 < s < 1``, below for ``s < 0``.

    ``lhs`` is the tightest partial sum; the context records whether the
    partial sums are monotone in the expected direction.
    """
    _check_s(s)
    x = np.asarray(x, dtype=float).ravel()
    y = np.asarray(y, dtype=float).ravel()
    if not in_vector_domain(x, y):
        raise DomainError("need |y_i| <= |x_i| componentwise")
    a, b = _vec_norm_or_zero(x, s), _vec_norm_or_zero(y, s)
    side = scalar_taylor_side(a, b, s, K)
    sums = side.partial_sums(1.0)
    F1 = vector_s_power(x + y, s) + vector_s_power(x - y, s)
    steps = np.diff(sums)
    scale = max(1.0, float(np.max(np.abs(sums))))
    if s > 0:
        tight = float(sums.min())
        monotone = bool(np.all(steps <= tol * scale))
    else:
        tight = float(sums.max())
        monotone = bool(np.all(steps >= -tol * scale))
    return gap_report(
        tight,
        F1,
        expect=_reverse_expect(s),
        tol=tol,
        s=s,
        K=K,
        monotone=monotone,
        partial_sums=[float(v) for v in sums],
        limit=side.value(1.0),
        remainder=side.remainder,
    )


def _derivative_sign(s: float) -> float:
    if 0 < s < 1:
        return -1.0
    if -1 < s < 0 or 1 < s < 2:
        return 1.0
    raise DomainError(f"Taylor coefficients via the resolvent integral need s in (-1,0), (0,1) or (1,2); got {s}")


def _resolvent_trace_integral(C, D, s, m, n_nodes, chunk=128):
    """``int_0^inf t^s Tr[R (D R)^m] dt`` with ``R = (t + C)^{-1}``."""
    q = make_scheme(n_nodes, power_for_endpoints(s + 1, m - s))
    coef = q.coefficients(s)
    n = C.shape[0]
    eye = np.eye(n)
    total = 0.0
    for lo in range(0, q.n_nodes, chunk):
        t = q.nodes[lo : lo + chunk]
        R = np.linalg.inv(t[:, None, None] * eye + C)
        M = np.linalg.matrix_power(R @ D, m) @ R
        total += float(np.real(np.einsum("i,ijj->", coef[lo : lo + chunk], M)))
    return total


def matrix_derivative(C, D, s: float, m: int, n_nodes: int = 512) -> float:
    """``d^m/dr^m Tr[(C + rD)^s + (C - rD)^s]`` at ``r = 0`` from the resolvent integral.

    Each branch contributes ``sigma c_s (+-1)^m m! int t^s Tr[R (DR)^m] dt``
    with ``sigma = -1`` on ``(0,1)`` and ``+1`` on ``(-1,0)`` and ``(1,2)``;
    the two branches cancel for odd ``m``.
    """
    C = as_hermitian(C)
    D = as_hermitian(D)
    if min_eig(C) <= 0:
        raise DomainError("C must be positive definite")
    if m < 1:
        raise ValueError("m must be >= 1")
    sigma = _derivative_sign(s)
    c = calibrate_constant(s)
    integral = _resolvent_trace_integral(C, D, s, m, n_nodes)
    plus = sigma * c * (-1) ** m * math.factorial(m) * integral
    minus = sigma * c * math.factorial(m) * integral
    return plus + minus


def matrix_taylor_coeff(C, D, s: float, k: int, n_nodes: int = 512) -> float:
    """The ``2k``-th derivative of ``F(r)`` at 0; its sign matches ``(s)_{2k}``."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return matrix_derivative(C, D, s, 2 * k, n_nodes)


def scalar_taylor_oracle(C, D, s: float, k: int) -> float:
    """``2 (s)_{2k} sum d_i^{2k} c_i^{s-2k}`` for commuting diagonal ``C, D``."""
    c = np.real(np.diag(C))
    d = np.real(np.diag(D))
    return 2 * pochhammer_falling(s, 2 * k) * float(np.sum(d ** (2 * k) * c ** (s - 2 * k)))


def finite_difference_second(C, D, s: float, h: float = 1e-3) -> float:
    """Central second difference of ``F(r)`` at 0 using spectral powers."""

    def F(r):
        return sum(
            float(np.real(np.trace(matrix_power_spectral(C + sgn * r * D, s)))) for sgn in (1, -1)
        )

    return (F(h) - 2 * F(0.0) + F(-h)) / h**2


def taylor_term_check(C, D, s: float, k: int, tol: float = 1e-8, n_nodes: int = 512) -> GapReport:
    """Term-by-term comparison of ``F^{(2k)}(0)`` with ``2 (s)_{2k} ||C||_s^{s-2k} ||D||_s^{2k}``.

    For ``0 < s < 1`` on ``C +- D >= 0`` the matrix coefficient is observed
    to lie *below* the scalar one, which is the direction a term-by-term
    proof of ``F(1) <= H(1)`` needs; the report asserts that direction.
    """
    lhs = matrix_taylor_coeff(C, D, s, k, n_nodes)
    a, b = schatten(C, s), schatten(D, s)
    rhs = math.factorial(2 * k) * taylor_coefficient(a, b, s, k)
    return gap_report(lhs, rhs, expect="le" if s > 0 else "ge", tol=tol, asserted=s > 0, s=s, k=k)


def psi_convexity_step_check(C, D, t: float, k: int, tol: float = 1e-9) -> GapReport:
    """``Tr[((C+t)^{-1} D)^{2k}] >= Tr[((C_diag+t)^{-1} D)^{2k}]`` in the basis where ``D`` is diagonal."""
    C = as_hermitian(C)
    D = as_hermitian(D)
    if min_eig(C) <= 0:
        raise DomainError("C must be positive definite")
    if t <= 0 or k < 1:
        raise DomainError("need t > 0 and k >= 1")
    spec = eigh(D)
    U = spec.eigenvectors
    Cr = U.conj().T @ C @ U
    Dr = np.diag(spec.eigenvalues)
    n = C.shape[0]
    R = np.linalg.inv(Cr + t * np.eye(n))
    Rd = np.diag(1.0 / (np.real(np.diag(Cr)) + t))
    lhs = float(np.real(np.trace(np.linalg.matrix_power(R @ Dr, 2 * k))))
    rhs = float(np.real(np.trace(np.linalg.matrix_power(Rd @ Dr, 2 * k))))
    return gap_report(lhs, rhs, tol=tol, t=t, k=k)


# ---------------------------------------------------------------------------
# equality characterization


@dataclass(frozen=True)
class HannerEquality:
    equality_detected: bool
    multiple_detected: bool
    k_estimate: float
    regime: str | None
    asserted: bool
    report: GapReport
    residual: float = field(default=math.nan)

    @property
    def mismatch(self) -> bool:
        """Biconditional failure on an asserted regime."""
        return self.asserted and self.equality_detected != self.multiple_detected


def equality_regime(C, D, p: float) -> str | None:
    if p <= 1 or p == 2:
        return None
    if psd_pair_domain(C, D):
        return "psd-pair"
    if 1 < p <= 4 / 3 or p > 4:
        return "general"
    return None


def hanner_equality_check(C, D, p: float, rtol: float = EQUALITY_RTOL) -> HannerEquality:
    """Test whether Hanner equality coincides with ``|D| = k C_ref``, ``k = ||D||_p / ||C||_p``.

    ``C_ref`` is ``C`` on positive pairs and ``|C|`` in the general regime.
    Outside both regimes the result is recorded with ``asserted=False``.
    """
    C, D = as_square(C), as_square(D)
    regime = equality_regime(C, D, p)
    rep = matrix_hanner_gap(C, D, p)
    equal = abs(rep.gap) <= rtol * (1 + abs(rep.rhs))
    nc, nd = schatten(C, p), schatten(D, p)
    k = nd / nc if nc > 0 else math.nan
    Cref = C if regime == "psd-pair" else abs_matrix(C)
    absD = abs_matrix(D)
    residual = float(np.linalg.norm(absD - k * Cref))
    multiple = residual <= rtol * (1 + float(np.linalg.norm(absD)))
    return HannerEquality(bool(equal), bool(multiple), float(k), regime, regime is not None, rep, residual)
