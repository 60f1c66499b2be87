"""Majorization predicates, doubly stochastic witnesses and Birkhoff decompositions."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import linear_sum_assignment

from .errors import DomainError, NotMajorizedError
from .linalg_core import as_hermitian, eigvals_desc, svd_vals
from .reports import GapReport, gap_report

MODES = ("weak", "strong", "log", "weak_log")


def descending(v) -> np.ndarray:
    v = np.asarray(v, dtype=float).ravel()
    return np.sort(v)[::-1]


@dataclass(frozen=True)
class MajorizationResult:
    """Outcome of ``a ≺ b`` in some mode.

    ``slack`` is the smallest normalised prefix margin (log units in the log
    modes); ``index`` is the prefix length where it occurs.
    """

    holds: bool
    slack: float
    index: int
    mode: str
    lhs_prefix: float
    rhs_prefix: float
    final_gap: float

    def __bool__(self):
        return self.holds


def _prefixes(a, b, mode):
    a = descending(a)
    b = descending(b)
    if a.shape != b.shape:
        raise DomainError(f"length mismatch: {a.size} vs {b.size}")
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}; expected one of {MODES}")
    if mode in ("log", "weak_log"):
        if np.any(a < 0) or np.any(b < 0):
            raise DomainError("log majorization needs nonnegative entries")
        with np.errstate(divide="ignore"):
            return np.cumsum(np.log(a)), np.cumsum(np.log(b)), 1.0
    return np.cumsum(a), np.cumsum(b), max(1.0, float(np.max(np.abs(b))) if b.size else 1.0)


def _margins(A, B):
    # -inf - -inf means both products vanished: equal
    with np.errstate(invalid="ignore"):
        d = B - A
    d[np.isneginf(A) & np.isneginf(B)] = 0.0
    return d


def majorizes(a, b, mode: str = "strong", tol: float = 1e-9) -> MajorizationResult:
    """Check ``a ≺ b`` (``b`` majorizes ``a``) on descending rearrangements."""
    A, B, scale = _prefixes(a, b, mode)
    margins = _margins(A, B) / scale
    if mode in ("strong", "log"):
        final = margins[-1]
        # equality of totals is a two-sided constraint
        margins = margins.copy()
        margins[-1] = -abs(final)
    else:
        final = margins[-1]
    k = int(np.argmin(margins))
    slack = float(margins[k])
    return MajorizationResult(
        holds=bool(slack >= -tol),
        slack=slack,
        index=k + 1,
        mode=mode,
        lhs_prefix=float(A[k]),
        rhs_prefix=float(B[k]),
        final_gap=float(final),
    )


def majorization_report(a, b, mode: str = "strong", tol: float = 1e-9, **context) -> GapReport:
    """GapReport whose gap is the normalised slack of ``a ≺ b`` at the tightest prefix."""
    res = majorizes(a, b, mode, tol)
    return gap_report(
        res.slack,
        0.0,
        tol=tol,
        scale=1.0,
        mode=mode,
        index=res.index,
        a_prefix=res.lhs_prefix,
        b_prefix=res.rhs_prefix,
        **context,
    )


# ---------------------------------------------------------------------------
# witnesses


@dataclass(frozen=True)
class MajorizationWitness:
    ds_matrix: np.ndarray
    birkhoff: list = field(default_factory=list)
    transforms: int = 0

    def reconstruct_birkhoff(self) -> np.ndarray:
        n = self.ds_matrix.shape[0]
        out = np.zeros((n, n))
        for w, perm in self.birkhoff:
            out[np.arange(n), perm] += w
        return out


def _t_transform_chain(a_sorted, b_sorted, tol):
    n = a_sorted.size
    x = b_sorted.astype(float).copy()
    D = np.eye(n)
    scale = max(1.0, float(np.max(np.abs(b_sorted))))
    steps = 0
    for _ in range(n):
        diff = x - a_sorted
        if np.max(np.abs(diff)) <= tol * scale:
            break
        above = np.nonzero(diff > tol * scale)[0]
        if above.size == 0:
            break
        j = int(above[-1])
        below = np.nonzero(diff[j + 1 :] < -tol * scale)[0]
        if below.size == 0:
            break
        k = j + 1 + int(below[0])
        delta = min(x[j] - a_sorted[j], a_sorted[k] - x[k])
        mix = delta / (x[j] - x[k])
        T = np.eye(n)
        T[j, j] = T[k, k] = 1 - mix
        T[j, k] = T[k, j] = mix
        x = T @ x
        D = T @ D
        steps += 1
    return D, steps


def ds_witness(a, b, tol: float = 1e-9) -> MajorizationWitness:
    """Doubly stochastic ``D`` with ``a = D b`` built from at most n-1 T-transforms."""
    a = np.asarray(a, dtype=float).ravel()
    b = np.asarray(b, dtype=float).ravel()
    if not majorizes(a, b, "strong", tol):
        raise NotMajorizedError("a is not majorized by b")
    pa = np.argsort(-a, kind="stable")
    pb = np.argsort(-b, kind="stable")
    Ds, steps = _t_transform_chain(a[pa], b[pb], tol)
    D = np.zeros_like(Ds)
    D[np.ix_(pa, pb)] = Ds
    return MajorizationWitness(D, birkhoff_decomposition(D), steps)


def substochastic_witness(a, b, tol: float = 1e-9) -> MajorizationWitness:
    """Doubly substochastic ``K`` with ``a = K b`` for nonnegative ``a ≺_w b``.

    Raises the tail of ``a`` by water-filling until the totals match, which
    gives ``a <= u ≺ b``; then ``K = diag(a/u) D``.
    """
    a = np.asarray(a, dtype=float).ravel()
    b = np.asarray(b, dtype=float).ravel()
    if np.any(a < 0) or np.any(b < 0):
        raise DomainError("weak majorization witnesses need nonnegative vectors")
    if not majorizes(a, b, "weak", tol):
        raise NotMajorizedError("a is not weakly majorized by b")
    pa = np.argsort(-a, kind="stable")
    u_sorted = _water_fill(a[pa], float(b.sum() - a.sum()))
    u = np.empty_like(u_sorted)
    u[pa] = u_sorted
    D = ds_witness(u, b, tol).ds_matrix
    ratio = np.divide(a, u, out=np.zeros_like(a), where=u > 0)
    return MajorizationWitness(ratio[:, None] * D, [], 0)


def _water_fill(v_desc, deficit):
    u = v_desc.copy()
    n = u.size
    if deficit <= 0:
        return u
    m = n - 1
    while True:
        level_count = n - m
        target = u[m:].sum() + deficit
        level = target / level_count
        if m == 0 or level <= u[m - 1]:
            u[m:] = level
            return u
        m -= 1


def birkhoff_decomposition(D, tol: float = 1e-12) -> list:
    """Greedy Birkhoff-von Neumann decomposition ``D = sum w_i P_i``.

    Each step takes a perfect matching on the positive support, removes the
    smallest entry along it, and the result is pruned to at most
    ``n^2 - 2n + 2`` terms by Caratheodory elimination.
    """
    R = np.array(D, dtype=float)
    n = R.shape[0]
    terms = []
    for _ in range(n * n + 1):
        support = R > tol
        if not support.any():
            break
        cost = np.where(support, -R, n * n + 1.0)
        rows, cols = linear_sum_assignment(cost)
        if not np.all(support[rows, cols]):
            break
        w = float(R[rows, cols].min())
        terms.append((w, cols.copy()))
        R[rows, cols] -= w
        R[R <= tol] = 0.0
    return _caratheodory_prune(terms, n)


def _caratheodory_prune(terms, n):
    limit = n * n - 2 * n + 2
    terms = [(w, p) for w, p in terms if w > 0]
    while len(terms) > limit:
        M = np.zeros((n * n + 1, len(terms)))
        for j, (_, p) in enumerate(terms):
            M[np.arange(n) * n + p, j] = 1.0
        M[-1, :] = 1.0
        v = np.linalg.svd(M)[2][-1]
        if np.max(v) <= 0:
            v = -v
        w = np.array([t[0] for t in terms])
        pos = v > 1e-14
        theta = np.min(w[pos] / v[pos])
        w = w - theta * v
        terms = [(float(wi), p) for wi, (_, p) in zip(w, terms) if wi > 1e-14]
    return terms


def is_doubly_stochastic(D, tol: float = 1e-9, sub: bool = False) -> bool:
    D = np.asarray(D, dtype=float)
    if np.any(D < -tol):
        return False
    rows, cols = D.sum(axis=1), D.sum(axis=0)
    if sub:
        return bool(np.all(rows <= 1 + tol) and np.all(cols <= 1 + tol))
    return bool(np.allclose(rows, 1, atol=tol, rtol=0) and np.allclose(cols, 1, atol=tol, rtol=0))


# ---------------------------------------------------------------------------
# lemma checks


def _require(res: MajorizationResult, what: str):
    if not res:
        raise NotMajorizedError(f"precondition failed: {what} (slack {res.slack:.3e})")


def check_weakpower(a, b, s: float, tol: float = 1e-9) -> GapReport:
    """Nonnegative ``a ≺_w b`` implies ``a^s ≺_w b^s`` for ``s >= 1``."""
    if s < 1:
        raise DomainError("power lemma needs s >= 1")
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if np.any(a < 0) or np.any(b < 0):
        raise DomainError("power lemma needs nonnegative vectors")
    _require(majorizes(a, b, "weak", tol), "a ≺_w b")
    return majorization_report(a**s, b**s, "weak", tol, s=s)


def check_weaksum(x, y, a, b, tol: float = 1e-9) -> GapReport:
    """``x ≺_w y`` and ``a ≺_w b`` (nonnegative, descending) imply ``xa ≺_w yb``."""
    x, y, a, b = (descending(v) for v in (x, y, a, b))
    if min(v.min() for v in (x, y, a, b)) < 0:
        raise DomainError("product lemma needs nonnegative vectors")
    _require(majorizes(x, y, "weak", tol), "x ≺_w y")
    _require(majorizes(a, b, "weak", tol), "a ≺_w b")
    return majorization_report(x * a, y * b, "weak", tol)


def _phi(name: str, p: float = 3.0):
    if name == "square":
        return np.square
    if name == "xlogx":
        def f(v):
            v = np.asarray(v, dtype=float)
            if np.any(v < 0):
                raise DomainError("x log x needs nonnegative entries")
            return np.where(v > 0, v * np.log(np.where(v > 0, v, 1.0)), 0.0)
        return f
    if name == "abs_p":
        if p <= 1:
            raise DomainError("|x|^p is strictly convex only for p > 1")
        return lambda v: np.abs(v) ** p
    raise ValueError(f"unknown convex function {name!r}")


def strict_equality_implies_permutation(a, b, phi_id: str = "square", p: float = 3.0, tol: float = 1e-9) -> bool:
    """For strictly convex phi, ``a ≺ b`` with equal phi-sums forces ``a`` to be a permutation of ``b``.

    Returns whether the implication held on this instance (vacuously true
    when the phi-sums differ).
    """
    _require(majorizes(a, b, "strong", tol), "a ≺ b")
    phi = _phi(phi_id, p)
    sa = float(np.sum(phi(a)))
    sb = float(np.sum(phi(b)))
    if abs(sa - sb) > tol * max(1.0, abs(sb)):
        return True
    return bool(np.allclose(descending(a), descending(b), atol=tol * max(1.0, np.abs(b).max()), rtol=0))


def check_schur_diag(X, tol: float = 1e-9) -> GapReport:
    """Diagonal of a Hermitian matrix is majorized by its eigenvalues."""
    X = as_hermitian(X)
    return majorization_report(np.real(np.diag(X)), eigvals_desc(X), "strong", tol)


def check_horn_gelfand(A, B, tol: float = 1e-8) -> GapReport:
    """Both chains ``σ↑(A)σ↓(B) ≺_log σ(AB) ≺_log σ(A)σ(B)``.

    The lower chain pairs ascending and descending singular values index by
    index before any re-sorting.  With a singular factor the lower chain is
    only checked as weak log majorization.
    """
    sa, sb = svd_vals(A), svd_vals(B)
    sab = svd_vals(np.asarray(A) @ np.asarray(B))
    upper = majorizes(sab, sa * sb, "log", tol)
    low_vec = sa[::-1] * sb
    singular = sa[-1] <= 1e-12 * max(1.0, sa[0]) or sb[-1] <= 1e-12 * max(1.0, sb[0])
    lower = majorizes(low_vec, sab, "weak_log" if singular else "log", tol)
    # exp(log-majorization) implies weak majorization of the values themselves
    weak_upper = majorizes(sab, sa * sb, "weak", tol)
    return gap_report(
        min(upper.slack, lower.slack),
        0.0,
        tol=tol,
        scale=1.0,
        upper_slack=upper.slack,
        lower_slack=lower.slack,
        lower_mode=lower.mode,
        weak_upper_holds=weak_upper.holds,
    )
