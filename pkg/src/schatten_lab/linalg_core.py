"""Dense linear algebra substrate.

Hermitian eigendecompositions with a deterministic ordering, singular values,
spectral matrix functions, Gauss-Legendre integral representations of
fractional powers, and seeded random matrix samplers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .config import DEFAULT_TOL
from .errors import DomainError, EigenError, SchemeError

# ---------------------------------------------------------------------------
# validation


def as_square(X) -> np.ndarray:
    X = np.asarray(X)
    if X.ndim != 2 or X.shape[0] != X.shape[1] or X.shape[0] == 0:
        raise DomainError(f"expected a non-empty square matrix, got shape {X.shape}")
    X = X.astype(complex if np.iscomplexobj(X) else float)
    if not np.all(np.isfinite(X)):
        raise DomainError("matrix has non-finite entries")
    return X


def is_hermitian(X, atol: float = DEFAULT_TOL.sym) -> bool:
    X = np.asarray(X)
    return X.ndim == 2 and X.shape[0] == X.shape[1] and np.allclose(X, X.conj().T, rtol=0, atol=atol)


def as_hermitian(X, atol: float = DEFAULT_TOL.sym) -> np.ndarray:
    """Validate conjugate symmetry entrywise to ``atol`` and return the matrix."""
    X = as_square(X)
    err = np.max(np.abs(X - X.conj().T))
    if err > atol:
        raise DomainError(f"matrix is not Hermitian: max |X - X*| = {err:.3e} > {atol:g}")
    return X


def hermitize(X) -> np.ndarray:
    return (X + X.conj().T) / 2


# ---------------------------------------------------------------------------
# decompositions


@dataclass(frozen=True)
class SpectralData:
    """Eigenvalues in descending order with matching orthonormal eigenvectors (columns)."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        U = self.eigenvectors
        return (U * self.eigenvalues) @ U.conj().T

    def apply(self, f) -> np.ndarray:
        """Return ``U f(Lambda) U*``."""
        U = self.eigenvectors
        return (U * f(self.eigenvalues)) @ U.conj().T


def eigh(X, tol: float = DEFAULT_TOL.decomp) -> SpectralData:
    """Hermitian eigendecomposition, eigenvalues descending.

    Ties keep LAPACK's ascending-index order reversed stably, so equal
    eigenvalues appear in the order of their original index.
    """
    X = as_hermitian(X)
    try:
        w, U = np.linalg.eigh(X)
    except np.linalg.LinAlgError as exc:
        raise EigenError(f"eigensolver did not converge: {exc}") from exc
    order = np.argsort(-w, kind="stable")
    spec = SpectralData(w[order], U[:, order])
    scale = 1.0 + np.linalg.norm(X)
    resid = np.linalg.norm(spec.reconstruct() - X)
    orth = np.linalg.norm(U.conj().T @ U - np.eye(len(w)))
    if resid > tol * scale or orth > tol:
        raise EigenError("eigendecomposition failed its reconstruction check", max(resid, orth))
    return spec


def eigvals_desc(X) -> np.ndarray:
    return np.sort(np.linalg.eigvalsh(as_hermitian(X)))[::-1]


def svd_vals(X) -> np.ndarray:
    """Singular values, descending."""
    X = as_square(X)
    try:
        return np.linalg.svd(X, compute_uv=False)
    except np.linalg.LinAlgError as exc:
        raise EigenError(f"SVD did not converge: {exc}") from exc


def polar(X) -> tuple[np.ndarray, np.ndarray]:
    """Polar decomposition ``X = U |X|`` with ``|X| = (X*X)^{1/2}``."""
    W, sig, Vh = np.linalg.svd(as_square(X))
    U = W @ Vh
    P = (Vh.conj().T * sig) @ Vh
    return U, hermitize(P)


def abs_matrix(X) -> np.ndarray:
    return polar(X)[1]


def min_eig(X) -> float:
    return float(np.linalg.eigvalsh(hermitize(as_square(X)))[0])


def is_psd(X, tol: float = DEFAULT_TOL.decomp) -> bool:
    X = np.asarray(X)
    if not is_hermitian(X, atol=max(DEFAULT_TOL.sym, tol * (1 + np.abs(X).max()))):
        return False
    return min_eig(X) >= -tol * max(1.0, float(np.abs(X).max()))


def commutator_norm(A, B) -> float:
    return float(np.linalg.norm(A @ B - B @ A))


# ---------------------------------------------------------------------------
# spectral functions


def matrix_power_spectral(X, s: float, tol: float = DEFAULT_TOL.decomp) -> np.ndarray:
    """``U diag(lambda^s) U*`` for Hermitian ``X``.

    Negative exponents need ``X`` positive definite; positive exponents need
    ``X`` positive semidefinite (eigenvalues down to ``-tol*||X||`` are
    clipped to zero).
    """
    spec = eigh(X)
    lam = spec.eigenvalues
    scale = max(1.0, float(np.abs(lam).max()))
    if s < 0:
        if lam[-1] <= 0:
            raise DomainError(f"negative power {s} of a matrix with eigenvalue {lam[-1]:.3e}")
    elif s == 0:
        return np.eye(len(lam), dtype=complex if np.iscomplexobj(X) else float)
    else:
        if lam[-1] < -tol * scale:
            raise DomainError(f"power {s} of a matrix with negative eigenvalue {lam[-1]:.3e}")
        lam = np.clip(lam, 0.0, None)
    return hermitize(SpectralData(lam, spec.eigenvectors).apply(lambda w: w**s))


def matrix_log(X) -> np.ndarray:
    spec = eigh(X)
    if spec.eigenvalues[-1] <= 0:
        raise DomainError("logarithm of a matrix that is not positive definite")
    return hermitize(spec.apply(np.log))


def matrix_exp_hermitian(X) -> np.ndarray:
    return hermitize(eigh(X).apply(np.exp))


def geometric_mean0(A, B) -> np.ndarray:
    """Log-Euclidean mean ``exp((log A + log B) / 2)`` of positive definite matrices."""
    return matrix_exp_hermitian((matrix_log(A) + matrix_log(B)) / 2)


# ---------------------------------------------------------------------------
# quadrature for integral representations


@dataclass(frozen=True)
class QuadratureScheme:
    """Gauss-Legendre rule on (0,1) pushed to (0,inf) by ``t = (u/(1-u))**power``.

    ``weights`` integrate against ``dt``; logs are kept so kernels with large
    powers of ``t`` can be formed without overflow.
    """

    n_nodes: int
    power: float
    nodes: np.ndarray
    weights: np.ndarray
    log_nodes: np.ndarray
    log_weights: np.ndarray

    @property
    def transform(self) -> str:
        return f"t = (u/(1-u))**{self.power:g}"

    def coefficients(self, a: float) -> np.ndarray:
        """``w_i * t_i**a``."""
        return np.exp(self.log_weights + a * self.log_nodes)

    def integrate(self, f) -> float:
        """Integrate a vectorised scalar function over (0, inf)."""
        return float(np.sum(self.weights * f(self.nodes)))


@lru_cache(maxsize=64)
def _scheme_arrays(n_nodes: int, power: float):
    x, w = np.polynomial.legendre.leggauss(n_nodes)
    u = (x + 1) / 2
    wu = w / 2
    log_r = np.log(u) - np.log1p(-u)
    log_t = power * log_r
    log_w = np.log(wu) + math.log(power) + (power - 1) * log_r - 2 * np.log1p(-u)
    return log_t, log_w


def make_scheme(n_nodes: int = 512, power: float = 8.0) -> QuadratureScheme:
    if n_nodes < 2:
        raise ValueError("n_nodes must be >= 2")
    if power < 1:
        raise ValueError("power must be >= 1")
    log_t, log_w = _scheme_arrays(int(n_nodes), float(power))
    return QuadratureScheme(
        n_nodes=int(n_nodes),
        power=float(power),
        nodes=np.exp(log_t),
        weights=np.exp(log_w),
        log_nodes=log_t,
        log_weights=log_w,
    )


def power_for_endpoints(beta: float, gamma: float, lo: float = 8.0, hi: float = 48.0) -> float:
    """Map power so that ``t**(beta-1)`` at 0 and ``t**(-gamma-1)`` at inf become ``u**(>=1)``."""
    edge = min(beta, gamma)
    if edge <= 0:
        raise DomainError("integrand is not integrable at an endpoint")
    return float(min(hi, max(lo, math.ceil(2.0 / edge))))


SUPPORTED_BRANCHES = ("quasi", "negative", "deep", "super")


def representation_branch(s: float) -> str:
    if 0 < s < 1:
        return "quasi"
    if -1 < s < 0:
        return "negative"
    if s < -1:
        return "deep"
    if 1 < s < 2:
        return "super"
    raise DomainError(f"no integral representation implemented for s={s}")


def _deep_exponents(s: float, variant: str) -> tuple[float, int]:
    """(t exponent, resolvent power) of the s < -1 kernel."""
    if variant == "literal":
        fl = math.floor(s)
        if fl == s:
            raise DomainError("the uncorrected s<-1 kernel diverges at integer s")
        return fl - s, -fl
    n = math.floor(-s) + 1
    return s + n - 1, n


def _kernel_shape(s: float, variant: str = "corrected") -> tuple[str, float, int, float, float]:
    """Branch name, t exponent, resolvent power, endpoint exponents (beta, gamma)."""
    branch = representation_branch(s)
    if branch == "quasi":
        return branch, s - 1, 1, s, 1 - s
    if branch == "negative":
        return branch, s, 1, s + 1, -s
    if branch == "super":
        return branch, s - 2, 1, s - 1, 2 - s
    a, n = _deep_exponents(s, variant)
    return branch, a, n, a + 1, n - a - 1


def scheme_for_exponent(s: float, n_nodes: int = 512, variant: str = "corrected") -> QuadratureScheme:
    _, _, _, beta, gamma = _kernel_shape(s, variant)
    return make_scheme(n_nodes, power_for_endpoints(beta, gamma))


def _scalar_integral(x: float, s: float, q: QuadratureScheme, variant: str) -> float:
    branch, a, n, _, _ = _kernel_shape(s, variant)
    coef = q.coefficients(a)
    res = 1.0 / (q.nodes + x)
    if branch == "quasi":
        vals = coef * x * res
    elif branch == "super":
        vals = coef * x * x * res
    else:
        vals = coef * res**n
    return float(np.sum(vals))


def calibrate_constant(s: float, q: QuadratureScheme | None = None, variant: str = "corrected") -> float:
    """Normalisation constant ``1 / integral(kernel(t, 1))`` under scheme ``q``."""
    if q is None:
        q = scheme_for_exponent(s, variant=variant)
    total = _scalar_integral(1.0, s, q, variant)
    if not np.isfinite(total) or total <= 0:
        raise SchemeError(f"calibration integral for s={s} is {total}")
    return 1.0 / total


def closed_form_constant(s: float) -> float:
    """Exact normalisation constant of the corrected kernel for exponent ``s``."""
    branch, a, n, _, _ = _kernel_shape(s)
    if branch in ("quasi", "negative", "super"):
        return abs(math.sin(math.pi * s)) / math.pi
    # integral of t^a (t+1)^-n is B(a+1, n-a-1)
    return math.exp(math.lgamma(n) - math.lgamma(a + 1) - math.lgamma(n - a - 1))


def scalar_power_integral(x: float, s: float, q: QuadratureScheme | None = None, variant: str = "corrected") -> float:
    if x <= 0:
        raise DomainError("integral representation needs x > 0")
    if q is None:
        q = scheme_for_exponent(s, variant=variant)
    return calibrate_constant(s, q, variant) * _scalar_integral(x, s, q, variant)


def matrix_power_integral(
    X,
    s: float,
    q: QuadratureScheme | None = None,
    variant: str = "corrected",
    chunk: int = 128,
) -> np.ndarray:
    """Fractional power of a positive definite matrix from its resolvent integral.

    Uses only linear solves ``(t + X)^{-1}``, never an eigendecomposition of
    ``X``, so it is an independent route to :func:`matrix_power_spectral`.
    """
    X = as_hermitian(X)
    if min_eig(X) <= 0:
        raise DomainError("integral representation needs a positive definite matrix")
    branch, a, npow, _, _ = _kernel_shape(s, variant)
    if q is None:
        q = scheme_for_exponent(s, variant=variant)
    c = calibrate_constant(s, q, variant)
    n = X.shape[0]
    eye = np.eye(n)
    coef = q.coefficients(a)
    acc = np.zeros((n, n), dtype=complex)
    for lo in range(0, q.n_nodes, chunk):
        t = q.nodes[lo : lo + chunk]
        R = np.linalg.inv(t[:, None, None] * eye + X)
        if npow > 1:
            R = np.linalg.matrix_power(R, npow)
        acc += np.einsum("i,ijk->jk", coef[lo : lo + chunk], R)
    if branch == "quasi":
        acc = X @ acc
    elif branch == "super":
        acc = X @ X @ acc
    out = hermitize(c * acc)
    if not np.iscomplexobj(X):
        out = out.real
    return out


# ---------------------------------------------------------------------------
# random sampling


def _rng(seed) -> np.random.Generator:
    return np.random.default_rng(seed)


def ginibre(n: int, seed=None) -> np.ndarray:
    rng = _rng(seed)
    return (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / math.sqrt(2)


def haar_unitary(n: int, seed=None) -> np.ndarray:
    """Haar-distributed unitary: QR of a complex Ginibre matrix with phase-fixed R diagonal."""
    Q, R = np.linalg.qr(ginibre(n, seed))
    d = np.diag(R)
    return Q * (d / np.abs(d))


def random_hermitian(n: int, seed=None) -> np.ndarray:
    G = ginibre(n, seed)
    return (G + G.conj().T) / 2


def random_psd(n: int, seed=None, rank: int | None = None) -> np.ndarray:
    """Complex Wishart sample ``G G* / n``; positive definite almost surely for full rank."""
    rng = _rng(seed)
    r = n if rank is None else rank
    G = (rng.standard_normal((n, r)) + 1j * rng.standard_normal((n, r))) / math.sqrt(2)
    return hermitize(G @ G.conj().T / n)


def random_pd(n: int, seed=None, lo: float = 0.05, hi: float = 20.0) -> np.ndarray:
    """Positive definite matrix with Haar eigenvectors and log-uniform spectrum in [lo, hi]."""
    rng = _rng(seed)
    U = haar_unitary(n, rng)
    lam = np.exp(rng.uniform(math.log(lo), math.log(hi), n))
    return hermitize((U * lam) @ U.conj().T)


def random_psd_pair(n: int, seed=None) -> tuple[np.ndarray, np.ndarray]:
    """``C = (P+Q)/2, D = (P-Q)/2`` from independent Wishart ``P, Q`` so ``C +- D >= 0``."""
    rng = _rng(seed)
    P = random_psd(n, rng)
    Q = random_psd(n, rng)
    return (P + Q) / 2, (P - Q) / 2
