"""Seeded property suites, one per inequality family.

A suite maps a :class:`RunConfig` to an ordered list of :class:`GapReport`.
Every sample draws from its own generator keyed by (seed, suite, parameter
index, dimension, trial), so the output does not depend on thread count.
"""

from __future__ import annotations

import itertools
import zlib

import numpy as np

from . import explorer, hanner, majorization, rearrange, variational
from .config import RunConfig
from .errors import DomainError
from .linalg_core import (
    ginibre,
    matrix_power_integral,
    matrix_power_spectral,
    random_hermitian,
    random_pd,
    random_psd_pair,
    representation_branch,
)
from .parallel import pmap, trial_rng
from .reports import GapReport, gap_report

INTEGRAL_S = (0.5, 0.25, -0.5, -1.5, -2.5, 1.5)
HOLDER_TRIPLES = ((1.0, 0.5, -1.0), (0.5, 0.25, -0.5), (2.0, 1.0, -2.0))
HOLDER_NORMS = ("trace", "kyfan:1", "schatten:2")


def _key(name: str) -> int:
    return zlib.crc32(name.encode())


def _tag(report: GapReport, **ctx) -> GapReport:
    report.context.update(ctx)
    return report


def _grid(cfg: RunConfig, params):
    return [(j, param, n, i) for (j, param), n, i in itertools.product(enumerate(params), cfg.dims, range(cfg.trials))]


def _run(name, cfg: RunConfig, params, sample):
    """Evaluate ``sample(rng, param, n)`` over the parameter/dim/trial grid.

    Samples raising :class:`DomainError` are discarded, which is how
    singular configurations for negative exponents are skipped.
    """
    key = _key(name)

    def job(item):
        j, param, n, i = item
        rng = trial_rng(cfg.seed, key, j, n, i)
        try:
            rep = sample(rng, param, n)
        except DomainError:
            return None
        return _tag(rep, suite=name, dim=n, trial=i)

    return [r for r in pmap(job, _grid(cfg, params), cfg.threads) if r is not None]


def _s_below_one(cfg):
    return [s for s in cfg.s_list if s < 1 and s != 0]


# ---------------------------------------------------------------------------
# suites


def suite_reverse_minkowski(cfg):
    tol = cfg.tolerances.gap

    def sample(rng, s, n):
        return variational.reverse_minkowski_gap(random_pd(n, rng), random_pd(n, rng), s, tol)

    return _run("reverse-minkowski", cfg, _s_below_one(cfg), sample)


def suite_reverse_holder(cfg):
    tol = cfg.tolerances.gap

    def sample(rng, s, n):
        return variational.reverse_holder_gap(ginibre(n, rng), ginibre(n, rng), s, tol)

    return _run("reverse-holder", cfg, _s_below_one(cfg), sample)


def suite_general_reverse_holder(cfg):
    tol = cfg.tolerances.gap
    params = [(t, nm) for t in HOLDER_TRIPLES for nm in HOLDER_NORMS]

    def sample(rng, param, n):
        (r, p, q), norm = param
        return variational.general_reverse_holder_gap(ginibre(n, rng), ginibre(n, rng), r, p, q, norm, tol)

    return _run("general-reverse-holder", cfg, params, sample)


def suite_duality(cfg):
    tol = cfg.tolerances.gap
    params = [("s", s) for s in _s_below_one(cfg)] + [("p", p) for p in cfg.p_list if p > 1]

    def sample(rng, param, n):
        kind, v = param
        if kind == "p":
            rep = variational.dual_norm_value(ginibre(n, rng), v, trials=20, seed=rng, tol=tol)
        else:
            _, rep = variational.dual_quasinorm_witness(random_pd(n, rng), v, trials=20, seed=rng, tol=tol)
        return rep

    return _run("duality", cfg, params, sample)


def suite_hanner(cfg):
    tol = cfg.tolerances.gap

    def sample(rng, p, n):
        C, D = random_psd_pair(n, rng)
        return hanner.matrix_hanner_gap(C, D, p, tol)

    return _run("hanner", cfg, [p for p in cfg.p_list if p >= 1], sample)


def suite_reverse_hanner(cfg):
    tol = cfg.tolerances.gap

    def sample(rng, s, n):
        C, D = random_psd_pair(n, rng)
        return hanner.matrix_reverse_hanner_gap(C, D, s, tol)

    return _run("reverse-hanner", cfg, _s_below_one(cfg), sample)


def domain_vector_pair(n, rng):
    """``x`` Gaussian and ``y_i = u_i x_i`` with ``u_i`` uniform on ``(-1, 1)``."""
    x = rng.standard_normal(n)
    y = x * rng.uniform(-1, 1, n)
    return x, y


def suite_reverse_hanner_vector(cfg):
    tol = cfg.tolerances.gap

    def sample(rng, s, n):
        x, y = domain_vector_pair(n, rng)
        return hanner.vector_reverse_hanner_gap(x, y, s, tol)

    return _run("reverse-hanner-vector", cfg, _s_below_one(cfg), sample)


def suite_svr1(cfg):
    tol = cfg.tolerances.gap

    def sample(rng, s, n):
        C, D = rearrange.svr1_pair(n, rng)
        return rearrange.svr1_gap(C, D, s, tol)

    return _run("svr1", cfg, _s_below_one(cfg), sample)


def suite_svr2(cfg):
    tol = cfg.tolerances.gap

    def sample(rng, s, n):
        C, D = rearrange.svr2_pair(n, rng)
        return rearrange.svr2_gap(C, D, s, tol)

    return _run("svr2", cfg, _s_below_one(cfg), sample)


def _norm_for(rng, n):
    choice = rng.integers(3)
    if choice == 0:
        return "trace"
    if choice == 1:
        return f"kyfan:{rng.integers(1, n + 1)}"
    return f"schatten:{rng.uniform(1, 4):.3f}"


def suite_prop1(cfg):
    tol = 1e-8

    def sample(rng, p, n):
        alpha = rng.uniform(0.3, 2.0)
        out = variational.prop_factorization_check(ginibre(n, rng), alpha, p, _norm_for(rng, n), trials=20, seed=rng, tol=tol)
        return _tag(out.report, canonical_error=out.canonical_error)

    return _run("prop1", cfg, [p for p in cfg.p_list if p > 1], sample)


def suite_prop2(cfg):
    tol = 1e-8

    def sample(rng, p, n):
        alpha = rng.uniform(0.3, 2.0)
        out = variational.prop2_infimum_check(ginibre(n, rng), ginibre(n, rng), alpha, p, _norm_for(rng, n), trials=20, seed=rng, tol=tol)
        return _tag(out.report, canonical_error=out.canonical_error)

    return _run("prop2", cfg, [p for p in cfg.p_list if p > 1], sample)


def suite_prop3(cfg):
    tol = 1e-8
    ps = [s for s in cfg.s_list if 0 < s < 1] or [0.5]

    def sample(rng, p, n):
        alpha = rng.uniform(0.3, 2.0)
        out = variational.prop3_factorization_check(ginibre(n, rng), alpha, p, _norm_for(rng, n), trials=20, seed=rng, tol=tol)
        return _tag(out.report, canonical_error=out.canonical_error)

    return _run("prop3", cfg, ps, sample)


def suite_geomean(cfg):
    tol = cfg.tolerances.gap

    def sample(rng, _, n):
        k = int(rng.integers(1, n + 1))
        return variational.geomean_kyfan_check(random_pd(n, rng), random_pd(n, rng), k, tol)

    return _run("geomean", cfg, [None], sample)


def _birkhoff_mixture(n, rng, terms=4):
    w = rng.dirichlet(np.ones(terms))
    return sum(wi * np.eye(n)[rng.permutation(n)] for wi in w)


def suite_majorization(cfg):
    checks = ("schur", "horn", "weakpower", "weaksum", "strictmaj", "ds-witness")

    def sample(rng, check, n):
        if check == "schur":
            return majorization.check_schur_diag(random_hermitian(n, rng))
        if check == "horn":
            return majorization.check_horn_gelfand(ginibre(n, rng), ginibre(n, rng))
        if check == "weakpower":
            b = rng.exponential(size=n)
            a = _birkhoff_mixture(n, rng) @ b * rng.uniform(0.5, 1.0, n)
            return majorization.check_weakpower(a, b, rng.uniform(1, 4))
        if check == "weaksum":
            y, b = np.sort(rng.exponential(size=n))[::-1], np.sort(rng.exponential(size=n))[::-1]
            x = np.sort(_birkhoff_mixture(n, rng) @ y * rng.uniform(0.5, 1.0, n))[::-1]
            a = np.sort(_birkhoff_mixture(n, rng) @ b * rng.uniform(0.5, 1.0, n))[::-1]
            return majorization.check_weaksum(x, y, a, b)
        if check == "strictmaj":
            b = rng.standard_normal(n)
            a = _birkhoff_mixture(n, rng) @ b
            phi = ("square", "abs_p")[int(rng.integers(2))]
            held = majorization.strict_equality_implies_permutation(a, b, phi, 3.0)
            f = majorization._phi(phi, 3.0)
            return gap_report(float(np.sum(f(b))), float(np.sum(f(a))), implication_held=held, phi=phi)
        b = rng.standard_normal(n)
        a = _birkhoff_mixture(n, rng) @ b
        W = majorization.ds_witness(a, b)
        err = float(np.max(np.abs(W.ds_matrix @ b - a)))
        rec = float(np.max(np.abs(W.reconstruct_birkhoff() - W.ds_matrix)))
        ok = majorization.is_doubly_stochastic(W.ds_matrix) and len(W.birkhoff) <= n * n - 2 * n + 2
        return gap_report(-max(err, rec), 0.0, tol=1e-9, scale=1.0, reconstruction_error=err, birkhoff_error=rec, structure_ok=bool(ok))

    return _run("majorization-suite", cfg, checks, sample)


def suite_integral_repr(cfg):
    tol = cfg.tolerances.quad
    s_values = [s for s in cfg.s_list if _supported(s)] or list(INTEGRAL_S)

    def sample(rng, s, n):
        X = random_pd(n, rng)
        exact = matrix_power_spectral(X, s)
        approx = matrix_power_integral(X, s)
        rel = float(np.linalg.norm(approx - exact) / np.linalg.norm(exact))
        return gap_report(-rel, 0.0, tol=tol, scale=1.0, s=s, relative_error=rel)

    return _run("integral-repr", cfg, s_values, sample)


def _supported(s):
    try:
        representation_branch(s)
        return True
    except DomainError:
        return False


def suite_psi_convexity(cfg):
    tol = cfg.tolerances.gap

    def sample(rng, _, n):
        C = random_pd(n, rng)
        D = random_hermitian(n, rng)
        return hanner.psi_convexity_step_check(C, D, rng.uniform(0.01, 3.0), int(rng.integers(1, 4)), tol)

    return _run("psi-convexity", cfg, [None], sample)


def suite_partial_sums(cfg):
    tol = cfg.tolerances.gap

    def sample(rng, s, n):
        x, y = domain_vector_pair(n, rng)
        return hanner.partial_sum_bound_check(x, y, s, K=20, tol=tol)

    return _run("partial-sums", cfg, _s_below_one(cfg), sample)


def suite_lemma_2b2(cfg):
    def sample(rng, _, n):
        spec = explorer.random_spec(rng)
        c = explorer.construct_2x2(spec)
        err = max(c.residual_B, c.residual_target) / spec.scale
        return gap_report(-err, 0.0, tol=1e-9, scale=1.0, target=spec.target, which=spec.which)

    cfg2 = RunConfig(seed=cfg.seed, trials=cfg.trials, dims=(2,), tolerances=cfg.tolerances, threads=cfg.threads)
    return _run("lemma-2b2", cfg2, [None], sample)


SUITES = {
    "reverse-minkowski": suite_reverse_minkowski,
    "reverse-holder": suite_reverse_holder,
    "general-reverse-holder": suite_general_reverse_holder,
    "hanner": suite_hanner,
    "reverse-hanner": suite_reverse_hanner,
    "reverse-hanner-vector": suite_reverse_hanner_vector,
    "svr1": suite_svr1,
    "svr2": suite_svr2,
    "duality": suite_duality,
    "prop1": suite_prop1,
    "prop2": suite_prop2,
    "prop3": suite_prop3,
    "geomean": suite_geomean,
    "majorization-suite": suite_majorization,
    "integral-repr": suite_integral_repr,
    "psi-convexity": suite_psi_convexity,
    "partial-sums": suite_partial_sums,
    "lemma-2b2": suite_lemma_2b2,
}


def run_suite(name: str, cfg: RunConfig) -> list[GapReport]:
    try:
        fn = SUITES[name]
    except KeyError:
        raise KeyError(f"unknown suite {name!r}; choose from {sorted(SUITES)}") from None
    return fn(cfg)
