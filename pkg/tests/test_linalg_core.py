import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from schatten_lab.errors import DomainError
from schatten_lab.linalg_core import (
    as_hermitian,
    calibrate_constant,
    closed_form_constant,
    eigh,
    eigvals_desc,
    geometric_mean0,
    haar_unitary,
    is_hermitian,
    make_scheme,
    matrix_power_integral,
    matrix_power_spectral,
    power_for_endpoints,
    random_hermitian,
    random_pd,
    random_psd,
    random_psd_pair,
    representation_branch,
    scalar_power_integral,
    scheme_for_exponent,
    svd_vals,
)

seeds = st.integers(0, 2**32 - 1)
dims = st.integers(1, 6)


@pytest.mark.parametrize(
    "X, expected",
    [
        (np.diag([1.0, 4.0]), [4.0, 1.0]),
        (np.eye(3), [1.0, 1.0, 1.0]),
        (np.array([[0.0, 1.0], [1.0, 0.0]]), [1.0, -1.0]),
    ],
)
def test_eigh_examples(X, expected):
    np.testing.assert_allclose(eigh(X).eigenvalues, expected, atol=1e-12)


def test_as_hermitian_rejects_non_hermitian():
    with pytest.raises(DomainError):
        as_hermitian(np.array([[0.0, 1.0], [0.0, 0.0]]))
    assert not is_hermitian(np.array([[1.0, 1e-6], [0.0, 1.0]]))


@given(seeds, dims)
def test_eigh_invariants(seed, n):
    X = random_hermitian(n, seed)
    sd = eigh(X)
    assert np.all(np.diff(sd.eigenvalues) <= 0)
    U = sd.eigenvectors
    assert np.linalg.norm(U.conj().T @ U - np.eye(n)) <= 1e-9
    assert np.linalg.norm(sd.reconstruct() - X) <= 1e-9 * (1 + np.linalg.norm(X))


def test_eigh_tie_order_is_stable():
    X = np.diag([2.0, 5.0, 2.0])
    sd = eigh(X)
    np.testing.assert_allclose(sd.eigenvalues, [5.0, 2.0, 2.0])
    # perturbing the tie does not move any downstream quantity by more than the perturbation
    sd2 = eigh(X + np.diag([1e-12, 0, 0]))
    np.testing.assert_allclose(sd.eigenvalues, sd2.eigenvalues, atol=1e-11)


@pytest.mark.parametrize(
    "X, expected",
    [
        (np.diag([-3.0, 2.0]), [3.0, 2.0]),
        (haar_unitary(4, 1), [1.0] * 4),
        (np.diag([1.0, 4.0]) @ haar_unitary(2, 7), [4.0, 1.0]),
    ],
)
def test_svd_vals_examples(X, expected):
    np.testing.assert_allclose(svd_vals(X), expected, atol=1e-12)


@given(seeds, dims)
def test_svd_unitary_invariance(seed, n):
    rng = np.random.default_rng(seed)
    X = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    U, V = haar_unitary(n, rng), haar_unitary(n, rng)
    np.testing.assert_allclose(svd_vals(U @ X @ V), svd_vals(X), atol=1e-9 * (1 + svd_vals(X)[0]))


@pytest.mark.parametrize(
    "X, s, expected",
    [
        (np.diag([1.0, 4.0]), 0.5, np.diag([1.0, 2.0])),
        (np.array([[2.0]]), -1.0, np.array([[0.5]])),
    ],
)
def test_matrix_power_spectral_examples(X, s, expected):
    np.testing.assert_allclose(matrix_power_spectral(X, s), expected, atol=1e-12)


@given(seeds, dims)
def test_matrix_power_one_is_identity_map(seed, n):
    X = random_psd(n, seed)
    np.testing.assert_allclose(matrix_power_spectral(X, 1.0), X, atol=1e-10 * (1 + np.abs(X).max()))


def test_negative_power_of_singular_raises():
    with pytest.raises(DomainError):
        matrix_power_spectral(np.diag([1.0, 0.0]), -0.5)


def test_power_of_indefinite_raises():
    with pytest.raises(DomainError):
        matrix_power_spectral(np.diag([1.0, -1.0]), 0.5)


def test_scheme_nodes_and_weights():
    q = make_scheme(64, 8.0)
    assert np.all(np.diff(q.nodes) > 0)
    assert np.all(q.weights > 0)


def test_power_for_endpoints_is_clipped():
    assert power_for_endpoints(2.0, 2.0) == 8.0
    assert power_for_endpoints(0.01, 5.0) == 48.0
    assert 8.0 <= power_for_endpoints(0.1, 0.3) <= 48.0


@pytest.mark.parametrize("s", [0.5, 0.25, 0.9, -0.5, -0.1, -1.5, -2.5, -3.3, -2.0, 1.5])
def test_calibrated_constant_matches_closed_form(s):
    assert calibrate_constant(s) == pytest.approx(closed_form_constant(s), rel=1e-9)


def test_c_half_is_one_over_pi():
    assert calibrate_constant(0.5) == pytest.approx(1 / math.pi, abs=1e-6)
    assert scalar_power_integral(1.0, 0.5) == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize("s", [0.5, -0.5, -1.5, -2.5, -3.3, 1.5])
@pytest.mark.parametrize("x", [0.05, 1.0, 7.0, 40.0])
def test_scalar_integral_homogeneity(s, x):
    assert scalar_power_integral(x, s) == pytest.approx(x**s, rel=1e-9)


@pytest.mark.parametrize("s", [-1.5, -2.5])
def test_literal_deep_kernel_agrees_at_half_integers(s):
    assert scalar_power_integral(3.0, s, variant="literal") == pytest.approx(3.0**s, rel=1e-9)


@pytest.mark.parametrize("s", [-1.3, -2.7, -3.3])
def test_literal_deep_kernel_fails_off_half_integers(s):
    value = scalar_power_integral(3.0, s, variant="literal")
    assert abs(value - 3.0**s) > 1e-3 * 3.0**s


def test_literal_deep_kernel_diverges_at_integers():
    with pytest.raises(DomainError):
        scheme_for_exponent(-2.0, variant="literal")


def test_representation_branch_rejects_unsupported():
    for s in (0.0, 1.0, -1.0, 2.0, 2.5):
        with pytest.raises(DomainError):
            representation_branch(s)


@pytest.mark.parametrize(
    "X, s",
    [(np.diag([1.0, 4.0]), 0.5), (np.diag([2.0, 5.0]), -1.5)],
)
def test_matrix_power_integral_examples(X, s):
    np.testing.assert_allclose(matrix_power_integral(X, s), matrix_power_spectral(X, s), rtol=1e-9)


@given(seeds, st.integers(1, 6), st.sampled_from([0.5, 0.25, -0.5, -1.5, -2.5, 1.5]))
def test_matrix_power_integral_matches_spectral(seed, n, s):
    X = random_pd(n, seed)
    exact = matrix_power_spectral(X, s)
    approx = matrix_power_integral(X, s)
    assert np.linalg.norm(approx - exact) <= 1e-6 * np.linalg.norm(exact)


def test_matrix_power_integral_needs_pd():
    with pytest.raises(DomainError):
        matrix_power_integral(np.diag([1.0, 0.0]), 0.5)


@pytest.mark.parametrize(
    "A, B, expected",
    [
        (np.diag([4.0, 1.0]), np.diag([4.0, 1.0]), np.diag([4.0, 1.0])),
        (np.diag([4.0, 1.0]), np.diag([1.0, 4.0]), np.diag([2.0, 2.0])),
    ],
)
def test_geometric_mean_examples(A, B, expected):
    np.testing.assert_allclose(geometric_mean0(A, B), expected, atol=1e-12)


@given(seeds, st.integers(1, 5))
def test_geometric_mean_identity_and_symmetry(seed, n):
    rng = np.random.default_rng(seed)
    A, B = random_pd(n, rng), random_pd(n, rng)
    np.testing.assert_allclose(geometric_mean0(np.eye(n), B), matrix_power_spectral(B, 0.5), atol=1e-9 * np.abs(B).max())
    np.testing.assert_allclose(geometric_mean0(A, B), geometric_mean0(B, A), atol=1e-9 * (np.abs(A).max() + np.abs(B).max()))


@given(seeds, dims)
def test_samplers(seed, n):
    C, D = random_psd_pair(n, seed)
    assert min(eigvals_desc(C + D)[-1], eigvals_desc(C - D)[-1]) >= -1e-12 * max(1.0, np.abs(C).max())
    U = haar_unitary(n, seed)
    np.testing.assert_allclose(U @ U.conj().T, np.eye(n), atol=1e-9)
    assert eigvals_desc(random_psd(n, seed))[-1] >= -1e-12
    assert eigvals_desc(random_pd(n, seed))[-1] > 0
    np.testing.assert_array_equal(random_hermitian(n, seed), random_hermitian(n, seed))
    np.testing.assert_array_equal(random_psd_pair(n, seed)[1], D)
