import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from schatten_lab.errors import DomainError
from schatten_lab.linalg_core import ginibre, haar_unitary
from schatten_lab.schatten import (
    Exponent,
    conjugate_exponent,
    kyfan,
    schatten,
    schatten_antinorm_or_zero,
    schatten_s_power,
    trace_norm,
    vector_s,
    vector_s_power,
)

EXPONENTS = [0.25, 0.5, 0.75, -0.5, -2.0, 1.0, 1.5, 3.0]


@pytest.mark.parametrize(
    "X, s, expected",
    [
        (np.diag([1.0, 4.0]), 0.5, 9.0),
        (np.diag([1.0, 2.0]), -1.0, 2.0 / 3.0),
        (np.eye(2), 2.0, math.sqrt(2.0)),
    ],
)
def test_schatten_examples(X, s, expected):
    assert schatten(X, s) == pytest.approx(expected, rel=1e-12)


@pytest.mark.parametrize(
    "X, s, expected",
    [
        (np.diag([1.0, 4.0]), 0.5, 3.0),
        (np.diag([3.0, 1.5]), 0.5, math.sqrt(3) + math.sqrt(1.5)),
    ],
)
def test_schatten_s_power_examples(X, s, expected):
    assert schatten_s_power(X, s) == pytest.approx(expected, rel=1e-12)


def test_s_one_is_trace_norm():
    X = ginibre(4, 3)
    assert schatten(X, 1.0) == pytest.approx(trace_norm(X), rel=1e-12)


@pytest.mark.parametrize(
    "x, s, expected",
    [
        ([1.0, 4.0], 0.5, 9.0),
        ([1.0, 1.0], -2.0, 2**-0.5),
        ([3.0, 3.5], 0.5, (math.sqrt(3) + math.sqrt(3.5)) ** 2),
    ],
)
def test_vector_examples(x, s, expected):
    assert vector_s(x, s) == pytest.approx(expected, rel=1e-12)


def test_vector_s_power_rejects_zero_for_negative_s():
    with pytest.raises(DomainError):
        vector_s_power([1.0, 0.0], -0.5)
    assert vector_s_power([1.0, 0.0], 0.5) == 1.0


@pytest.mark.parametrize(
    "X, k, expected",
    [
        (np.diag([3.0, 2.0, 1.0]), 2, 5.0),
        (np.diag([3.0, 2.0, 1.0]), 3, 6.0),
        (haar_unitary(3, 0), 1, 1.0),
    ],
)
def test_kyfan_examples(X, k, expected):
    assert kyfan(X, k) == pytest.approx(expected, rel=1e-12)


def test_kyfan_rejects_bad_k():
    with pytest.raises(ValueError):
        kyfan(np.eye(2), 3)


@pytest.mark.parametrize("s, expected", [(0.5, -1.0), (2.0, 2.0), (4.0, 4.0 / 3.0)])
def test_conjugate_exponent(s, expected):
    assert conjugate_exponent(s) == pytest.approx(expected)


def test_exponent_kind():
    assert Exponent(2.0).kind == "norm"
    assert Exponent(0.5).kind == "quasinorm"
    assert Exponent(-1.0).kind == "antinorm"
    assert Exponent(0.5).conjugate == -1.0
    with pytest.raises(DomainError):
        Exponent(0.0)
    with pytest.raises(DomainError):
        schatten(np.eye(2), 0.0)


def test_antinorm_of_singular():
    X = np.diag([1.0, 0.0])
    with pytest.raises(DomainError):
        schatten(X, -0.5)
    assert schatten_antinorm_or_zero(X, -0.5) == 0.0
    assert schatten_antinorm_or_zero(np.diag([1.0, 4.0]), -1.0) == pytest.approx(0.8)
    # near-zero singular values are kept for 0 < s < 1
    assert schatten(X, 0.5) == pytest.approx(1.0)


@given(st.integers(0, 2**32 - 1), st.integers(1, 5), st.sampled_from(EXPONENTS))
def test_unitary_invariance(seed, n, s):
    rng = np.random.default_rng(seed)
    X = ginibre(n, rng) + 0.1 * np.eye(n)
    U, V = haar_unitary(n, rng), haar_unitary(n, rng)
    try:
        ref = schatten(X, s)
    except DomainError:
        return
    assert schatten(U @ X @ V, s) == pytest.approx(ref, rel=1e-9)


@given(
    st.integers(0, 2**32 - 1),
    st.integers(1, 5),
    st.sampled_from(EXPONENTS),
    st.floats(0.01, 100.0) | st.floats(-100.0, -0.01),
)
def test_homogeneity(seed, n, s, c):
    X = ginibre(n, seed) + 0.1 * np.eye(n)
    try:
        ref = schatten(X, s)
    except DomainError:
        return
    assert schatten(c * X, s) == pytest.approx(abs(c) * ref, rel=1e-9)


@given(
    st.lists(st.floats(0.01, 50.0) | st.floats(-50.0, -0.01), min_size=1, max_size=6),
    st.sampled_from(EXPONENTS),
)
def test_diagonal_consistency(x, s):
    assert schatten(np.diag(x), s) == pytest.approx(vector_s(np.abs(x), s), rel=1e-12)


@given(st.integers(0, 2**32 - 1), st.integers(1, 5), st.sampled_from([1.0, 1.5, 2.0, 3.0]))
def test_triangle_inequality_for_norms(seed, n, p):
    rng = np.random.default_rng(seed)
    A, B = ginibre(n, rng), ginibre(n, rng)
    assert schatten(A + B, p) <= schatten(A, p) + schatten(B, p) + 1e-9
