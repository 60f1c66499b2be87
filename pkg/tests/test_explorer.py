import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from schatten_lab.errors import DomainError, InadmissibleTargetError
from schatten_lab.explorer import (
    FIGURE1,
    TwoByTwoSpec,
    commuting_gap,
    construct_2x2,
    counterexample_search,
    quartic_product,
    random_spec,
    rotation,
    rotation_sweep,
    sign_changes,
    sweep_gap,
)
from schatten_lab.hanner import hanner_side
from schatten_lab.parallel import trial_rng
from schatten_lab.schatten import schatten_s_power, vector_s

seeds = st.integers(0, 2**32 - 1)


def test_construct_example():
    c = construct_2x2(TwoByTwoSpec((2.0, 0.0), (1.0, -1.0), 2.0, 1))
    np.testing.assert_allclose(c.B, [[-0.5, math.sqrt(3) / 2], [math.sqrt(3) / 2, 0.5]], atol=1e-12)
    np.testing.assert_allclose(c.eigenvalues_sum, [2.0, 0.0], atol=1e-12)
    assert np.linalg.det(c.B) == pytest.approx(-1.0)


def test_construct_boundaries():
    aligned = construct_2x2(TwoByTwoSpec((3.0, 1.0), (2.0, -1.0), 5.0, 1))
    assert aligned.x2 == pytest.approx(0.0, abs=1e-12)
    np.testing.assert_allclose(aligned.B, np.diag([2.0, -1.0]), atol=1e-12)
    cross = construct_2x2(TwoByTwoSpec((3.0, 1.0), (2.0, -1.0), 3.0, 1))
    assert cross.x2 == pytest.approx(0.0, abs=1e-12)
    np.testing.assert_allclose(cross.B, np.diag([-1.0, 2.0]), atol=1e-12)


@pytest.mark.parametrize("target", [6.0, -1.0, 2.5])
def test_construct_rejects_inadmissible(target):
    spec = TwoByTwoSpec((3.0, 1.0), (2.0, -1.0), target, 1)
    assert quartic_product(spec.lamA, spec.lamB, target) > 0
    assert not spec.admissible
    with pytest.raises(InadmissibleTargetError):
        construct_2x2(spec)


def test_construct_rejects_wrong_index():
    with pytest.raises(InadmissibleTargetError):
        construct_2x2(TwoByTwoSpec((3.0, 1.0), (2.0, -1.0), 0.0, 1))


def test_spec_validation():
    with pytest.raises(DomainError):
        TwoByTwoSpec((1.0, 1.0), (2.0, 0.0), 1.0)
    with pytest.raises(DomainError):
        TwoByTwoSpec((2.0, 1.0), (2.0, 0.0), 1.0, which=3)
    assert TwoByTwoSpec((1.0, 2.0), (0.0, 2.0), 3.0).lamA == (2.0, 1.0)


@given(seeds)
def test_construction_invariants(seed):
    spec = random_spec(np.random.default_rng(seed))
    assert spec.admissible
    c = construct_2x2(spec)
    assert c.x2 >= 0
    (b1, b2) = spec.lamB
    assert np.trace(c.B) == pytest.approx(b1 + b2, abs=1e-9)
    assert np.linalg.det(c.B) == pytest.approx(b1 * b2, abs=1e-9 * spec.scale**2)
    assert c.residual_B <= 1e-9 * spec.scale and c.residual_target <= 1e-9 * spec.scale


@given(seeds)
def test_construction_is_unique_up_to_phase(seed):
    spec = random_spec(np.random.default_rng(seed))
    c = construct_2x2(spec)
    # every rotation of diag(lamB) that realises the target has |B12| = x2
    for t in np.linspace(0.0, math.pi, 4001):
        R = rotation(t)
        B = R @ np.diag(spec.lamB) @ R.T
        ev = np.linalg.eigvalsh(np.diag(spec.lamA) + B)[::-1]
        if abs(ev[spec.which - 1] - spec.target) <= 1e-12:
            assert abs(B[0, 1]) == pytest.approx(c.x2, abs=1e-9)


def test_rotation_sweep_shapes_and_zero_b():
    recs = rotation_sweep((2.0, 1.0), (0.0, 0.0), 0.5, grid=2)
    assert len(recs) == 2
    assert all(abs(r.gap) <= 1e-12 for r in recs)
    with pytest.raises(ValueError):
        rotation_sweep((2.0, 1.0), (1.0, 0.0), 0.5, grid=1)


@pytest.mark.parametrize("s", [0.25, 0.5, 0.75, -0.5])
def test_sweep_endpoints_are_commuting(s):
    lamA, lamB = FIGURE1
    recs = rotation_sweep(lamA, lamB, s, grid=11)
    assert recs[0].gap == pytest.approx(commuting_gap(lamA, lamB, s), abs=1e-9)
    assert recs[-1].gap == pytest.approx(commuting_gap(lamA, lamB, s, math.pi), abs=1e-9)


@pytest.mark.parametrize("t", [0.0, 0.3, 1.1, 2.9])
def test_sweep_gap_matches_matrix_evaluation(t):
    lamA, lamB, s = FIGURE1[0], FIGURE1[1], 0.5
    A = np.diag(lamA)
    R = rotation(t)
    B = R @ np.diag(lamB) @ R.T
    F = schatten_s_power(A + B, s) + schatten_s_power(A - B, s)
    H = hanner_side(vector_s(lamA, s), vector_s(lamB, s), s)
    assert sweep_gap(lamA, lamB, s, t) == pytest.approx(F - H, abs=1e-12)


def test_sweep_flags_singular_points():
    recs = rotation_sweep((1.0, -1.0), (1.0, -1.0), -0.5, grid=3)
    assert recs[0].singular and math.isnan(recs[0].gap)
    assert recs[0].to_dict()["gap"] is None


def test_figure1_sign_changes():
    recs = rotation_sweep(*FIGURE1, 0.5, grid=721)
    roots = sign_changes(recs)
    assert roots and all(0 < r < math.pi for r in roots)
    for r in roots:
        assert sweep_gap(*FIGURE1, 0.5, r - 1e-6) * sweep_gap(*FIGURE1, 0.5, r + 1e-6) <= 0


def test_counterexample_search_includes_figure1():
    found = counterexample_search(trials=5, seed=0, grid=181)
    assert any(c.trial == 0 for c in found)
    for c in found:
        assert c.recompute() == pytest.approx(c.gap, abs=1e-12)


def test_counterexample_search_psd_only_is_empty():
    found = counterexample_search(s_list=(0.25, 0.5, 0.75), trials=60, seed=3, grid=181, psd_only=True)
    assert found == []


def test_counterexample_search_edge_cases():
    assert counterexample_search(s_list=(), trials=10) == []
    with pytest.raises(DomainError):
        counterexample_search(dim=3)


def test_counterexample_search_deterministic():
    a = counterexample_search(trials=20, seed=9, grid=91, threads=1)
    b = counterexample_search(trials=20, seed=9, grid=91, threads=4)
    assert a == b


def test_random_spec_respects_gaps():
    for i in range(50):
        spec = random_spec(trial_rng(1, i))
        assert spec.lamA[0] - spec.lamA[1] >= 0.05
        assert spec.lamB[0] - spec.lamB[1] >= 0.05
        assert all(-8 <= v <= 8 for v in spec.lamA + spec.lamB)
