import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ksduality.geometry import (
    GammaSet, GeometryError, build_gamma_set, chart_from_cartesian, chart_to_cartesian, ks_map,
    parabolic_block_norms, verify_gamma_set,
)


def test_n1_is_the_pauli_pair():
    g = build_gamma_set(1)
    assert np.array_equal(g.matrices[0], [[0, 1], [1, 0]])
    assert np.array_equal(g.matrices[1], [[1, 0], [0, -1]])
    a, b = g.matrices
    assert not np.any(a @ b + b @ a)


@pytest.mark.parametrize("n", [1, 2, 4, 8])
def test_canonical_sets_have_no_violations(n):
    g = build_gamma_set(n)
    assert len(g.matrices) == n + 1
    assert all(m.shape == (2 * n, 2 * n) for m in g.matrices)
    assert verify_gamma_set(g) == []


def test_n4_pairwise_products():
    mats = build_gamma_set(4).matrices
    eye = np.eye(8, dtype=int)
    for i, a in enumerate(mats):
        assert np.array_equal(a @ a, eye)
        for b in mats[i + 1:]:
            assert not np.any(a @ b + b @ a)


def test_last_matrix_is_block_diagonal():
    g = build_gamma_set(4)
    assert np.array_equal(g.matrices[-1], np.diag([1] * 4 + [-1] * 4))


@pytest.mark.parametrize("n", [0, 3, 5, 6, 16])
def test_inadmissible_dimension_rejected(n):
    with pytest.raises(GeometryError, match="no KS transformation"):
        build_gamma_set(n)


def test_identity_substitution_is_reported():
    g = build_gamma_set(2)
    mats = list(g.matrices)
    mats[1] = np.eye(4, dtype=np.int64)
    kinds = {v.identity for v in verify_gamma_set(GammaSet(2, tuple(mats)))}
    assert {"trace", "anticommutation"} <= kinds


def test_sign_flip_breaks_symmetry():
    g = build_gamma_set(2)
    mats = [m.copy() for m in g.matrices]
    r, c = np.argwhere(mats[0] != 0)[0]
    mats[0][r, c] *= -1
    kinds = {v.identity for v in verify_gamma_set(GammaSet(2, tuple(mats)))}
    assert "symmetry" in kinds


def test_json_round_trip():
    g = build_gamma_set(8)
    h = GammaSet.from_json(g.to_json())
    assert h.n == 8 and all(np.array_equal(a, b) for a, b in zip(g.matrices, h.matrices))


def test_ks_map_small_cases():
    g = build_gamma_set(1)
    p = ks_map(g, [1, 0])
    assert np.allclose(p.x, [0, 1]) and p.r == 1
    p = ks_map(g, [1, 1])
    assert np.allclose(p.x, [2, 0]) and p.r == 2


def test_ks_map_length_mismatch():
    with pytest.raises(GeometryError):
        ks_map(build_gamma_set(2), [1.0, 2.0, 3.0])


@pytest.mark.parametrize("n", [1, 2, 4, 8])
def test_norm_identity_random(n):
    g = build_gamma_set(n)
    rng = np.random.default_rng(n)
    for u in rng.standard_normal((200, 2 * n)):
        p = ks_map(g, u)
        rr = (u @ u) ** 2
        assert abs(p.x @ p.x - rr) / rr < 1e-12
        a, b = u[:n] @ u[:n], u[n:] @ u[n:]
        assert abs(p.x[-1] - (a - b)) <= 1e-12 * (a + b)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([1, 2, 4, 8]), st.integers(0, 2 ** 31 - 1))
def test_norm_identity_property(n, seed):
    u = np.random.default_rng(seed).uniform(-3, 3, 2 * n)
    p = ks_map(build_gamma_set(n), u)
    rr = (u @ u) ** 2
    assert abs(p.x @ p.x - rr) <= 1e-12 * rr
    assert p.r == pytest.approx(np.linalg.norm(p.x), rel=1e-12)


def test_parabolic_block_norms_match_map():
    g = build_gamma_set(4)
    u = np.random.default_rng(3).standard_normal(8)
    p = ks_map(g, u)
    chart = chart_from_cartesian("parabolic", p.x)
    U, V = parabolic_block_norms(g, u)
    assert chart.radial == pytest.approx((U, V), rel=1e-12)


def test_spherical_polar_axis():
    chart = chart_from_cartesian("spherical", [0, 0, 0, 2.5])
    assert chart.radial == (2.5,)
    assert chart.angles[0] == 0.0


def test_parabolic_equator():
    chart = chart_from_cartesian("parabolic", [0.6, 0.8, 0.0])
    assert chart.radial == pytest.approx((1.0, 1.0))


@pytest.mark.parametrize("kind", ["hyperspherical", "spherical", "parabolic"])
def test_chart_round_trip(kind):
    rng = np.random.default_rng(11)
    for x in rng.standard_normal((100, 5)):
        ch = chart_from_cartesian(kind, x)
        assert np.abs(chart_to_cartesian(ch) - x).max() < 1e-12
        if kind == "parabolic":
            assert min(ch.radial) >= 0
        else:
            assert 0 <= ch.angles[0] <= np.pi
            assert 0 <= ch.angles[-1] < 2 * np.pi


def test_zero_vector_is_degenerate():
    with pytest.raises(GeometryError, match="degenerate"):
        chart_from_cartesian("spherical", np.zeros(3))
