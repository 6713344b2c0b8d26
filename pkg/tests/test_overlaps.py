import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ksduality.overlaps import (
    OverlapError, bargmann_index, bargmann_roots, coupled_casimir, coupled_diagonalize, expected_casimir,
    physical_overlap, quadrature_overlaps_2d, validate_3f2,
)


def dense_casimir(lam1, lam2, N):
    diag, off = coupled_casimir(lam1, lam2, N)
    return np.diag(diag) + np.diag(off, 1) + np.diag(off, -1)


def test_single_state_shell():
    t = coupled_diagonalize(0.5, 0.75, 0)
    assert t.C.tolist() == [[1.0]]
    assert t.casimir[0] == pytest.approx(1.25 * 0.25)


@settings(max_examples=40, deadline=None)
@given(st.floats(0.05, 4.0), st.floats(0.05, 4.0), st.integers(1, 12))
def test_unitarity_and_casimir_spectrum(lam1, lam2, N):
    t = coupled_diagonalize(lam1, lam2, N)
    assert t.orthogonality_error() < 1e-12
    ref = expected_casimir(lam1, lam2, N)
    assert np.abs(t.casimir - ref).max() < 1e-11 * max(1, np.abs(ref).max())
    # every row is an eigenvector of the coupled Casimir
    K = dense_casimir(lam1, lam2, N)
    resid = K @ t.C.T - t.C.T * t.casimir
    assert np.abs(resid).max() < 1e-10 * max(1, np.abs(ref).max())


def test_sign_convention():
    t = coupled_diagonalize(0.3, 1.1, 6)
    for row in t.C:
        assert row[np.flatnonzero(np.abs(row) > 1e-14)[0]] > 0


@pytest.mark.parametrize("lam1,lam2,N", [(0.25, 0.25, 4), (0.5, 1.5, 6), (1.25, 0.75, 9)])
def test_hypergeometric_reading(lam1, lam2, N):
    rep = validate_3f2(coupled_diagonalize(lam1, lam2, N))
    assert rep.passing == ["2l1+2l2+p-1"]
    assert rep.readings["2l1+2l2+p-1"]["max_residual"] < 1e-10
    assert rep.readings["2l1+l2+p-1"]["max_residual"] > 1e-6


def test_quadrature_oracle():
    for N in (1, 3, 5):
        Q = quadrature_overlaps_2d(N)
        C = coupled_diagonalize(0.25, 0.25, N).C
        aligned = Q * np.sign(np.sum(Q * C, axis=1))[:, None]
        assert np.abs(aligned - C).max() < 1e-12


def test_bargmann_indices():
    assert bargmann_index(3, 0, 0) == pytest.approx(0.75)
    assert bargmann_index(1, 0, 0) == pytest.approx(0.25)
    assert bargmann_index(1, 1, 0) == pytest.approx(0.75)
    lo, hi = bargmann_roots(-3 / 16)
    assert (lo, hi) == pytest.approx((0.25, 0.75))


def test_physical_overlap():
    t = physical_overlap(2, 1, 0, 0.5, 1.0, 5)
    assert t.orthogonality_error() < 1e-12


def test_invalid_inputs():
    with pytest.raises(OverlapError):
        coupled_diagonalize(0.0, 1.0, 3)
    with pytest.raises(OverlapError):
        coupled_diagonalize(0.5, 1.0, -1)
    with pytest.raises(OverlapError):
        bargmann_roots(-1.0)
