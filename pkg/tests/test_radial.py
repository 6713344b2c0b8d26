import math

import numpy as np
import pytest

from ksduality.radial import (
    RadialProblem, SolverError, kepler_radial_problem, oscillator_problem, reduced_oscillator_problem,
    solve, solve_angular_theta, solve_parabolic_pair,
)
from ksduality.spectra import KeplerQuantum, kepler_energy_parabolic, part_energy, shifted_momentum


def test_oscillator_ground_and_richardson_ratio():
    res = solve(oscillator_problem(3, 1.0, 0, 0.0), 3, ratio_check=True)
    assert np.allclose(res.eigenvalues, [1.5, 3.5, 5.5], rtol=1e-6)
    assert 3.5 <= res.ratio[0] <= 4.5
    assert np.all(res.errors < 1e-5)


@pytest.mark.parametrize("n,L,c,omega", [(2, 1, 0.5, 1.0), (4, 0, 1.5, 0.7)])
def test_singular_oscillator_levels(n, L, c, omega):
    res = solve(oscillator_problem(n, omega, L, c), 4, tol=1e-8)
    Lp = shifted_momentum(L, n, 2 * c)
    closed = [part_energy(N, Lp, n, omega) for N in range(4)]
    assert np.allclose(res.eigenvalues, closed, rtol=1e-6)


def test_kepler_radial_levels():
    res = solve(kepler_radial_problem(3, 1.0, 0.0), 2)
    assert res.eigenvalues == pytest.approx([-2 / 9, -0.08], rel=1e-6)


def test_reduced_oscillator():
    res = solve(reduced_oscillator_problem(1.0, 2.0), 2, tol=1e-8)
    closed = [2 * N + 1 + math.sqrt(2.25) for N in range(2)]
    assert res.eigenvalues == pytest.approx(closed, rel=1e-6)


def test_parabolic_pair_symmetric_case():
    pair = solve_parabolic_pair(3, 1.0, 0.0, 0.0, 0)
    assert pair.E == pytest.approx(-2 / 9, abs=1e-6)
    assert abs(pair.P) < 1e-9


def test_parabolic_pair_equal_lambdas_give_zero_separation():
    pair = solve_parabolic_pair(3, 1.0, 0.5, 0.5, 0)
    assert abs(pair.P) < 1e-9


def test_parabolic_pair_shifted():
    pair = solve_parabolic_pair(3, 1.0, 1.0, 0.0, 0)
    closed = kepler_energy_parabolic(KeplerQuantum(0, 0, 0, 0, 1.0, 0.0, 3))
    assert abs(pair.E - closed) < 1e-6


def test_theta_tower_free():
    vals = solve_angular_theta(3, 0.0, 0.0, 0)
    lam = np.arange(4)
    assert np.allclose(vals, lam * (lam + 2), atol=1e-6)


def test_theta_tower_shifted():
    Jp = (-1 + math.sqrt(5)) / 2
    lam = Jp + np.arange(4)
    assert np.allclose(solve_angular_theta(3, 0.25, 0.25, 0), lam * (lam + 2), rtol=1e-6)


def test_requesting_zero_levels_fails():
    with pytest.raises((SolverError, ValueError)):
        solve(oscillator_problem(3, 1.0, 0, 0.0), 0)
