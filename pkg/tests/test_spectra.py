import math

import numpy as np
import pytest
from scipy.optimize import brentq

from ksduality.spectra import (
    KeplerQuantum, OscillatorQuantum, SpectrumError, duality_check, kepler_energy_parabolic,
    kepler_energy_spherical, kepler_spectrum, oscillator_energy, oscillator_spectrum, shifted_momentum,
)


def test_two_dimensional_ground_state():
    Z, E1, E2 = oscillator_energy(OscillatorQuantum(0, 0, 0, 0, n=2))
    assert (Z, E1, E2) == (0.5, 1.0, 1.0)
    q = KeplerQuantum(0, 0, 0, 0, n=2, Z=Z)
    assert kepler_energy_parabolic(q) == -1 / 8


def test_singular_strength_shifts_momentum():
    # c1 = 1 at n = 3, L = 0 gives L' = 1, so E1 rises by one quantum
    Lp = shifted_momentum(0, 3, 2.0)
    oracle = brentq(lambda x: x * (x + 1) - 2.0, 0, 5)
    assert Lp == pytest.approx(oracle, abs=1e-14) and Lp == pytest.approx(1.0)
    _, E1, _ = oscillator_energy(OscillatorQuantum(0, 0, 0, 0, c1=1.0, n=3))
    _, E1_free, _ = oscillator_energy(OscillatorQuantum(0, 0, 0, 0, n=3))
    assert E1 - E1_free == pytest.approx(1.0)


def test_radial_quantum_raises_charge_by_half_omega():
    base = oscillator_energy(OscillatorQuantum(0, 1, 2, 1, n=4, omega=1.3))[0]
    up = oscillator_energy(OscillatorQuantum(1, 1, 2, 1, n=4, omega=1.3))[0]
    assert up - base == pytest.approx(0.65)


def test_kepler_ground_state_n3():
    q = KeplerQuantum(0, 0, 0, 0, n=3)
    assert kepler_energy_parabolic(q) == pytest.approx(-2 / 9, rel=1e-15)
    assert kepler_energy_spherical(q) == pytest.approx(-2 / 9, rel=1e-15)


def test_pure_micz_limit():
    # J' = L' = L when the lambdas vanish
    q = KeplerQuantum(1, 0, 2, 2, n=3)
    assert kepler_energy_parabolic(q) == pytest.approx(-1 / (2 * (1 + (3 + 4) / 2) ** 2))


def test_deeper_principal_number():
    a = kepler_energy_parabolic(KeplerQuantum(0, 0, 1, 1, 0.3, 0.2, 4))
    b = kepler_energy_parabolic(KeplerQuantum(1, 0, 1, 1, 0.3, 0.2, 4))
    assert b > a


def test_spherical_and_parabolic_agree():
    rng = np.random.default_rng(0)
    for _ in range(100):
        n = int(rng.choice([2, 3, 4, 8]))
        q = KeplerQuantum(*map(int, rng.integers(0, 5, 3)), int(rng.integers(0, 5)),
                          *rng.uniform(0, 3, 2), n=n, Z=float(rng.uniform(0.5, 3)))
        q = KeplerQuantum(q.n1, q.n2, q.L1, q.L1, q.lam1, q.lam2, n, q.Z)
        assert kepler_energy_spherical(q) == kepler_energy_parabolic(q)


def test_spectrum_signs():
    assert all(e.energy > 0 for e in oscillator_spectrum(2, 1.0, 0.5, 1.5, 4))
    assert all(e.energy < 0 for e in kepler_spectrum(3, 1.0, 0.5, 0.0, 4))


@pytest.mark.parametrize("c1,c2", [(0.0, 0.0), (2.0, 0.0), (0.7, 3.1)])
def test_duality_matches(c1, c2):
    rep = duality_check(2, 1.0, c1, c2, zmax=6.0)
    assert rep.passed and rep.matches
    assert not rep.oscillator_orphans and not rep.kepler_orphans
    assert rep.max_relative_error <= 1e-12


def test_duality_negative_control():
    rep = duality_check(2, 1.0, 0.0, 0.0, zmax=6.0, omega_kepler=1.001)
    assert not rep.passed and rep.oscillator_orphans


def test_single_mode_rejected():
    with pytest.raises(SpectrumError):
        oscillator_spectrum(1, 1.0, 0.0, 0.0, 3)
