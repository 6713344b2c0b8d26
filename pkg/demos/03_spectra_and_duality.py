"""
Closed-form spectra and the oscillator/Kepler duality
=====================================================

Under the KS map the oscillator frequency and the Kepler energy trade
places with the oscillator energy and the Kepler charge: a level of the
2n-dimensional double singular oscillator with energy 4Z corresponds to
a generalized MICZ-Kepler level with charge Z at energy -omega^2/8.
"""

# %%
from ksduality.spectra import (
    KeplerQuantum, OscillatorQuantum, duality_check, kepler_energy_parabolic, kepler_energy_spherical,
    oscillator_energy,
)

# %%
Z, E1, E2 = oscillator_energy(OscillatorQuantum(0, 0, 0, 0, n=2))
print(f"oscillator ground state: E1={E1}, E2={E2}, Z={Z}")
print("Kepler level at that charge:", kepler_energy_parabolic(KeplerQuantum(0, 0, 0, 0, n=2, Z=Z)))

# %% [markdown]
# The spherical and parabolic Kepler formulas share the principal number
# n_r + n_theta + (n + J' + L')/2.

# %%
q = KeplerQuantum(1, 2, 1, 1, lam1=0.5, lam2=1.25, n=3, Z=1.0)
print(kepler_energy_parabolic(q), kepler_energy_spherical(q))

# %% [markdown]
# Enumerate every oscillator level up to Z = 10 and match it to a Kepler
# level; singular strengths c_a enter through lambda_a = c_a / 2.

# %%
for n, c1, c2 in [(2, 0.0, 0.0), (2, 2.0, 0.0), (4, 1.3, 3.7)]:
    rep = duality_check(n, 1.0, c1, c2, zmax=10.0)
    print(f"n={n} c=({c1}, {c2}): {len(rep.matches)} matches, "
          f"orphans={len(rep.oscillator_orphans) + len(rep.kepler_orphans)}, "
          f"max rel. error={rep.max_relative_error:.1e}")

rep = duality_check(2, 1.0, 0.0, 0.0, zmax=5.0, omega_kepler=1.001)
print("with a perturbed frequency: passed =", rep.passed)
