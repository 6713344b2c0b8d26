"""
Finite-difference cross-checks
==============================

Every separated equation is solved numerically on a cell-centred grid
after factoring out the origin behaviour r^s.  Two grids give a
Richardson-extrapolated eigenvalue and an error estimate.
"""

# %%
import numpy as np

from ksduality.radial import (
    kepler_radial_problem, oscillator_problem, solve, solve_angular_theta, solve_parabolic_pair,
)
from ksduality.spectra import KeplerQuantum, kepler_energy_parabolic, part_energy, shifted_momentum

# %%
n, omega, L, c = 3, 1.0, 1, 0.5
res = solve(oscillator_problem(n, omega, L, c), 4, ratio_check=True)
Lp = shifted_momentum(L, n, 2 * c)
print("FD     :", res.eigenvalues)
print("closed :", [part_energy(N, Lp, n, omega) for N in range(4)])
print("convergence ratio (about 4):", res.ratio)

# %%
res = solve(kepler_radial_problem(3, 1.0, 0.0), 2)
print("Kepler n=3:", res.eigenvalues, "expected", [-2 / 9, -0.08])

# %% [markdown]
# The two parabolic equations share E and a separation constant P; a
# secant iteration on E makes both normalizable at the same charge.

# %%
pair = solve_parabolic_pair(3, 1.0, 1.0, 0.0, 0)
print(pair)
print("closed form:", kepler_energy_parabolic(KeplerQuantum(0, 0, 0, 0, 1.0, 0.0, 3)))

# %% [markdown]
# The polar equation gives Lambda = lambda(lambda + n - 1) with
# lambda = (J' + L')/2 + integer.

# %%
print(np.round(solve_angular_theta(3, 0.0, 0.0, 0), 8))
