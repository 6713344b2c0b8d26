"""
Reduction to the two-dimensional singular oscillator
====================================================

Each hyperradial factor of the double singular oscillator is, after a
gauge transformation, a one-dimensional oscillator with an inverse-square
term a / r^2.  The identity is checked in an exact ring of functions
c r^p exp(-gamma r - beta r^2 - delta r^4).
"""

# %%
from fractions import Fraction

from ksduality.algebra import reduced_coupling, verify_dimensional_reduction
from ksduality.ring import AnalyticFunction, RadialRealization

# %% [markdown]
# The ring is closed under differentiation and multiplication by powers.

# %%
f = AnalyticFunction.monomial(2, 1, delta=Fraction(1, 4))
print("d^2/dr^2 of r^2 exp(-r^4/4):", f.differentiate().differentiate())

# %% [markdown]
# The radial SU(1,1) realization acts on r^s exp(-r^2/2) with eigenvalue
# s/2 + 1/4 of J0 when s(s-1) = 2g.

# %%
s = Fraction(5, 2)
R = RadialRealization(1, s * (s - 1) / 2)
ground = AnalyticFunction.monomial(s, 1, beta=Fraction(1, 2))
print(R.J0(ground) == ground * (s / 2 + Fraction(1, 4)), "Casimir:", R.casimir_value())

# %%
print("a for n=4, ell=3, c=1:", reduced_coupling(4, 3, 1))
rep = verify_dimensional_reduction(4, 0, 3, 1, 0)
for chk in rep.checks:
    print(f"{'PASS' if chk.passed else 'FAIL'}  {chk.residual:.1e}  {chk.name}")
