"""
ksduality: the Kustaanheimo-Stiefel duality between the 2n-dimensional
singular oscillator and the (n+1)-dimensional generalized MICZ-Kepler
system, with exact checks of its hidden symmetry algebras.

Submodules
----------
geometry   Gamma-matrix sets, the KS map and coordinate charts.
fock       Truncated Fock spaces and exact ladder-operator matrices.
ring       Generalized power series and SU(1,1) differential realizations.
algebra    Exact certification of the Hahn, Higgs and Howe-duality identities.
special    Terminating hypergeometric polynomials.
spectra    Closed-form spectra and the duality map.
radial     Finite-difference radial and parabolic eigenvalue solvers.
qes        Quasi-exactly solvable sectors and their dual models.
overlaps   SU(1,1) x SU(1,1) coupling coefficients.
cli        Batch command-line interface.
"""

from .geometry import GammaSet, build_gamma_set, ks_map, verify_gamma_set
from .overlaps import coupled_diagonalize, validate_3f2
from .spectra import duality_check

__version__ = "0.1.0"

__all__ = ["GammaSet", "build_gamma_set", "verify_gamma_set", "ks_map", "duality_check",
           "coupled_diagonalize", "validate_3f2", "__version__"]
