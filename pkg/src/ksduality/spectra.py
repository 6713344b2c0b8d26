"""
Closed-form spectra of the double singular oscillator and the generalized
MICZ-Kepler system, and the duality map between them.

Under the KS map an oscillator eigenvalue Z (the energy of the
2n-dimensional problem divided by 4) becomes the Coulomb charge, and the
oscillator frequency fixes the Kepler energy E = -omega^2 / 8.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field


class SpectrumError(ValueError):
    pass


def shifted_momentum(L: int, n: int, coupling: float) -> float:
    """Root L' of L'(L'+n-2) = L(L+n-2) + coupling connected to L as coupling -> 0.

    Parameters
    ----------
    L : int
        Angular momentum, L >= 0.
    n : int
        Dimension of one oscillator factor, n >= 2.
    coupling : float
        2 c_a on the oscillator side, 4 lambda_a on the Kepler side.
    """
    if n < 2:
        raise SpectrumError("closed-form spectra are implemented for n >= 2")
    if L < 0:
        raise SpectrumError("angular momentum must be nonnegative")
    h = (n - 2) / 2
    disc = (L + h) ** 2 + coupling
    if disc < 0:
        raise SpectrumError("no real root for L' (coupling too negative)")
    root = -h + math.sqrt(disc)
    if root < max(0.0, -h) - 1e-15:
        raise SpectrumError("shifted momentum left the admissible branch")
    return root


@dataclass(frozen=True)
class OscillatorQuantum:
    N1: int
    N2: int
    L1: int
    L2: int
    c1: float = 0.0
    c2: float = 0.0
    n: int = 2
    omega: float = 1.0

    def __post_init__(self):
        if min(self.N1, self.N2, self.L1, self.L2) < 0:
            raise SpectrumError("quantum numbers must be nonnegative")
        if self.c1 < 0 or self.c2 < 0:
            raise SpectrumError("singular strengths must be nonnegative")
        if self.omega <= 0:
            raise SpectrumError("omega must be positive")

    @property
    def L1p(self) -> float:
        return shifted_momentum(self.L1, self.n, 2 * self.c1)

    @property
    def L2p(self) -> float:
        return shifted_momentum(self.L2, self.n, 2 * self.c2)


@dataclass(frozen=True)
class KeplerQuantum:
    """Parabolic labels (n1, n2) or spherical labels (n_r, n_theta) with
    per-part angular momenta: J' is built from (L1, lambda1) and L' from
    (L2, lambda2).  With L1 = L2 = L this is the single-L labelling."""

    n1: int
    n2: int
    L1: int
    L2: int
    lam1: float = 0.0
    lam2: float = 0.0
    n: int = 2
    Z: float = 1.0

    def __post_init__(self):
        if min(self.n1, self.n2, self.L1, self.L2) < 0:
            raise SpectrumError("quantum numbers must be nonnegative")
        if self.lam1 < 0 or self.lam2 < 0:
            raise SpectrumError("lambda couplings must be nonnegative")
        if self.Z <= 0:
            raise SpectrumError("charge must be positive")

    @property
    def Jp(self) -> float:
        return shifted_momentum(self.L1, self.n, 4 * self.lam1)

    @property
    def Lp(self) -> float:
        return shifted_momentum(self.L2, self.n, 4 * self.lam2)


@dataclass(frozen=True)
class SpectrumEntry:
    quantum: dict
    energy: float
    formula: str
    degeneracy: int | None = None

    def to_dict(self):
        return asdict(self)


def part_energy(N: int, Lp: float, n: int, omega: float) -> float:
    """E_a = 2 omega (N + L'/2 + n/4)."""
    return 2 * omega * (N + Lp / 2 + n / 4)


def oscillator_energy(q: OscillatorQuantum) -> tuple[float, float, float]:
    """Return (Z, E1, E2) with Z = (E1 + E2)/4."""
    e1 = part_energy(q.N1, q.L1p, q.n, q.omega)
    e2 = part_energy(q.N2, q.L2p, q.n, q.omega)
    return (e1 + e2) / 4, e1, e2


def principal_number(total: int, n: int, Jp: float, Lp: float) -> float:
    """total + (n + J' + L')/2, shared by the spherical and parabolic forms."""
    return total + (n + Jp + Lp) / 2


def kepler_energy_parabolic(q: KeplerQuantum) -> float:
    """E = -Z^2 / (2 (n1 + n2 + (n + J' + L')/2)^2)."""
    nu = principal_number(q.n1 + q.n2, q.n, q.Jp, q.Lp)
    return -q.Z ** 2 / (2 * nu ** 2)


def kepler_energy_spherical(q: KeplerQuantum) -> float:
    """E = -Z^2 / (2 (k + (n+Q)/2)^2) with k + (n+Q)/2 = n_r + n_theta + (n+J'+L')/2.

    Here ``q.n1`` is n_r and ``q.n2`` is n_theta.
    """
    nu = principal_number(q.n1 + q.n2, q.n, q.Jp, q.Lp)
    return -q.Z ** 2 / (2 * nu ** 2)


def spherical_lambda(q: KeplerQuantum) -> float:
    """Angular label lambda = (J'+L')/2 + n_theta of the separated theta equation."""
    return (q.Jp + q.Lp) / 2 + q.n2


# ---------------------------------------------------------------------------
# Enumerations
# ---------------------------------------------------------------------------

def _labels(limit: float):
    """(a, b, L1, L2) with a + b + (L1 + L2)/2 <= limit."""
    for a in range(int(limit) + 1):
        for b in range(int(limit - a) + 1):
            rest = 2 * (limit - a - b)
            for L1 in range(int(rest) + 1):
                for L2 in range(int(rest - L1) + 1):
                    yield a, b, L1, L2


def oscillator_spectrum(n: int, omega: float, c1: float, c2: float, zmax: float) -> list[SpectrumEntry]:
    """All oscillator levels (N1, N2, L1, L2) with Z <= zmax."""
    out = []
    for N1, N2, L1, L2 in _labels(2 * zmax / omega):
        q = OscillatorQuantum(N1, N2, L1, L2, c1, c2, n, omega)
        Z, _, _ = oscillator_energy(q)
        if Z <= zmax * (1 + 1e-14):
            out.append(SpectrumEntry({"N1": N1, "N2": N2, "L1": L1, "L2": L2}, Z, "Eq24"))
    out.sort(key=lambda e: (e.energy, tuple(e.quantum.values())))
    return out


def kepler_spectrum(n: int, Z: float, lam1: float, lam2: float, max_principal: float,
                    form: str = "parabolic") -> list[SpectrumEntry]:
    """Kepler levels with principal number <= max_principal at fixed charge."""
    out = []
    energy = kepler_energy_parabolic if form == "parabolic" else kepler_energy_spherical
    tag = "Eq36" if form == "parabolic" else "Eq30"
    for a, b, L1, L2 in _labels(max_principal):
        q = KeplerQuantum(a, b, L1, L2, lam1, lam2, n, Z)
        if principal_number(a + b, n, q.Jp, q.Lp) > max_principal * (1 + 1e-14):
            continue
        labels = {"n1": a, "n2": b} if form == "parabolic" else {"n_r": a, "n_theta": b}
        labels.update({"L1": L1, "L2": L2})
        out.append(SpectrumEntry(labels, energy(q), tag))
    out.sort(key=lambda e: (e.energy, tuple(e.quantum.values())))
    return out


# ---------------------------------------------------------------------------
# Duality
# ---------------------------------------------------------------------------

@dataclass
class DualityReport:
    n: int
    omega: float
    c1: float
    c2: float
    zmax: float
    matches: list = field(default_factory=list)
    oscillator_orphans: list = field(default_factory=list)
    kepler_orphans: list = field(default_factory=list)
    max_relative_error: float = 0.0
    tolerance: float = 1e-12

    @property
    def passed(self) -> bool:
        return (not self.oscillator_orphans and not self.kepler_orphans
                and self.max_relative_error < self.tolerance)

    def to_dict(self):
        d = asdict(self)
        d["passed"] = self.passed
        return d


def duality_check(n: int, omega: float, c1: float, c2: float, zmax: float = 10.0,
                  omega_kepler: float | None = None, tol: float = 1e-12) -> DualityReport:
    """Match oscillator levels to Kepler levels with E = -omega^2/8.

    Identification: n1 = N1, n2 = N2, J' from (L1, lambda1 = c1/2),
    L' from (L2, lambda2 = c2/2), Coulomb charge Z = oscillator eigenvalue.
    The Kepler side is enumerated independently (principal number up to
    2 zmax / omega) so that orphans on either side are detected.
    ``omega_kepler`` lets a caller perturb the target energy.
    """
    wk = omega if omega_kepler is None else omega_kepler
    target = -wk ** 2 / 8
    rep = DualityReport(n, omega, c1, c2, zmax, tolerance=tol)
    lam1, lam2 = c1 / 2, c2 / 2
    osc = oscillator_spectrum(n, omega, c1, c2, zmax)
    # Kepler states at E = target need principal number nu = 2 Z / wk
    kep = {}
    for a, b, L1, L2 in _labels(2 * zmax / wk):
        probe = KeplerQuantum(a, b, L1, L2, lam1, lam2, n, 1.0)
        nu = principal_number(a + b, n, probe.Jp, probe.Lp)
        charge = wk * nu / 2
        if charge <= zmax * (1 + 1e-14):
            kep[(a, b, L1, L2)] = charge
    seen = set()
    for e in osc:
        key = (e.quantum["N1"], e.quantum["N2"], e.quantum["L1"], e.quantum["L2"])
        q = KeplerQuantum(*key, lam1, lam2, n, e.energy)
        E = kepler_energy_parabolic(q)
        rel = abs(E - target) / abs(target)
        if key not in kep or rel >= tol:
            rep.oscillator_orphans.append({"quantum": e.quantum, "Z": e.energy, "kepler_E": E,
                                           "relative_error": rel})
            continue
        seen.add(key)
        rep.max_relative_error = max(rep.max_relative_error, rel)
        rep.matches.append({"quantum": e.quantum, "Z": e.energy, "kepler_E": E})
    for key, charge in kep.items():
        if key not in seen:
            rep.kepler_orphans.append({"quantum": dict(zip(("n1", "n2", "L1", "L2"), key)), "Z": charge})
    if rep.oscillator_orphans:
        rep.max_relative_error = max([rep.max_relative_error] +
                                     [o["relative_error"] for o in rep.oscillator_orphans])
    return rep
