"""
Interbasis overlaps of SU(1,1) x SU(1,1): the uncoupled basis
|n, lam1> (x) |N-n, lam2> against the eigenbasis of the coupled Casimir.

Both factors carry the positive discrete series
J0|m> = (m + lam)|m>,  J+|m> = sqrt((m+1)(m+2 lam))|m+1>.
On the shell n1 + n2 = N the coupled Casimir
K2 = Q1 + Q2 + 2 J0' J0'' - J+' J-'' - J-' J+''
is a symmetric tridiagonal matrix with eigenvalues
(lam1 + lam2 + j)(lam1 + lam2 + j - 1), j = 0..N.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import eigh_tridiagonal
from scipy.special import eval_genlaguerre, eval_hermite, gammaln, roots_genlaguerre

from .special import f32_unit


class OverlapError(ValueError):
    pass


READINGS = {
    "2l1+l2+p-1": lambda l1, l2, p: 2 * l1 + l2 + p - 1,
    "2l1+2l2+p-1": lambda l1, l2, p: 2 * l1 + 2 * l2 + p - 1,
}


@dataclass
class OverlapTable:
    """Rows j (coupled label lam12 = lam1 + lam2 + j), columns n (first-factor quanta)."""

    lam1: float
    lam2: float
    N: int
    C: np.ndarray
    casimir: np.ndarray
    convention: str = "rows normalized, first nonzero entry positive"

    @property
    def lam12(self) -> np.ndarray:
        return self.lam1 + self.lam2 + np.arange(self.N + 1)

    def orthogonality_error(self) -> float:
        eye = np.eye(self.N + 1)
        return float(max(np.abs(self.C.T @ self.C - eye).max(), np.abs(self.C @ self.C.T - eye).max()))

    def to_dict(self):
        return {"lam1": self.lam1, "lam2": self.lam2, "N": self.N, "convention": self.convention,
                "lam12": self.lam12.tolist(), "casimir": self.casimir.tolist(), "C": self.C.tolist()}


def coupled_casimir(lam1: float, lam2: float, N: int) -> tuple[np.ndarray, np.ndarray]:
    """Diagonal and off-diagonal of K2 in the basis |n, N-n>, n = 0..N."""
    if lam1 <= 0 or lam2 <= 0:
        raise OverlapError("Bargmann indices must be positive")
    if N < 0:
        raise OverlapError("shell must be nonnegative")
    n = np.arange(N + 1, dtype=float)
    m = N - n
    q1, q2 = lam1 * (lam1 - 1), lam2 * (lam2 - 1)
    diag = q1 + q2 + 2 * (n + lam1) * (m + lam2)
    # <n+1, m-1| -J+' J-'' - J-' J+'' |n, m> = -sqrt((n+1)(n+2 lam1)) sqrt(m (m + 2 lam2 - 1))
    k = n[:-1]
    off = -np.sqrt((k + 1) * (k + 2 * lam1)) * np.sqrt((N - k) * (N - k + 2 * lam2 - 1))
    return diag, off


def coupled_diagonalize(lam1: float, lam2: float, N: int) -> OverlapTable:
    """Overlap table from the eigenvectors of the coupled Casimir."""
    diag, off = coupled_casimir(lam1, lam2, N)
    if N == 0:
        return OverlapTable(lam1, lam2, 0, np.ones((1, 1)), diag.copy())
    vals, vecs = eigh_tridiagonal(diag, off)
    gaps = np.diff(vals)
    if np.any(gaps <= 1e-12 * max(1.0, abs(vals).max())):
        raise OverlapError("degenerate coupled Casimir eigenvalues")
    C = vecs.T.copy()
    for row in C:
        nz = np.flatnonzero(np.abs(row) > 1e-14)
        if nz.size and row[nz[0]] < 0:
            row *= -1
    return OverlapTable(lam1, lam2, N, C, vals)


def expected_casimir(lam1: float, lam2: float, N: int) -> np.ndarray:
    l12 = lam1 + lam2 + np.arange(N + 1)
    return l12 * (l12 - 1)


# ---------------------------------------------------------------------------
# 3F2 validation
# ---------------------------------------------------------------------------

@dataclass
class F32Report:
    N: int
    lam1: float
    lam2: float
    readings: dict = field(default_factory=dict)
    passing: list = field(default_factory=list)
    tolerance: float = 1e-10

    @property
    def passed(self) -> bool:
        return bool(self.passing)

    def to_dict(self):
        return {"N": self.N, "lam1": self.lam1, "lam2": self.lam2, "tolerance": self.tolerance,
                "readings": self.readings, "passing": self.passing, "passed": self.passed}


def validate_3f2(table: OverlapTable, tol: float = 1e-10) -> F32Report:
    """Test C[p][n] = h_n w_p 3F2(-n, -p, X; -N, 2 lam1; 1) for both readings of X.

    With h_n taken from the p = 0 row (where the 3F2 is 1), each row p must
    be a constant multiple w_p of h_n * 3F2(...).  w_p is fitted by least
    squares and the reading passes when the largest residual is below
    ``tol`` for every row.
    """
    l1, l2, N = table.lam1, table.lam2, table.N
    rep = F32Report(N, l1, l2, tolerance=tol)
    h = table.C[0]
    for name, X in READINGS.items():
        worst = 0.0
        weights = []
        for p in range(N + 1):
            F = np.array([float(f32_unit(-n, -p, X(l1, l2, p), -N, 2 * l1)) for n in range(N + 1)])
            g = h * F
            w = float(g @ table.C[p] / (g @ g))
            weights.append(w)
            worst = max(worst, float(np.abs(table.C[p] - w * g).max()))
        ok = worst < tol and all(np.isfinite(weights)) and all(w != 0 for w in weights)
        rep.readings[name] = {"max_residual": worst, "w": weights, "h": h.tolist(), "passed": ok}
        if ok:
            rep.passing.append(name)
    return rep


# ---------------------------------------------------------------------------
# Physical Bargmann indices
# ---------------------------------------------------------------------------

def bargmann_roots(Q: float) -> tuple[float, float]:
    """Both roots of lam(lam - 1) = Q."""
    disc = 0.25 + Q
    if disc < 0:
        raise OverlapError("Casimir below -1/4: no real Bargmann index")
    s = math.sqrt(disc)
    return 0.5 - s, 0.5 + s


def bargmann_index(n: int, L: int, c: float) -> float:
    """lam = L'/2 + n/4 for the hyperradial realization, L'(L'+n-2) = L(L+n-2) + 2c.

    The root for L' is the one continuously connected to L; it satisfies
    lam(lam - 1) = (8g - 3)/16 with g = (4L(L+n-2) + 8c + (n-3)(n-1))/8.
    """
    h = (n - 2) / 2
    disc = (L + h) ** 2 + 2 * c
    if disc < 0:
        raise OverlapError("no real shifted momentum")
    root = math.sqrt(disc)
    Lp = -h + (root if L + h >= 0 else -root)
    lam = Lp / 2 + n / 4
    if lam <= 0:
        raise OverlapError("non-positive Bargmann index on the physical branch")
    return lam


def physical_overlap(n: int, L1: int, L2: int, c1: float, c2: float, N: int) -> OverlapTable:
    """Overlap table for the oscillator factors with the given angular data."""
    return coupled_diagonalize(bargmann_index(n, L1, c1), bargmann_index(n, L2, c2), N)


# ---------------------------------------------------------------------------
# Quadrature oracle (two-dimensional oscillator, even-even sector)
# ---------------------------------------------------------------------------

def _hermite_function(k: int, x):
    lognorm = -0.5 * (k * math.log(2) + gammaln(k + 1) + 0.5 * math.log(math.pi))
    return np.exp(lognorm) * eval_hermite(k, x) * np.exp(-x * x / 2)


def _polar_function(nr: int, m: int, rho, phi):
    lognorm = 0.5 * (math.log(2) + gammaln(nr + 1) - gammaln(nr + m + 1))
    radial = np.exp(lognorm) * rho ** m * np.exp(-rho * rho / 2) * eval_genlaguerre(nr, m, rho * rho)
    ang = np.cos(m * phi) / math.sqrt(math.pi) if m else np.full_like(phi, 1 / math.sqrt(2 * math.pi))
    return radial * ang


def quadrature_overlaps_2d(N: int) -> np.ndarray:
    """<polar(n_r = N-j, m = 2j) | hermite(2n) hermite(2N-2n)> by quadrature.

    Both factors are 1D oscillators in the lam = 1/4 (even) sector, so row
    j, column n should reproduce the coupled table for lam1 = lam2 = 1/4 up
    to the sign of each row.
    """
    nt = 2 * N + 4
    t, wt = roots_genlaguerre(nt, 0.0)          # int_0^inf e^{-t} f(t) dt, t = rho^2
    nphi = 8 * N + 8
    phi = 2 * math.pi * np.arange(nphi) / nphi
    rho = np.sqrt(t)[:, None]
    P = phi[None, :]
    x, y = rho * np.cos(P), rho * np.sin(P)
    weight = (wt * np.exp(t) / 2)[:, None] * (2 * math.pi / nphi)
    out = np.zeros((N + 1, N + 1))
    for j in range(N + 1):
        pol = _polar_function(N - j, 2 * j, rho, P)
        for n in range(N + 1):
            her = _hermite_function(2 * n, x) * _hermite_function(2 * (N - n), y)
            out[j, n] = float(np.sum(pol * her * weight))
    return out
