"""
Generalized Kustaanheimo-Stiefel geometry.

Gamma-matrix sets are built by Cayley-Dickson doubling of the real numbers:
the left-multiplication matrices of the basis units of the n-dimensional
division algebra (n = 1, 2, 4, 8) fill the off-diagonal blocks of the
2n x 2n matrices, and the last matrix is block-diag(I, -I).

Also provides the hyperspherical, spherical and parabolic charts used for
variable separation.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

ADMISSIBLE_N = (1, 2, 4, 8)


class GeometryError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Cayley-Dickson doubling
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _cayley_dickson_table(n: int) -> tuple[tuple[tuple[int, int], ...], ...]:
    """Multiplication table e_i e_j = sign * e_k for the 2^h-dim algebra.

    Entry [i][j] is (k, sign).  Doubling rule with a = (p, q), b = (r, s):
    (p, q)(r, s) = (p r - conj(s) q, s p + q conj(r)).
    """
    if n == 1:
        return (((0, 1),),)
    half = n // 2
    sub = _cayley_dickson_table(half)

    def conj_sign(i):
        return 1 if i == 0 else -1

    table = []
    for i in range(n):
        row = []
        for j in range(n):
            ia, ib = divmod(i, half)
            ja, jb = divmod(j, half)
            # i = (unit ib in slot ia); slot 0 -> (e, 0), slot 1 -> (0, e)
            if ia == 0 and ja == 0:
                k, s = sub[ib][jb]
                row.append((k, s))
            elif ia == 0 and ja == 1:
                # (p,0)(0,s) = (0, s p)
                k, s = sub[jb][ib]
                row.append((half + k, s))
            elif ia == 1 and ja == 0:
                # (0,q)(r,0) = (0, q conj(r))
                k, s = sub[ib][jb]
                row.append((half + k, s * conj_sign(jb)))
            else:
                # (0,q)(0,s) = (-conj(s) q, 0)
                k, s = sub[jb][ib]
                row.append((k, -s * conj_sign(jb)))
        table.append(tuple(row))
    return tuple(table)


def _left_multiplication(n: int, unit: int) -> np.ndarray:
    table = _cayley_dickson_table(n)
    m = np.zeros((n, n), dtype=np.int64)
    for j in range(n):
        k, s = table[unit][j]
        m[k, j] = s
    return m


# ---------------------------------------------------------------------------
# Gamma sets
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GammaSet:
    """Family of n+1 symmetric 2n x 2n integer matrices defining a KS map."""

    n: int
    matrices: tuple[np.ndarray, ...]

    @property
    def labels(self) -> tuple[int, ...]:
        return tuple(range(1, len(self.matrices) + 1))

    @property
    def size(self) -> int:
        return 2 * self.n

    def to_json(self) -> str:
        return json.dumps({"n": self.n, "matrices": [m.tolist() for m in self.matrices]})

    @classmethod
    def from_json(cls, text: str) -> "GammaSet":
        data = json.loads(text)
        mats = tuple(np.array(m, dtype=np.int64) for m in data["matrices"])
        return cls(n=int(data["n"]), matrices=mats)


def build_gamma_set(n: int) -> GammaSet:
    """Construct the canonical Gamma-matrix set for half-dimension n.

    Parameters
    ----------
    n : int
        One of 1, 2, 4, 8.

    Returns
    -------
    GammaSet
        Gamma_lambda = [[0, g], [g^T, 0]] for lambda = 1..n, with g the
        left-multiplication matrix of the (lambda-1)-th basis unit, and
        Gamma_{n+1} = block-diag(I, -I).
    """
    if n not in ADMISSIBLE_N:
        raise GeometryError(f"no KS transformation at this dimension: n={n} (need n in {ADMISSIBLE_N})")
    mats = []
    zero = np.zeros((n, n), dtype=np.int64)
    for unit in range(n):
        g = _left_multiplication(n, unit)
        mats.append(np.block([[zero, g], [g.T, zero]]))
    eye = np.eye(n, dtype=np.int64)
    mats.append(np.block([[eye, zero], [zero, -eye]]))
    for m in mats:
        m.setflags(write=False)
    return GammaSet(n=n, matrices=tuple(mats))


@dataclass(frozen=True)
class Violation:
    identity: str
    indices: tuple[int, ...]

    def __str__(self):
        return f"{self.identity} at {self.indices}"


def verify_gamma_set(g: GammaSet) -> list[Violation]:
    """List every broken Gamma-set identity (empty list if the set is valid).

    All checks run in integer arithmetic.
    """
    report: list[Violation] = []
    size = 2 * g.n
    eye = np.eye(size, dtype=np.int64)
    mats = [np.asarray(m, dtype=np.int64) for m in g.matrices]
    if len(mats) != g.n + 1:
        report.append(Violation("count", (len(mats),)))
    for lam, m in enumerate(mats, start=1):
        if m.shape != (size, size):
            report.append(Violation("shape", (lam,)))
            continue
        if not np.array_equal(m, m.T):
            report.append(Violation("symmetry", (lam,)))
        if not np.all(np.isin(m, (-1, 0, 1))):
            report.append(Violation("entries", (lam,)))
        if int(np.trace(m)) != 0:
            report.append(Violation("trace", (lam,)))
    for lam in range(len(mats)):
        for mu in range(lam, len(mats)):
            a, b = mats[lam], mats[mu]
            if a.shape != (size, size) or b.shape != (size, size):
                continue
            expected = 2 * eye if lam == mu else 0 * eye
            if not np.array_equal(a @ b + b @ a, expected):
                report.append(Violation("anticommutation", (lam + 1, mu + 1)))
    if mats and mats[-1].shape == (size, size):
        n = g.n
        last = np.diag(np.r_[np.ones(n, dtype=np.int64), -np.ones(n, dtype=np.int64)])
        if not np.array_equal(mats[-1], last):
            report.append(Violation("last-block-diag", (len(mats),)))
    return report


# ---------------------------------------------------------------------------
# KS map
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class KSPoint:
    u: np.ndarray
    x: np.ndarray
    r: float


def ks_map(g: GammaSet, u) -> KSPoint:
    """x_lambda = u^T Gamma_lambda u, r = u.u."""
    u = np.asarray(u, dtype=float)
    if u.shape != (2 * g.n,):
        raise GeometryError(f"expected vector of length {2 * g.n}, got shape {u.shape}")
    x = np.array([u @ m @ u for m in g.matrices], dtype=float)
    return KSPoint(u=u, x=x, r=float(u @ u))


# ---------------------------------------------------------------------------
# Charts
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CoordinateChart:
    """A point expressed in one of the three charts.

    ``radial`` is (r,) for hyperspherical/spherical and (u, v) for parabolic.
    Hyperspherical angles are (phi_1, ..., phi_{m-1}) with phi_1 azimuthal;
    spherical angles are (theta, phi_{n-2}, ..., phi_0) in the order they
    appear top-down in the Cartesian formulas, azimuth last.  Parabolic
    angles are (phi_{n-2}, ..., phi_0).
    """

    kind: str
    dimension: int
    radial: tuple[float, ...]
    angles: tuple[float, ...] = field(default_factory=tuple)


def _unit_to_angles(y: np.ndarray) -> list[float]:
    """Top-down polar angles of a vector in R^m (m >= 2), azimuth last.

    y_m = |y| cos(a_0), y_{m-1} = |y| sin(a_0) cos(a_1), ...,
    y_2 = ... cos(a_{m-2}), y_1 = ... sin(a_{m-2}).
    """
    m = len(y)
    angles = []
    for k in range(m - 2):
        top = y[m - 1 - k]
        rest = math.sqrt(float(np.sum(y[: m - 1 - k] ** 2)))
        angles.append(math.atan2(rest, top))
    phi = math.atan2(y[0], y[1])
    if phi < 0:
        phi += 2 * math.pi
    if y[0] == 0 and y[1] == 0:
        phi = 0.0
    angles.append(phi)
    return angles


def _angles_to_unit(angles, m: int) -> np.ndarray:
    y = np.zeros(m)
    s = 1.0
    for k in range(m - 2):
        y[m - 1 - k] = s * math.cos(angles[k])
        s *= math.sin(angles[k])
    y[1] = s * math.cos(angles[-1])
    y[0] = s * math.sin(angles[-1])
    return y


def chart_from_cartesian(kind: str, x) -> CoordinateChart:
    """Express Cartesian ``x`` in the requested chart.

    Undefined azimuths on coordinate axes are set to zero.
    """
    x = np.asarray(x, dtype=float)
    m = x.size
    r = float(np.linalg.norm(x))
    if r == 0.0:
        raise GeometryError("degenerate input: zero vector has no angles")
    if kind in ("hyperspherical", "spherical"):
        if m < 2:
            raise GeometryError("angular charts need dimension >= 2")
        return CoordinateChart(kind, m, (r,), tuple(_unit_to_angles(x / r)))
    if kind == "parabolic":
        if m < 3:
            raise GeometryError("parabolic chart needs dimension n+1 >= 3")
        top = x[-1]
        u, v = float(r + top), float(r - top)
        rho = math.sqrt(max(u * v, 0.0))
        if rho == 0.0:
            angles = tuple([0.0] * (m - 2))
        else:
            angles = tuple(_unit_to_angles(x[:-1] / np.linalg.norm(x[:-1])))
        return CoordinateChart(kind, m, (u, v), angles)
    raise GeometryError(f"unknown chart kind {kind!r}")


def chart_to_cartesian(chart: CoordinateChart) -> np.ndarray:
    m = chart.dimension
    if chart.kind in ("hyperspherical", "spherical"):
        return chart.radial[0] * _angles_to_unit(chart.angles, m)
    if chart.kind == "parabolic":
        u, v = chart.radial
        x = np.empty(m)
        x[-1] = (u - v) / 2
        x[:-1] = math.sqrt(max(u * v, 0.0)) * _angles_to_unit(chart.angles, m - 1)
        return x
    raise GeometryError(f"unknown chart kind {chart.kind!r}")


def parabolic_block_norms(g: GammaSet, u) -> tuple[float, float]:
    """Return (2 |u_a|^2, 2 |u_b|^2) for the two n-blocks of u."""
    u = np.asarray(u, dtype=float)
    n = g.n
    return 2.0 * float(u[:n] @ u[:n]), 2.0 * float(u[n:] @ u[n:])
