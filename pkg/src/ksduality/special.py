"""
Terminating hypergeometric polynomials.

Only terminating series are supported: 1F1(-N; b; x), Jacobi polynomials,
3F2(-n, ...; ...; 1) and the Hahn polynomials built from it.  Rational
inputs give exact Fraction results; anything else falls back to floats.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

import numpy as np
from scipy import integrate


class SeriesError(ValueError):
    pass


def _num(x):
    """Promote rationals to Fraction; leave floats alone."""
    if isinstance(x, Rational):
        return Fraction(x)
    if isinstance(x, float) and x.is_integer() and abs(x) < 2**53:
        return Fraction(int(x))
    return x


def _nonpositive_integer(x) -> int | None:
    x = _num(x)
    if isinstance(x, Fraction) and x.denominator == 1 and x <= 0:
        return int(x)
    return None


@dataclass(frozen=True)
class PolynomialSeries:
    """Terminating series: value = sum_k coefficients[k] * argument^k."""

    kind: str
    parameters: tuple
    degree: int
    coefficients: tuple

    def __call__(self, x):
        x = _num(x)
        total = 0
        for c in reversed(self.coefficients):
            total = total * x + c
        return total


def _pfq_terms(upper, lower, stop: int):
    """Term ratios of pFq truncated after ``stop`` (the numerator zero)."""
    coeffs = [Fraction(1)]
    c = Fraction(1)
    for k in range(stop):
        num = 1
        for a in upper:
            num = num * (a + k)
        den = 1
        for b in lower:
            den = den * (b + k)
        if den == 0:
            raise SeriesError(f"pole: a denominator parameter vanishes at term {k + 1} before termination")
        c = c * num / (den * (k + 1))
        coeffs.append(c)
    return coeffs


def kummer_series(N: int, b) -> PolynomialSeries:
    if N < 0:
        raise SeriesError("degree must be nonnegative")
    b = _num(b)
    coeffs = _pfq_terms([-N], [b], N)
    return PolynomialSeries("1F1", (-N, b), N, tuple(coeffs))


def kummer_poly(N: int, b, x):
    """1F1(-N; b; x) as a terminating sum."""
    return kummer_series(N, b)(x)


def jacobi_poly(m: int, alpha, beta, t):
    """P_m^{(alpha, beta)}(t) by the three-term recurrence."""
    if m < 0:
        raise SeriesError("negative degree")
    a, b, t = _num(alpha), _num(beta), _num(t)
    p_prev, p = 1, (a - b) / 2 + (a + b + 2) * t / 2
    if m == 0:
        return Fraction(1) if isinstance(t, Fraction) else 1.0
    for k in range(2, m + 1):
        s = 2 * k + a + b
        c1 = 2 * k * (k + a + b) * (s - 2)
        c2 = (s - 1) * (s * (s - 2) * t + a * a - b * b)
        c3 = 2 * (k + a - 1) * (k + b - 1) * s
        p_prev, p = p, (c2 * p - c3 * p_prev) / c1
    return p


def jacobi_series(m: int, alpha, beta) -> PolynomialSeries:
    """Coefficients of P_m^{(alpha,beta)} in powers of (1 - t)/2 (hypergeometric form)."""
    a, b = _num(alpha), _num(beta)
    coeffs = _pfq_terms([-m, m + a + b + 1], [a + 1], m)
    lead = Fraction(1) if isinstance(a, Fraction) else 1.0
    for k in range(1, m + 1):
        lead = lead * (a + k) / k
    return PolynomialSeries("Jacobi", (m, a, b), m, tuple(c * lead for c in coeffs))


def f32_unit(a1, a2, a3, b1, b2):
    """Terminating 3F2(a1, a2, a3; b1, b2; 1).

    The sum stops at the first nonpositive-integer numerator parameter; a
    denominator that vanishes at or before that index is an error.  This
    admits the -N denominator of Hahn polynomials whenever N >= n.
    """
    params = [_num(a) for a in (a1, a2, a3)]
    stops = [-z for z in (_nonpositive_integer(a) for a in params) if z is not None]
    if not stops:
        raise SeriesError("series does not terminate: no nonpositive-integer numerator parameter")
    coeffs = _pfq_terms(params, [_num(b1), _num(b2)], min(stops))
    return sum(coeffs)


def hahn_poly(m: int, x: int, alpha, beta, N: int):
    """Hahn polynomial Q_m(x; alpha, beta, N) = 3F2(-m, m+alpha+beta+1, -x; alpha+1, -N; 1)."""
    if not 0 <= m <= N:
        raise SeriesError("Hahn degree must lie in 0..N")
    a, b = _num(alpha), _num(beta)
    return f32_unit(-m, m + a + b + 1, -x, a + 1, -N)


def hahn_weight(x: int, alpha, beta, N: int):
    """binom(alpha + x, x) * binom(beta + N - x, N - x) with generalized binomials."""
    a, b = _num(alpha), _num(beta)

    def gbinom(top, k):
        out = Fraction(1) if isinstance(top, Fraction) else 1.0
        for i in range(k):
            out = out * (top - i) / (i + 1)
        return out

    return gbinom(a + x, x) * gbinom(b + N - x, N - x)


# ---------------------------------------------------------------------------
# Wavefunctions normalized by quadrature
# ---------------------------------------------------------------------------

def oscillator_radial(N: int, Lp: float, n: int, omega: float):
    """Normalized R(r) = C r^{L'} e^{-w r^2/2} 1F1(-N; L'+n/2; w r^2), weight r^{n-1}."""
    b = Lp + n / 2
    ser = kummer_series(N, b)
    coeffs = [float(c) for c in ser.coefficients]

    def raw(r):
        r = np.asarray(r, dtype=float)
        return r ** Lp * np.exp(-omega * r * r / 2) * np.polyval(coeffs[::-1], omega * r * r)

    norm2, _ = integrate.quad(lambda r: raw(r) ** 2 * r ** (n - 1), 0, np.inf, epsabs=0, epsrel=1e-13, limit=200)
    c = 1 / math.sqrt(norm2)
    return lambda r: c * raw(r)
