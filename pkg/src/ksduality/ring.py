"""
Exact ring of functions  sum_p c_p r^p exp(-gamma r - beta r^2 - delta r^4).

The exponent parameters are shared by all terms of one function, so the
ring is closed under d/dr, multiplication by r^k and linear combination.
Coefficients may be ints, Fractions, floats or sympy expressions; rational
inputs stay exact.  Float coefficients are merged with a relative
tolerance of 1e-12.

The module also carries the two differential SU(1,1) realizations that act
on these functions: the radial one (oscillator hyperradius) and the
parabolic one (Kepler parabolic coordinate).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

import numpy as np
import sympy

FLOAT_TOL = 1e-12


class RingError(ValueError):
    pass


def _exact(x):
    if isinstance(x, bool):
        return int(x)
    if isinstance(x, Rational) and not isinstance(x, Fraction):
        return Fraction(x)
    return x


def _is_zero(c) -> bool:
    if isinstance(c, sympy.Basic):
        return sympy.expand(c) == 0
    return c == 0


def _key(p):
    p = _exact(p)
    if isinstance(p, float) and p.is_integer():
        return Fraction(int(p))
    return p


class AnalyticFunction:
    """Finite sum of c * r^p * exp(-gamma r - beta r^2 - delta r^4).

    ``imaginary`` marks functions that stand for i times the stored real
    function (the image of the imaginary SU(1,1) generator).
    """

    __slots__ = ("terms", "gamma", "beta", "delta", "imaginary")

    def __init__(self, terms=None, gamma=0, beta=0, delta=0, imaginary=False):
        self.gamma = _exact(gamma)
        self.beta = _exact(beta)
        self.delta = _exact(delta)
        self.imaginary = imaginary
        self.terms = {}
        items = terms.items() if isinstance(terms, dict) else (terms or [])
        for p, c in items:
            self._accumulate(_key(p), _exact(c))
        self._clean()

    # -- construction helpers ---------------------------------------------
    @classmethod
    def monomial(cls, power=0, coeff=1, gamma=0, beta=0, delta=0):
        return cls({power: coeff}, gamma, beta, delta)

    def _family(self):
        return (self.gamma, self.beta, self.delta)

    def _same_family(self, other):
        if self._family() != other._family():
            raise RingError("sums across different exponential families are not in the ring")
        if self.imaginary != other.imaginary:
            raise RingError("cannot add real and imaginary-tagged functions")

    def _new(self, terms, imaginary=None):
        return AnalyticFunction(terms, *self._family(),
                                imaginary=self.imaginary if imaginary is None else imaginary)

    def _accumulate(self, p, c):
        if isinstance(p, float):
            for q in self.terms:
                if abs(float(q) - p) < FLOAT_TOL:
                    p = q
                    break
        self.terms[p] = self.terms.get(p, 0) + c

    def _clean(self):
        floats = [abs(c) for c in self.terms.values() if isinstance(c, float)]
        scale = max(floats, default=0.0)
        out = {}
        for p, c in self.terms.items():
            if isinstance(c, sympy.Basic):
                c = sympy.expand(c)
            if _is_zero(c):
                continue
            if isinstance(c, float) and abs(c) <= FLOAT_TOL * scale:
                continue
            out[p] = c
        self.terms = dict(sorted(out.items(), key=lambda kv: float(kv[0])))

    # -- ring operations ---------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, AnalyticFunction):
            other = self._new({0: other})
        self._same_family(other)
        merged = list(self.terms.items()) + list(other.terms.items())
        return self._new(merged)

    __radd__ = __add__

    def __neg__(self):
        return self._new({p: -c for p, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, scalar):
        if isinstance(scalar, AnalyticFunction):
            return self.product(scalar)
        scalar = _exact(scalar)
        return self._new({p: c * scalar for p, c in self.terms.items()})

    __rmul__ = __mul__

    def product(self, other: "AnalyticFunction") -> "AnalyticFunction":
        if self.imaginary and other.imaginary:
            raise RingError("product of two imaginary-tagged functions is not tracked")
        terms = []
        for p, c in self.terms.items():
            for q, d in other.terms.items():
                terms.append((p + q, c * d))
        return AnalyticFunction(terms, self.gamma + other.gamma, self.beta + other.beta,
                                self.delta + other.delta, self.imaginary or other.imaginary)

    def multiply_power(self, k) -> "AnalyticFunction":
        k = _exact(k)
        return self._new([(p + k, c) for p, c in self.terms.items()])

    def differentiate(self) -> "AnalyticFunction":
        g, b, d = self._family()
        out = []
        for p, c in self.terms.items():
            if not _is_zero(p):
                out.append((p - 1, c * p))
            if not _is_zero(g):
                out.append((p, -c * g))
            if not _is_zero(b):
                out.append((p + 1, -2 * c * b))
            if not _is_zero(d):
                out.append((p + 3, -4 * c * d))
        return self._new(out)

    def map_coefficients(self, fn) -> "AnalyticFunction":
        return self._new({p: fn(c) for p, c in self.terms.items()})

    # -- queries -----------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, AnalyticFunction):
            return NotImplemented
        if self._family() != other._family():
            return False
        return (self - other).is_zero() if self.imaginary == other.imaginary else False

    def __repr__(self):
        body = " + ".join(f"({c})*r^{p}" for p, c in self.terms.items()) or "0"
        tag = "i*" if self.imaginary else ""
        return f"{tag}[{body}]*exp(-{self.gamma} r - {self.beta} r^2 - {self.delta} r^4)"

    def __call__(self, r):
        r = np.asarray(r, dtype=float)
        g, b, d = (float(x) for x in self._family())
        total = np.zeros_like(r)
        for p, c in self.terms.items():
            total = total + float(c) * r ** float(p)
        return total * np.exp(-g * r - b * r ** 2 - d * r ** 4)

    def max_abs_coefficient(self) -> float:
        return max((abs(complex(c)) for c in self.terms.values()), default=0.0)

    # -- serialization -----------------------------------------------------
    def to_json(self) -> str:
        def enc(x):
            if isinstance(x, Fraction):
                return str(x)
            if isinstance(x, sympy.Basic):
                return {"sympy": str(x)}
            return x
        return json.dumps({"gamma": enc(self.gamma), "beta": enc(self.beta), "delta": enc(self.delta),
                           "imaginary": self.imaginary,
                           "terms": [[enc(p), enc(c)] for p, c in self.terms.items()]})

    @classmethod
    def from_json(cls, text: str) -> "AnalyticFunction":
        def dec(x):
            if isinstance(x, str):
                return Fraction(x)
            if isinstance(x, dict):
                return sympy.sympify(x["sympy"])
            return x
        data = json.loads(text)
        return cls([(dec(p), dec(c)) for p, c in data["terms"]], dec(data["gamma"]),
                   dec(data["beta"]), dec(data["delta"]), data["imaginary"])


def radial_laplacian(f: AnalyticFunction, dim) -> AnalyticFunction:
    """f'' + (dim - 1)/r f'  (radial part of the Laplacian in R^dim)."""
    df = f.differentiate()
    return df.differentiate() + df.multiply_power(-1) * (_exact(dim) - 1)


# ---------------------------------------------------------------------------
# SU(1,1) differential realizations
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RadialRealization:
    """Hyperradial SU(1,1) realization built on the reduced oscillator.

    J0 = -1/(4w) d^2 + w r^2/4 + g/(2 w r^2),  J1 = w r^2/2 - J0,
    J2 = (i/2)(r d + 1/2),  J+- = J1 +- i J2.  Casimir (8g - 3)/16.
    """

    omega: object
    g: object

    @staticmethod
    def coupling(n, L, c) -> Fraction:
        """g = (4 L(L+n-2) + 8c + (n-3)(n-1)) / 8."""
        n, L, c = _exact(n), _exact(L), _exact(c)
        return (4 * L * (L + n - 2) + 8 * c + (n - 3) * (n - 1)) * Fraction(1, 8)

    def J0(self, f):
        w, g = _exact(self.omega), _exact(self.g)
        d2 = f.differentiate().differentiate()
        return d2 * (-1 / (4 * w) if isinstance(w, float) else Fraction(-1, 4) / w) \
            + f.multiply_power(2) * (w / 4) + f.multiply_power(-2) * (g / (2 * w))

    def J1(self, f):
        return f.multiply_power(2) * (_exact(self.omega) / 2) - self.J0(f)

    def _i_J2(self, f):
        # i * J2 f = -(r f' + f/2)/2, a real function
        return -(f.differentiate().multiply_power(1) + f * Fraction(1, 2)) * Fraction(1, 2)

    def J2(self, f):
        img = -self._i_J2(f)
        return AnalyticFunction(img.terms, *img._family(), imaginary=True)

    def Jplus(self, f):
        return self.J1(f) + self._i_J2(f)

    def Jminus(self, f):
        return self.J1(f) - self._i_J2(f)

    def casimir(self, f):
        return self.J0(self.J0(f)) - self.Jplus(self.Jminus(f)) - self.J0(f)

    def casimir_value(self):
        return (8 * _exact(self.g) - 3) * Fraction(1, 16)

    def hamiltonian(self, f):
        """2w J0: the gauge-reduced radial Hamiltonian -1/2 d^2 + w^2 r^2/2 + g/r^2."""
        return self.J0(f) * (2 * _exact(self.omega))


@dataclass(frozen=True)
class ParabolicRealization:
    """SU(1,1) realization in one parabolic coordinate x.

    J0 = (1/(2 gamma)) [ -x^{1-n/2} d(x^{n/2} d) + c/x + gamma^2 x ],
    J1 = gamma x - J0,  J2 = i (x d + n/4).  Casimir n(n-4)/16 + c.
    The Kepler energy is E = -2 gamma^2.
    """

    gamma: object
    c: object
    n: int

    def _laplace(self, f):
        n = _exact(self.n)
        df = f.differentiate()
        return df.differentiate().multiply_power(1) + df * (n / 2 if isinstance(n, float) else Fraction(n, 2))

    def J0(self, f):
        gm, c = _exact(self.gamma), _exact(self.c)
        inner = -self._laplace(f) + f.multiply_power(-1) * c + f.multiply_power(1) * (gm * gm)
        return inner * (1 / (2 * gm) if isinstance(gm, float) else Fraction(1, 2) / gm)

    def J1(self, f):
        return f.multiply_power(1) * _exact(self.gamma) - self.J0(f)

    def _i_J2(self, f):
        return -(f.differentiate().multiply_power(1) + f * (Fraction(_exact(self.n), 4)))

    def J2(self, f):
        img = -self._i_J2(f)
        return AnalyticFunction(img.terms, *img._family(), imaginary=True)

    def Jplus(self, f):
        return self.J1(f) + self._i_J2(f)

    def Jminus(self, f):
        return self.J1(f) - self._i_J2(f)

    def casimir(self, f):
        return self.J0(self.J0(f)) - self.Jplus(self.Jminus(f)) - self.J0(f)

    def casimir_value(self):
        n = _exact(self.n)
        return Fraction(n * (n - 4), 16) + _exact(self.c)


def apply_radial_operator(op: str, realization, f: AnalyticFunction) -> AnalyticFunction:
    """Apply a named generator ("J0", "J1", "J2", "J+", "J-", "H", "Q")."""
    table = {"J0": realization.J0, "J1": realization.J1, "J2": realization.J2,
             "J+": realization.Jplus, "J-": realization.Jminus, "Q": realization.casimir}
    if op == "H":
        if not hasattr(realization, "hamiltonian"):
            raise RingError("the parabolic realization has no separate Hamiltonian descriptor")
        return realization.hamiltonian(f)
    try:
        return table[op](f)
    except KeyError:
        raise RingError(f"unknown operator descriptor {op!r}") from None
