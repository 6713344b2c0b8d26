"""
Truncated multi-mode Fock spaces and exact ladder-operator matrices.

Operators are stored in the *monomial* basis |k> = prod (a_i^dagger)^{k_i} |0>,
in which a_i^dagger |k> = |k + e_i> and a_i |k> = k_i |k - e_i>.  Every
generator used here then has dyadic-rational entries (integers divided by
small powers of two), which float64 represents exactly, so commutator
identities can be compared with ``==``.  The orthonormal-basis matrix is the
similarity transform S^{-1} M S with S = diag(sqrt(prod k_i!)) and is
available through :meth:`OperatorMatrix.normalized` or as exact
``num * sqrt(arg)`` triplets.

Truncation is by total quanta sum(k) <= K.  Quadratic generators move the
total by at most two, so identities are only asserted on interior states
(sum(k) <= K - 2).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations

import numpy as np
import scipy.sparse as sp

DEFAULT_CUTOFFS = {2: 10, 4: 8, 8: 6, 16: 4}

# float64 keeps dyadic rationals exact while |entries| * 2^16 < 2^53
_EXACT_LIMIT = 2.0 ** 36


class FockError(ValueError):
    pass


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


class FockSpace:
    """Occupation-number basis of ``modes`` oscillators with sum(k) <= cutoff."""

    def __init__(self, modes: int, cutoff: int | None = None):
        if modes < 1:
            raise FockError("need at least one mode")
        if cutoff is None:
            cutoff = DEFAULT_CUTOFFS.get(modes, 4)
        if cutoff < 0:
            raise FockError("cutoff must be nonnegative")
        self.modes = modes
        self.cutoff = cutoff
        self.basis = tuple(s for t in range(cutoff + 1) for s in _compositions(t, modes))
        self.index = {s: i for i, s in enumerate(self.basis)}
        totals = np.fromiter((sum(s) for s in self.basis), dtype=np.int64, count=len(self.basis))
        self.totals = totals
        self.interior = totals <= cutoff - 2
        self.totals.setflags(write=False)
        self.interior.setflags(write=False)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __repr__(self):
        return f"FockSpace(modes={self.modes}, cutoff={self.cutoff}, dim={self.dim})"

    def interior_indices(self) -> np.ndarray:
        return np.flatnonzero(self.interior)

    @cached_property
    def log_norms(self) -> np.ndarray:
        """log sqrt(prod k_i!) for every basis state."""
        return np.array([0.5 * sum(math.lgamma(k + 1) for k in s) for s in self.basis])

    @cached_property
    def factorial_products(self) -> tuple[int, ...]:
        return tuple(math.prod(math.factorial(k) for k in s) for s in self.basis)


class OperatorMatrix:
    """Sparse operator on a FockSpace, stored in the monomial basis.

    ``phase`` is 1 for real operators and 1j when the physical operator is
    i times the stored real matrix (used for the rotation generators L_ij).
    """

    __slots__ = ("space", "entries", "symbol", "phase")

    def __init__(self, space, entries, symbol: str = "", phase=1):
        entries = sp.csr_matrix(entries, dtype=float)
        if entries.shape != (space.dim, space.dim):
            raise FockError(f"matrix shape {entries.shape} does not match space dimension {space.dim}")
        entries.sum_duplicates()
        entries.eliminate_zeros()
        self.space = space
        self.entries = entries
        self.symbol = symbol
        self.phase = phase

    # -- arithmetic -------------------------------------------------------
    def _check(self, other):
        if other.space is not self.space:
            raise FockError("operators live on different spaces")

    def __add__(self, other):
        if isinstance(other, (int, float, Fraction)):
            return self + identity(self.space) * other
        self._check(other)
        return OperatorMatrix(self.space, self.entries + other.entries, f"({self.symbol}+{other.symbol})")

    __radd__ = __add__

    def __neg__(self):
        return OperatorMatrix(self.space, -self.entries, f"-{self.symbol}", self.phase)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, scalar):
        return OperatorMatrix(self.space, self.entries * float(scalar), f"{scalar}*{self.symbol}", self.phase)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return self * (1.0 / float(scalar))

    def __matmul__(self, other):
        self._check(other)
        return OperatorMatrix(self.space, self.entries @ other.entries, f"{self.symbol}{other.symbol}")

    def __repr__(self):
        return f"OperatorMatrix({self.symbol!r}, nnz={self.entries.nnz}, dim={self.space.dim})"

    # -- views ------------------------------------------------------------
    def dense(self) -> np.ndarray:
        return self.entries.toarray()

    def normalized(self) -> sp.csr_matrix:
        """Matrix in the orthonormal occupation basis (float)."""
        coo = self.entries.tocoo()
        ln = self.space.log_norms
        vals = coo.data * np.exp(ln[coo.row] - ln[coo.col])
        return sp.csr_matrix((vals, (coo.row, coo.col)), shape=coo.shape)

    def is_exact(self) -> bool:
        """True when every entry is a dyadic rational safely inside float64."""
        data = self.entries.data
        if data.size == 0:
            return True
        scaled = data * 2.0 ** 16
        return bool(np.all(np.abs(data) < _EXACT_LIMIT) and np.all(scaled == np.round(scaled)))

    def triplets(self) -> list[list]:
        """Exact orthonormal-basis entries as [row, col, num, sqrt_arg].

        The entry equals num * sqrt(sqrt_arg); num is an int or a "p/q" string.
        """
        coo = self.entries.tocoo()
        facts = self.space.factorial_products
        out = []
        for r, c, v in zip(coo.row.tolist(), coo.col.tolist(), coo.data.tolist()):
            ratio = Fraction(facts[r], facts[c])
            p, q = ratio.numerator, ratio.denominator
            square, rest = _split_square(p * q)
            num = Fraction(v).limit_denominator(1 << 20) * square / q
            out.append([r, c, _fraction_json(num), rest])
        return out

    def to_json(self) -> str:
        return json.dumps({"dim": self.space.dim, "symbol": self.symbol,
                           "phase": "i" if self.phase == 1j else 1,
                           "triplets": self.triplets()})


def _split_square(m: int) -> tuple[int, int]:
    """m = s^2 * t with t squarefree; returns (s, t)."""
    s, t, f = 1, 1, 2
    while f * f <= m:
        while m % (f * f) == 0:
            m //= f * f
            s *= f
        f += 1
    return s, t * m


def _fraction_json(x: Fraction):
    return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def triplets_to_dense(data: dict) -> np.ndarray:
    """Decode the sparse-triplet JSON format into a dense float matrix."""
    d = data["dim"]
    m = np.zeros((d, d))
    for r, c, num, arg in data["triplets"]:
        m[r, c] += float(Fraction(num)) * math.sqrt(arg)
    return m


# ---------------------------------------------------------------------------
# generators
# ---------------------------------------------------------------------------

def identity(space: FockSpace) -> OperatorMatrix:
    return OperatorMatrix(space, sp.identity(space.dim, format="csr"), "I")


def _check_mode(space, i):
    if not 0 <= i < space.modes:
        raise FockError(f"mode index {i} out of range for {space.modes} modes")


def _annihilation(space: FockSpace, i: int) -> OperatorMatrix:
    rows, cols, vals = [], [], []
    for c, s in enumerate(space.basis):
        if s[i]:
            t = s[:i] + (s[i] - 1,) + s[i + 1:]
            rows.append(space.index[t])
            cols.append(c)
            vals.append(float(s[i]))
    m = sp.csr_matrix((vals, (rows, cols)), shape=(space.dim, space.dim))
    return OperatorMatrix(space, m, f"a{i}")


def _creation(space: FockSpace, i: int) -> OperatorMatrix:
    rows, cols = [], []
    for c, s in enumerate(space.basis):
        t = s[:i] + (s[i] + 1,) + s[i + 1:]
        r = space.index.get(t)
        if r is not None:
            rows.append(r)
            cols.append(c)
    m = sp.csr_matrix((np.ones(len(rows)), (rows, cols)), shape=(space.dim, space.dim))
    return OperatorMatrix(space, m, f"a{i}+")


def number_operator(space: FockSpace, i: int) -> OperatorMatrix:
    _check_mode(space, i)
    diag = np.array([s[i] for s in space.basis], dtype=float)
    return OperatorMatrix(space, sp.diags(diag, format="csr"), f"N{i}")


def build_mode_operators(space: FockSpace, i: int) -> dict[str, OperatorMatrix]:
    """Annihilation, creation and number operators of mode ``i``."""
    _check_mode(space, i)
    return {"a": _annihilation(space, i), "adag": _creation(space, i), "N": number_operator(space, i)}


def build_rotation(space: FockSpace, i: int, j: int) -> OperatorMatrix:
    """Rotation generator L_ij = i * (a_i a_j^dagger - a_i^dagger a_j) / 2.

    The stored matrix is the real part R with L_ij = i R; the returned
    object carries ``phase=1j``.  Use :func:`rotation_squared` for L_ij^2.
    """
    if i == j:
        raise FockError("rotation needs two distinct modes")
    _check_mode(space, i)
    _check_mode(space, j)
    ai, aj = _annihilation(space, i), _annihilation(space, j)
    ci, cj = _creation(space, i), _creation(space, j)
    real = (ai @ cj - ci @ aj) * 0.5
    return OperatorMatrix(space, real.entries, f"L{i}{j}", phase=1j)


def rotation_squared(space: FockSpace, i: int, j: int) -> OperatorMatrix:
    """L_ij^2 = -R^2, a real operator."""
    r = build_rotation(space, i, j)
    return OperatorMatrix(space, -(r.entries @ r.entries), f"L{i}{j}^2")


def rotation_square_sum(space: FockSpace, modes) -> OperatorMatrix:
    """Sum of L_ij^2 over pairs i < j drawn from ``modes``."""
    total = sp.csr_matrix((space.dim, space.dim))
    for i, j in combinations(sorted(modes), 2):
        total = total + rotation_squared(space, i, j).entries
    return OperatorMatrix(space, total, f"SumL2{tuple(modes)}")


def unitary_generator(space: FockSpace, i: int, j: int) -> OperatorMatrix:
    """E_ij = a_i^dagger a_j."""
    return OperatorMatrix(space, (_creation(space, i) @ _annihilation(space, j)).entries, f"E{i}{j}")


def oscillator_hamiltonian(space: FockSpace) -> OperatorMatrix:
    """H_0 / omega = sum N_s + modes/2."""
    diag = space.totals.astype(float) + space.modes / 2
    return OperatorMatrix(space, sp.diags(diag, format="csr"), "H/w")


def build_metaplectic(space: FockSpace, subset) -> dict[str, OperatorMatrix]:
    """Summed metaplectic SU(1,1) generators over the modes in ``subset``.

    J0 = 1/2 sum (N_i + 1/2), J+ = 1/2 sum a_i^dagger^2, J- = 1/2 sum a_i^2.
    """
    subset = list(subset)
    if not subset:
        raise FockError("metaplectic sum over an empty subset")
    d = space.dim
    j0 = sp.csr_matrix((d, d))
    jp = sp.csr_matrix((d, d))
    jm = sp.csr_matrix((d, d))
    for i in subset:
        _check_mode(space, i)
        a, c = _annihilation(space, i).entries, _creation(space, i).entries
        j0 = j0 + number_operator(space, i).entries * 0.5 + sp.identity(d) * 0.25
        jp = jp + (c @ c) * 0.5
        jm = jm + (a @ a) * 0.5
    tag = ",".join(map(str, subset))
    return {"J0": OperatorMatrix(space, j0, f"J0[{tag}]"),
            "J+": OperatorMatrix(space, jp, f"J+[{tag}]"),
            "J-": OperatorMatrix(space, jm, f"J-[{tag}]")}


def casimir(j: dict[str, OperatorMatrix]) -> OperatorMatrix:
    """SU(1,1) Casimir Q = J0^2 - J+ J- - J0."""
    j0, jp, jm = j["J0"], j["J+"], j["J-"]
    q = j0 @ j0 - jp @ jm - j0
    q.symbol = f"Q({j0.symbol})"
    return q


def build_commutant_generators(space: FockSpace) -> dict[str, OperatorMatrix]:
    """Generators of the O(n)+O(n) commutant in U(2n).

    Returns A+, A-, D, K1 = D/2, K2 = sum_{all i<j} L_ij^2 + n(n-2)/4,
    K3 = [K1, K2], together with H (= H_0/omega), the two block sums of
    L_ij^2 (SumL2a, SumL2b) and the all-pairs sum (SumL2).
    """
    if space.modes % 2:
        raise FockError("commutant generators need an even number of modes")
    n = space.modes // 2
    d = space.dim
    first, second = range(n), range(n, 2 * n)
    raise_a = sp.csr_matrix((d, d))
    lower_a = sp.csr_matrix((d, d))
    raise_b = sp.csr_matrix((d, d))
    lower_b = sp.csr_matrix((d, d))
    for i in first:
        a, c = _annihilation(space, i).entries, _creation(space, i).entries
        raise_a = raise_a + c @ c
        lower_a = lower_a + a @ a
    for i in second:
        a, c = _annihilation(space, i).entries, _creation(space, i).entries
        raise_b = raise_b + c @ c
        lower_b = lower_b + a @ a
    a_plus = OperatorMatrix(space, raise_a @ lower_b, "A+")
    a_minus = OperatorMatrix(space, lower_a @ raise_b, "A-")
    diag = np.array([sum(s[:n]) - sum(s[n:]) for s in space.basis], dtype=float)
    dmat = OperatorMatrix(space, sp.diags(diag, format="csr"), "D")
    s_all = rotation_square_sum(space, range(2 * n))
    k1 = dmat * 0.5
    k1.symbol = "K1"
    k2 = s_all + n * (n - 2) / 4
    k2.symbol = "K2"
    k3 = k1 @ k2 - k2 @ k1
    k3.symbol = "K3"
    return {"A+": a_plus, "A-": a_minus, "D": dmat, "K1": k1, "K2": k2, "K3": k3,
            "H": oscillator_hamiltonian(space),
            "SumL2a": rotation_square_sum(space, first),
            "SumL2b": rotation_square_sum(space, second),
            "SumL2": s_all}
