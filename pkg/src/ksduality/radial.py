"""
Finite-difference eigensolver for the separated one-dimensional equations.

Every radial equation is first brought to the canonical form

    -u'' + [ C / r^2 + sum_p c_p r^p ] u = eps * r^m * u,   0 < r < R,

where ``m = 0`` for ordinary spectral problems and ``m = -1`` when the
Coulomb strength is the spectral parameter (parabolic equations).  The
substitution u = r^s f with s(s-1) = C removes the centrifugal singularity
and leaves the weighted Sturm-Liouville problem

    -(r^{2s} f')' + r^{2s} W f = eps r^{2s+m} f.

It is discretized with second-order fluxes on a cell-centred grid in a
stretched variable r = R xi^q.  The flux through the origin vanishes and
f(R) = 0 is imposed with an antisymmetric ghost cell.  Symmetrizing with
the diagonal weight gives a symmetric tridiagonal matrix.  All ratios of
powers of r are formed in log space so large exponents s do not overflow.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field

import numpy as np
from scipy.linalg import eigh_tridiagonal

TAIL_TOL = 1e-10


class SolverError(RuntimeError):
    pass


@dataclass(frozen=True)
class RadialProblem:
    """Canonical radial eigenproblem.

    Parameters
    ----------
    centrifugal : float
        C in C / r^2 (C >= -1/4).
    terms : dict
        Power -> coefficient of the regular potential (powers may be
        negative, e.g. -1 for Coulomb, -0.5 for inverse square roots).
    weight_power : int
        m in the weight r^m of the eigenvalue term.
    r_max : float or None
        Domain length; None selects it by the tail criterion.
    nodes : int
        Cells on the coarse grid.
    grading : float
        q in r = R xi^q.
    exponent : float or None
        Origin exponent s; defaults to the regular root of s(s-1) = C.
    scale, shift : float
        Physical eigenvalue = scale * eps + shift.
    """

    centrifugal: float = 0.0
    terms: dict = field(default_factory=dict)
    weight_power: int = 0
    r_max: float | None = None
    nodes: int = 2000
    grading: float = 1.0
    exponent: float | None = None
    scale: float = 1.0
    shift: float = 0.0
    label: str = ""

    def __post_init__(self):
        if self.centrifugal < -0.25 - 1e-14:
            raise SolverError("centrifugal coefficient below -1/4 has no regular solution")
        for p, c in self.terms.items():
            if not math.isfinite(c):
                raise SolverError(f"non-finite coefficient for power {p}")
        if self.nodes < 10:
            raise SolverError("need at least 10 grid cells")
        if self.r_max is not None and self.r_max <= 0:
            raise SolverError("r_max must be positive")

    @property
    def s(self) -> float:
        if self.exponent is not None:
            s = float(self.exponent)
            if abs(s * (s - 1) - self.centrifugal) > 1e-9 * max(1.0, abs(self.centrifugal)):
                raise SolverError("exponent does not solve s(s-1) = C")
            if s < 0.5 - 1e-12:
                raise SolverError("the irregular origin exponent is not admissible")
            return s
        return 0.5 + math.sqrt(self.centrifugal + 0.25)

    def potential(self, r):
        r = np.asarray(r, dtype=float)
        out = np.zeros_like(r)
        for p, c in self.terms.items():
            out = out + c * r ** float(p)
        return out

    def replace(self, **kw) -> "RadialProblem":
        d = asdict(self)
        d.update(kw)
        return RadialProblem(**d)

    def to_json(self) -> str:
        d = asdict(self)
        d["terms"] = {str(k): v for k, v in self.terms.items()}
        return json.dumps(d, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "RadialProblem":
        d = json.loads(text)
        d["terms"] = {float(k) if "." in k else int(k): v for k, v in d["terms"].items()}
        return cls(**d)


@dataclass
class EigenResult:
    eigenvalues: np.ndarray
    errors: np.ndarray
    r_max: float
    nodes: int
    ratio: np.ndarray | None = None
    converged: np.ndarray | None = None
    raw: np.ndarray | None = None

    def to_dict(self):
        return {"eigenvalues": [float(x) for x in self.eigenvalues],
                "errors": [float(x) for x in self.errors],
                "r_max": self.r_max, "nodes": self.nodes,
                "ratio": None if self.ratio is None else [float(x) for x in self.ratio],
                "converged": None if self.converged is None else [bool(x) for x in self.converged]}


# ---------------------------------------------------------------------------
# Core discretization
# ---------------------------------------------------------------------------

def _tridiagonal(log_p_faces, log_w, qw, h, right="dirichlet"):
    """Symmetric tridiagonal form of -(p f')' + q f = eps w f.

    ``log_p_faces`` has M+1 entries (faces 0..M, -inf for a vanishing
    flux), ``log_w`` M cell weights, ``qw`` the cell values of q/w.
    """
    M = len(log_w)
    inv_h2 = 1.0 / (h * h)
    left = np.exp(log_p_faces[:-1] - log_w) * inv_h2
    rightf = np.exp(log_p_faces[1:] - log_w) * inv_h2
    if right == "dirichlet":
        rightf[-1] *= 2.0
    elif right != "natural":
        raise SolverError(f"unknown boundary {right!r}")
    else:
        rightf[-1] = 0.0
    diag = left + rightf + qw
    off = -np.exp(log_p_faces[1:M] - 0.5 * (log_w[:-1] + log_w[1:])) * inv_h2
    return diag, off


def _grid(problem: RadialProblem, R: float, M: int):
    q = problem.grading
    h = 1.0 / M
    xi_c = (np.arange(M) + 0.5) * h
    xi_f = np.arange(M + 1) * h
    with np.errstate(divide="ignore"):
        log_xi_f = np.log(xi_f)
    log_xi_c = np.log(xi_c)
    log_r_c = math.log(R) + q * log_xi_c
    log_r_f = math.log(R) + q * log_xi_f
    log_jac_c = math.log(q * R) + (q - 1) * log_xi_c
    log_jac_f = np.full(M + 1, math.log(q * R))
    if q != 1:
        log_jac_f = log_jac_f + (q - 1) * log_xi_f
    return h, log_r_c, log_r_f, log_jac_c, log_jac_f


def _discretize(problem: RadialProblem, R: float, M: int):
    s, m = problem.s, problem.weight_power
    h, lrc, lrf, ljc, ljf = _grid(problem, R, M)
    with np.errstate(invalid="ignore"):
        log_p = 2 * s * lrf - ljf
    log_p[0] = -np.inf
    log_w = (2 * s + m) * lrc + ljc
    r_c = np.exp(lrc)
    qw = problem.potential(r_c) * np.exp(-m * lrc)
    diag, off = _tridiagonal(log_p, log_w, qw, h)
    return diag, off, lrc, log_w


def _raw_solve(problem: RadialProblem, R: float, M: int, k: int, vectors=False):
    diag, off, lrc, log_w = _discretize(problem, R, M)
    k = min(k, M)
    if vectors:
        vals, vecs = eigh_tridiagonal(diag, off, select="i", select_range=(0, k - 1))
        # u = r^s f, f = w^{-1/2} y
        log_scale = problem.s * lrc - 0.5 * log_w
        log_scale -= log_scale.max()
        u = vecs * np.exp(log_scale)[:, None]
        return vals, u, np.exp(lrc)
    vals = eigh_tridiagonal(diag, off, eigvals_only=True, select="i", select_range=(0, k - 1))
    return vals


def _tail(u: np.ndarray, r: np.ndarray, R: float) -> float:
    amp = np.abs(u)
    peak = amp.max(axis=0)
    mask = r > 0.95 * R
    return float(np.max(amp[mask].max(axis=0) / peak))


def choose_rmax(problem: RadialProblem, k: int, start: float | None = None,
                tail_tol: float = TAIL_TOL, max_iter: int = 40) -> float:
    """Smallest tried R (growing by 1.5x) whose k lowest states decay below ``tail_tol``.

    The first trial is 1.5 times the outer classical turning point of the
    k-th state on a coarse grid.
    """
    R = start or 10.0
    M = 800
    vals = _raw_solve(problem, R, M, k)
    rr = np.linspace(R * 1e-3, 4 * R, 4000)
    excess = problem.potential(rr) + problem.centrifugal / rr ** 2 - vals[-1] * rr ** problem.weight_power
    outside = np.nonzero(excess < 0)[0]
    if outside.size:
        R = max(R if start else 0.0, 1.5 * rr[outside[-1]], 1.0)
    for _ in range(max_iter):
        M = max(800, int(80 * R))
        M = min(M, 20000)
        _, u, r = _raw_solve(problem, R, M, k, vectors=True)
        if _tail(u, r, R) < tail_tol:
            return R
        R *= 1.5
    raise SolverError("tail criterion not met while expanding r_max")


def solve(problem: RadialProblem, k: int = 1, tol: float = 1e-6, max_nodes: int = 256000,
          ratio_check: bool = False) -> EigenResult:
    """Lowest ``k`` eigenvalues with Richardson extrapolation over grids M and 2M.

    The grid is refined until every extrapolated eigenvalue carries an
    estimated relative error below ``tol``; otherwise the result is
    returned with ``converged`` flags set to False.  With ``ratio_check``
    a third grid gives the observed convergence ratio (about 4 for a
    second-order scheme).
    """
    if k < 1:
        raise SolverError("k must be >= 1")
    R = problem.r_max if problem.r_max is not None else choose_rmax(problem, k)
    M = problem.nodes
    e1 = _raw_solve(problem, R, M, k)
    best = None
    while True:
        e2 = _raw_solve(problem, R, 2 * M, k)
        extrap = (4 * e2 - e1) / 3
        err = np.abs(e2 - e1) / 3
        rel = err / np.maximum(np.abs(extrap), 1e-300)
        if best is not None and err.max() > 0.5 * best[2].max():
            # refinement no longer pays: rounding noise ~ eps / h^2 has taken over
            M, e1, e2, err, extrap, rel = best[0], best[1], best[4], best[2], best[3], best[5]
            break
        best = (M, e1, err, extrap, e2, rel)
        if np.all(rel < tol) or 4 * M > max_nodes:
            break
        M *= 2
        e1 = e2
    ratio = None
    if ratio_check:
        e4 = _raw_solve(problem, R, 4 * M, k)
        ratio = (e1 - e2) / (e2 - e4)
    conv = rel < tol
    phys = problem.scale * extrap + problem.shift
    return EigenResult(eigenvalues=phys, errors=np.abs(problem.scale) * err, r_max=R, nodes=2 * M,
                       ratio=ratio, converged=conv, raw=extrap)


def eigenfunctions(problem: RadialProblem, k: int = 1, nodes: int | None = None):
    """Grid, eigenvalues and normalized u(r) on a single grid (no extrapolation)."""
    R = problem.r_max if problem.r_max is not None else choose_rmax(problem, k)
    M = nodes or problem.nodes
    vals, u, r = _raw_solve(problem, R, M, k, vectors=True)
    dr = np.gradient(r)
    norm = np.sqrt(np.sum(u ** 2 * (r[:, None] ** problem.weight_power) * dr[:, None], axis=0))
    return r, problem.scale * vals + problem.shift, u / norm


# ---------------------------------------------------------------------------
# Problem builders for the separated equations
# ---------------------------------------------------------------------------

def oscillator_problem(n: int, omega: float, L: int, c: float, **kw) -> RadialProblem:
    """Hyperradial oscillator equation; eigenvalues are E_a = 2 omega (N + L'/2 + n/4).

    u = r^{(n-1)/2} R gives -u'' + [omega^2 r^2 + (L(L+n-2) + 2c + (n-1)(n-3)/4)/r^2] u = 2 E_a u.
    """
    C = L * (L + n - 2) + 2 * c + (n - 1) * (n - 3) / 4
    return RadialProblem(centrifugal=C, terms={2: omega ** 2}, scale=0.5,
                         label=f"oscillator n={n} L={L} c={c}", **kw)


def reduced_oscillator_problem(omega: float, a: float, **kw) -> RadialProblem:
    """One factor of the reduced two-dimensional singular oscillator
    (1/2)[-d^2 + omega^2 r^2 + a / r^2]; eigenvalues are the factor energies."""
    return RadialProblem(centrifugal=a, terms={2: omega ** 2}, scale=0.5,
                         label=f"reduced oscillator a={a}", **kw)


def kepler_radial_problem(n: int, Z: float, Lam: float, **kw) -> RadialProblem:
    """Kepler radial equation in R^{n+1}; eigenvalues are E.

    u = r^{n/2} R gives -u'' + [(Lambda + n(n-2)/4)/r^2 - 2Z/r] u = 2E u.
    """
    return RadialProblem(centrifugal=Lam + n * (n - 2) / 4, terms={-1: -2 * Z}, scale=0.5,
                         label=f"kepler n={n} Z={Z} Lambda={Lam}", **kw)


def parabolic_problem(n: int, E: float, coupling: float, extra: dict | None = None, **kw) -> RadialProblem:
    """One parabolic equation with mu = Z/2 -+ P as eigenvalue.

    The equation x X'' + (n/2) X' - (c/x) X + (E x/2) X + mu X - V(x) X = 0
    is solved in z = sqrt(x), where it becomes an n-dimensional radial
    oscillator: with y = z^{(n-1)/2} X,

        -y'' + [(4c + (n-1)(n-3)/4)/z^2 - 2E z^2 + 4 V(z^2)] y = 4 mu y.

    ``coupling`` is c = (L(L+n-2) + 4 lambda)/4 and ``extra`` maps powers
    p of x to coefficients of V (the model potentials of the dual
    quasi-exactly solvable problems).  The smooth z form keeps the scheme
    second order; the direct x form carries a singular 1/x weight.
    """
    terms = {2: -2 * E}
    for p, v in (extra or {}).items():
        key = 2 * p
        key = int(key) if float(key).is_integer() else float(key)
        terms[key] = terms.get(key, 0.0) + 4 * v
    return RadialProblem(centrifugal=4 * coupling + (n - 1) * (n - 3) / 4, terms=terms, scale=0.25,
                         label=f"parabolic n={n} E={E} c={coupling}", **kw)


def parabolic_problem_x(n: int, E: float, coupling: float, extra: dict | None = None, **kw) -> RadialProblem:
    """Direct x form: -y'' + [(c + n(n-4)/16)/x^2 - E/2 + V/x] y = mu y / x, X = x^{-n/4} y.

    Same equation and ``extra`` convention as :func:`parabolic_problem`.
    The origin exponent is fractional here, so finite differences converge
    below second order; :func:`parabolic_problem` is the form to solve.
    """
    terms = {0: -E / 2}
    for p, v in (extra or {}).items():
        key = p - 1
        key = int(key) if float(key).is_integer() else float(key)
        terms[key] = terms.get(key, 0.0) + v
    return RadialProblem(centrifugal=coupling + n * (n - 4) / 16, terms=terms, weight_power=-1,
                         label=f"parabolic-x n={n} E={E} c={coupling}", **kw)


def solve_angular_theta(n: int, lam1: float, lam2: float, L1: int, L2: int | None = None,
                        k: int = 4, nodes: int = 2000) -> np.ndarray:
    """Eigenvalues Lambda of the polar equation on (0, pi).

    With Theta = cos^{J'}(t/2) sin^{L'}(t/2) f the equation becomes
    -(rho f')' = (Lambda - lam0(lam0+n-1)) rho f with
    rho = sin^{n-1} t cos^{2J'}(t/2) sin^{2L'}(t/2) and lam0 = (J'+L')/2.
    Richardson-extrapolated over grids M and 2M.
    """
    from .spectra import shifted_momentum

    L2 = L1 if L2 is None else L2
    Jp = shifted_momentum(L1, n, 4 * lam1)
    Lp = shifted_momentum(L2, n, 4 * lam2)
    lam0 = (Jp + Lp) / 2

    def raw(M):
        h = math.pi / M
        tc = (np.arange(M) + 0.5) * h
        tf = np.arange(M + 1) * h

        def log_rho(t):
            with np.errstate(divide="ignore", invalid="ignore"):
                return ((n - 1) * np.log(np.sin(t)) + 2 * Jp * np.log(np.cos(t / 2))
                        + 2 * Lp * np.log(np.sin(t / 2)))

        lp = log_rho(tf)
        lp[0] = lp[-1] = -np.inf
        lw = log_rho(tc)
        diag, off = _tridiagonal(lp, lw, np.zeros(M), h, right="natural")
        return eigh_tridiagonal(diag, off, eigvals_only=True, select="i", select_range=(0, k - 1))

    e1, e2 = raw(nodes), raw(2 * nodes)
    return (4 * e2 - e1) / 3 + lam0 * (lam0 + n - 1)


@dataclass
class ParabolicPair:
    E: float
    P: float
    mu_u: float
    mu_v: float
    iterations: int


def solve_parabolic_pair(n: int, Z: float, lam1: float, lam2: float, L1: int, L2: int | None = None,
                         n1: int = 0, n2: int = 0, tol: float = 1e-8, max_iter: int = 30,
                         nodes: int = 2000, inner_tol: float = 1e-9) -> ParabolicPair:
    """Find (E, P) such that both parabolic equations have normalizable solutions.

    For trial E the u- and v-equations give weighted eigenvalues
    mu_u = Z/2 - P (the n1-th) and mu_v = Z/2 + P (the n2-th).  E is fixed
    by mu_u + mu_v = Z and then P = (mu_v - mu_u)/2.  The secant iteration
    runs in kappa = sqrt(-2E), seeded from the closed-form energy.
    """
    from .spectra import KeplerQuantum, kepler_energy_parabolic

    L2 = L1 if L2 is None else L2
    cu = (L1 * (L1 + n - 2) + 4 * lam1) / 4
    cv = (L2 * (L2 + n - 2) + 4 * lam2) / 4

    def mus(kappa):
        E = -kappa * kappa / 2
        pu = parabolic_problem(n, E, cu, nodes=nodes)
        pv = parabolic_problem(n, E, cv, nodes=nodes)
        mu = solve(pu, n1 + 1, tol=inner_tol).eigenvalues[n1]
        mv = solve(pv, n2 + 1, tol=inner_tol).eigenvalues[n2]
        return mu, mv

    # the weighted eigenvalues scale like kappa = sqrt(-2E), so iterate in kappa
    seed = kepler_energy_parabolic(KeplerQuantum(n1, n2, L1, L2, lam1, lam2, n, Z))
    k0 = math.sqrt(-2 * seed) * 1.05
    k1 = math.sqrt(-2 * seed) * 0.95
    f0 = sum(mus(k0)) - Z
    for it in range(1, max_iter + 1):
        mu, mv = mus(k1)
        f1 = mu + mv - Z
        if abs(f1) < tol * abs(Z):
            return ParabolicPair(E=-k1 * k1 / 2, P=(mv - mu) / 2, mu_u=mu, mu_v=mv, iterations=it)
        if f1 == f0:
            break
        k0, k1, f0 = k1, k1 - f1 * (k1 - k0) / (f1 - f0), f1
        if k1 <= 0:
            k1 = k0 / 2
    raise SolverError("parabolic (E, P) search did not converge")
