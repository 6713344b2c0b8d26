"""
Batch command-line interface.

Every subcommand prints one JSON document (or CSV / a plain table where
noted) that starts with the resolved configuration.  Exit status: 0 when
all requested verifications pass, 1 on a verification failure, 2 on a
usage or parameter error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from fractions import Fraction

import numpy as np

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, np.ndarray):
        return _jsonable(x.tolist())
    if isinstance(x, (np.bool_, bool)):
        return bool(x)
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, (np.floating, float)):
        x = float(x)
        return x if math.isfinite(x) else str(x)
    if isinstance(x, Fraction):
        return str(x)
    if x is None or isinstance(x, (int, str)):
        return x
    return str(x)


def _number(text: str):
    """Rational when the literal is rational (e.g. 1/2, 3, 0.25), else float."""
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        try:
            return float(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"not a number: {text!r}")


def _vector(text: str) -> list[float]:
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated vector: {text!r}")


def _triple(text: str):
    parts = text.split(",")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("expected a',b',N")
    return _number(parts[0]), _number(parts[1]), int(parts[2])


# ---------------------------------------------------------------------------
# Subcommands.  Each returns (result dict, passed flag, failure list).
# ---------------------------------------------------------------------------

def cmd_gamma(args):
    from .geometry import build_gamma_set, verify_gamma_set

    g = build_gamma_set(args.n)
    out = {"n": g.n, "matrices": [m.tolist() for m in g.matrices]}
    if not args.verify:
        return out, True, []
    viol = [{"identity": v.identity, "indices": list(v.indices)} for v in verify_gamma_set(g)]
    out["violations"] = viol
    return out, not viol, [f"{v['identity']} {v['indices']}" for v in viol]


def cmd_map(args):
    from .geometry import build_gamma_set, chart_from_cartesian, ks_map

    g = build_gamma_set(args.n)
    if args.u is not None:
        points = [np.asarray(args.u)]
    else:
        rng = np.random.default_rng(args.seed)
        points = list(rng.standard_normal((args.random, 2 * args.n)))
    rows, worst = [], 0.0
    for u in points:
        p = ks_map(g, u)
        rr = float(u @ u) ** 2
        rel = abs(float(p.x @ p.x) - rr) / rr if rr else 0.0
        worst = max(worst, rel)
        row = {"u": p.u, "x": p.x, "r": p.r, "norm_relative_error": rel}
        if args.chart:
            ch = chart_from_cartesian(args.chart, p.x)
            row["chart"] = {"kind": ch.kind, "radial": list(ch.radial), "angles": list(ch.angles)}
        rows.append(row)
    ok = worst < args.tol
    return {"points": rows, "max_norm_relative_error": worst}, ok, [] if ok else ["norm identity"]


def cmd_verify_algebra(args):
    from . import algebra

    fam = args.family
    if fam == "reduction":
        rep = algebra.verify_dimensional_reduction(args.n, args.ell1, args.ell2, args.c1, args.c2,
                                                   args.omega, fd=not args.no_fd)
    elif fam == "product":
        rep = algebra.verify_hahn_product(args.lam1, args.lam2, args.total)
    elif fam == "all":
        rep = algebra.certify(args.modes, args.cutoff, args.samples, args.seed)
    else:
        rep = algebra.verify_family(fam, args.modes, args.cutoff, args.samples, args.seed)
    return rep.to_dict(), rep.passed, rep.failures


def cmd_spectrum(args):
    from .spectra import kepler_spectrum, oscillator_spectrum

    if args.system == "oscillator":
        entries = oscillator_spectrum(args.n, args.omega, args.c1, args.c2, args.zmax)
    else:
        entries = kepler_spectrum(args.n, args.charge, args.lam1, args.lam2, args.max_principal, args.form)
    return {"system": args.system, "count": len(entries),
            "levels": [{"quantum": e.quantum, "value": e.energy} for e in entries]}, True, []


def cmd_duality(args):
    from .spectra import duality_check

    rep = duality_check(args.n, args.omega, args.c1, args.c2, args.zmax, args.omega_kepler, args.tol)
    d = rep.to_dict()
    fails = [f"oscillator orphan {o['quantum']}" for o in rep.oscillator_orphans]
    fails += [f"kepler orphan {o['quantum']}" for o in rep.kepler_orphans]
    if not fails and not rep.passed:
        fails.append("relative discrepancy above tolerance")
    d["match_count"] = len(rep.matches)
    if not args.full:
        d.pop("matches")
    return d, rep.passed, fails


def cmd_solve(args):
    from . import radial
    from .algebra import reduced_energy
    from .spectra import KeplerQuantum, kepler_energy_parabolic, part_energy, shifted_momentum

    kind = args.problem
    if kind == "parabolic-pair":
        pair = radial.solve_parabolic_pair(args.n, args.charge, args.lam1, args.lam2, args.L1, args.L2,
                                           args.n1, args.n2)
        closed = kepler_energy_parabolic(KeplerQuantum(args.n1, args.n2, args.L1,
                                                       args.L1 if args.L2 is None else args.L2,
                                                       args.lam1, args.lam2, args.n, args.charge))
        rel = abs(pair.E - closed) / abs(closed)
        out = {"E": pair.E, "P": pair.P, "mu_u": pair.mu_u, "mu_v": pair.mu_v, "iterations": pair.iterations,
               "closed_form": closed, "relative_error": rel}
        return out, rel < args.check_tol, [] if rel < args.check_tol else ["closed-form mismatch"]
    if kind == "theta":
        vals = radial.solve_angular_theta(args.n, args.lam1, args.lam2, args.L1, args.L2, k=args.k)
        return {"eigenvalues": vals}, True, []
    if kind == "oscillator":
        prob = radial.oscillator_problem(args.n, args.omega, args.L, args.c)
        Lp = shifted_momentum(args.L, args.n, 2 * args.c)
        closed = [part_energy(N, Lp, args.n, args.omega) for N in range(args.k)]
    elif kind == "reduced":
        prob = radial.reduced_oscillator_problem(args.omega, args.a)
        closed = [reduced_energy(N, args.a, args.omega) for N in range(args.k)]
    else:
        prob = radial.kepler_radial_problem(args.n, args.charge, args.Lam)
        s = 0.5 + math.sqrt(args.Lam + args.n * (args.n - 2) / 4 + 0.25)
        closed = [-args.charge ** 2 / (2 * (k + s) ** 2) for k in range(args.k)]
    res = radial.solve(prob, args.k, tol=args.tol)
    rel = [abs(x - y) / abs(y) for x, y in zip(res.eigenvalues, closed)]
    ok = max(rel) < args.check_tol
    out = res.to_dict()
    out.update({"closed_form": closed, "relative_error": rel})
    return out, ok, [] if ok else ["closed-form mismatch"]


def cmd_qes(args):
    from . import qes

    if args.anisotropic:
        rep = qes.verify_anisotropic_limits(args.seed)
        return rep, rep["passed"], [k for k, v in rep.items() if v is False]
    if args.model is not None:
        if args.u is None or args.v is None:
            raise UsageError("--model needs --u a',b',N and --v a',b',N")
        m = qes.build_dual_model(args.model, args.n, args.L, args.lam1, args.lam2, args.u, args.v)
        out = m.to_dict()
        pots = qes.check_model_potentials(m)
        out["potentials"] = pots
        fails = [k for k, v in pots.items() if not v]
        if args.fd:
            from .radial import solve

            eq = m.equations()
            fd = {}
            for side in ("u", "v"):
                target = eq[side]["mu"]
                vals = solve(eq[side]["z_form"], 4, tol=1e-8).eigenvalues
                rel = float(np.min(np.abs(vals - target)) / max(1.0, abs(target)))
                fd[side] = {"mu": target, "fd": vals, "relative_error": rel}
                if rel >= args.check_tol:
                    fails.append(f"fd mismatch on {side}")
            out["fd"] = fd
            out["Z"], out["P"] = eq["Z"], eq["P"]
        return out, not fails, fails
    if args.family is None:
        raise UsageError("give --family, --model or --anisotropic")
    fam = qes.QESFamily(args.family, args.a, args.b, args.c, args.N, args.D, args.l)
    sec = qes.build_sector(fam, certify=False)
    out = sec.to_dict()
    fails = []
    resids = []
    for p in sec.pairs:
        r = qes.residual(fam, p)
        zero = r.is_zero() if sec.exact else r.max_abs_coefficient() < 1e-9
        resids.append({"value": p.numeric, "exact_zero": bool(sec.exact and r.is_zero()),
                       "max_coefficient": r.max_abs_coefficient()})
        if not zero:
            fails.append(f"residual for {p.numeric}")
    out["residuals"] = resids
    out["energies"] = sec.energies()
    if args.fd:
        fd = qes.fd_crosscheck(fam, sec)
        out["fd"] = fd
        fails += [f"fd mismatch for {f['value']}" for f in fd if f["relative_error"] >= args.check_tol]
    return out, not fails, fails


def cmd_overlaps(args):
    from . import overlaps

    if args.physical:
        table = overlaps.physical_overlap(args.n, args.L1, args.L2, args.c1, args.c2, args.N)
    else:
        table = overlaps.coupled_diagonalize(args.lam1, args.lam2, args.N)
    out = table.to_dict()
    orth = table.orthogonality_error()
    out["orthogonality_error"] = orth
    fails = [] if orth < 1e-12 else ["orthogonality"]
    if args.validate:
        rep = overlaps.validate_3f2(table, args.tol)
        out["validation"] = rep.to_dict()
        if not rep.passed:
            fails.append("3F2 formula: no reading passes")
    return out, not fails, fails


def cmd_reduce(args):
    from .algebra import verify_dimensional_reduction

    rep = verify_dimensional_reduction(args.n, args.ell1, args.ell2, args.c1, args.c2, args.omega,
                                       levels=args.levels, fd=not args.no_fd)
    return rep.to_dict(), rep.passed, rep.failures


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ksduality", description="Oscillator/Kepler duality toolkit.",
                                epilog="Negative rationals need the --opt=VALUE form, e.g. --c=-1/2.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "table"), default="json",
                        help="output format; csv for spectrum and overlaps, table for verify-algebra")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, **kw):
        return sub.add_parser(name, parents=[common], **kw)

    s = add("gamma", help="build (and verify) a Gamma-matrix set")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--verify", action="store_true")
    s.set_defaults(func=cmd_gamma)

    s = add("map", help="apply the KS map to points")
    s.add_argument("--n", type=int, required=True)
    g = s.add_mutually_exclusive_group()
    g.add_argument("--u", type=_vector, help="comma-separated point in R^{2n}")
    g.add_argument("--random", type=int, default=1, help="number of random points")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--chart", choices=("hyperspherical", "spherical", "parabolic"))
    s.add_argument("--tol", type=float, default=1e-12)
    s.set_defaults(func=cmd_map)

    s = add("verify-algebra", help="exact certification of the symmetry algebras")
    s.add_argument("--family", default="all",
                   choices=("all", "metaplectic", "ladder", "hahn", "higgs", "isomorphism", "howe",
                            "product", "reduction"))
    s.add_argument("--modes", type=int, default=4, help="number of oscillators 2n")
    s.add_argument("--cutoff", type=int)
    s.add_argument("--samples", type=int, help="check this many random interior columns")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--lam1", type=_number, default=Fraction(1, 4))
    s.add_argument("--lam2", type=_number, default=Fraction(1, 4))
    s.add_argument("--total", type=int, default=5)
    s.add_argument("--n", type=int, default=3)
    s.add_argument("--ell1", type=int, default=0)
    s.add_argument("--ell2", type=int, default=0)
    s.add_argument("--c1", type=_number, default=Fraction(0))
    s.add_argument("--c2", type=_number, default=Fraction(0))
    s.add_argument("--omega", type=_number, default=Fraction(1))
    s.add_argument("--no-fd", action="store_true")
    s.set_defaults(func=cmd_verify_algebra)

    s = add("spectrum", help="closed-form levels")
    s.add_argument("--system", choices=("oscillator", "kepler"), default="oscillator")
    s.add_argument("--n", type=int, default=2)
    s.add_argument("--omega", type=float, default=1.0)
    s.add_argument("--c1", type=float, default=0.0)
    s.add_argument("--c2", type=float, default=0.0)
    s.add_argument("--zmax", type=float, default=5.0)
    s.add_argument("--charge", type=float, default=1.0)
    s.add_argument("--lam1", type=float, default=0.0)
    s.add_argument("--lam2", type=float, default=0.0)
    s.add_argument("--max-principal", type=float, default=4.0)
    s.add_argument("--form", choices=("parabolic", "spherical"), default="parabolic")
    s.set_defaults(func=cmd_spectrum)

    s = add("duality", help="match oscillator and Kepler spectra")
    s.add_argument("--n", type=int, default=2)
    s.add_argument("--omega", type=float, default=1.0)
    s.add_argument("--c1", type=float, default=0.0)
    s.add_argument("--c2", type=float, default=0.0)
    s.add_argument("--zmax", type=float, default=10.0)
    s.add_argument("--omega-kepler", type=float)
    s.add_argument("--tol", type=float, default=1e-12)
    s.add_argument("--full", action="store_true", help="include every matched pair")
    s.set_defaults(func=cmd_duality)

    s = add("solve", help="finite-difference radial and parabolic solves")
    s.add_argument("--problem", choices=("oscillator", "kepler", "reduced", "theta", "parabolic-pair"),
                   default="oscillator")
    s.add_argument("--n", type=int, default=3)
    s.add_argument("--omega", type=float, default=1.0)
    s.add_argument("--L", type=int, default=0)
    s.add_argument("--c", type=float, default=0.0)
    s.add_argument("--a", type=float, default=0.0)
    s.add_argument("--charge", type=float, default=1.0)
    s.add_argument("--Lam", type=float, default=0.0)
    s.add_argument("--lam1", type=float, default=0.0)
    s.add_argument("--lam2", type=float, default=0.0)
    s.add_argument("--L1", type=int, default=0)
    s.add_argument("--L2", type=int)
    s.add_argument("--n1", type=int, default=0)
    s.add_argument("--n2", type=int, default=0)
    s.add_argument("--k", type=int, default=4)
    s.add_argument("--tol", type=float, default=1e-7)
    s.add_argument("--check-tol", type=float, default=1e-6)
    s.set_defaults(func=cmd_solve)

    s = add("qes", help="quasi-exactly solvable sectors and dual models")
    s.add_argument("--family", choices=("sub2", "super2"))
    s.add_argument("--a", type=_number, default=Fraction(1))
    s.add_argument("--b", type=_number, default=Fraction(1))
    s.add_argument("--c", type=_number, default=Fraction(0))
    s.add_argument("--N", type=int, default=2)
    s.add_argument("--D", type=_number, default=Fraction(3))
    s.add_argument("--l", type=_number, default=Fraction(0))
    s.add_argument("--model", type=int, choices=(1, 2, 3, 4))
    s.add_argument("--n", type=int, default=2)
    s.add_argument("--L", type=int, default=0)
    s.add_argument("--lam1", type=_number, default=Fraction(0))
    s.add_argument("--lam2", type=_number, default=Fraction(0))
    s.add_argument("--u", type=_triple)
    s.add_argument("--v", type=_triple)
    s.add_argument("--anisotropic", action="store_true")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--fd", action="store_true", help="cross-check against finite differences")
    s.add_argument("--check-tol", type=float, default=1e-6)
    s.set_defaults(func=cmd_qes)

    s = add("overlaps", help="SU(1,1) coupling coefficients")
    s.add_argument("--lam1", type=float, default=0.25)
    s.add_argument("--lam2", type=float, default=0.25)
    s.add_argument("--N", type=int, default=1)
    s.add_argument("--validate", action="store_true")
    s.add_argument("--tol", type=float, default=1e-10)
    s.add_argument("--physical", action="store_true", help="take lambdas from (n, L1, L2, c1, c2)")
    s.add_argument("--n", type=int, default=3)
    s.add_argument("--L1", type=int, default=0)
    s.add_argument("--L2", type=int, default=0)
    s.add_argument("--c1", type=float, default=0.0)
    s.add_argument("--c2", type=float, default=0.0)
    s.set_defaults(func=cmd_overlaps)

    s = add("reduce", help="reduction to the two-dimensional singular oscillator")
    s.add_argument("--n", type=int, default=3)
    s.add_argument("--ell1", type=int, default=0)
    s.add_argument("--ell2", type=int, default=0)
    s.add_argument("--c1", type=_number, default=Fraction(0))
    s.add_argument("--c2", type=_number, default=Fraction(0))
    s.add_argument("--omega", type=_number, default=Fraction(1))
    s.add_argument("--levels", type=int, default=4)
    s.add_argument("--no-fd", action="store_true")
    s.set_defaults(func=cmd_reduce)
    return p


def _config(args) -> dict:
    return {k: _jsonable(v) for k, v in sorted(vars(args).items()) if k != "func"}


def _render(fmt: str, command: str, doc: dict) -> str:
    if fmt == "json":
        return json.dumps(doc, sort_keys=True, indent=2)
    header = "# config: " + json.dumps(doc["config"], sort_keys=True)
    res = doc["result"]
    if fmt == "table" and command == "verify-algebra":
        lines = [header]
        for c in res["checks"]:
            mark = "PASS" if c["passed"] else ("info" if c["informational"] else "FAIL")
            lines.append(f"{mark:5} {c['residual']:<12.3g} {c['name']}")
        lines.append(f"overall: {'PASS' if doc['passed'] else 'FAIL'}")
        return "\n".join(lines)
    if fmt == "csv" and command in ("spectrum", "overlaps"):
        buf = io.StringIO()
        buf.write(header + "\n")
        w = csv.writer(buf, lineterminator="\n")
        if command == "spectrum":
            keys = list(res["levels"][0]["quantum"]) if res["levels"] else []
            w.writerow(keys + ["value"])
            for e in res["levels"]:
                w.writerow([e["quantum"][k] for k in keys] + [repr(e["value"])])
        else:
            w.writerow(["j", "lam12"] + [f"n={n}" for n in range(res["N"] + 1)])
            for j, row in enumerate(res["C"]):
                w.writerow([j, repr(res["lam12"][j])] + [repr(x) for x in row])
        return buf.getvalue().rstrip("\n")
    raise UsageError(f"format {fmt!r} is not available for {command}")


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if e.code is not None else EXIT_OK
    try:
        result, passed, failures = args.func(args)
        doc = {"config": _config(args), "result": _jsonable(result), "passed": bool(passed),
               "failures": _jsonable(failures)}
        text = _render(args.format, args.command, doc)
    except UsageError as e:
        parser.print_usage(sys.stderr)
        print(json.dumps({"error": str(e)}), file=sys.stderr)
        return EXIT_USAGE
    except ValueError as e:
        # domain errors (inadmissible n, bad parameter ranges) are usage errors
        print(json.dumps({"error": f"{type(e).__name__}: {e}"}), file=sys.stderr)
        return EXIT_USAGE
    print(text)
    return EXIT_OK if passed else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
