from fractions import Fraction

import numpy as np
import pytest

from ksduality import qes
from ksduality.radial import solve
from ksduality.spectra import part_energy

F = Fraction


def test_super2_single_level():
    fam = qes.QESFamily("super2", 1, 1, 0, 1, 3)
    sec = qes.build_sector(fam)
    assert sec.exact and len(sec.pairs) == 1
    assert sec.energies() == pytest.approx([4.0])
    assert qes.residual(fam, sec.pairs[0]).is_zero()
    assert qes.fd_crosscheck(fam, sec)[0]["relative_error"] < 1e-6


@pytest.mark.parametrize("c", [F(0), F(-1, 2)])
def test_sub2_without_linear_term_is_singular_oscillator(c):
    fam = qes.QESFamily("sub2", 0, 1, c, 1, 3)
    sec = qes.build_sector(fam)
    # -Delta + r^2 in d' = 4 dimensions with centrifugal c = c'(c'-2)
    Lp = -1 + np.sqrt(1 + float(fam.c_coupling))
    assert float(qes.fixed_energy(fam)) == pytest.approx(2 * part_energy(0, Lp, 4, 1.0))
    assert qes.residual(fam, sec.pairs[0]).is_zero()
    assert sec.pairs[0].numeric == pytest.approx(0.0, abs=1e-14)


def test_super2_two_levels_confirmed_by_fd():
    fam = qes.QESFamily("super2", 1, 1, F(-1, 2), 2, 3)
    sec = qes.build_sector(fam)
    assert len(sec.pairs) == 2
    assert all(qes.residual(fam, p).is_zero() for p in sec.pairs)
    assert all(f["relative_error"] < 1e-6 for f in qes.fd_crosscheck(fam, sec))


@pytest.mark.parametrize("tag,N", [("sub2", 2), ("sub2", 3), ("super2", 3)])
def test_exact_residuals_and_fd(tag, N):
    fam = qes.QESFamily(tag, 1, F(3, 2), 0, N, 3)
    sec = qes.build_sector(fam)
    assert sec.exact and len(sec.pairs) == N
    for p in sec.pairs:
        assert qes.residual(fam, p).is_zero()
    assert all(f["relative_error"] < 1e-6 for f in qes.fd_crosscheck(fam, sec))


def test_wrong_energy_leaves_nonzero_residual():
    fam = qes.QESFamily("super2", 1, 1, 0, 1, 3)
    pair = qes.build_sector(fam).pairs[0]
    bad = qes.Eigenpair(4.5, pair.coefficients, None, 4.5)
    assert not qes.residual(fam, bad).is_zero()


def test_reassignment_round_trip():
    for tag in ("sub2", "super2"):
        fam = qes.QESFamily(tag, F(1, 2), F(3, 2), F(-1, 2), 2, 3)
        pc = fam.potential_coefficients()
        back = qes.QESFamily.from_potential(tag, pc["omega2"], pc["a"], pc["b"], pc["c"], 2, 3)
        assert (back.a, back.b, back.c) == (fam.a, fam.b, fam.c)


@pytest.mark.parametrize("bad", [dict(tag="sub3"), dict(N=0), dict(tag="super2", a=-1), dict(tag="sub2", b=0)])
def test_invalid_families(bad):
    kw = dict(tag="sub2", a=1, b=1, c=0, N=1, D=3)
    kw.update(bad)
    with pytest.raises(qes.QESError):
        qes.QESFamily(**kw)


@pytest.mark.parametrize("model", [1, 2, 3, 4])
def test_dual_models(model):
    m = qes.build_dual_model(model, 3, 0, 0, 0, (1, 1, 1), (1, 1, 2))
    assert qes.check_model_potentials(m)["potential_identity"]
    eq = m.equations()
    for side, slot in (("u", m.u), ("v", m.v)):
        assert slot.tag == qes.MODEL_TABLE[model][side == "v"]
        vals = solve(eq[side]["z_form"], 4, tol=1e-8).eigenvalues
        assert np.min(np.abs(vals - eq[side]["mu"])) < 1e-6 * max(1, abs(eq[side]["mu"]))
        if slot.tag == "super2":
            # x -> z^2 maps C / x^2 to (4 C + 3/4) / z^2
            assert eq[side]["z_form"].centrifugal == pytest.approx(4 * eq[side]["x_form"].centrifugal + 0.75)


def test_dual_model_id_rejected():
    with pytest.raises(qes.QESError):
        qes.build_dual_model(5, 3, 0, 0, 0, (1, 1, 1), (1, 1, 1))


def test_anisotropic_limits():
    rep = qes.verify_anisotropic_limits(seed=0)
    assert rep["passed"]
    assert rep["isotropic_limit_zero"] and rep["quartic_identity"] and rep["ks_block_identity"]
