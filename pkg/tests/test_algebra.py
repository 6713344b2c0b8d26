from fractions import Fraction

import numpy as np
import pytest

from ksduality import algebra as alg
from ksduality.spectra import SpectrumError

F = Fraction


@pytest.fixture(scope="module")
def fr4():
    return alg.FockRealization(4)


def test_single_mode_metaplectic_exact():
    rep = alg.verify_family("metaplectic", 1, 10)
    assert rep.passed
    assert all(c.exact and c.residual == 0 for c in rep.checks)


def test_hahn_discrete_series_product():
    rep = alg.verify_hahn_product(F(1, 4), F(3, 4), total=5)
    assert rep.passed and len(rep.checks) == 3
    assert all(c.exact for c in rep.checks)


def test_hahn_two_mode():
    assert alg.verify_hahn_two_mode(10).passed


@pytest.mark.parametrize("modes", [2, 4])
def test_full_certification(modes):
    rep = alg.certify(modes)
    assert rep.passed, rep.failures
    assert all(c.exact for c in rep.checks if not c.informational)


def test_sampled_certification_is_reproducible():
    a = alg.certify(8, samples=20, seed=3, families=("higgs", "howe"))
    b = alg.certify(8, samples=20, seed=3, families=("higgs", "howe"))
    assert a.passed
    assert a.to_dict() == b.to_dict()
    assert a.to_dict()["realization"]["columns"] == "sampled"


def test_hahn_negative_control():
    ops, probe = alg.two_mode_realization(8)
    k = alg.coupled_k_triple(ops)
    K2 = k["K2"] + 1
    rep = alg.verify_hahn(k["K1"], K2, alg.comm(k["K1"], K2), k["delta1"], k["delta2"], probe)
    assert set(rep.failures) == set(alg.HAHN_NAMES[1:])


def test_higgs_negative_control(fr4):
    c = fr4.commutant()
    rep = alg.verify_higgs(c["D"], c["A+"], c["A-"], c["alpha1"] + 1, c["alpha2"], fr4.probe)
    assert list(rep.failures) == ["[A+,A-] = -D^3 + alpha1 D + alpha2"]


def test_higgs_scalars_on_sectors(fr4):
    rows = alg.higgs_sector_constants(fr4)
    assert rows and max(r["deviation"] for r in rows) < 1e-12


def test_structure_constant_relations(fr4):
    sc = alg.structure_constants(fr4)
    probe = fr4.probe
    assert alg.check_identity("d1", sc.delta1, -sc.alpha2 / 4, probe).passed
    assert alg.check_identity("d2", sc.delta2, sc.alpha1 / 2, probe).passed


def test_informational_checks_do_not_fail_report(fr4):
    rep = alg.verify_howe_duality(fr4)
    assert rep.passed
    info = [c for c in rep.checks if c.informational]
    assert info and all(c.note for c in info)


def test_duplicate_check_names_rejected():
    rep = alg.AlgebraReport("x", {})
    chk = alg.IdentityCheck("a", True, 0.0, True, 1)
    rep.add(chk)
    with pytest.raises(alg.AlgebraError):
        rep.add(chk)


def test_dimension_mismatch_rejected():
    probe = alg.Probe.from_columns({}, 3, [0, 1])
    with pytest.raises(alg.AlgebraError):
        alg.check_identity("bad", alg.Leaf(np.eye(4)), alg.Const(1), probe)


def test_float_residual_with_tolerance():
    probe = alg.Probe.from_columns({}, 2, [0, 1])
    A = alg.Leaf(np.array([[0.1, 0.0], [0.0, 0.2]]))
    chk = alg.check_identity("approx", A @ A, A @ A + alg.Const(1e-17), probe, tol=1e-15)
    assert chk.passed


def test_unknown_family():
    with pytest.raises(alg.AlgebraError):
        alg.verify_family("cubic", 2)


@pytest.mark.parametrize("args", [(3, 0, 0), (3, 1, 0), (2, 1, 2, F(1, 2), F(3, 2)), (4, 0, 3, 1, 0)])
def test_dimensional_reduction(args):
    rep = alg.verify_dimensional_reduction(*args)
    assert rep.passed, rep.failures


def test_dimensional_reduction_needs_two_modes():
    with pytest.raises(SpectrumError):
        alg.verify_dimensional_reduction(1, 0, 0)


def test_reduced_coupling_values():
    assert alg.reduced_coupling(3, 0) == 0
    assert alg.reduced_coupling(2, 1, F(1, 2)) == 1 + 1 - F(1, 4)
