import math
from itertools import product

import numpy as np
import pytest

from ksduality.fock import (
    FockError, FockSpace, build_commutant_generators, build_metaplectic, build_mode_operators,
    build_rotation, casimir, identity, rotation_squared,
)


def state(space, occ):
    v = np.zeros(space.dim)
    v[space.index[tuple(occ)]] = 1.0
    return v


def interior_residual(space, M):
    idx = space.interior_indices()
    return float(np.abs(M.dense()[:, idx]).max()) if M.entries.nnz else 0.0


@pytest.mark.parametrize("m,K", [(1, 5), (2, 10), (4, 8), (8, 6), (16, 4)])
def test_dimension_is_binomial(m, K):
    assert FockSpace(m, K).dim == math.comb(K + m, m)


def test_default_cutoffs():
    assert FockSpace(4).cutoff == 8
    assert FockSpace(16).cutoff == 4


def test_number_and_ladder_action():
    s = FockSpace(1, 5)
    ops = build_mode_operators(s, 0)
    k3 = state(s, [3])
    assert np.array_equal(ops["N"].dense() @ k3, 3 * k3)
    assert np.array_equal(ops["adag"].dense() @ k3, state(s, [4]))
    assert np.array_equal(ops["a"].dense() @ k3, 3 * state(s, [2]))
    aa = ops["adag"] @ ops["adag"] @ ops["a"] @ ops["a"]
    assert np.array_equal(aa.dense() @ k3, 6 * k3)


def test_canonical_commutator_is_exact_on_interior():
    s = FockSpace(2, 6)
    for i, j in product(range(2), repeat=2):
        a = build_mode_operators(s, i)["a"]
        c = build_mode_operators(s, j)["adag"]
        comm = a @ c - c @ a - (identity(s) if i == j else identity(s) * 0)
        assert interior_residual(s, comm) == 0.0


def test_truncation_edge_is_not_interior():
    s = FockSpace(1, 4)
    ops = build_mode_operators(s, 0)
    comm = ops["a"] @ ops["adag"] - ops["adag"] @ ops["a"] - identity(s)
    assert np.abs(comm.dense()).max() > 0
    assert interior_residual(s, comm) == 0.0


def test_rotation_annihilates_vacuum_and_commutes_on_disjoint_pairs():
    s = FockSpace(4, 6)
    vac = state(s, [0, 0, 0, 0])
    L12 = build_rotation(s, 0, 1)
    L34 = build_rotation(s, 2, 3)
    assert L12.phase == 1j
    assert not np.any(L12.dense() @ vac)
    assert interior_residual(s, L12 @ L34 - L34 @ L12) == 0.0


def test_rotation_squared_is_minus_real_square():
    s = FockSpace(2, 6)
    R = build_rotation(s, 0, 1).dense()
    assert np.array_equal(rotation_squared(s, 0, 1).dense(), -(R @ R))


def test_so_commutation_relations():
    # [L_jk, L_lm] = (i/2)(L_jl d_km - L_kl d_jm + L_km d_jl - L_jm d_kl) with L = i R
    s = FockSpace(4, 6)
    R = {(i, j): build_rotation(s, i, j).dense() for i in range(4) for j in range(4) if i != j}
    z = np.zeros((s.dim, s.dim))
    get = lambda i, j: R.get((i, j), z)
    idx = s.interior_indices()
    d = lambda a, b: float(a == b)
    for j, k, l, m in product(range(4), repeat=4):
        if j == k or l == m:
            continue
        lhs = -(get(j, k) @ get(l, m) - get(l, m) @ get(j, k))
        rhs = -0.5 * (get(j, l) * d(k, m) - get(k, l) * d(j, m) + get(k, m) * d(j, l) - get(j, m) * d(k, l))
        assert np.abs((lhs - rhs)[:, idx]).max() == 0.0


def test_metaplectic_vacuum_and_casimir():
    s = FockSpace(1, 8)
    J = build_metaplectic(s, [0])
    vac = state(s, [0])
    assert np.array_equal(J["J0"].dense() @ vac, 0.25 * vac)
    Q = casimir(J).dense()
    idx = s.interior_indices()
    # single-mode Casimir lam(lam-1) with lam = 1/4 or 3/4 equals -3/16
    assert np.abs((Q + 3 / 16 * np.eye(s.dim))[:, idx]).max() == 0.0


def test_commutant_on_vacuum():
    s = FockSpace(4, 6)
    gens = build_commutant_generators(s)
    vac = state(s, [0] * 4)
    assert not np.any(gens["D"].dense() @ vac)
    assert not np.any(gens["K2"].dense() @ vac)
    assert all(g.is_exact() for g in gens.values())


def test_odd_mode_count_rejected():
    with pytest.raises(FockError, match="even"):
        build_commutant_generators(FockSpace(3, 4))


def test_bad_mode_index():
    with pytest.raises(FockError):
        build_mode_operators(FockSpace(2, 3), 5)


def test_normalized_ladder_entries():
    s = FockSpace(1, 4)
    a = build_mode_operators(s, 0)["a"].normalized().toarray()
    assert np.allclose(np.diag(a, 1), np.sqrt(np.arange(1, 5)))


def test_triplets_are_exact():
    s = FockSpace(1, 3)
    trip = build_mode_operators(s, 0)["adag"].triplets()
    for row, col, num, arg in trip:
        assert row == col + 1 and num == 1 and arg == row
