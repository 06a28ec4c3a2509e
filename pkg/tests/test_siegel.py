import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from genus2theta.errors import DomainError, NumericInstabilityError
from genus2theta.siegel import (
    PeriodMatrix,
    SymplecticIntMatrix,
    act_on_pair,
    act_on_siegel,
    base_change,
    direct_sum_period,
    inversion,
    is_block_reducible,
    lattice_coordinates,
    random_symplectic,
    reduce_mod_lattice,
    sp4_generators,
    split_period,
    standard_form,
    torus_distance,
    translation,
)

S = np.array([[0, -1], [1, 0]])  # g = 1 inversion
OMEGA = PeriodMatrix([[0.1 + 1.1j, 0.2 + 0.3j], [0.2 + 0.3j, -0.2 + 1.4j]])


def embed(M1, M2):
    """Block sum of two genus-1 symplectic matrices inside Sp_4."""
    (a1, b1), (c1, d1) = M1
    (a2, b2), (c2, d2) = M2
    A, B = np.diag([a1, a2]), np.diag([b1, b2])
    C, D = np.diag([c1, c2]), np.diag([d1, d2])
    return SymplecticIntMatrix.from_blocks(A, B, C, D)


def random_omega(rng, g=2):
    X = rng.uniform(-0.5, 0.5, (g, g))
    A = rng.uniform(-0.5, 0.5, (g, g))
    return PeriodMatrix((X + X.T) / 2 + 1j * (A @ A.T + 0.7 * np.eye(g)))


def test_period_matrix_validation():
    with pytest.raises(DomainError):
        PeriodMatrix([[1j, 0.1], [0.2, 1j]])
    with pytest.raises(DomainError):
        PeriodMatrix([[1j, 0], [0, -1j]])
    with pytest.raises(DomainError):
        PeriodMatrix([[1j, 0]])
    with pytest.raises(DomainError):
        PeriodMatrix([[np.nan + 1j]])


def test_period_matrix_json():
    data = OMEGA.to_json()
    assert data[0][1] == [0.2, 0.3]
    assert PeriodMatrix.from_json(data) == OMEGA


def test_symplectic_validation():
    with pytest.raises(DomainError):
        SymplecticIntMatrix(np.array([[1, 1], [1, 1]]))
    J = standard_form(2)
    for M in sp4_generators().values():
        assert np.array_equal(M.matrix.T @ J @ M.matrix, J)


def test_act_examples():
    assert act_on_siegel(SymplecticIntMatrix.identity(2), OMEGA) == OMEGA
    tau = PeriodMatrix([[1j]])
    assert np.allclose(act_on_siegel(SymplecticIntMatrix(S), tau).matrix, [[1j]])


def test_act_blockwise():
    M1, M2 = [[1, 1], [0, 1]], [[0, -1], [1, 0]]
    t1, t2 = 0.3 + 1.2j, -0.1 + 0.8j
    out = act_on_siegel(embed(M1, M2), PeriodMatrix.diagonal(t1, t2))
    expected = np.diag([(t1 + 1) / 1, -1 / t2])
    assert np.allclose(out.matrix, expected, atol=1e-14)


def test_act_on_pair_examples():
    w, z = act_on_pair(SymplecticIntMatrix.identity(2), OMEGA, [0.1, 0.2j])
    assert w == OMEGA and np.allclose(z, [0.1, 0.2j])
    w, z = act_on_pair(inversion(2), OMEGA, [0, 0])
    assert w == act_on_siegel(inversion(2), OMEGA) and np.allclose(z, 0)
    w, z = act_on_pair(SymplecticIntMatrix(S), PeriodMatrix([[1j]]), [0.3])
    assert np.allclose(w.matrix, [[1j]]) and np.allclose(z, [-0.3j])


def test_near_singular_automorphy():
    # inversion divides by Omega; an Omega with nearly dependent rows is refused
    eps = 1e-13
    omega = PeriodMatrix([[1j, (1 - eps) * 1j], [(1 - eps) * 1j, 1j]])
    with pytest.raises(NumericInstabilityError):
        act_on_siegel(inversion(2), omega)


def test_direct_sum_and_reducibility():
    both = direct_sum_period(PeriodMatrix([[1j]]), PeriodMatrix([[2j]]))
    assert np.allclose(both.matrix, np.diag([1j, 2j]))
    assert is_block_reducible(both)
    assert not is_block_reducible(PeriodMatrix([[1j, 0.1 + 0.2j], [0.1 + 0.2j, 2j]]))
    t1, t2 = split_period(both, 1)
    assert t1 == PeriodMatrix([[1j]]) and t2 == PeriodMatrix([[2j]])


def test_reducible_point_off_the_standard_component():
    # a genuine product ppav moved by an element with C != 0 leaves the block-diagonal locus
    M = inversion(2) @ translation([[0, 1], [1, 0]])
    assert np.any(M.blocks[2] != 0)
    moved = act_on_siegel(M, PeriodMatrix.diagonal(1j, 2j))
    assert not is_block_reducible(moved, 1e-10)


def test_base_change_is_congruence():
    U = np.array([[2, 1], [1, 1]])
    out = act_on_siegel(base_change(U), OMEGA)
    assert np.allclose(out.matrix, U @ OMEGA.matrix @ U.T, atol=1e-13)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_group_action_composes(seed):
    rng = np.random.default_rng(seed)
    M1, M2 = random_symplectic(2, rng, 3), random_symplectic(2, rng, 3)
    omega = random_omega(rng)
    lhs = act_on_siegel(M1 @ M2, omega)
    rhs = act_on_siegel(M1, act_on_siegel(M2, omega))
    assert np.allclose(lhs.matrix, rhs.matrix, atol=1e-9)
    # output is again a valid point of Siegel space
    np.linalg.cholesky(lhs.imag)


def test_reduce_examples():
    p = reduce_mod_lattice(OMEGA, [0, 0])
    assert np.allclose(p.z, 0) and all(np.array_equal(m, [0, 0]) for m in p.lattice_coords)
    p = reduce_mod_lattice(PeriodMatrix([[1j]]), [1 + 1j])
    assert np.allclose(p.z, 0) and p.lattice_coords[0].tolist() == [1] and p.lattice_coords[1].tolist() == [1]
    p = reduce_mod_lattice(PeriodMatrix.diagonal(1j, 2j), [2.25, 0.5 + 2j])
    assert np.allclose(p.z, [0.25, 0.5])
    assert p.lattice_coords[0].tolist() == [2, 0] and p.lattice_coords[1].tolist() == [0, 1]


@settings(max_examples=60, deadline=None)
@given(st.lists(st.floats(-5, 5), min_size=4, max_size=4))
def test_reduce_properties(coords):
    z = np.array([coords[0] + 1j * coords[1], coords[2] + 1j * coords[3]])
    p = reduce_mod_lattice(OMEGA, z)
    s, u = lattice_coordinates(OMEGA, p.z)
    assert np.all(s > -1e-9) and np.all(s < 1 + 1e-9) and np.all(u > -1e-9) and np.all(u < 1 + 1e-9)
    assert torus_distance(OMEGA, z, p.z) <= 1e-10
    again = reduce_mod_lattice(OMEGA, p.z)
    assert np.allclose(again.z, p.z, atol=1e-10)
