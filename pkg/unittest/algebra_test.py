from hypothesis import given, settings, strategies as st
from src.algebra.fock import (
    FockOperator,
    ModeIndex,
    anticommutator,
    fermion_annihilation,
    fermion_creation,
    gamma,
    identity,
    number_operator,
    parity_operator,
    residual,
    unitary_exponential,
)
from src.algebra.spins import PauliSite, RectLatticeSpec, ensure_within_caps, jw_majorana_from_pauli, pauli
from src.common.errors import DimensionError, HermiticityError, SizeCapError
import numpy as np
import pytest


N = 2
MODES = [(species, j, s) for species in ("A", "B") for j in (1, 2) for s in (1, -1)]


def test_majoranas_square_to_one_and_anticommute():
    eye = identity(4**N)
    for i, first in enumerate(MODES):
        g = gamma(*first, N)
        assert residual(g @ g, eye) < 1e-12
        for second in MODES[i + 1 :]:
            assert anticommutator(g, gamma(*second, N)).norm() < 1e-12


def test_majorana_bilinear_is_occupation():
    # i gA gB = 2 n - 1
    eye = identity(4**N)
    for j in (1, 2):
        for s in (1, -1):
            n = number_operator(ModeIndex(site=j, spin=s), N)
            lhs = 1j * (gamma("A", j, s, N) @ gamma("B", j, s, N))
            assert residual(lhs, 2.0 * n - eye) < 1e-12


def test_canonical_anticommutation():
    eye = identity(4**N)
    modes = [ModeIndex(site=j, spin=s) for j in (1, 2) for s in (1, -1)]
    for a in modes:
        for b in modes:
            ca, cb = fermion_annihilation(a, N), fermion_annihilation(b, N)
            expected = eye if a == b else 0.0 * eye
            assert residual(anticommutator(ca, cb.dag()), expected) < 1e-12
            assert anticommutator(ca, cb).norm() < 1e-12


def test_parity_anticommutes_with_majoranas():
    P = parity_operator(N)
    for mode in MODES:
        assert anticommutator(P, gamma(*mode, N)).norm() < 1e-12


def test_mode_position_order():
    assert ModeIndex(site=1, spin=1).position(3) == 0
    assert ModeIndex(site=1, spin=-1).position(3) == 1
    assert ModeIndex(site=3, spin=-1).position(3) == 5
    with pytest.raises(DimensionError):
        ModeIndex(site=4, spin=1).position(3)


def test_operator_rejects_bad_shapes():
    # validator errors surface as pydantic ValidationError, a ValueError
    with pytest.raises(ValueError):
        FockOperator(matrix=np.eye(3))
    with pytest.raises(ValueError):
        FockOperator(matrix=np.ones((2, 4)))


def test_operator_matrix_is_frozen():
    op = identity(4)
    with pytest.raises(ValueError):
        op.matrix[0, 0] = 2.0


def test_unitary_exponential_rejects_non_hermitian():
    with pytest.raises(HermiticityError):
        unitary_exponential(FockOperator(matrix=[[0, 1], [0, 0]], label="raise"), 1.0)


@settings(max_examples=25, deadline=None)
@given(st.floats(min_value=-10.0, max_value=10.0, allow_nan=False))
def test_unitary_exponential_is_unitary(theta):
    H = FockOperator(matrix=[[1.0, 0.5 - 0.2j], [0.5 + 0.2j, -0.3]], label="H")
    U = unitary_exponential(H, theta)
    assert residual(U.dag() @ U, identity(2)) < 1e-12


def test_spin_jordan_wigner_bilinears():
    lattice = RectLatticeSpec(N=2, n=1)
    eye = identity(lattice.dimension)
    for row in (1, 2):
        for chain in (1, 2):
            a = jw_majorana_from_pauli(row, chain, "A", lattice)
            b = jw_majorana_from_pauli(row, chain, "B", lattice)
            assert residual(a @ a, eye) < 1e-12
            assert anticommutator(a, b).norm() < 1e-12
            x = pauli(PauliSite(row=row, chain=chain, axis="X"), lattice)
            assert residual(1j * (a @ b), x) < 1e-12
        b1 = jw_majorana_from_pauli(row, 1, "B", lattice)
        a2 = jw_majorana_from_pauli(row, 2, "A", lattice)
        zz = pauli(PauliSite(row=row, chain=1, axis="Z"), lattice) @ pauli(PauliSite(row=row, chain=2, axis="Z"), lattice)
        assert residual(1j * (b1 @ a2), zz) < 1e-12


def test_lattice_shapes_and_caps():
    with pytest.raises(ValueError):
        RectLatticeSpec(N=3, n=1, J=[[0.1, 0.2]])
    assert RectLatticeSpec(N=3, n=2).qubits == 9
    with pytest.raises(SizeCapError):
        ensure_within_caps(RectLatticeSpec(N=4, n=2))
    with pytest.raises(DimensionError):
        RectLatticeSpec(N=2, n=1).qubit(3, 1)


def test_creation_operator_from_majoranas():
    # c^dag = (gB + i gA) / 2
    eye = identity(4**N)
    for j in (1, 2):
        for s in (1, -1):
            mode = ModeIndex(site=j, spin=s)
            cdag = fermion_creation(mode, N)
            assert residual(cdag, 0.5 * (gamma("B", j, s, N) + 1j * gamma("A", j, s, N))) < 1e-12
            assert residual(anticommutator(fermion_annihilation(mode, N), cdag), eye) < 1e-12
