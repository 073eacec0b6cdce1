from src.algebra.fock import FockOperator, gamma, identity, residual
from src.chain.rotation import clifford_gbar
from src.common.errors import DimensionError, OrbitError
from src.modes.candidates import (
    ModeCandidate,
    best_phase,
    conjugate,
    conjugation_orbit,
    fold_phase,
    orbit_modes,
    proportionality_fit,
    verify_mode,
)
from src.modes.ideal import (
    ideal_left_modes,
    ideal_right_modes,
    left_majoranas,
    logical_qubits,
    partner_right_modes,
    right_majoranas,
    rotated_floquet,
    symmetry_operators,
)
from src.modes.solvable import appendixB2_modes, appendixB3_modes, appendixB4_modes, solvable_floquet
import numpy as np
import pytest
import math


T = 5.0


@pytest.mark.parametrize("N,J", [(2, 0.0), (2, 0.37), (3, 1.1)])
def test_left_parafermions_are_exact_modes(N, J):
    U = rotated_floquet(N, J, T)
    for cand in ideal_left_modes(N):
        report = verify_mode(U, cand)
        assert report.conjugation_residual < 1e-9
        assert report.order_residual < 1e-9
        assert report.is_parafermion_like


def test_left_majoranas_cycle_with_period_four():
    U = rotated_floquet(2, 0.37, T)
    g1, _ = left_majoranas(2)
    assert conjugation_orbit(U, g1).period == 4


def test_orbit_modes_of_left_majorana():
    U = rotated_floquet(2, 0.37, T)
    g1, _ = left_majoranas(2)
    modes = orbit_modes(U, g1, claimed_order=4)
    assert sorted(modes) == [-math.pi / 2, math.pi / 2]
    for cand in modes.values():
        assert verify_mode(U, cand).conjugation_residual < 1e-9


def test_best_phase_picks_the_mode_phase():
    U = rotated_floquet(2, 0.37, T)
    plus, minus = ideal_left_modes(2)
    assert best_phase(U, plus.operator)[0] == pytest.approx(math.pi / 2)
    assert best_phase(U, minus.operator)[0] == pytest.approx(-math.pi / 2)


def test_orbit_that_never_closes_raises():
    theta = 0.3
    U = FockOperator(matrix=np.diag([1.0, np.exp(1j * theta)]), label="U")
    seed = FockOperator(matrix=[[0, 1], [1, 0]], label="x")
    with pytest.raises(OrbitError):
        conjugation_orbit(U, seed, max_period=8)


def test_candidate_phase_must_be_a_quarter_turn():
    op = identity(4)
    with pytest.raises(ValueError):
        ModeCandidate(operator=op, target_phase=0.3, claimed_order=2)
    assert ModeCandidate(operator=op, target_phase=-math.pi, claimed_order=2).target_phase == pytest.approx(math.pi)


def test_fold_phase():
    assert fold_phase(3 * math.pi / 2) == pytest.approx(-math.pi / 2)
    assert fold_phase(-math.pi) == pytest.approx(math.pi)


def test_verify_mode_checks_dimensions():
    cand = ModeCandidate(operator=gamma("A", 1, 1, 1), target_phase=0.0, claimed_order=2)
    with pytest.raises(DimensionError):
        verify_mode(identity(16), cand)


def test_nilpotent_square_is_fermion_like():
    c = FockOperator(matrix=[[0, 1], [0, 0]], label="c")
    report = verify_mode(identity(2), ModeCandidate(operator=c, target_phase=0.0, claimed_order=2))
    assert report.is_fermion_like
    assert report.order_residual == 0.0
    assert report.conjugation_residual < 1e-14


def test_proportionality_fit_recovers_coefficient():
    op = gamma("A", 1, 1, 1)
    fit = proportionality_fit((2 - 1j) * op, op)
    assert fit["coefficient"] == pytest.approx(2 - 1j)
    assert fit["relative_misfit"] < 1e-12


@pytest.mark.parametrize("builder", [appendixB2_modes, appendixB3_modes, appendixB4_modes])
def test_solvable_point_modes_are_exact(builder):
    case = builder.__name__[len("appendix"):len("appendix") + 2]
    U = solvable_floquet(case, 2, T)
    modes = builder(2, T)
    assert modes
    for label, cand in modes.items():
        assert verify_mode(U, cand).conjugation_residual < 1e-9, label


def test_zero_pairing_fermions_combine_both_chains():
    modes = appendixB4_modes(2, T)
    assert {"alpha_0", "beta_0", "c_0", "alpha_pi", "beta_pi", "c_pi"} <= set(modes)


def test_parity_commutes_with_rotated_floquet():
    U = rotated_floquet(2, 0.37, T)
    Q2, Q4 = symmetry_operators(2)
    assert len(Q4) == 2
    assert residual(Q2 @ U, U @ Q2) < 1e-9
    assert residual(Q2 @ Q2.dag(), identity(16)) < 1e-12


def test_logical_operators_square_to_identity():
    qubits = logical_qubits(2)
    for op in (qubits.X1, qubits.Z1):
        assert residual(op @ op, identity(16)) < 1e-12
        assert residual(op.dag(), op) < 1e-12


@pytest.mark.parametrize("N", [2, 4])
def test_ideal_chain_edge_modes_are_exact(N):
    U = rotated_floquet(N, 0.37, T)
    for cand in ideal_left_modes(N) + ideal_right_modes(N):
        report = verify_mode(U, cand)
        assert report.conjugation_residual < 1e-9, cand.label
        assert report.order_residual < 1e-9, cand.label


def test_right_majoranas_cycle_backwards():
    U = rotated_floquet(2, 0.37, T)
    g1, g2 = right_majoranas(2)
    assert residual(conjugate(U, g1), -1.0 * g2) < 1e-9
    plus, _ = ideal_right_modes(2)
    bR = gamma("B", 2, 1, 2) @ gamma("A", 2, -1, 2)
    assert residual(plus.operator @ plus.operator, 1j * bR) < 1e-9


def test_symmetry_operators_commute_and_order():
    U = rotated_floquet(2, 0.37, T)
    Q2, Q4 = symmetry_operators(2)
    eye = identity(16)
    assert residual(conjugate(Q2, U), U) < 1e-9
    for Qk in Q4:
        assert residual(Qk.power(4), eye) < 1e-9
    plus, minus = (c.operator for c in ideal_left_modes(2))
    assert residual(plus @ Q4[0], -1j * (Q4[0] @ plus)) < 1e-9
    assert residual(minus @ Q4[0], 1j * (Q4[0] @ minus)) < 1e-9


def test_partner_mode_exchange_phase():
    plus, _ = (c.operator for c in ideal_left_modes(2))
    tilde_plus, _ = partner_right_modes(2)
    assert residual(plus @ tilde_plus, -1j * (tilde_plus @ plus)) < 1e-9


def test_clifford_part_acts_on_logical_qubits():
    q = logical_qubits(2)
    Gbar = clifford_gbar(2)
    assert residual(conjugate(Gbar, q.X1), -1.0 * (q.X1 @ q.X2)) < 1e-9
    assert (q.X1 @ q.X2 - q.X2 @ q.X1).norm() < 1e-9


@pytest.mark.parametrize("N", [2, 4])
def test_solvable_point_fermions_square_to_zero(N):
    nilpotent = {
        "B2": (appendixB2_modes(N, T), ("gamma_+pi/2", "gamma_-pi/2")),
        "B3": (appendixB3_modes(N, T), ("gammaNI_+pi/2", "gammaNI_-pi/2")),
        "B4": (appendixB4_modes(N, T), ("c_0", "c_pi")),
    }
    for case, (modes, labels) in nilpotent.items():
        U = solvable_floquet(case, N, T)
        for label in labels:
            report = verify_mode(U, modes[label])
            assert report.conjugation_residual < 1e-9, label
            assert report.order_residual < 1e-9, label
