from hypothesis import given, settings, strategies as st
from src.algebra.fock import (
    FockOperator,
    commutator,
    euler_conjugation,
    gamma,
    hermiticity_defect,
    identity,
    parity_operator,
    product,
    residual,
    unitarity_defect,
    unitary_exponential,
)
from src.chain.hamiltonians import (
    build_floquet,
    build_step_hamiltonians,
    carries_onsite,
    kitaev_term,
    trotter_oracle,
)
from src.chain.parameters import (
    DisorderSpec,
    DriveParameters,
    fig1_parameters,
    fig2_parameters,
    ideal_parameters,
    sample_disorder,
    solvable_parameters,
)
from src.chain.rotation import lambda_gamma_check, rotation_R, rotation_equality_residual
from src.common.errors import DimensionError
import numpy as np
import pytest
import math


T = 5.0


def test_step_hamiltonians_are_hermitian_and_traceless():
    params = ideal_parameters(2, 0.4, T)
    for H in build_step_hamiltonians(params):
        assert hermiticity_defect(H) < 1e-12
        assert abs(np.trace(H.matrix)) < 1e-9


@pytest.mark.parametrize("N", [2, 3])
def test_floquet_operator_is_unitary(N):
    U = build_floquet(solvable_parameters("B2", N, T))
    assert unitarity_defect(U) < 1e-10


def test_trotter_oracle_matches_piecewise_product():
    # two substeps per drive step reproduce each exponential exactly
    params = fig2_parameters("mu", 1.3, 2, T)
    assert residual(trotter_oracle(params, substeps=10), build_floquet(params)) < 1e-9


def test_layouts_swap_site_parity():
    assert carries_onsite(1, "majorana", 2) and not carries_onsite(1, "majorana", 1)
    assert carries_onsite(1, "printed", 1) and not carries_onsite(1, "printed", 2)
    assert carries_onsite(5, "majorana", 1) and carries_onsite(5, "printed", 2)


@pytest.mark.parametrize("J", [0.0, 0.4, 1.0])
@pytest.mark.parametrize("N", [2, 4])
def test_rotation_maps_lab_ideal_chain_to_rotated_form(N, J):
    assert rotation_equality_residual(N, J, T) < 1e-9


@pytest.mark.parametrize("J", [0.4, 1.0])
@pytest.mark.parametrize("N", [2, 4])
def test_printed_site_layout_breaks_the_rotation(N, J):
    assert rotation_equality_residual(N, J, T, layout="printed") > 0.1


def test_lambda_gamma_single_exponential_forms():
    report = lambda_gamma_check(2, 0.7, T)
    assert report["lambda"] < 1e-9
    assert report["gamma"] < 1e-9


def test_lambda_gamma_rejects_odd_chains():
    with pytest.raises(DimensionError):
        lambda_gamma_check(3, 0.7, T)


def test_parameter_shapes_are_checked():
    with pytest.raises(ValueError):
        DriveParameters(N=2, mu=[[0, 0]], J1=[0, 0], J2=[[0, 0]], Delta=[[0, 0]], U=[0, 0])
    with pytest.raises(ValueError):
        DriveParameters.uniform(2, T, mu=math.inf)


def test_ideal_point_values():
    params = ideal_parameters(4, 0.3, T)
    w = math.pi / T
    assert params.U == [5 * w] * 4
    assert params.mu[0] == [2.5 * w, 2.5 * w]
    assert params.J2[0] == [0.3, 0.3]
    assert params.is_uniform


def test_solvable_points():
    assert all(v == 0.0 for v in solvable_parameters("B2", 3, T).J1)
    assert solvable_parameters("B3", 3, T).is_noninteracting
    assert np.all(solvable_parameters("B4", 3, T).array("Delta") == 0.0)
    with pytest.raises(ValueError):
        solvable_parameters("B5", 3, T)


def test_band_sweep_presets():
    panel_a = fig1_parameters("a", 2.0, 4, T)
    assert panel_a.J1[0] == 2.0 and panel_a.J2[0][0] == 1.0
    assert panel_a.mu[0][0] == pytest.approx(2.5 * math.pi / T)
    panel_b = fig1_parameters("b", 1.5, 4, T)
    assert panel_b.mu[0][0] == 1.5
    assert panel_b.J2[0][0] == pytest.approx(5.0 * (math.pi / 4) / T)


def test_interpolation_endpoints():
    a, b = ideal_parameters(2, 0.1, T), solvable_parameters("B4", 2, T)
    assert a.interpolate(b, 0.0) == a
    assert np.allclose(a.interpolate(b, 1.0).array("J2"), b.array("J2"))


def test_disorder_is_reproducible_and_order_independent():
    base = ideal_parameters(3, 1.25 * math.pi / T, T)
    spec = DisorderSpec.common_width(0.1, seed=7, realizations=5)
    forward = [sample_disorder(spec, base, k) for k in range(5)]
    backward = [sample_disorder(spec, base, k) for k in reversed(range(5))][::-1]
    assert forward == backward
    assert forward[0] != forward[1]
    for params in forward:
        assert np.all(np.abs(params.array("U") - base.array("U")) <= 0.1)


def test_zero_width_disorder_returns_base():
    base = ideal_parameters(3, 0.4, T)
    assert sample_disorder(DisorderSpec.common_width(0.0), base, 3) == base


def test_disorder_widths_must_be_nonnegative():
    with pytest.raises(ValueError):
        DisorderSpec(half_widths={"mu": -0.1})
    with pytest.raises(ValueError):
        DisorderSpec(half_widths={"chemical": 0.1})


def test_identity_drive_gives_identity():
    params = DriveParameters.uniform(2, T)
    assert residual(build_floquet(params), identity(16)) < 1e-12


def _random_drive(N: int, seed: int = 3) -> DriveParameters:
    rng = np.random.default_rng(seed)
    return DriveParameters(
        N=N,
        T=T,
        mu=rng.uniform(-1.0, 1.0, (N, 2)).tolist(),
        J1=rng.uniform(-1.0, 1.0, N).tolist(),
        J2=rng.uniform(-1.0, 1.0, (N - 1, 2)).tolist(),
        Delta=rng.uniform(-1.0, 1.0, (N - 1, 2)).tolist(),
        U=rng.uniform(-1.0, 1.0, N).tolist(),
    )


def _commutator_norm(a: FockOperator, b: FockOperator) -> float:
    return commutator(a, b).norm()


def test_drive_conserves_fermion_parity():
    params = _random_drive(2)
    P = parity_operator(2)
    for H in build_step_hamiltonians(params):
        assert _commutator_norm(H, P) < 1e-10
    assert _commutator_norm(build_floquet(params), P) < 1e-10


@pytest.mark.parametrize("N", [2, 4])
def test_rotation_conserves_fermion_parity(N):
    assert _commutator_norm(rotation_R(N), parity_operator(N)) < 1e-10


@pytest.mark.parametrize("spin", [1, -1])
def test_kitaev_bonds_commute_when_hopping_equals_pairing(spin):
    first = kitaev_term(4, 1, spin, 0.7, 0.7)
    second = kitaev_term(4, 2, spin, 0.7, 0.7)
    assert np.linalg.norm(first @ second - second @ first) < 1e-12
    first = kitaev_term(4, 1, spin, 1.0, 0.3)
    second = kitaev_term(4, 2, spin, 1.0, 0.3)
    assert np.linalg.norm(first @ second - second @ first) > 1e-3


def test_trotter_oracle_with_random_couplings():
    params = _random_drive(2, seed=11)
    assert residual(trotter_oracle(params), build_floquet(params)) < 1e-8


def _euler_pairs():
    a, b = gamma("A", 1, 1, 2), gamma("B", 1, 1, 2)
    quartic = product([a, b, gamma("A", 1, -1, 2), gamma("B", 1, -1, 2)])
    return [(a, b), (quartic, a), (1j * (a @ b), a), (quartic, gamma("B", 2, 1, 2) @ gamma("A", 1, 1, 2) * 1j)]


@settings(max_examples=25, deadline=None)
@given(st.floats(min_value=-math.pi, max_value=math.pi, allow_nan=False))
def test_euler_conjugation_matches_exponentials(theta):
    for p1, p2 in _euler_pairs():
        # unitary_exponential(H, s) is exp(-i s H)
        expected = unitary_exponential(p1, -theta) @ p2 @ unitary_exponential(p1, theta)
        assert residual(euler_conjugation(theta, p1, p2), expected) < 1e-9


def test_euler_conjugation_needs_anticommuting_involutions():
    a, b = gamma("A", 1, 1, 2), gamma("B", 1, 1, 2)
    with pytest.raises(ValueError):
        euler_conjugation(0.3, 1j * (a @ b), gamma("A", 2, 1, 2))
    with pytest.raises(ValueError):
        euler_conjugation(0.3, 2.0 * a, b)
    with pytest.raises(ValueError):
        euler_conjugation(0.3, a @ b, a)
