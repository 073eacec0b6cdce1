from hypothesis import given, settings, strategies as st
from scipy.stats import unitary_group
from src.algebra.fock import FockOperator, gamma, identity
from src.common.errors import DegenerateSpectralError, DimensionError
from src.modes.ideal import ideal_left_modes, rotated_floquet
from src.spectral.functions import (
    SpectralConfig,
    circular_distance,
    sampling_convergence,
    spectral_function,
    spectral_quadruple,
)
from src.spectral.sweeps import FIG2_COLUMNS, fig2_sweep
import numpy as np
import pytest
import math


T = 5.0


def _brute_force(U: np.ndarray, psi: np.ndarray, epsilon: float, delta: float) -> float:
    eigenvalues, vectors = np.linalg.eig(U)
    phases = np.angle(eigenvalues)
    elements = np.abs(vectors.conj().T @ psi @ vectors) ** 2
    gaps = phases[:, None] - phases[None, :] - epsilon
    inside = np.abs(np.angle(np.exp(1j * gaps))) <= delta
    return float(elements[inside].sum() / elements.sum())


def test_identity_has_all_weight_at_zero():
    psi = gamma("A", 1, 1, 2)
    U = identity(16)
    values = [e.value for e in spectral_quadruple(U, psi)]
    assert values[0] == pytest.approx(1.0)
    assert values[1:] == [0.0, 0.0, 0.0]


def test_exact_parafermion_concentrates_at_its_phase():
    U = rotated_floquet(2, 0.37, T)
    plus, minus = ideal_left_modes(2)
    assert spectral_function(U, minus.operator, -math.pi / 2).value == pytest.approx(1.0, abs=1e-9)
    assert spectral_function(U, plus.operator, math.pi / 2).value == pytest.approx(1.0, abs=1e-9)
    assert spectral_function(U, plus.operator, 0.0).value == pytest.approx(0.0, abs=1e-9)


@pytest.mark.parametrize("seed", [1, 2, 3])
def test_matches_brute_force_on_random_unitaries(seed):
    U = unitary_group.rvs(16, random_state=seed)
    psi = np.random.default_rng(seed).normal(size=(16, 16)) + 0j
    cfg = SpectralConfig(delta=0.3, sample_size="all")
    for epsilon in (0.0, math.pi / 2, -math.pi / 2, math.pi):
        got = spectral_function(FockOperator(matrix=U), FockOperator(matrix=psi), epsilon, cfg).value
        assert got == pytest.approx(_brute_force(U, psi, epsilon, 0.3), abs=1e-9)


def test_degenerate_eigenspace_basis_does_not_matter():
    # two-fold degenerate phases: the value is invariant under rotating the eigenbasis
    phases = np.array([0.0, 0.0, math.pi / 2, math.pi / 2])
    V = unitary_group.rvs(4, random_state=5)
    U = V @ np.diag(np.exp(1j * phases)) @ V.conj().T
    psi = np.random.default_rng(5).normal(size=(4, 4)) + 0j
    got = spectral_function(FockOperator(matrix=U), FockOperator(matrix=psi), math.pi / 2).value
    weights = np.abs(V.conj().T @ psi @ V) ** 2
    expected = weights[2:, :2].sum() / weights.sum()
    assert got == pytest.approx(expected, abs=1e-9)


def test_zero_operator_is_rejected():
    with pytest.raises(DegenerateSpectralError):
        spectral_function(identity(4), FockOperator(matrix=np.zeros((4, 4))), 0.0)


def test_dimension_mismatch_is_rejected():
    with pytest.raises(DimensionError):
        spectral_function(identity(4), identity(16), 0.0)


def test_window_bounds_are_validated():
    with pytest.raises(ValueError):
        SpectralConfig(delta=math.pi / 2)
    with pytest.raises(ValueError):
        SpectralConfig(sample_size=0)


def test_full_sample_for_small_dimensions():
    assert SpectralConfig().states_for(256) == 256
    assert SpectralConfig(sample_size=10).states_for(4) == 4


def test_sampling_converges_to_full_value():
    U = rotated_floquet(2, 0.37, T)
    _, minus = ideal_left_modes(2)
    deviations = sampling_convergence(U, minus.operator, -math.pi / 2, [4, 16])
    assert all(d < 1e-9 for d in deviations.values())


@settings(max_examples=40, deadline=None)
@given(st.floats(min_value=-50.0, max_value=50.0, allow_nan=False))
def test_circular_distance_range(x):
    d = float(circular_distance(np.array([x]))[0])
    assert 0.0 <= d <= math.pi + 1e-12
    assert d == pytest.approx(abs(math.remainder(x, 2 * math.pi)), abs=1e-9)


def test_fig2_sweep_rows():
    rows = fig2_sweep("mu", [2.5 * math.pi / T], SpectralConfig(), N=2, T=T, n_jobs=1)
    assert len(rows) == 2
    assert all(len(row) == len(FIG2_COLUMNS) for row in rows)
    assert sorted(row[1] for row in rows) == [-0.5, 0.5]
    with pytest.raises(ValueError):
        fig2_sweep("gamma", [1.0], N=2, n_jobs=1)
