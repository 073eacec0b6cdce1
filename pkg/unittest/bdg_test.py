from src.bdg.edges import SWEEP_COLUMNS, edge_locality, sweep_spectrum, with_axis
from src.bdg.floquet import (
    bloch_floquet,
    build_bdg_floquet,
    check_phs,
    check_phs_nambu,
    default_k_grid,
    degenerate_clusters,
    fold_quasienergies,
    manybody_oracle,
    quasienergy_spectrum,
)
from src.chain.parameters import DriveParameters, fig1_parameters, ideal_parameters, solvable_parameters
from src.common.errors import ConfigurationError, DimensionError
from src.paragen.analysis import phase_multiset_distance
import numpy as np
import pytest
import math


T = 5.0


def test_particle_hole_symmetry_on_the_band_grid():
    params = fig1_parameters("a", 2.0, 2, T)
    assert check_phs(params, default_k_grid(41)) < 1e-10
    assert check_phs_nambu(params, default_k_grid(41)) < 1e-10


def test_bloch_matrix_is_periodic_in_k():
    params = fig1_parameters("b", 1.0, 2, T)
    assert np.allclose(bloch_floquet(-math.pi, params).matrix, bloch_floquet(math.pi, params).matrix, atol=1e-12)


def test_open_chain_spectrum_is_particle_hole_symmetric():
    U = build_bdg_floquet(fig1_parameters("a", 2.0, 6, T))
    phases = -quasienergy_spectrum(U) * T
    assert phase_multiset_distance(phases, -phases) < 1e-9


def test_bdg_matches_many_body_conjugation():
    assert manybody_oracle(fig1_parameters("a", 2.0, 2, T)) < 1e-8


def test_bdg_rejects_interactions():
    with pytest.raises(ConfigurationError):
        build_bdg_floquet(ideal_parameters(2, 0.3, T))


def test_periodic_chain_needs_even_length():
    with pytest.raises(DimensionError):
        build_bdg_floquet(fig1_parameters("a", 1.0, 3, T), boundary="periodic")


def test_fold_quasienergies_maps_branch_cut_to_upper_edge():
    eps = fold_quasienergies(np.array([-1.0 + 0j, 1.0 + 0j, 1j]), T)
    assert eps[0] == pytest.approx(math.pi / T)
    assert eps[1] == 0.0
    assert eps[2] == pytest.approx(-math.pi / (2 * T))


def test_degenerate_clusters_wrap_across_branch_cut():
    values = np.exp(1j * np.array([math.pi - 1e-10, -math.pi + 1e-10, 0.5]))
    groups = degenerate_clusters(values, tol=1e-8)
    assert sorted(len(g) for g in groups) == [1, 2]


def test_with_axis_sets_uniform_family():
    params = with_axis(DriveParameters.uniform(3, T), "J", 2.0)
    assert params.J1 == [2.0] * 3
    assert params.Delta == [[1.0, 1.0], [1.0, 1.0]]
    with pytest.raises(ValueError):
        with_axis(params, "gamma", 1.0)


def test_sweep_rows_follow_columns_and_input_order():
    values = [0.5, 1.5, 2.5]
    rows = sweep_spectrum(fig1_parameters("a", 0.0, 4, T), "J", values, n_jobs=1)
    assert all(len(row) == len(SWEEP_COLUMNS) for row in rows)
    assert [row[0] for row in rows[:: 4 * 4]] == values
    assert all(-1.0 < row[2] <= 1.0 + 1e-12 for row in rows)


def test_edge_locality_needs_open_chain():
    U = build_bdg_floquet(fig1_parameters("a", 1.0, 4, T), boundary="periodic")
    with pytest.raises(ConfigurationError):
        edge_locality(U, (-1.0, 1.0))


def test_edge_locality_empty_window():
    U = build_bdg_floquet(fig1_parameters("a", 1.0, 4, T))
    assert edge_locality(U, (10.0, 11.0)) == []


@pytest.mark.parametrize("N", [4, 8])
def test_noninteracting_solvable_point_pins_edge_modes(N):
    U = build_bdg_floquet(solvable_parameters("B3", N, T))
    for target in (math.pi / (2 * T), -math.pi / (2 * T)):
        modes = edge_locality(U, (target - 1e-6, target + 1e-6))
        assert all(abs(m.epsilon - target) < 1e-9 for m in modes)
        assert any(m.weight_left > 0.9 for m in modes)
        assert any(m.weight_right > 0.9 for m in modes)
        assert all(m.is_edge for m in modes if max(m.weight_left, m.weight_right) > 0.9)


def test_bulk_states_carry_little_edge_weight():
    N = 16
    U = build_bdg_floquet(solvable_parameters("B3", N, T))
    modes = edge_locality(U, (-math.pi / T, math.pi / T))
    assert len(modes) == 4 * N
    # the two outer cells hold 16 of the 4N Nambu components
    assert sum(m.weight_left + m.weight_right for m in modes) == pytest.approx(16.0)
    assert sum(m.is_edge for m in modes) < len(modes) / 2
    assert min(max(m.weight_left, m.weight_right) for m in modes) < 0.25


def test_single_cell_chain_is_all_edge():
    U = build_bdg_floquet(solvable_parameters("B3", 2, T))
    for mode in edge_locality(U, (-math.pi / T, math.pi / T)):
        assert mode.weight_left == pytest.approx(1.0)
        assert mode.weight_right == pytest.approx(1.0)
