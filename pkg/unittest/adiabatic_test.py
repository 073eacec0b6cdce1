from scipy.linalg import expm
from scipy.stats import unitary_group
from src.adiabatic.experiments import (
    CROSS_PANELS,
    CROSS_SEEDS,
    DISORDER_COLUMNS,
    FIG3_COLUMNS,
    appendixB_cross_deformation,
    cross_seeds,
    disorder_realizations,
    disorder_scan,
    disorder_study,
    fig3_sweep,
    ideal_axis_value,
    lab_mode_seeds,
    summarize_realizations,
)
from src.adiabatic.paths import ParameterPath, replace_axis
from src.adiabatic.transport import (
    check_seed,
    effective_hamiltonian,
    evolve_mode,
    round_trip_residual,
    singular_value_drift,
    step_doubling,
    transport_unitary,
)
from src.algebra.fock import FockOperator, identity, residual
from src.chain.hamiltonians import build_floquet
from src.chain.parameters import DisorderSpec, fig2_parameters, ideal_parameters, solvable_parameters
from src.common import config
from src.common.errors import VerificationError
from src.modes.candidates import ModeCandidate
from src.spectral.functions import spectral_function
import numpy as np
import pytest
import math


T = 5.0


def test_effective_hamiltonian_reproduces_the_unitary():
    U = unitary_group.rvs(8, random_state=11)
    H, crossed = effective_hamiltonian(FockOperator(matrix=U), T)
    assert not crossed
    assert np.allclose(expm(-1j * T * H.matrix), U, atol=1e-10)
    assert np.allclose(H.matrix, H.matrix.conj().T)


def test_branch_cut_is_flagged():
    U = FockOperator(matrix=np.diag([1.0, -1.0]), label="U")
    _, crossed = effective_hamiltonian(U, T)
    assert crossed


def test_replace_axis_delta_keeps_mean_hopping():
    base = fig2_parameters("mu", 2.5 * math.pi / T, 2, T)
    moved = replace_axis(base, "delta", 0.2)
    mean = 0.5 * (moved.array("J2") + moved.array("Delta"))
    assert np.allclose(mean, 0.5 * (base.array("J2") + base.array("Delta")))
    assert np.allclose(0.5 * (moved.array("J2") - moved.array("Delta")), 0.2)


def test_path_validation():
    base = ideal_parameters(2, 0.3, T)
    with pytest.raises(ValueError):
        ParameterPath(axis="interpolation", start=0.0, end=1.0, steps=4, base=base)
    with pytest.raises(ValueError):
        ParameterPath(axis="mu", start=0.0, end=math.inf, steps=4, base=base)
    path = ParameterPath(axis="mu", start=0.0, end=1.0, steps=None, base=base)
    assert path.steps >= 2
    assert list(path.midpoints()) == pytest.approx([(k + 0.5) / path.steps for k in range(path.steps)])


def test_stationary_path_leaves_seed_unchanged():
    base = ideal_parameters(2, 0.3, T)
    seed = lab_mode_seeds(2)[0]
    path = ParameterPath(axis="mu", start=1.0, end=1.0, steps=4, base=base)
    deformed = evolve_mode(seed, path, verify_seed=False)
    assert residual(deformed.operator, seed.operator) == 0.0
    assert transport_unitary(path).unitary.norm() == pytest.approx(identity(16).norm())


def test_round_trip_returns_the_seed():
    base = fig2_parameters("U", 5 * math.pi / T, 2, T)
    seed = lab_mode_seeds(2)[0]
    path = ParameterPath(axis="U", start=5 * math.pi / T, end=4 * math.pi / T, steps=4, base=base)
    assert round_trip_residual(seed, path) < 1e-9


def test_transport_preserves_singular_values():
    base = fig2_parameters("U", 5 * math.pi / T, 2, T)
    seed = lab_mode_seeds(2)[0]
    path = ParameterPath(axis="U", start=5 * math.pi / T, end=4.5 * math.pi / T, steps=3, base=base)
    deformed = evolve_mode(seed, path, verify_seed=False)
    assert singular_value_drift(deformed) < 1e-9
    assert all(r < 1e-9 for r in deformed.step_residuals)


def test_check_seed_rejects_non_modes():
    base = ideal_parameters(2, 0.3, T)
    path = ParameterPath(axis="mu", start=1.0, end=1.0, steps=2, base=base)
    bogus = ModeCandidate(operator=identity(16) * 2.0 - identity(16), target_phase=math.pi, claimed_order=2)
    with pytest.raises(VerificationError):
        check_seed(bogus, path, "majorana")


def test_ideal_axis_values():
    assert ideal_axis_value("U", T) == pytest.approx(math.pi)
    assert ideal_axis_value("delta", T) == 0.0
    with pytest.raises(ValueError):
        ideal_axis_value("chi", T)


def test_summarize_realizations_groups_by_width_size_and_phase():
    rows = [
        (0.1, 3, 0, 0.5, 0.8),
        (0.1, 3, 1, 0.5, 1.0),
        (0.1, 3, 0, -0.5, 0.6),
    ]
    summary = summarize_realizations(rows)
    assert all(len(row) == len(DISORDER_COLUMNS) for row in summary)
    by_phase = {row[2]: row for row in summary}
    assert by_phase[0.5][3] == pytest.approx(0.9)
    assert by_phase[0.5][4] == pytest.approx(0.1)
    assert by_phase[0.5][5] == 2
    assert by_phase[-0.5][5] == 1


def test_cross_panels_name_solvable_cases():
    assert {case for case, _ in CROSS_PANELS.values()} == {"B2", "B3", "B4"}


def test_deformation_sweep_at_the_ideal_point_keeps_full_weight():
    rows = fig3_sweep("mu", [ideal_axis_value("mu", T)], N=2, T=T, steps=4, n_jobs=1)
    assert len(rows) == 2
    assert all(len(row) == len(FIG3_COLUMNS) for row in rows)
    assert sorted(row[1] for row in rows) == pytest.approx([-0.5, 0.5])
    assert all(row[2] > 0.99 for row in rows)


def test_zero_width_disorder_has_no_spread():
    spec = DisorderSpec.common_width(0.0, seed=1, realizations=3)
    summary = disorder_study(spec, 2, T=T, steps=4, n_jobs=1)
    assert len(summary) == 2
    for width, N, _, mean, std, count in summary:
        assert (width, N, count) == (0.0, 2, 3)
        assert mean == pytest.approx(1.0, abs=1e-6)
        assert std == pytest.approx(0.0, abs=1e-12)


def test_disorder_scan_stacks_sizes_and_widths():
    table = disorder_scan([0.0], [2], realizations={2: 2}, T=T, n_jobs=1)
    assert len(table) == 2
    assert all(row[5] == 2 for row in table)


def test_disorder_rejects_unknown_transport_mode():
    with pytest.raises(ValueError):
        disorder_realizations(DisorderSpec.common_width(0.0), 2, transport_mode="adiabatic")


def test_b3_crossings_start_from_the_solvable_point():
    params, seeds = cross_seeds("B3", 2, T)
    assert params == solvable_parameters("B3", 2, T)
    assert params.J2[0][0] == pytest.approx(config.FIG2_MEAN_HOPPING * math.pi / T)
    assert [seed.label for seed in seeds] == ["gammaNI_+pi/2", "gammaNI_-pi/2"]


def test_b2_seeds_survive_next_to_their_solvable_point():
    rows = appendixB_cross_deformation("B2", "J1", [0.0], N=2, T=T, steps=4, n_jobs=1)
    assert [row[1] for row in rows] == list(CROSS_SEEDS["B2"])
    assert all(row[3] > 0.5 for row in rows)
    assert all(row[3] > 0.95 for row in rows if abs(row[2]) == pytest.approx(0.5))


def test_zero_pairing_fermions_peak_on_the_pairing_axis():
    rows = appendixB_cross_deformation("B4", "delta", [1.25 * math.pi / T], N=2, T=T, steps=4, n_jobs=1)
    assert {row[1] for row in rows} == {"c_0", "c_pi"}
    assert all(row[3] > 0.98 for row in rows)


def test_step_doubling_bound_on_a_short_path():
    w = math.pi / T
    base = fig2_parameters("U", 5 * w, 2, T)
    seed = lab_mode_seeds(2)[0]
    path = ParameterPath(axis="U", start=5 * w, end=4.95 * w, steps=4, base=base)
    U = build_floquet(path.point(path.end))

    def score(op):
        return spectral_function(U, op, seed.target_phase).value

    report = step_doubling(seed, path, score)
    assert report.steps == 4
    assert report.change == pytest.approx(abs(report.doubled_value - report.value))
    assert report.converged
    assert not step_doubling(seed, path, score, tol=0.0).converged
