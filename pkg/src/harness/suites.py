"""
Verification suites. Each returns {check: {"value", "tolerance", "passed"}};
checks recorded for information carry an infinite tolerance.
"""

from typing import Dict, Iterable, Tuple
from src.algebra.spins import RectLatticeSpec
from src.bdg.floquet import check_phs, default_k_grid
from src.chain.parameters import fig1_parameters
from src.chain.rotation import lambda_gamma_check, rotation_equality_residual
from src.common import config
from src.common.logger import log
from src.modes.candidates import verify_mode
from src.modes.ideal import (
    default_coupling,
    ideal_chain_report,
    ideal_left_modes,
    ideal_right_modes,
    relation_report,
    rotated_floquet,
)
from src.modes.solvable import (
    alpha_square_fits,
    appendixB2_modes,
    appendixB3_modes,
    appendixB4_modes,
    printed_report,
    solvable_floquet,
)
from src.paragen.analysis import (
    analytic_eigenstates,
    eigenphases,
    eigenvector_residual,
    multiplet_analysis,
    phase_multiset_distance,
)
from src.paragen.lattice import (
    build_spin_floquet_rotated,
    build_spin_floquet_tilde,
    jw_emit_majorana_floquet,
    majorana_weights,
    rotation_report,
)
from src.paragen.z4 import z4_report
import math
import numpy as np


EXACT_TOL = 1e-9
RECORDED = math.inf

Report = Dict[str, Dict[str, float]]


def _entry(value: float, tolerance: float = EXACT_TOL) -> Dict[str, float]:
    value = float(value)
    return {"value": value, "tolerance": tolerance, "passed": bool(value < tolerance)}


def _add(report: Report, prefix: str, values: Iterable[Tuple[str, float]], tolerance: float = EXACT_TOL):
    for name, value in values:
        report[f"{prefix}.{name}"] = _entry(value, tolerance)


def ideal_suite(N: int, T: float = config.DEFAULT_PERIOD) -> Report:
    """Exact parafermion relations of the ideal chain in the rotated frame."""
    J = default_coupling(T)
    report: Report = {}
    U = rotated_floquet(N, J, T)
    for cand in ideal_left_modes(N) + ideal_right_modes(N):
        mode = verify_mode(U, cand)
        _add(report, f"ideal.{cand.label}", [("conjugation", mode.conjugation_residual), ("order", mode.order_residual)])
    relations = relation_report(N, J, T)
    for name, value in relations.items():
        held = "_printed" not in name and name != "Q2_square_sign"
        report[f"relations.{name}"] = _entry(value, EXACT_TOL if held else RECORDED)
    _add(report, "printed_chain", ideal_chain_report(N, J, T).items(), RECORDED)
    report["rotation.lab_to_rotated"] = _entry(rotation_equality_residual(N, J, T))
    if N % 2 == 0:
        _add(report, "rotation", lambda_gamma_check(N, J, T).items())
    return report


def solvable_suite(N: int, T: float = config.DEFAULT_PERIOD) -> Report:
    """Ordinary-fermion modes at the solvable points: eigenoperators that square to zero."""
    report: Report = {}
    cases = {
        "B2": (appendixB2_modes(N, T), ("gamma_+pi/2", "gamma_-pi/2")),
        "B3": (appendixB3_modes(N, T), ("gammaNI_+pi/2", "gammaNI_-pi/2")),
        "B4": (appendixB4_modes(N, T), ("c_0", "c_pi")),
    }
    for case, (modes, nilpotent) in cases.items():
        U = solvable_floquet(case, N, T)
        for label, cand in modes.items():
            mode = verify_mode(U, cand)
            report[f"{case}.{label}.conjugation"] = _entry(mode.conjugation_residual)
            if label in nilpotent:
                report[f"{case}.{label}.square"] = _entry(mode.order_residual)
        for label, entry in printed_report(case, N, T).items():
            report[f"{case}.printed.{label}.residual"] = _entry(entry["residual"], RECORDED)
    for label, fit in alpha_square_fits(N, T).items():
        report[f"B4.{label}.square_misfit"] = _entry(fit["relative_misfit"], RECORDED)
    return report


def bdg_suite(T: float = config.DEFAULT_PERIOD) -> Report:
    params = fig1_parameters("a", 2.0, 2, T)
    return {"bdg.particle_hole": _entry(check_phs(params, default_k_grid()), 1e-10)}


def default_couplings(n: int, N: int, seed: int = 0):
    """Reproducible couplings drawn uniformly from [0.1, 1)."""
    return np.random.default_rng(seed).uniform(0.1, 1.0, size=(N - 1, n + 1)).tolist()


def paragen_suite(n: int = 1, N: int = 2, J=None, sector=None) -> Report:
    """
    Rotation, representation and multiplet checks of one spin lattice. The
    literal rotation residual is recorded; its phase-corrected form and the
    n = 1 closures are asserted.
    """
    J = default_couplings(n, N) if J is None else J
    lattice = RectLatticeSpec(N=N, n=n, J=J)
    exact = EXACT_TOL if n == 1 else RECORDED
    report: Report = {}

    rotation = rotation_report(lattice)
    report["rotation.literal"] = _entry(rotation["literal"], RECORDED)
    report["rotation.phase_corrected"] = _entry(rotation["phase_corrected"], exact)
    report["rotation.spectral"] = _entry(rotation["spectral"], exact)
    report["rotation.u_unitarity"] = _entry(rotation["u_unitarity"])

    tilde = build_spin_floquet_tilde(lattice)
    U, _ = build_spin_floquet_rotated(lattice)
    majorana = jw_emit_majorana_floquet(lattice)
    report["jw.spectral"] = _entry(phase_multiset_distance(eigenphases(majorana), eigenphases(tilde)))
    report["jw.operator"] = _entry(float(np.linalg.norm(majorana.matrix - tilde.matrix)))
    report["jw.odd_weight_terms"] = _entry(sum(w % 2 for w in majorana_weights(lattice)), 0.5)

    rotated = multiplet_analysis(U, n)
    unrotated = multiplet_analysis(tilde, n)
    report["multiplet.rotated_closure"] = _entry(rotated.max_residual, config.DEGENERACY_TOL)
    report["multiplet.rotated_size"] = _entry(rotated.multiplet_size, RECORDED)
    report["multiplet.unrotated_closure"] = _entry(
        unrotated.max_residual, config.DEGENERACY_TOL if n == 1 else RECORDED
    )
    report["multiplet.unrotated_size"] = _entry(unrotated.multiplet_size, RECORDED)

    sector = [[1] * (n + 1) for _ in range(N - 1)] if sector is None else sector
    worst = 0.0
    for ell in range(2 ** (n + 1)):
        v, phase = analytic_eigenstates(lattice, sector, ell, U)
        worst = max(worst, eigenvector_residual(U, v, phase))
    report["eigenstates.residual"] = _entry(worst, config.DEGENERACY_TOL)

    if n == 1:
        z4 = z4_report(N, [row[0] for row in J], [row[1] for row in J])
        report["z4.fermion_vs_spin"] = _entry(z4["fermion_vs_spin"])
        report["z4.majorana_vs_spin"] = _entry(z4["majorana_vs_spin"])
        report["z4.majorana_vs_fermion_operator"] = _entry(z4["majorana_vs_fermion_operator"], RECORDED)
        report["z4.printed_h2_vs_spin"] = _entry(z4["printed_h2_vs_spin"], RECORDED)
    log.info(f"Spin-lattice suite (n={n}, N={N}): {sum(e['passed'] for e in report.values())}/{len(report)} passed")
    return report


def verification_suite(N: int = 2, T: float = config.DEFAULT_PERIOD) -> Report:
    report: Report = {}
    report.update(ideal_suite(N, T))
    report.update(solvable_suite(max(N, 2), T))
    report.update(bdg_suite(T))
    report.update(paragen_suite())
    return report


def failures(report: Report) -> Dict[str, float]:
    return {name: entry["value"] for name, entry in report.items() if not entry["passed"]}
