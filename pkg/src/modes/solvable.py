"""
Ordinary-fermion modes at the three solvable lab-frame points.

Every mode is built from the conjugation orbit of a single Majorana seed,
so its phase label is the one the Floquet operator actually produces. The
printed closed forms are kept alongside and scored against the same
operator.
"""

from typing import Dict
from src.algebra.fock import FockOperator, gamma, product
from src.chain.hamiltonians import build_floquet
from src.chain.parameters import solvable_parameters
from src.common import config
from src.common.logger import log
from src.modes.candidates import (
    ModeCandidate,
    best_phase,
    orbit_modes,
    proportionality_fit,
)
import math


HALF_PI = math.pi / 2


def _phase_tag(phase: float) -> str:
    return {0.0: "0", math.pi: "pi", HALF_PI: "+pi/2", -HALF_PI: "-pi/2"}[phase]


def solvable_floquet(case: str, N: int, T: float = config.DEFAULT_PERIOD, J: float = None) -> FockOperator:
    return build_floquet(solvable_parameters(case, N, T, J))


def _relabel(modes: Dict[float, ModeCandidate], prefix: str) -> Dict[str, ModeCandidate]:
    return {
        f"{prefix}_{_phase_tag(phase)}": cand.model_copy(update={"label": f"{prefix}_{_phase_tag(phase)}"})
        for phase, cand in modes.items()
    }


def appendixB2_modes(N: int, T: float = config.DEFAULT_PERIOD) -> Dict[str, ModeCandidate]:
    """Zero-Zeeman point: gA(1,+) has a period-4 orbit giving 0, +-pi/2 and pi modes."""
    U = solvable_floquet("B2", N, T)
    return _relabel(orbit_modes(U, gamma("A", 1, 1, N)), "gamma")


def appendixB3_modes(N: int, T: float = config.DEFAULT_PERIOD, J: float = None) -> Dict[str, ModeCandidate]:
    """
    Noninteracting point: gA(1,+) -> gA(1,-) -> -gA(1,+), giving
    gA(1,+) +- i gA(1,-) at +-pi/2, and the mirror pair built from gB(N,+).
    """
    U = solvable_floquet("B3", N, T, J)
    modes = _relabel(orbit_modes(U, gamma("A", 1, 1, N)), "gammaNI")
    right = orbit_modes(U, gamma("B", N, 1, N), side="right")
    modes.update(_relabel(right, "gammaNI_R"))
    return modes


def appendixB4_modes(N: int, T: float = config.DEFAULT_PERIOD) -> Dict[str, ModeCandidate]:
    """
    Zero-pairing point: gA(1,+) and gA(2,+) both have period-2 orbits. Their
    zero and pi combinations are alpha and beta; c = alpha + i beta.
    """
    U = solvable_floquet("B4", N, T)
    alpha = orbit_modes(U, gamma("A", 1, 1, N))
    beta = orbit_modes(U, gamma("A", 2, 1, N))
    modes = {}
    for phase in (0.0, math.pi):
        tag = _phase_tag(phase)
        a, b = alpha[phase].operator, beta[phase].operator
        c = FockOperator(matrix=a.matrix + 1j * b.matrix, label=f"c_{tag}")
        modes[f"alpha_{tag}"] = alpha[phase].model_copy(update={"label": f"alpha_{tag}"})
        modes[f"beta_{tag}"] = beta[phase].model_copy(update={"label": f"beta_{tag}"})
        modes[f"c_{tag}"] = ModeCandidate(operator=c, target_phase=phase, claimed_order=2, label=f"c_{tag}")
    return modes


def alpha_square_fits(N: int, T: float = config.DEFAULT_PERIOD) -> Dict[str, Dict[str, complex]]:
    """Least-squares fit of (alpha)^2 against alpha at the zero-pairing point."""
    modes = appendixB4_modes(N, T)
    fits = {}
    for tag in ("0", "pi"):
        alpha = modes[f"alpha_{tag}"].operator
        fits[f"alpha_{tag}"] = proportionality_fit(alpha @ alpha, alpha)
    log.debug(f"(alpha)^2 ~ z alpha fits: {fits}")
    return fits


def printed_modes(case: str, N: int) -> Dict[str, FockOperator]:
    """Printed closed forms with their printed phase labels."""
    a1, b1 = gamma("A", 1, 1, N), gamma("B", 1, 1, N)
    a1_, b1_ = gamma("A", 1, -1, N), gamma("B", 1, -1, N)
    a2, b2 = gamma("A", 2, 1, N), gamma("B", 2, 1, N)
    a2_ = gamma("A", 2, -1, N)

    if case == "B2":
        t2 = product([b2, a2_, b1_])
        t3 = product([b2, a2_, a1, b1, a1_])
        t4 = product([a1_, b1, b1_])
        return {
            "gamma_0": 0.5 * (a1 - 1j * t2 + t3 - 1j * t4),
            "gamma_pi": 0.5 * (a1 + 1j * t2 + t3 + 1j * t4),
            "gamma_+pi/2": 0.5 * (a1 - 1.0 * t2 - 1.0 * t3 + t4),
            "gamma_-pi/2": 0.5 * (-1.0 * a1 - 1.0 * t2 + t3 + t4),
        }
    elif case == "B3":
        return {
            "gammaNI_+pi/2": a1 + 1j * a1_,
            "gammaNI_-pi/2": a1 - 1j * a1_,
        }
    elif case == "B4":
        k = product([a1, b1, b2])
        l = product([b1, a2, b2])
        alpha0, alphapi = a1 + 1j * k, a1 - 1j * k
        beta0, betapi = a2 - 1j * l, a2 + 1j * l
        return {
            "alpha_0": alpha0,
            "alpha_pi": alphapi,
            "beta_0": beta0,
            "beta_pi": betapi,
            "c_0": alpha0 + 1j * beta0,
            "c_pi": alphapi + 1j * betapi,
        }
    else:
        raise ValueError(f"Unknown solvable case: {case}")


_LABEL_PHASE = {"0": 0.0, "pi": math.pi, "+pi/2": HALF_PI, "-pi/2": -HALF_PI}


def printed_report(case: str, N: int, T: float = config.DEFAULT_PERIOD) -> Dict[str, Dict[str, float]]:
    """
    For every printed form: its printed phase, the phase at which it is
    closest to an eigenoperator of the lab-frame Floquet operator, that
    residual, and its normalized square.
    """
    U = solvable_floquet(case, N, T)
    report = {}
    for label, op in printed_modes(case, N).items():
        phase, res = best_phase(U, op)
        square = op @ op
        report[label] = {
            "printed_phase": _LABEL_PHASE[label.rsplit("_", 1)[1]],
            "best_phase": phase,
            "residual": res,
            "square_norm": square.norm() / max(op.norm() ** 2 / math.sqrt(op.dimension), 1e-300),
        }
    log.info(f"Printed-form report for {case} at N={N}: {len(report)} operators")
    return report
