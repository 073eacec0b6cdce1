"""
Z4 parafermion modes of the ideal chain, its symmetries and the logical
qubits of the two Kitaev-like chains, all in the rotated frame Gbar * S.

Left edge: gamma1 = gA(1,+), gamma2 = i gA(1,+) gB(1,+) gA(1,-).
Right edge: gamma1 = gB(N,-), gamma2 = i gB(N,+) gA(N,-) gB(N,-).
The rotated Floquet operator maps gamma1 -> gamma2 -> -gamma1 on the left
edge and gamma1 -> -gamma2 -> -gamma1 on the right edge.
"""

from typing import Dict, List, Tuple
from pydantic import BaseModel
from src.algebra.fock import FockOperator, anticommutator, commutator, gamma, identity, product, residual, unitary_exponential
from src.chain.rotation import (
    bond_quartic_s1,
    bond_quartic_s2,
    build_rotated_floquet,
    clifford_gbar,
    exp_i_hermitian,
    g_onsite,
    g_quartic,
    g_zeeman,
    s_factor,
)
from src.common import config
from src.common.logger import log
from src.modes.candidates import ModeCandidate, conjugate, conjugation_chain
import numpy as np
import math


_PHASE = np.exp(1j * math.pi / 4) / math.sqrt(2)


def default_coupling(T: float = config.DEFAULT_PERIOD) -> float:
    return 5.0 * config.IDEAL_COUPLING / T


def rotated_floquet(N: int, J: float = None, T: float = config.DEFAULT_PERIOD) -> FockOperator:
    return build_rotated_floquet(N, default_coupling(T) if J is None else J, T)


def left_majoranas(N: int) -> Tuple[FockOperator, FockOperator]:
    a, b, a_ = gamma("A", 1, 1, N), gamma("B", 1, 1, N), gamma("A", 1, -1, N)
    return a, 1j * product([a, b, a_], label="gamma2L")


def right_majoranas(N: int) -> Tuple[FockOperator, FockOperator]:
    b, a_, b_ = gamma("B", N, 1, N), gamma("A", N, -1, N), gamma("B", N, -1, N)
    return b_, 1j * product([b, a_, b_], label="gamma2R")


def _parafermion(g1: FockOperator, g2: FockOperator, sign: int, label: str) -> FockOperator:
    return FockOperator(matrix=_PHASE * (g1.matrix + sign * 1j * g2.matrix), label=label)


def ideal_left_modes(N: int) -> Tuple[ModeCandidate, ModeCandidate]:
    """psi_{+-pi/2} = e^{i pi/4} (gamma1 +- i gamma2) / sqrt 2."""
    g1, g2 = left_majoranas(N)
    return tuple(
        ModeCandidate(
            operator=_parafermion(g1, g2, sign, f"psiL{'+' if sign > 0 else '-'}"),
            target_phase=sign * math.pi / 2,
            claimed_order=4,
            side="left",
            label=f"psiL{'+' if sign > 0 else '-'}",
        )
        for sign in (1, -1)
    )


def ideal_right_modes(N: int) -> Tuple[ModeCandidate, ModeCandidate]:
    """
    e^{i pi/4} (gamma1 -+ i gamma2) / sqrt 2 on the right edge, labelled by
    conjugation phase; the right cycle runs gamma1 -> -gamma2.
    """
    g1, g2 = right_majoranas(N)
    return tuple(
        ModeCandidate(
            operator=_parafermion(g1, g2, -sign, f"psiR{'+' if sign > 0 else '-'}"),
            target_phase=sign * math.pi / 2,
            claimed_order=4,
            side="right",
            label=f"psiR{'+' if sign > 0 else '-'}",
        )
        for sign in (1, -1)
    )


def printed_right_modes(N: int) -> Tuple[FockOperator, FockOperator]:
    """e^{i pi/4} (gB(N,-) -+ gB(N,+) gA(N,-) gB(N,-)) / sqrt 2 with the printed labels."""
    g1, g2 = right_majoranas(N)
    cubic = -1j * g2.matrix
    return tuple(
        FockOperator(matrix=_PHASE * (g1.matrix - sign * cubic), label=f"printed_psiR{'+' if sign > 0 else '-'}")
        for sign in (1, -1)
    )


def _site_quartic(N: int, j: int) -> FockOperator:
    return product(
        [gamma("A", j, 1, N), gamma("B", j, 1, N), gamma("A", j, -1, N), gamma("B", j, -1, N)], label=f"Q{j}"
    )


def _bilinear(x: FockOperator, y: FockOperator) -> FockOperator:
    return 1j * (x @ y)


def symmetry_operators(N: int) -> Tuple[FockOperator, List[FockOperator]]:
    """
    Q2 = prod_j Q_j and
    Q4k = exp(i pi/4 (1 - i gB(k,+) gA(k,-)) (1 - prod_j i gB(j,-) gA(j,+))) prod_j i gA(j,+) gB(j,+).
    """
    Q2 = product([_site_quartic(N, j) for j in range(1, N + 1)], label="Q2")
    W = product([_bilinear(gamma("B", j, -1, N), gamma("A", j, 1, N)) for j in range(1, N + 1)], label="W")
    Z = product([_bilinear(gamma("A", j, 1, N), gamma("B", j, 1, N)) for j in range(1, N + 1)], label="Z")
    eye = identity(4**N)
    Q4 = []
    for k in range(1, N + 1):
        P = _bilinear(gamma("B", k, 1, N), gamma("A", k, -1, N))
        generator = (eye - P) @ (eye - W)
        E = unitary_exponential(FockOperator(matrix=generator.matrix, label=f"E{k}"), -math.pi / 4)
        Q4.append(FockOperator(matrix=E.matrix @ Z.matrix, label=f"Q4_{k}"))
    return Q2, Q4


def partner_right_modes(N: int) -> Tuple[FockOperator, FockOperator]:
    """psi~R+ = Q4_1 Q2 psiR+ and psi~R- = Q4_1^dag Q2^dag psiR-."""
    Q2, Q4 = symmetry_operators(N)
    plus, minus = ideal_right_modes(N)
    tilde_plus = Q4[0] @ Q2 @ plus.operator
    tilde_minus = Q4[0].dag() @ Q2.dag() @ minus.operator
    return (
        FockOperator(matrix=tilde_plus.matrix, label="psiR~+"),
        FockOperator(matrix=tilde_minus.matrix, label="psiR~-"),
    )


class LogicalQubitSet(BaseModel):
    gamma_L: List[FockOperator]
    gamma_R: List[FockOperator]
    X1: FockOperator
    Z1: FockOperator
    X2: FockOperator
    Z2: FockOperator


def logical_qubits(N: int) -> LogicalQubitSet:
    gL1, gL2 = left_majoranas(N)
    gR1, gR2 = right_majoranas(N)
    return LogicalQubitSet(
        gamma_L=[gL1, gL2],
        gamma_R=[gR1, gR2],
        X1=1j * (gL1 @ gR1),
        Z1=gL1 @ gL2,
        X2=product([gL1, gL2, gR1, gR2], label="X2"),
        Z2=gL2,
    )


def _commutator_norm(a: FockOperator, b: FockOperator) -> float:
    return commutator(a, b).norm() / max(a.norm() * b.norm() / math.sqrt(a.dimension), 1.0)


def _anticommutator_norm(a: FockOperator, b: FockOperator) -> float:
    return anticommutator(a, b).norm() / max(a.norm() * b.norm() / math.sqrt(a.dimension), 1.0)


def ideal_chain_report(N: int, J: float = None, T: float = config.DEFAULT_PERIOD) -> Dict[str, float]:
    """
    Factor-by-factor conjugation of gA(1,+) and of -i gA(1,+) gB(1,+) gA(1,-)
    through the printed three-factor split G1, G2, G3 of the ideal Floquet
    operator, applied in that order, against the printed intermediates.
    """
    J = default_coupling(T) if J is None else J
    theta = J * T / 5.0
    dim = 4**N
    s1 = sum((bond_quartic_s1(N, j) for j in range(1, N)), np.zeros((dim, dim), dtype=complex))
    G1 = np.eye(dim, dtype=complex)
    for j in range(1, N):
        G1 = G1 @ exp_i_hermitian(bond_quartic_s2(N, j), -theta)
    G1 = G1 @ exp_i_hermitian(s1, -theta)
    G2 = g_onsite(N, range(1, N + 1))
    G3 = np.eye(dim, dtype=complex)
    for j in range(1, N + 1):
        G3 = G3 @ g_quartic(N, [j]) @ g_zeeman(N, [j])
    factors = [FockOperator(matrix=m, label=f"G{i + 1}") for i, m in enumerate((G1, G2, G3))]

    g1, g2 = left_majoranas(N)
    cubic = -1.0 * g2
    report = {}
    expected = [g1, g1, -1.0 * g1, cubic]
    for step, (got, want) in enumerate(zip(conjugation_chain(factors, g1), expected)):
        report[f"chain1_step{step}"] = residual(got, want)
    expected = [cubic, cubic, cubic, -1.0 * g1]
    for step, (got, want) in enumerate(zip(conjugation_chain(factors, cubic), expected)):
        report[f"chain2_step{step}"] = residual(got, want)
    log.debug(f"Ideal-case conjugation chain residuals: {report}")
    return report


def relation_report(N: int, J: float = None, T: float = config.DEFAULT_PERIOD) -> Dict[str, float]:
    """
    Named residuals of every printed ideal-case relation. Entries named
    ``*_printed`` compare with the relation as printed; the others compare
    with the form that holds in the conventions used here.
    """
    U = rotated_floquet(N, J, T)
    S = s_factor(N, default_coupling(T) if J is None else J, T)
    Gbar = clifford_gbar(N)
    eye = identity(U.dimension)
    gL1, gL2 = left_majoranas(N)
    gR1, gR2 = right_majoranas(N)
    psiL_plus, psiL_minus = (c.operator for c in ideal_left_modes(N))
    psiR_plus, psiR_minus = (c.operator for c in ideal_right_modes(N))
    printed_R_plus, printed_R_minus = printed_right_modes(N)
    Q2, Q4 = symmetry_operators(N)
    tilde_plus, tilde_minus = partner_right_modes(N)
    q = logical_qubits(N)
    bL = gamma("B", 1, 1, N) @ gamma("A", 1, -1, N)
    bR = gamma("B", N, 1, N) @ gamma("A", N, -1, N)

    report = {
        "left_cycle": residual(conjugate(U, gL1), gL2),
        "left_cycle_printed": residual(conjugate(U, gL1), -1.0 * gL2),
        "left_cycle_second": residual(conjugate(U, gL2), -1.0 * gL1),
        "right_cycle": residual(conjugate(U, gR1), -1.0 * gR2),
        "psiL+_square_printed": residual(psiL_plus @ psiL_plus, 1j * bL),
        "psiL-_square_printed": residual(psiL_minus @ psiL_minus, 1j * bL),
        "psiL+_square": residual(psiL_plus @ psiL_plus, -1j * bL),
        "psiL_fourth_power": max(residual(psiL_plus.power(4), eye), residual(psiL_minus.power(4), eye)),
        "psiR+_square": residual(psiR_plus @ psiR_plus, 1j * bR),
        "psiR_fourth_power": max(residual(psiR_plus.power(4), eye), residual(psiR_minus.power(4), eye)),
        "psiR+_conjugation_printed": residual(conjugate(U, printed_R_plus), -1j * printed_R_plus),
        "Q2_commutes": residual(conjugate(Q2, U), U),
        "Q2_square_sign": float(np.real(np.trace((Q2 @ Q2).matrix)) / U.dimension),
        "Q4_fourth_power": max(residual(Qk.power(4), eye) for Qk in Q4),
        "Q4_commutes_printed": max(residual(conjugate(Qk, U), U) for Qk in Q4),
        "psiL+_Q4_1": residual(psiL_plus @ Q4[0], -1j * (Q4[0] @ psiL_plus)),
        "psiL-_Q4_1": residual(psiL_minus @ Q4[0], 1j * (Q4[0] @ psiL_minus)),
        "partner+_exchange": residual(psiL_plus @ tilde_plus, -1j * (tilde_plus @ psiL_plus)),
        "partner-_exchange_printed": residual(psiL_minus @ tilde_minus, 1j * (tilde_minus @ psiL_minus)),
        "S_commutes_gammas": max(_commutator_norm(S, g) for g in (gL1, gL2, gR1, gR2)),
        "X1_Z1_anticommute_printed": _anticommutator_norm(q.X1, q.Z1),
        "X2_Z2_anticommute_printed": _anticommutator_norm(q.X2, q.Z2),
        "X1_X2_commute": _commutator_norm(q.X1, q.X2),
        "gbar_X1_printed": residual(conjugate(Gbar, q.X1), q.X1 @ q.X2),
        "gbar_X1": residual(conjugate(Gbar, q.X1), -1.0 * (q.X1 @ q.X2)),
        "gbar_X2_printed": residual(conjugate(Gbar, q.X2), q.X2),
        "gbar_Z1_printed": residual(conjugate(Gbar, q.Z1), -1.0 * q.Z1),
        "gbar_Z2_printed": residual(conjugate(Gbar, q.Z2), q.Z1 @ q.Z2),
    }
    for sign, left, tilde in ((1, psiL_plus, tilde_minus), (-1, psiL_minus, tilde_plus)):
        qudit = np.exp(1j * math.pi / 4) * (left @ tilde)
        eigenvalues = np.linalg.eigvals(qudit.matrix)
        targets = np.array([1, -1, 1j, -1j])
        spread = max(np.min(np.abs(targets - ev)) for ev in eigenvalues)
        tag = "+" if sign > 0 else "-"
        report[f"qudit{tag}_eigenvalues_printed"] = float(spread)
        report[f"qudit{tag}_Q4_commutes_printed"] = max(_commutator_norm(qudit, Qk) for Qk in Q4)
    log.info(f"Ideal-case relation report at N={N}: {len(report)} entries")
    return report
