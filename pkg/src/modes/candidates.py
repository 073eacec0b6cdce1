"""
Mode candidates and their verification.

Phase convention: a candidate psi at phase eps satisfies
U^dag psi U = exp(-i eps) psi.
"""

from typing import Dict, List, Literal, Sequence, Tuple
from pydantic import BaseModel, ConfigDict, Field, field_validator
from src.algebra.fock import FockOperator, residual
from src.common import config
from src.common.errors import DimensionError, OrbitError
from src.common.logger import log
import numpy as np
import math


ALLOWED_PHASES = (0.0, math.pi / 2, -math.pi / 2, math.pi)


def fold_phase(phase: float) -> float:
    """Maps a phase into (-pi, pi]."""
    folded = math.remainder(phase, 2 * math.pi)
    return math.pi if folded <= -math.pi + 1e-12 else folded


class ModeCandidate(BaseModel):
    model_config = ConfigDict(frozen=True)

    operator: FockOperator
    target_phase: float = Field(description="eps*T in radians, one of 0, +-pi/2, pi")
    claimed_order: Literal[2, 4] = Field(
        description="4 for a parafermion (psi^4 = 1), 2 for an ordinary fermion (psi^2 = 0)"
    )
    side: Literal["left", "right"] = "left"
    label: str = ""

    @field_validator("target_phase")
    @classmethod
    def _allowed(cls, value):
        folded = fold_phase(value)
        if min(abs(folded - p) for p in ALLOWED_PHASES) > 1e-12:
            raise ValueError(f"target phase {value} is not one of 0, +-pi/2, pi")
        return folded


class ModeReport(BaseModel):
    label: str
    target_phase: float
    conjugation_residual: float
    order_residual: float
    square_weight: float = Field(description="||psi^2|| sqrt(d) / ||psi||^2; 1 for unitary psi, 0 for nilpotent")
    hermitian_fraction: float
    antihermitian_fraction: float

    @property
    def is_parafermion_like(self) -> bool:
        return self.square_weight > 0.9

    @property
    def is_fermion_like(self) -> bool:
        return self.square_weight < 1e-10


def conjugate(U: FockOperator, op: FockOperator) -> FockOperator:
    """U^dag op U."""
    return FockOperator(matrix=U.matrix.conj().T @ op.matrix @ U.matrix, label=op.label)


def conjugation_residual(U: FockOperator, op: FockOperator, phase: float) -> float:
    evolved = conjugate(U, op)
    return float(np.linalg.norm(evolved.matrix - np.exp(-1j * phase) * op.matrix) / op.norm())


def verify_mode(U: FockOperator, cand: ModeCandidate) -> ModeReport:
    psi = cand.operator
    if psi.dimension != U.dimension:
        raise DimensionError(f"candidate '{cand.label}' has dimension {psi.dimension}, U has {U.dimension}")
    d = psi.dimension
    norm = psi.norm()
    square = psi.matrix @ psi.matrix
    square_weight = float(np.linalg.norm(square) * math.sqrt(d) / norm**2)
    if cand.claimed_order == 4:
        order_residual = float(np.linalg.norm(square @ square - np.eye(d)) / math.sqrt(d))
    else:
        order_residual = float(np.linalg.norm(square) / norm**2)
    hermitian = 0.5 * (psi.matrix + psi.matrix.conj().T)
    report = ModeReport(
        label=cand.label,
        target_phase=cand.target_phase,
        conjugation_residual=conjugation_residual(U, psi, cand.target_phase),
        order_residual=order_residual,
        square_weight=square_weight,
        hermitian_fraction=float(np.linalg.norm(hermitian) / norm),
        antihermitian_fraction=float(np.linalg.norm(psi.matrix - hermitian) / norm),
    )
    log.debug(f"{cand.label}: conjugation {report.conjugation_residual:.2e}, order {report.order_residual:.2e}")
    return report


def best_phase(U: FockOperator, op: FockOperator, phases: Sequence[float] = ALLOWED_PHASES) -> Tuple[float, float]:
    """(phase, residual) of the allowed phase at which ``op`` is closest to an eigenoperator."""
    scored = [(conjugation_residual(U, op, p), p) for p in phases]
    res, phase = min(scored)
    return phase, res


def conjugation_chain(factors: Sequence[FockOperator], seed: FockOperator) -> List[FockOperator]:
    """[seed, F1^dag seed F1, F2^dag (F1^dag seed F1) F2, ...] in the given factor order."""
    chain = [seed]
    for F in factors:
        chain.append(conjugate(F, chain[-1]))
    return chain


class Orbit(BaseModel):
    period: int
    operators: List[FockOperator]


def conjugation_orbit(U: FockOperator, seed: FockOperator, max_period: int = 8) -> Orbit:
    """Iterates X -> U^dag X U from ``seed`` until it returns to the seed."""
    operators = [seed]
    current = seed
    for k in range(1, max_period + 1):
        current = conjugate(U, current)
        if residual(current, seed) < 1e-9:
            log.debug(f"Orbit of '{seed.label}' closed after {k} steps")
            return Orbit(period=k, operators=operators)
        operators.append(current)
    raise OrbitError(f"orbit of '{seed.label}' did not close within {max_period} steps")


def orbit_modes(
    U: FockOperator, seed: FockOperator, max_period: int = 8, claimed_order: int = 2, side: str = "left"
) -> Dict[float, ModeCandidate]:
    """
    Eigenoperators sum_k exp(i eps k) O_k of the closed orbit O_k of ``seed``,
    one per eps = 2 pi m / period with a nonvanishing sum. Each is scaled so
    its component along the seed is one.
    """
    orbit = conjugation_orbit(U, seed, max_period)
    K = orbit.period
    seed_norm2 = np.vdot(seed.matrix, seed.matrix)
    modes = {}
    for m in range(K):
        eps = fold_phase(2 * math.pi * m / K)
        nearest = min(ALLOWED_PHASES, key=lambda p: abs(eps - p))
        if abs(eps - nearest) > 1e-9:
            log.warning(f"Orbit phase {eps:.4f} of '{seed.label}' is outside 0, +-pi/2, pi; skipped")
            continue
        eps = nearest
        total = sum(np.exp(1j * eps * k) * O.matrix for k, O in enumerate(orbit.operators))
        if np.linalg.norm(total) < 1e-8 * seed.norm():
            continue
        weight = np.vdot(seed.matrix, total) / seed_norm2
        if abs(weight) < config.ZERO_TOL:
            weight = 1.0
        operator = FockOperator(matrix=total / weight, label=f"orbit({seed.label})@{eps:.4f}")
        modes[eps] = ModeCandidate(
            operator=operator, target_phase=eps, claimed_order=claimed_order, side=side, label=operator.label
        )
    return modes


def proportionality_fit(square: FockOperator, op: FockOperator) -> Dict[str, complex]:
    """Least-squares z in square ~ z op, with the relative misfit."""
    z = np.vdot(op.matrix, square.matrix) / np.vdot(op.matrix, op.matrix)
    misfit = float(np.linalg.norm(square.matrix - z * op.matrix) / max(square.norm(), 1e-300))
    return {"coefficient": complex(z), "relative_misfit": misfit}
