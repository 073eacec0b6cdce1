"""
Parameter-space transport of mode operators.

The Floquet operator U_T(s) = exp(-i H_eff(s) T) defines H_eff on the
principal branch. A mode seeded at s0 is carried to s1 by the ordered
midpoint product of exp(-i H_eff(s_k) ds), later factors to the left.
"""

from typing import List, Tuple
from pydantic import BaseModel, ConfigDict, Field, model_validator
from src.adiabatic.paths import ParameterPath
from src.algebra.fock import FockOperator, identity
from src.bdg.floquet import unitary_eigensystem
from src.chain.hamiltonians import build_floquet
from src.common import config
from src.common.errors import VerificationError
from src.common.logger import log
from src.modes.candidates import ModeCandidate, conjugate, conjugation_residual
import numpy as np
import math


class EffectiveHamiltonian(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    H: FockOperator
    phases: np.ndarray = Field(description="eigenphases of U on (-pi, pi]")
    vectors: np.ndarray
    T: float
    branch_flag: bool = Field(description="an eigenphase sits on the branch cut at pi")

    def propagator(self, ds: float) -> np.ndarray:
        """exp(-i H ds) from the stored eigen-decomposition."""
        return (self.vectors * np.exp(1j * self.phases * ds / self.T)) @ self.vectors.conj().T


def _principal_phases(eigenvalues: np.ndarray) -> np.ndarray:
    phases = np.angle(eigenvalues)
    return np.where(phases <= -math.pi + config.BRANCH_CUT_TOL, math.pi, phases)


def effective_hamiltonian_system(U: FockOperator, T: float) -> EffectiveHamiltonian:
    eigenvalues, vectors = unitary_eigensystem(U.matrix)
    phases = _principal_phases(eigenvalues)
    flag = bool(np.any(math.pi - np.abs(phases) <= config.BRANCH_CUT_TOL))
    if flag:
        log.warning("Floquet eigenphase on the branch cut; effective Hamiltonian is branch-ambiguous")
    H = -(vectors * (phases / T)) @ vectors.conj().T
    H = 0.5 * (H + H.conj().T)
    return EffectiveHamiltonian(
        H=FockOperator(matrix=H, label="H_eff"), phases=phases, vectors=vectors, T=T, branch_flag=flag
    )


def effective_hamiltonian(U: FockOperator, T: float) -> Tuple[FockOperator, bool]:
    """Hermitian H with exp(-i H T) = U, and whether the branch cut was hit."""
    system = effective_hamiltonian_system(U, T)
    return system.H, system.branch_flag


class Transport(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    unitary: FockOperator
    step_residuals: List[float]
    branch_crossings: int


class DeformedMode(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    operator: FockOperator
    seed: ModeCandidate
    path: ParameterPath
    step_residuals: List[float]
    branch_crossings: int

    @model_validator(mode="after")
    def _same_shape(self):
        if self.operator.dimension != self.seed.operator.dimension:
            raise ValueError("deformed operator and seed differ in dimension")
        return self


def transport_unitary(path: ParameterPath, layout: str = config.DEFAULT_SITE_LAYOUT) -> Transport:
    dimension = 4 ** path.base.N
    if path.is_stationary:
        return Transport(unitary=identity(dimension, "calU"), step_residuals=[], branch_crossings=0)

    total = np.eye(dimension, dtype=complex)
    residuals, crossings = [], 0
    ds = path.step
    for s in path.midpoints():
        system = effective_hamiltonian_system(build_floquet(path.point(s), layout), path.base.T)
        factor = system.propagator(ds)
        residuals.append(float(np.linalg.norm(factor.conj().T @ factor - np.eye(dimension))))
        crossings += int(system.branch_flag)
        total = factor @ total
    if crossings:
        log.warning(f"{crossings} branch-cut crossings along {path.axis} from {path.start} to {path.end}")
    return Transport(
        unitary=FockOperator(matrix=total, label="calU"), step_residuals=residuals, branch_crossings=crossings
    )


def check_seed(seed: ModeCandidate, path: ParameterPath, layout: str):
    U0 = build_floquet(path.point(path.start), layout)
    res = conjugation_residual(U0, seed.operator, seed.target_phase)
    if res > 1e-6:
        raise VerificationError({f"seed {seed.label} at path start": res})


def deform(seed: ModeCandidate, path: ParameterPath, transport: Transport) -> DeformedMode:
    return DeformedMode(
        operator=conjugate(transport.unitary, seed.operator),
        seed=seed,
        path=path,
        step_residuals=transport.step_residuals,
        branch_crossings=transport.branch_crossings,
    )


def evolve_mode(
    seed: ModeCandidate,
    path: ParameterPath,
    layout: str = config.DEFAULT_SITE_LAYOUT,
    verify_seed: bool = True,
) -> DeformedMode:
    """calU^dag seed calU for the transport unitary of ``path``."""
    if verify_seed:
        check_seed(seed, path, layout)
    if path.is_stationary:
        return DeformedMode(operator=seed.operator, seed=seed, path=path, step_residuals=[], branch_crossings=0)
    return deform(seed, path, transport_unitary(path, layout))


def round_trip_residual(seed: ModeCandidate, path: ParameterPath, layout: str = config.DEFAULT_SITE_LAYOUT) -> float:
    """Distance to the seed after transport s0 -> s1 -> s0."""
    forward = transport_unitary(path, layout).unitary
    backward = transport_unitary(path.reversed(), layout).unitary
    returned = conjugate(backward, conjugate(forward, seed.operator))
    return float(np.linalg.norm(returned.matrix - seed.operator.matrix) / seed.operator.norm())


def singular_value_drift(deformed: DeformedMode) -> float:
    before = np.linalg.svd(deformed.seed.operator.matrix, compute_uv=False)
    after = np.linalg.svd(deformed.operator.matrix, compute_uv=False)
    return float(np.max(np.abs(np.sort(before) - np.sort(after))))


class StepDoublingReport(BaseModel):
    steps: int
    value: float
    doubled_value: float
    change: float
    converged: bool


def step_doubling(
    seed: ModeCandidate,
    path: ParameterPath,
    score,
    tol: float = config.STEP_DOUBLING_TOL,
    layout: str = config.DEFAULT_SITE_LAYOUT,
) -> StepDoublingReport:
    """
    Compares ``score(deformed_operator)`` at M and 2M steps. Nonconvergence
    is reported and logged, never raised.
    """
    coarse = evolve_mode(seed, path, layout)
    fine = evolve_mode(seed, path.model_copy(update={"steps": 2 * path.steps}), layout, verify_seed=False)
    value, doubled = score(coarse.operator), score(fine.operator)
    change = abs(doubled - value)
    report = StepDoublingReport(
        steps=path.steps, value=value, doubled_value=doubled, change=change, converged=change < tol
    )
    if not report.converged:
        log.warning(f"Step doubling on {path.axis} changed the score by {change:.2e} (M={path.steps})")
    return report
