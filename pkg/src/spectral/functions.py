"""
Windowed spectral weight of an operator between Floquet eigenstates.

For eigenphases U|n> = exp(i theta_n)|n>, an operator with
U^dag psi U = exp(-i eps) psi only connects states with
theta_n - theta_m = eps. The spectral function is the fraction of the
weight sum_{n in X} sum_m |<n|psi|m>|^2 carried by pairs whose phase
difference lies within ``delta`` of ``eps`` on the circle.
"""

from functools import lru_cache
from typing import List, Literal, Optional, Union
from pydantic import BaseModel, ConfigDict, Field, field_validator
from src.algebra.fock import FockOperator
from src.bdg.floquet import degenerate_clusters, unitary_eigensystem
from src.common import config
from src.common.errors import DegenerateSpectralError, DimensionError
from src.common.logger import log
import numpy as np
import math


class SpectralConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    delta: float = Field(default=config.SPECTRAL_DELTA, gt=0.0, lt=math.pi / 4, description="window half-width in radians")
    sample_size: Union[Literal["all", "auto"], int] = Field(
        default="auto", description="number of sampled eigenstates; auto = all up to FULL_SAMPLE_MAX_DIM"
    )
    seed: int = Field(default=0, ge=0, lt=2**64)

    @field_validator("sample_size")
    @classmethod
    def _positive(cls, value):
        if isinstance(value, int) and value < 1:
            raise ValueError("sample_size must be >= 1")
        return value

    def states_for(self, dimension: int) -> int:
        if self.sample_size == "all":
            return dimension
        if self.sample_size == "auto":
            return dimension if dimension <= config.FULL_SAMPLE_MAX_DIM else config.SAMPLED_STATES
        return min(self.sample_size, dimension)


class SpectralEstimate(BaseModel):
    value: float = Field(ge=0.0, le=1.0)
    epsilon: float = Field(description="target phase eps*T in radians")
    operator_label: str
    spectral_config: SpectralConfig
    eigenpair_count: int


class Eigensystem(BaseModel):
    """Eigenphases with degenerate clusters snapped to their mean phase."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    phases: np.ndarray
    vectors: np.ndarray
    groups: List[List[int]]

    @property
    def dimension(self) -> int:
        return self.phases.shape[0]

    @classmethod
    def from_decomposition(cls, eigenvalues: np.ndarray, vectors: np.ndarray) -> "Eigensystem":
        groups = degenerate_clusters(eigenvalues)
        phases = np.angle(eigenvalues).astype(float)
        for group in groups:
            phases[group] = np.angle(np.mean(eigenvalues[group]))
        return cls(phases=phases, vectors=vectors, groups=groups)


@lru_cache(maxsize=8)
def _cached_eigensystem(key: bytes, dimension: int) -> Eigensystem:
    matrix = np.frombuffer(key, dtype=complex).reshape(dimension, dimension)
    eigenvalues, vectors = unitary_eigensystem(matrix)
    system = Eigensystem.from_decomposition(eigenvalues, vectors)
    log.debug(f"Eigensystem of a {dimension}-dimensional unitary: {len(system.groups)} distinct phases")
    return system


def eigensystem(U: FockOperator) -> Eigensystem:
    """Shared read-only decomposition of U, reused across target phases."""
    return _cached_eigensystem(np.ascontiguousarray(U.matrix).tobytes(), U.dimension)


def circular_distance(x: np.ndarray) -> np.ndarray:
    """Distance to the nearest multiple of 2 pi."""
    return np.abs(np.remainder(x + math.pi, 2 * math.pi) - math.pi)


def _sampled_states(dimension: int, spectral_config: SpectralConfig) -> np.ndarray:
    size = spectral_config.states_for(dimension)
    if size == dimension:
        return np.arange(dimension)
    rng = np.random.default_rng(spectral_config.seed)
    return np.sort(rng.choice(dimension, size=size, replace=False))


def spectral_function(
    U: FockOperator,
    psi: FockOperator,
    epsilon: float,
    spectral_config: SpectralConfig = SpectralConfig(),
    system: Optional[Eigensystem] = None,
) -> SpectralEstimate:
    if psi.dimension != U.dimension:
        raise DimensionError(f"operator has dimension {psi.dimension}, U has {U.dimension}")
    if psi.norm() == 0.0:
        raise DegenerateSpectralError(f"operator '{psi.label}' is zero")
    system = eigensystem(U) if system is None else system

    rows = _sampled_states(system.dimension, spectral_config)
    V = system.vectors
    elements = V[:, rows].conj().T @ psi.matrix @ V
    weights = np.abs(elements) ** 2
    total = float(weights.sum())
    if total <= config.ZERO_TOL * psi.norm() ** 2:
        raise DegenerateSpectralError(f"operator '{psi.label}' annihilates every sampled eigenstate")

    gaps = system.phases[rows][:, None] - system.phases[None, :] - epsilon
    inside = circular_distance(gaps) <= spectral_config.delta
    value = float(weights[inside].sum()) / total
    return SpectralEstimate(
        value=min(max(value, 0.0), 1.0),
        epsilon=epsilon,
        operator_label=psi.label,
        spectral_config=spectral_config,
        eigenpair_count=len(rows),
    )


def spectral_quadruple(
    U: FockOperator, psi: FockOperator, spectral_config: SpectralConfig = SpectralConfig()
) -> List[SpectralEstimate]:
    """Estimates at eps*T = 0, +pi/2, -pi/2, pi, in that order."""
    system = eigensystem(U)
    return [spectral_function(U, psi, eps, spectral_config, system) for eps in config.TARGET_PHASES]


def sampling_convergence(U: FockOperator, psi: FockOperator, epsilon: float, sizes: List[int], seed: int = 0) -> dict:
    """Relative deviation of sampled estimates from the full-sample value."""
    system = eigensystem(U)
    exact = spectral_function(U, psi, epsilon, SpectralConfig(sample_size="all", seed=seed), system).value
    deviations = {}
    for size in sizes:
        sampled = spectral_function(U, psi, epsilon, SpectralConfig(sample_size=size, seed=seed), system).value
        deviations[size] = abs(sampled - exact) / max(exact, config.ZERO_TOL)
    log.info(f"Sampling deviations at eps={epsilon:.4f}: {deviations}")
    return deviations
