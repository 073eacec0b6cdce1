from typing import List, Sequence, Tuple
from pydantic import BaseModel, ConfigDict, Field
from src.algebra.fock import FockOperator
from src.algebra.spins import RectLatticeSpec
from src.bdg.floquet import unitary_eigensystem
from src.common import config
from src.common.errors import DimensionError, VerificationError
from src.common.logger import log
from src.spectral.functions import circular_distance
import numpy as np
import math


MONOMIAL_TOL = 1e-8


def wrap_phases(phases) -> np.ndarray:
    """Maps phases onto (-pi, pi]."""
    wrapped = np.angle(np.exp(1j * np.asarray(phases, dtype=float)))
    return np.where(wrapped <= -math.pi + config.BRANCH_CUT_TOL, math.pi, wrapped)


def eigenphases(U: FockOperator) -> np.ndarray:
    """Sorted eigenphases theta of U|n> = e^{i theta}|n>, on (-pi, pi]."""
    eigenvalues, _ = unitary_eigensystem(U.matrix)
    return np.sort(wrap_phases(np.angle(eigenvalues)))


def phase_multiset_distance(a: Sequence[float], b: Sequence[float]) -> float:
    """
    Bottleneck distance between two equal-size multisets of points on the
    circle. Sorted orders are optimal up to a cyclic shift, so every shift
    is tried.
    """
    a = np.sort(np.remainder(np.asarray(a, dtype=float), 2 * math.pi))
    b = np.sort(np.remainder(np.asarray(b, dtype=float), 2 * math.pi))
    if a.shape != b.shape:
        raise DimensionError(f"multisets of different size: {a.size} vs {b.size}")
    if a.size == 0:
        return 0.0
    return float(min(np.max(circular_distance(a - np.roll(b, s))) for s in range(a.size)))


def shift_closure_residual(phases: Sequence[float], shift: float) -> float:
    """Distance between the multiset and its copy shifted by ``shift``."""
    phases = np.asarray(phases, dtype=float)
    return phase_multiset_distance(phases, phases + shift)


class MultipletReport(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    eigenphases: List[float]
    spacing: float = Field(gt=0)
    multiplet_size: int = Field(ge=1)
    max_residual: float
    T: float = 1.0
    degenerate: bool = Field(default=False, description="all eigenphases coincide")

    @property
    def closed(self) -> bool:
        return self.max_residual < config.DEGENERACY_TOL


def _run_length(phases: np.ndarray, start: float, spacing: float, limit: int, tol: float) -> int:
    """Number of consecutive points start, start + spacing, ... present in ``phases``."""
    size = 0
    while size < limit and np.min(circular_distance(phases - (start + size * spacing))) <= tol:
        size += 1
    return size


def multiplet_analysis(U: FockOperator, n: int, T: float = 1.0, tol: float = config.DEGENERACY_TOL) -> MultipletReport:
    """
    Closure of the eigenphase multiset under a shift by pi / 2^n. The
    multiplet size is the shortest ladder start, start + spacing, ...
    found in the spectrum, capped at one full turn (2^(n+1) rungs).
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    phases = eigenphases(U)
    spacing = math.pi / 2**n
    limit = 2 ** (n + 1)
    residual = shift_closure_residual(phases, spacing)
    size = min(_run_length(phases, theta, spacing, limit, tol) for theta in phases)
    degenerate = bool(np.max(circular_distance(phases - phases[0])) <= tol)
    report = MultipletReport(
        eigenphases=phases.tolist(),
        spacing=spacing,
        multiplet_size=size,
        max_residual=residual,
        T=T,
        degenerate=degenerate,
    )
    log.info(f"Multiplets for n={n}: spacing {spacing:.4f}, size {size}, closure residual {residual:.2e}")
    if degenerate:
        log.warning("All eigenphases coincide; the multiplet structure is trivial")
    return report


def _basis_index(bits: Sequence[int]) -> int:
    """Qubit 0 is the most significant bit; bit 1 means Z = -1."""
    index = 0
    for bit in bits:
        index = 2 * index + bit
    return index


def sector_state(lattice: RectLatticeSpec, sector, first_row: Sequence[int] = None) -> int:
    """
    Z-basis index fixed by the bond labels sector[j][nu] = z_{j,nu} z_{j+1,nu}
    (N-1 rows of n+1 signs) and the first-row signs (default all +1).
    """
    sector = np.asarray(sector, dtype=int)
    if sector.shape != (lattice.N - 1, lattice.chains) or not np.all(np.isin(sector, (-1, 1))):
        raise ValueError(f"sector must be {lattice.N - 1}x{lattice.chains} signs +-1")
    row = np.ones(lattice.chains, dtype=int) if first_row is None else np.asarray(first_row, dtype=int)
    if row.shape != (lattice.chains,) or not np.all(np.isin(row, (-1, 1))):
        raise ValueError(f"first_row must hold {lattice.chains} signs +-1")
    signs = [row]
    for bond in sector:
        signs.append(bond * signs[-1])
    return _basis_index([(1 - s) // 2 for s in np.concatenate(signs)])


def basis_orbit(U: FockOperator, start: int) -> Tuple[List[int], List[complex]]:
    """
    Orbit of a Z-basis state under a phased permutation: U^k|m0> = a_k |m_k>.
    Returns the indices m_k and amplitudes a_k for k < L, and closes with
    U^L|m0> = a_L |m0> appended to the amplitudes.
    """
    indices, amplitudes = [start], [1.0 + 0j]
    current, amplitude = start, 1.0 + 0j
    for _ in range(U.dimension):
        column = U.matrix[:, current]
        target = int(np.argmax(np.abs(column)))
        if abs(abs(column[target]) - 1.0) > MONOMIAL_TOL:
            raise VerificationError({f"monomial column {current}": float(abs(column[target]))})
        current, amplitude = target, amplitude * column[target]
        if current == start:
            amplitudes.append(amplitude)
            return indices, amplitudes
        indices.append(current)
        amplitudes.append(amplitude)
    raise VerificationError({"orbit closure": float(len(indices))})


def analytic_eigenstates(
    lattice: RectLatticeSpec,
    sector,
    ell: int,
    U: FockOperator = None,
    first_row: Sequence[int] = None,
) -> Tuple[np.ndarray, float]:
    """
    Discrete Fourier vector over the orbit of a sector state under the
    rotated unitary. With U^L|m0> = Phi|m0> the eigenvalues are
    lambda_l = Phi^{1/L} e^{2 pi i l / L} and
    v_l = L^{-1/2} sum_k lambda_l^{-k} U^k|m0>.
    Returns the vector and its eigenphase.
    """
    if U is None:
        from src.paragen.lattice import build_spin_floquet_rotated

        U, _ = build_spin_floquet_rotated(lattice)
    start = sector_state(lattice, sector, first_row)
    indices, amplitudes = basis_orbit(U, start)
    L = len(indices)
    if not (0 <= ell < L):
        raise ValueError(f"ell={ell} outside 0..{L - 1} for an orbit of length {L}")
    phase = (np.angle(amplitudes[L]) + 2 * math.pi * ell) / L
    v = np.zeros(U.dimension, dtype=complex)
    for k, (index, amplitude) in enumerate(zip(indices, amplitudes)):
        v[index] = np.exp(-1j * phase * k) * amplitude
    v /= math.sqrt(L)
    return v, float(wrap_phases(phase))


def eigenvector_residual(U: FockOperator, v: np.ndarray, phase: float) -> float:
    return float(np.linalg.norm(U.matrix @ v - np.exp(1j * phase) * v))
