"""
Single-particle (Bogoliubov-de Gennes) layer of the noninteracting drive.

Nambu ordering: sites are grouped into unit cells (2j-1, 2j). Inside a
cell the entries run over spin s = +1, -1, then particle/hole, then the
two sublattice sites, i.e. c_{2j-1,s}, c_{2j,s}, c^dag_{2j-1,s},
c^dag_{2j,s}. An odd trailing site forms a cell on its own. With this
ordering U^dag Psi U = calU Psi for the many-body Floquet operator U.
"""

from functools import lru_cache
from typing import List, Literal, Sequence
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator
from scipy.linalg import expm, schur
from src.algebra.fock import ModeIndex, fermion_annihilation
from src.chain.hamiltonians import SPINS, build_floquet, carries_onsite
from src.chain.parameters import DriveParameters
from src.common import config
from src.common.errors import ConfigurationError, DimensionError, SizeCapError, UnitarityError
from src.common.logger import log
import numpy as np
import math


_ETA_X = np.array([[0, 1], [1, 0]], dtype=complex)
_TO_MAJORANA = np.array([[1, 1], [1j, -1j]], dtype=complex) / math.sqrt(2)


def _unitary_array(value):
    array = np.array(value, dtype=complex)
    array.flags.writeable = False
    return array


def _check_unitary(matrix: np.ndarray, tol: float, name: str):
    defect = float(np.max(np.abs(matrix.conj().T @ matrix - np.eye(matrix.shape[0]))))
    if defect > tol:
        raise UnitarityError(f"{name} is not unitary (defect {defect:.2e})")


class BdGUnitary(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    N: int = Field(ge=1, description="chain length in sites")
    matrix: np.ndarray = Field(description="4N x 4N single-particle Floquet matrix in Nambu order")
    boundary: Literal["open", "periodic"] = "open"
    T: float = Field(default=config.DEFAULT_PERIOD, gt=0)

    @field_validator("matrix", mode="before")
    @classmethod
    def _as_array(cls, value):
        return _unitary_array(value)

    @model_validator(mode="after")
    def _check(self):
        if self.matrix.shape != (4 * self.N, 4 * self.N):
            raise DimensionError(f"BdG matrix must be {4 * self.N}x{4 * self.N}")
        _check_unitary(self.matrix, config.UNITARITY_TOL, "BdG Floquet matrix")
        return self


class BlochUnitary(BaseModel):
    """8 x 8 Floquet matrix at quasimomentum k, basis spin x sublattice x particle-hole."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    k: float
    matrix: np.ndarray
    T: float = Field(default=config.DEFAULT_PERIOD, gt=0)

    @field_validator("matrix", mode="before")
    @classmethod
    def _as_array(cls, value):
        return _unitary_array(value)

    @model_validator(mode="after")
    def _check(self):
        if self.matrix.shape != (8, 8):
            raise DimensionError("Bloch matrix must be 8x8")
        _check_unitary(self.matrix, 1e-12, "Bloch Floquet matrix")
        return self


def nambu_index(site: int, spin: int, hole: bool, N: int) -> int:
    cell, tau = divmod(site - 1, 2)
    si = 0 if spin == 1 else 1
    if 2 * cell + 2 <= N:
        return 8 * cell + 4 * si + 2 * int(hole) + tau
    return 8 * cell + 2 * si + int(hole)


def nambu_cell(index: int, N: int) -> int:
    return index // 8


@lru_cache(maxsize=32)
def _nambu_permutation(N: int) -> np.ndarray:
    """perm[nambu position] = position in the (c_0 .. c_{2N-1}, c^dag_0 ..) mode order."""
    perm = np.empty(4 * N, dtype=int)
    for j in range(1, N + 1):
        for s in SPINS:
            p = ModeIndex(site=j, spin=s).position(N)
            perm[nambu_index(j, s, False, N)] = p
            perm[nambu_index(j, s, True, N)] = p + 2 * N
    perm.flags.writeable = False
    return perm


def _quadratic_blocks(params: DriveParameters, step: int, layout: str, periodic: bool):
    """Normal (A) and pairing (B) coefficient matrices of step ``step``."""
    N = params.N
    A = np.zeros((2 * N, 2 * N), dtype=complex)
    B = np.zeros((2 * N, 2 * N), dtype=complex)

    def pos(j, s):
        return ModeIndex(site=j, spin=s).position(N)

    if step in (1, 5):
        zeeman_sign = -1.0 if step == 1 else 1.0
        for j in range(1, N + 1):
            if carries_onsite(step, layout, j):
                for s in SPINS:
                    A[pos(j, s), pos(j, s)] += s * params.mu[j - 1][0 if s == 1 else 1]
            else:
                for s in SPINS:
                    A[pos(j, s), pos(j, -s)] += zeeman_sign * params.J1[j - 1]
    elif step in (2, 4):
        bonds = [(j, j + 1, j - 1) for j in range(1, N)]
        if periodic:
            bonds.append((N, 1, 0))
        for left, right, b in bonds:
            h2_spin = 1 if left % 2 == 1 else -1
            s = h2_spin if step == 2 else -h2_spin
            k = 0 if s == 1 else 1
            J2, Delta = params.J2[b][k], params.Delta[b][k]
            l, r = pos(left, s), pos(right, s)
            A[r, l] += -J2
            A[l, r] += -J2
            B[r, l] += Delta
            B[l, r] -= Delta
    return A, B


def bdg_step_hamiltonians(params: DriveParameters, boundary: str = "open", layout: str = config.DEFAULT_SITE_LAYOUT) -> List[np.ndarray]:
    """h_1 .. h_5 in Nambu order; H_k = 1/2 Psi^dag h_k Psi up to a constant."""
    if boundary not in ("open", "periodic"):
        raise ValueError(f"Unknown boundary: {boundary}")
    periodic = boundary == "periodic"
    if periodic and params.N % 2:
        raise DimensionError("periodic chains need an even number of sites")
    perm = _nambu_permutation(params.N)
    steps = []
    for step in range(1, 6):
        A, B = _quadratic_blocks(params, step, layout, periodic)
        h = np.block([[A, B], [-B.conj(), -A.conj()]])
        steps.append(h[np.ix_(perm, perm)])
    return steps


def _reject_interactions(params: DriveParameters):
    if not params.is_noninteracting:
        log.error(f"BdG layer called with U = {params.U}")
        raise ConfigurationError("the BdG layer requires U_j = 0 on every site")


def build_bdg_floquet(params: DriveParameters, boundary: str = "open", layout: str = config.DEFAULT_SITE_LAYOUT) -> BdGUnitary:
    """calU_T = calU_5 ... calU_1 with calU_k = exp(-i h_k T/5); step 3 is the identity at U = 0."""
    _reject_interactions(params)
    if boundary == "periodic" and not params.is_uniform:
        raise ConfigurationError("periodic BdG chains need translation-invariant couplings")
    tau = params.T / 5.0
    U = np.eye(4 * params.N, dtype=complex)
    for h in bdg_step_hamiltonians(params, boundary, layout):
        U = expm(-1j * tau * h) @ U
    log.debug(f"Built BdG Floquet matrix N={params.N} ({boundary})")
    return BdGUnitary(N=params.N, matrix=U, boundary=boundary, T=params.T)


_RING_CELLS = 3


@lru_cache(maxsize=1)
def _bloch_permutation() -> np.ndarray:
    # (spin, hole, sublattice) cell order -> (spin, sublattice, hole)
    perm = np.empty(8, dtype=int)
    for si in range(2):
        for tau in range(2):
            for hole in range(2):
                perm[4 * si + 2 * tau + hole] = 4 * si + 2 * hole + tau
    return perm


def _ring(params: DriveParameters) -> DriveParameters:
    if params.N < 2:
        raise DimensionError("Bloch matrices need at least one bond")
    if not params.is_uniform:
        raise ConfigurationError("Bloch matrices need uniform couplings")
    return DriveParameters.uniform(
        2 * _RING_CELLS,
        params.T,
        mu=params.mu[0][0],
        J1=params.J1[0],
        J2=params.J2[0][0],
        Delta=params.Delta[0][0],
        U=0.0,
    )


def bloch_step_hamiltonians(k: float, params: DriveParameters, layout: str = config.DEFAULT_SITE_LAYOUT) -> List[np.ndarray]:
    """h_step(k) = sum_d h(cell 0, cell d) e^{ikd}, read off a periodic ring."""
    _reject_interactions(params)
    ring = bdg_step_hamiltonians(_ring(params), "periodic", layout)
    perm = _bloch_permutation()
    blocks = []
    for h in ring:
        hk = np.zeros((8, 8), dtype=complex)
        for d in (-1, 0, 1):
            col = 8 * (d % _RING_CELLS)
            hk += h[0:8, col:col + 8] * np.exp(1j * k * d)
        blocks.append(hk[np.ix_(perm, perm)])
    return blocks


def bloch_floquet(k: float, params: DriveParameters, layout: str = config.DEFAULT_SITE_LAYOUT) -> BlochUnitary:
    tau = params.T / 5.0
    U = np.eye(8, dtype=complex)
    for hk in bloch_step_hamiltonians(k, params, layout):
        U = expm(-1j * tau * hk) @ U
    return BlochUnitary(k=k, matrix=U, T=params.T)


def default_k_grid(points: int = config.K_POINTS) -> np.ndarray:
    """Uniform grid on [-pi, pi]; an odd count includes k = 0 and k = +-pi."""
    return np.linspace(-math.pi, math.pi, points)


def check_phs(params: DriveParameters, k_samples: Sequence[float], layout: str = config.DEFAULT_SITE_LAYOUT) -> float:
    """
    max_k || conj(u(k)) - u(-k) || with u in the Majorana basis
    (gamma_B, gamma_A) / sqrt 2 of every mode, where the particle-hole
    antiunitary is plain complex conjugation.
    """
    W = np.kron(np.eye(4), _TO_MAJORANA)
    worst = 0.0
    for k in k_samples:
        uk = W @ bloch_floquet(k, params, layout).matrix @ W.conj().T
        umk = W @ bloch_floquet(-k, params, layout).matrix @ W.conj().T
        worst = max(worst, float(np.linalg.norm(uk.conj() - umk)))
    log.debug(f"Particle-hole residual over {len(k_samples)} k-points: {worst:.2e}")
    return worst


def check_phs_nambu(params: DriveParameters, k_samples: Sequence[float], layout: str = config.DEFAULT_SITE_LAYOUT) -> float:
    """Same symmetry in the Nambu basis, where it reads eta_x conj(u(k)) eta_x = u(-k)."""
    P = np.kron(np.eye(4), _ETA_X)
    worst = 0.0
    for k in k_samples:
        uk = bloch_floquet(k, params, layout).matrix
        umk = bloch_floquet(-k, params, layout).matrix
        worst = max(worst, float(np.linalg.norm(P @ uk.conj() @ P - umk)))
    return worst


def unitary_eigensystem(matrix: np.ndarray):
    """Eigenvalues and orthonormal eigenvectors of a unitary through complex Schur."""
    triangular, vectors = schur(matrix, output="complex")
    return np.diag(triangular).copy(), vectors


def degenerate_clusters(eigenvalues: np.ndarray, tol: float = config.DEGENERACY_TOL) -> List[List[int]]:
    """Groups indices whose unit-circle eigenvalues coincide within ``tol``."""
    order = np.argsort(np.angle(eigenvalues))
    groups, current = [], [int(order[0])]
    for i in order[1:]:
        if abs(eigenvalues[i] - eigenvalues[current[-1]]) <= tol:
            current.append(int(i))
        else:
            groups.append(current)
            current = [int(i)]
    groups.append(current)
    # wrap-around at the branch cut
    if len(groups) > 1 and abs(eigenvalues[groups[0][0]] - eigenvalues[groups[-1][-1]]) <= tol:
        groups[0] = groups.pop() + groups[0]
    return groups


def fold_quasienergies(eigenvalues: np.ndarray, T: float) -> np.ndarray:
    """epsilon = -arg(lambda) / T in (-pi/T, pi/T]; the boundary maps to +pi/T."""
    phases = -np.angle(eigenvalues)
    phases = np.where(phases <= -math.pi + config.BRANCH_CUT_TOL, phases + 2 * math.pi, phases)
    return phases / T


def quasienergy_spectrum(U, T: float = None) -> np.ndarray:
    T = U.T if T is None else T
    matrix = U.matrix
    _check_unitary(matrix, config.UNITARITY_TOL, "quasienergy input")
    eigenvalues, _ = unitary_eigensystem(matrix)
    return np.sort(fold_quasienergies(eigenvalues, T))


def nambu_operators(N: int) -> List[np.ndarray]:
    """Many-body matrices of the Nambu vector entries, in Nambu order."""
    ops = [None] * (4 * N)
    for j in range(1, N + 1):
        for s in SPINS:
            c = fermion_annihilation(ModeIndex(site=j, spin=s), N).matrix
            ops[nambu_index(j, s, False, N)] = c
            ops[nambu_index(j, s, True, N)] = c.conj().T
    return ops


def manybody_oracle(params: DriveParameters, layout: str = config.DEFAULT_SITE_LAYOUT) -> float:
    """
    Conjugates every Nambu entry by the many-body Floquet operator, expands
    the result on {c, c^dag} with Hilbert-Schmidt products and compares the
    coefficient matrix with the BdG matrix. Also counts any weight left
    outside the linear span.
    """
    _reject_interactions(params)
    if params.N > 4:
        raise SizeCapError("the many-body oracle is limited to N <= 4")
    bdg = build_bdg_floquet(params, "open", layout).matrix
    U = build_floquet(params, layout).matrix
    ops = nambu_operators(params.N)
    coefficients = np.zeros_like(bdg)
    remainder = 0.0
    for a, op in enumerate(ops):
        evolved = U.conj().T @ op @ U
        expansion = np.zeros_like(evolved)
        for b, basis in enumerate(ops):
            weight = np.vdot(basis, evolved) / np.vdot(basis, basis)
            coefficients[a, b] = weight
            expansion += weight * basis
        remainder = max(remainder, float(np.linalg.norm(evolved - expansion) / np.linalg.norm(op)))
    mismatch = float(np.linalg.norm(coefficients - bdg))
    log.debug(f"Many-body oracle N={params.N}: mismatch {mismatch:.2e}, remainder {remainder:.2e}")
    return max(mismatch, remainder)
