from functools import lru_cache, reduce
from typing import Literal, Optional, Sequence
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator
from src.common import config
from src.common.errors import DimensionError, HermiticityError
from src.common.logger import log
import numpy as np


_ANNIHILATE = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)
_PARITY = np.diag([1.0, -1.0]).astype(complex)
_EYE2 = np.eye(2, dtype=complex)


class ModeIndex(BaseModel):
    """Site/spin label of a fermion mode, optionally with its Majorana species."""

    model_config = ConfigDict(frozen=True)

    site: int = Field(ge=1, description="chain site j, 1-based")
    spin: Literal[1, -1] = Field(description="spin label s")
    species: Optional[Literal["A", "B"]] = Field(default=None, description="Majorana species")

    def position(self, N: int) -> int:
        """Position in the global (site ascending, spin +1 before -1) ordering."""
        if self.site > N:
            raise DimensionError(f"site {self.site} outside a chain of {N} sites")
        return 2 * (self.site - 1) + (0 if self.spin == 1 else 1)


class FockOperator(BaseModel):
    """Dense many-body operator. The matrix is frozen after construction."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    matrix: np.ndarray
    label: str = ""

    @field_validator("matrix", mode="before")
    @classmethod
    def _as_complex_array(cls, value):
        array = np.array(value, dtype=complex)
        array.flags.writeable = False
        return array

    @model_validator(mode="after")
    def _check_shape(self):
        rows, cols = self.matrix.shape if self.matrix.ndim == 2 else (0, -1)
        if rows != cols or rows < 1 or rows & (rows - 1):
            raise DimensionError(f"operator '{self.label}' is not a square power-of-two matrix")
        if not np.all(np.isfinite(self.matrix)):
            raise DimensionError(f"operator '{self.label}' has non-finite entries")
        return self

    @property
    def dimension(self) -> int:
        return self.matrix.shape[0]

    def dag(self) -> "FockOperator":
        return FockOperator(matrix=self.matrix.conj().T, label=f"({self.label})^dag")

    def __matmul__(self, other: "FockOperator") -> "FockOperator":
        _check_pair(self, other)
        return FockOperator(matrix=self.matrix @ other.matrix, label=f"{self.label}*{other.label}")

    def __add__(self, other: "FockOperator") -> "FockOperator":
        _check_pair(self, other)
        return FockOperator(matrix=self.matrix + other.matrix, label=f"{self.label}+{other.label}")

    def __sub__(self, other: "FockOperator") -> "FockOperator":
        _check_pair(self, other)
        return FockOperator(matrix=self.matrix - other.matrix, label=f"{self.label}-{other.label}")

    def __mul__(self, scalar: complex) -> "FockOperator":
        return FockOperator(matrix=scalar * self.matrix, label=self.label)

    __rmul__ = __mul__

    def power(self, k: int) -> "FockOperator":
        return FockOperator(matrix=np.linalg.matrix_power(self.matrix, k), label=f"({self.label})^{k}")

    def norm(self) -> float:
        return float(np.linalg.norm(self.matrix))


def _check_pair(a: FockOperator, b: FockOperator):
    if a.dimension != b.dimension:
        raise DimensionError(f"dimension mismatch: {a.dimension} vs {b.dimension}")


def identity(dimension: int, label: str = "I") -> FockOperator:
    return FockOperator(matrix=np.eye(dimension, dtype=complex), label=label)


def zero(dimension: int) -> FockOperator:
    return FockOperator(matrix=np.zeros((dimension, dimension), dtype=complex), label="0")


def kron_all(factors: Sequence[np.ndarray]) -> np.ndarray:
    return reduce(np.kron, factors, np.ones((1, 1), dtype=complex))


@lru_cache(maxsize=512)
def _annihilation_matrix(position: int, n_modes: int) -> np.ndarray:
    factors = [_PARITY] * position + [_ANNIHILATE] + [_EYE2] * (n_modes - position - 1)
    matrix = kron_all(factors)
    matrix.flags.writeable = False
    return matrix


def fermion_annihilation(mode: ModeIndex, N: int) -> FockOperator:
    """Jordan-Wigner matrix of c_{j,s} on the 4^N occupation basis."""
    if N < 1:
        raise DimensionError("chain needs at least one site")
    position = mode.position(N)
    return FockOperator(
        matrix=_annihilation_matrix(position, 2 * N), label=f"c[{mode.site},{mode.spin:+d}]"
    )


def fermion_creation(mode: ModeIndex, N: int) -> FockOperator:
    return fermion_annihilation(mode, N).dag()


def number_operator(mode: ModeIndex, N: int) -> FockOperator:
    c = fermion_annihilation(mode, N).matrix
    return FockOperator(matrix=c.conj().T @ c, label=f"n[{mode.site},{mode.spin:+d}]")


def majorana(mode: ModeIndex, N: int) -> FockOperator:
    """gamma_B = c + c^dag, gamma_A = i (c - c^dag)."""
    if mode.species is None:
        raise DimensionError("majorana() needs a mode with a species label")
    c = _annihilation_matrix(mode.position(N), 2 * N)
    if mode.species == "B":
        matrix = c + c.conj().T
    else:
        matrix = 1j * (c - c.conj().T)
    return FockOperator(matrix=matrix, label=f"g{mode.species}[{mode.site},{mode.spin:+d}]")


def gamma(species: str, site: int, spin: int, N: int) -> FockOperator:
    """Shorthand for ``majorana(ModeIndex(...), N)``."""
    return majorana(ModeIndex(site=site, spin=spin, species=species), N)


def parity_operator(N: int) -> FockOperator:
    if N < 1:
        raise DimensionError("chain needs at least one site")
    return FockOperator(matrix=kron_all([_PARITY] * (2 * N)), label="P")


def product(operators: Sequence[FockOperator], label: str = None) -> FockOperator:
    """Ordered product, leftmost factor first."""
    if not operators:
        raise DimensionError("empty operator product")
    matrix = reduce(np.matmul, [op.matrix for op in operators])
    return FockOperator(matrix=matrix, label=label or "*".join(op.label for op in operators))


def commutator(a: FockOperator, b: FockOperator) -> FockOperator:
    return a @ b - b @ a


def anticommutator(a: FockOperator, b: FockOperator) -> FockOperator:
    return a @ b + b @ a


def residual(a: FockOperator, b: FockOperator) -> float:
    """Frobenius distance ||a - b|| normalized by max(||b||, 1)."""
    _check_pair(a, b)
    return float(np.linalg.norm(a.matrix - b.matrix) / max(np.linalg.norm(b.matrix), 1.0))


def hermiticity_defect(H: FockOperator) -> float:
    return float(np.max(np.abs(H.matrix - H.matrix.conj().T), initial=0.0))


def unitarity_defect(U: FockOperator) -> float:
    eye = np.eye(U.dimension)
    return float(np.max(np.abs(U.matrix.conj().T @ U.matrix - eye), initial=0.0))


def unitary_exponential(H: FockOperator, angle_scale: float) -> FockOperator:
    """exp(-i * angle_scale * H) for Hermitian H, through eigh."""
    defect = hermiticity_defect(H)
    if defect > config.HERMITICITY_TOL:
        log.error(f"Non-Hermitian generator '{H.label}' (defect {defect:.2e})")
        raise HermiticityError(f"'{H.label}' is not Hermitian (defect {defect:.2e})")
    hermitian = 0.5 * (H.matrix + H.matrix.conj().T)
    energies, vectors = np.linalg.eigh(hermitian)
    phases = np.exp(-1j * angle_scale * energies)
    matrix = (vectors * phases) @ vectors.conj().T
    return FockOperator(matrix=matrix, label=f"exp(-i{angle_scale:.4g}*{H.label})")


def exp_majorana_bilinear(theta: float, x: FockOperator, y: FockOperator) -> FockOperator:
    """exp(theta x y) = cos(theta) + sin(theta) x y for anticommuting Majoranas x, y."""
    _check_pair(x, y)
    xy = x.matrix @ y.matrix
    matrix = np.cos(theta) * np.eye(x.dimension) + np.sin(theta) * xy
    return FockOperator(matrix=matrix, label=f"exp({theta:.4g}*{x.label}{y.label})")


def euler_conjugation(theta: float, p1: FockOperator, p2: FockOperator) -> FockOperator:
    """
    exp(i theta P1) P2 exp(-i theta P1) = cos(2 theta) P2 + i sin(2 theta) P1 P2
    for anticommuting Hermitian involutions P1, P2.
    """
    _check_pair(p1, p2)
    eye = np.eye(p1.dimension)
    for p in (p1, p2):
        if hermiticity_defect(p) > config.HERMITICITY_TOL:
            raise HermiticityError(f"'{p.label}' is not Hermitian")
        if np.max(np.abs(p.matrix @ p.matrix - eye)) > config.HERMITICITY_TOL:
            raise ValueError(f"'{p.label}' does not square to the identity")
    if np.max(np.abs(anticommutator(p1, p2).matrix)) > config.HERMITICITY_TOL:
        raise ValueError(f"'{p1.label}' and '{p2.label}' do not anticommute")
    matrix = np.cos(2 * theta) * p2.matrix + 1j * np.sin(2 * theta) * (p1.matrix @ p2.matrix)
    return FockOperator(matrix=matrix, label=f"euler({theta:.4g},{p1.label},{p2.label})")
