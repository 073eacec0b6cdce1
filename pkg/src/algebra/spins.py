from functools import lru_cache
from typing import List, Literal
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator
from src.common import config
from src.common.errors import DimensionError, SizeCapError
from src.algebra.fock import FockOperator, kron_all
import numpy as np


PAULI_MATRICES = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


class RectLatticeSpec(BaseModel):
    """
    N x (n+1) spin-1/2 lattice: N rows (chain sites) and n+1 chains.

    ``J[j][nu]`` holds the coupling of row bond j -> j+1 on chain nu
    (0-based lists, N-1 rows of n+1 entries), already multiplied by the
    step duration so it enters exponentials as a phase.
    """

    model_config = ConfigDict(frozen=True)

    N: int = Field(ge=2)
    n: int = Field(ge=1)
    J: List[List[float]] = Field(default_factory=list)
    T: float = Field(default=1.0, gt=0)

    @model_validator(mode="before")
    @classmethod
    def _default_couplings(cls, data):
        if isinstance(data, dict) and not data.get("J"):
            N, n = int(data.get("N", 2)), int(data.get("n", 1))
            data = {**data, "J": [[0.0] * (n + 1) for _ in range(max(N - 1, 0))]}
        return data

    @field_validator("J", mode="before")
    @classmethod
    def _listify(cls, value):
        return [list(map(float, row)) for row in value]

    @model_validator(mode="after")
    def _check(self):
        if len(self.J) != self.N - 1 or any(len(row) != self.n + 1 for row in self.J):
            raise DimensionError("J must have N-1 rows of n+1 couplings")
        return self

    @property
    def chains(self) -> int:
        return self.n + 1

    @property
    def qubits(self) -> int:
        return self.N * (self.n + 1)

    @property
    def dimension(self) -> int:
        return 2**self.qubits

    def qubit(self, row: int, chain: int) -> int:
        if not (1 <= row <= self.N and 1 <= chain <= self.chains):
            raise DimensionError(f"site ({row},{chain}) outside the {self.N}x{self.chains} lattice")
        return (row - 1) * self.chains + (chain - 1)


class PauliSite(BaseModel):
    model_config = ConfigDict(frozen=True)

    row: int = Field(ge=1)
    chain: int = Field(ge=1)
    axis: Literal["X", "Y", "Z"]


@lru_cache(maxsize=1024)
def _pauli_string(labels: str) -> np.ndarray:
    matrix = kron_all([PAULI_MATRICES[ch] for ch in labels])
    matrix.flags.writeable = False
    return matrix


def pauli_string(assignment: dict, lattice: RectLatticeSpec, label: str = "") -> FockOperator:
    """Tensor product with ``assignment[qubit] in {X, Y, Z}`` and identities elsewhere."""
    labels = ["I"] * lattice.qubits
    for qubit, axis in assignment.items():
        labels[qubit] = axis
    return FockOperator(matrix=_pauli_string("".join(labels)), label=label or "".join(labels))


def pauli(site: PauliSite, lattice: RectLatticeSpec) -> FockOperator:
    qubit = lattice.qubit(site.row, site.chain)
    return pauli_string({qubit: site.axis}, lattice, label=f"{site.axis}[{site.row},{site.chain}]")


def jw_majorana_from_pauli(row: int, chain: int, species: str, lattice: RectLatticeSpec) -> FockOperator:
    """
    Row-major Jordan-Wigner string: X on every earlier qubit, then Z (species A)
    or Y (species B) on qubit (row, chain).
    """
    if species not in ("A", "B"):
        raise ValueError(f"Unknown Majorana species: {species}")
    target = lattice.qubit(row, chain)
    assignment = {q: "X" for q in range(target)}
    assignment[target] = "Z" if species == "A" else "Y"
    return pauli_string(assignment, lattice, label=f"g{species}[{row},{chain}]")


def ensure_within_caps(lattice: RectLatticeSpec) -> RectLatticeSpec:
    if lattice.qubits > config.MAX_LATTICE_QUBITS:
        raise SizeCapError(f"{lattice.qubits} qubits exceed the cap of {config.MAX_LATTICE_QUBITS}")
    cap = config.LATTICE_SIZE_CAPS.get(lattice.n)
    if cap is not None and lattice.N > cap:
        raise SizeCapError(f"N={lattice.N} exceeds the cap N<={cap} for n={lattice.n}")
    return lattice
