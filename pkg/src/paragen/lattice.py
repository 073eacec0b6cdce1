"""
Floquet unitaries of the N x (n+1) spin lattice carrying Z_{2^n}
parafermions, in the unrotated form, the rotated (diagonalizable) form,
and the Jordan-Wigner emitted Majorana form.

Every factor is exp(-i G) of an explicit generator G; products are
written leftmost factor first.
"""

from functools import lru_cache
from typing import Dict, List, Tuple
from src.algebra.fock import FockOperator, product, residual, unitary_exponential
from src.algebra.spins import RectLatticeSpec, ensure_within_caps, jw_majorana_from_pauli, pauli_string
from src.common.logger import log
import numpy as np
import math


MajoranaKey = Tuple[str, int, int]  # (species, row, chain)
Monomial = Tuple[complex, Tuple[MajoranaKey, ...]]


def _identity(lattice: RectLatticeSpec) -> np.ndarray:
    return np.eye(lattice.dimension, dtype=complex)


def _x(lattice, row, chain):
    return pauli_string({lattice.qubit(row, chain): "X"}, lattice).matrix


def _z(lattice, row, chain):
    return pauli_string({lattice.qubit(row, chain): "Z"}, lattice).matrix


def _exp(generator: np.ndarray, label: str) -> np.ndarray:
    """exp(-i G) for Hermitian G."""
    return unitary_exponential(FockOperator(matrix=generator, label=label), 1.0).matrix


def _flip_generator(lattice: RectLatticeSpec) -> np.ndarray:
    return sum(math.pi / 2 * _x(lattice, j, 1) for j in range(1, lattice.N + 1))


def _cascade_tilde(lattice: RectLatticeSpec, k: int) -> np.ndarray:
    eye = _identity(lattice)
    G = np.zeros_like(eye)
    for j in range(1, lattice.N + 1):
        stabilizers = eye
        for nu in range(1, k):
            stabilizers = stabilizers @ (eye - _z(lattice, j, nu) @ _z(lattice, j, nu + 1))
        flips = pauli_string({lattice.qubit(j, nu): "X" for nu in range(1, k + 1)}, lattice).matrix
        G = G + math.pi / 2**k * stabilizers @ (eye - flips)
    return G


def _ising_tilde(lattice: RectLatticeSpec) -> np.ndarray:
    G = np.zeros((lattice.dimension, lattice.dimension), dtype=complex)
    n = lattice.n
    for j in range(1, lattice.N):
        for nu in range(1, n + 1):
            G = G + lattice.J[j - 1][nu - 1] * (
                _z(lattice, j, nu) @ _z(lattice, j + 1, nu) @ _z(lattice, j, nu + 1) @ _z(lattice, j + 1, nu + 1)
            )
        G = G + lattice.J[j - 1][n] * _z(lattice, j, n + 1) @ _z(lattice, j + 1, n + 1)
    return G


def build_spin_floquet_tilde(lattice: RectLatticeSpec) -> FockOperator:
    """Z-string controlled flip cascade, X flip of chain 1, then the Z-string couplings."""
    ensure_within_caps(lattice)
    factors = [_exp(_cascade_tilde(lattice, k), f"cascade{k}") for k in range(2, lattice.n + 2)]
    factors.append(_exp(_flip_generator(lattice), "flip"))
    factors.append(_exp(_ising_tilde(lattice), "ising"))
    log.debug(f"Unrotated spin Floquet operator on {lattice.qubits} qubits (n={lattice.n})")
    return product([FockOperator(matrix=f) for f in factors], label="U_tilde")


def _cascade_rotated(lattice: RectLatticeSpec, k: int) -> np.ndarray:
    eye = _identity(lattice)
    G = np.zeros_like(eye)
    for j in range(1, lattice.N + 1):
        controls = eye
        for nu in range(1, k):
            controls = controls @ (eye - _z(lattice, j, nu))
        G = G + math.pi / 2**k * controls @ (eye - _x(lattice, j, k))
    return G


def _ising_rotated(lattice: RectLatticeSpec) -> np.ndarray:
    G = np.zeros((lattice.dimension, lattice.dimension), dtype=complex)
    for nu in range(1, lattice.chains + 1):
        for j in range(1, lattice.N):
            G = G + lattice.J[j - 1][nu - 1] * _z(lattice, j, nu) @ _z(lattice, j + 1, nu)
    return G


def rotation_u(lattice: RectLatticeSpec) -> FockOperator:
    """prod_{k=n..1} exp(-i pi/4 sum_j (1 - Z_{j,k+1}) X_{j,k}), k = n leftmost."""
    eye = _identity(lattice)
    factors = []
    for k in range(lattice.n, 0, -1):
        G = sum(
            math.pi / 4 * (eye - _z(lattice, j, k + 1)) @ _x(lattice, j, k) for j in range(1, lattice.N + 1)
        )
        factors.append(_exp(G, f"u{k}"))
    return product([FockOperator(matrix=f) for f in factors], label="u")


def build_spin_floquet_rotated(lattice: RectLatticeSpec) -> Tuple[FockOperator, FockOperator]:
    """The rotated unitary (a phased permutation of the Z basis) and the rotation u."""
    ensure_within_caps(lattice)
    factors = [_exp(_cascade_rotated(lattice, k), f"cascade{k}") for k in range(2, lattice.n + 2)]
    factors.append(_exp(_flip_generator(lattice), "flip"))
    factors.append(_exp(_ising_rotated(lattice), "ising"))
    U = product([FockOperator(matrix=f) for f in factors], label="U_rot")
    return U, rotation_u(lattice)


def chain_phase_rotation(lattice: RectLatticeSpec) -> FockOperator:
    """prod_j prod_{k>=2} exp(-i pi/4 Z_{j,k}); turns Y into -X on chains 2..n+1."""
    G = sum(
        math.pi / 4 * _z(lattice, j, k) for j in range(1, lattice.N + 1) for k in range(2, lattice.chains + 1)
    )
    return FockOperator(matrix=_exp(G, "w"), label="w")


def rotation_report(lattice: RectLatticeSpec) -> Dict[str, float]:
    """
    Residuals of u U_tilde u^dag against the rotated unitary, literally and
    after the extra chain phase rotation, plus the eigenphase distance.
    """
    from src.paragen.analysis import eigenphases, phase_multiset_distance

    tilde = build_spin_floquet_tilde(lattice)
    U, u = build_spin_floquet_rotated(lattice)
    mapped = u @ tilde @ u.dag()
    w = chain_phase_rotation(lattice)
    corrected = w @ mapped @ w.dag()
    report = {
        "literal": residual(mapped, U),
        "phase_corrected": residual(corrected, U),
        "spectral": phase_multiset_distance(eigenphases(tilde), eigenphases(U)),
        "u_unitarity": float(np.linalg.norm(u.matrix.conj().T @ u.matrix - _identity(lattice))),
    }
    log.info(f"Rotation report (n={lattice.n}, N={lattice.N}): {report}")
    return report


@lru_cache(maxsize=64)
def _jw_matrix(key: MajoranaKey, N: int, n: int) -> np.ndarray:
    species, row, chain = key
    return jw_majorana_from_pauli(row, chain, species, RectLatticeSpec(N=N, n=n)).matrix


def _monomial_matrix(monomial: Monomial, lattice: RectLatticeSpec) -> np.ndarray:
    coefficient, keys = monomial
    matrix = _identity(lattice)
    for key in keys:
        matrix = matrix @ _jw_matrix(key, lattice.N, lattice.n)
    return coefficient * matrix


def _cascade_monomials(lattice: RectLatticeSpec, k: int) -> List[Monomial]:
    monomials = []
    for j in range(1, lattice.N + 1):
        # prod_{nu<k} (1 - i gB(j,nu) gA(j,nu+1))
        partial: List[Monomial] = [(1.0 + 0j, ())]
        for nu in range(1, k):
            pair = (("B", j, nu), ("A", j, nu + 1))
            partial = partial + [(-1j * c, keys + pair) for c, keys in partial]
        # times (1 - prod_{nu<=k} i gA(j,nu) gB(j,nu))
        flips = tuple(key for nu in range(1, k + 1) for key in (("A", j, nu), ("B", j, nu)))
        scale = math.pi / 2**k
        for c, keys in partial:
            monomials.append((scale * c, keys))
            monomials.append((-scale * c * 1j**k, keys + flips))
    return monomials


def _flip_monomials(lattice: RectLatticeSpec) -> List[Monomial]:
    return [(1j * math.pi / 2, (("A", j, 1), ("B", j, 1))) for j in range(1, lattice.N + 1)]


def _coupling_monomials(lattice: RectLatticeSpec) -> List[Monomial]:
    """Terms K of the factor exp(i K)."""
    n = lattice.n
    monomials = []
    for j in range(1, lattice.N):
        for nu in range(1, n + 1):
            keys = (("B", j, nu), ("A", j, nu + 1), ("B", j + 1, nu), ("A", j + 1, nu + 1))
            monomials.append((lattice.J[j - 1][nu - 1] + 0j, keys))
        string = tuple(key for nu in range(1, n + 1) for key in (("A", j + 1, nu), ("B", j + 1, nu)))
        keys = (("B", j, n + 1),) + string + (("A", j + 1, n + 1),)
        monomials.append((-1j * 1j**n * lattice.J[j - 1][n], keys))
    return monomials


def emitted_monomials(lattice: RectLatticeSpec) -> Dict[str, List[Monomial]]:
    """All generator monomials of the Majorana form, by factor."""
    factors = {f"cascade{k}": _cascade_monomials(lattice, k) for k in range(2, lattice.n + 2)}
    factors["flip"] = _flip_monomials(lattice)
    factors["coupling"] = _coupling_monomials(lattice)
    return factors


def majorana_weights(lattice: RectLatticeSpec) -> List[int]:
    """Number of Majorana factors in every emitted monomial."""
    return [len(keys) for monomials in emitted_monomials(lattice).values() for _, keys in monomials]


def jw_emit_majorana_floquet(lattice: RectLatticeSpec) -> FockOperator:
    ensure_within_caps(lattice)
    monomials = emitted_monomials(lattice)
    factors = []
    for name, terms in monomials.items():
        G = sum(_monomial_matrix(m, lattice) for m in terms)
        # the coupling factor is exp(+i K)
        factors.append(_exp(-G if name == "coupling" else G, name))
    log.debug(f"Majorana form with {sum(len(t) for t in monomials.values())} monomials")
    return product([FockOperator(matrix=f) for f in factors], label="U_maj")
