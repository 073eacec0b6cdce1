"""
Z4 instance (n = 1) of the spin-lattice construction, rewritten on the
spinful chain. Chain 1 of row j is the spin +1 mode of site j, chain 2
the spin -1 mode, with c = (gamma_B - i gamma_A) / 2.

The fermionic generators are

    H1 = sum_j J1_j P_j P_{j+1} + J2_j (1 - 2 n_{j+1,+}) P'_j
    H2 = pi sum_j (n_{j,+} - 1/2)
    H3 = sum_j pi n_{j,+} n_{j,-} - pi/2 (c+^dag c- + h.c.) - pi/2 (n_{j,+} + n_{j,-})

with the pair brackets P(a, b) = -a^dag b + a^dag b^dag + h.c. taken on
(c_{j,+}, c_{j,-}) for P_j and on (c_{j,-}, c_{j+1,-}) for P'_j.
"""

from typing import Dict, Sequence
from src.algebra.fock import FockOperator, ModeIndex, fermion_annihilation, gamma, product, residual, unitary_exponential
from src.algebra.spins import RectLatticeSpec, ensure_within_caps
from src.chain.rotation import exp_anti_hermitian, exp_i_hermitian
from src.common.errors import DimensionError
from src.common.logger import log
from src.paragen.analysis import eigenphases, phase_multiset_distance
from src.paragen.lattice import build_spin_floquet_tilde
import numpy as np
import math


CHAIN_SPINS = {1: 1, 2: -1}


def _check(N: int, J1: Sequence[float], J2: Sequence[float]):
    if N < 2:
        raise DimensionError("the Z4 chain needs N >= 2")
    if len(J1) != N - 1 or len(J2) != N - 1:
        raise DimensionError(f"J1 and J2 need N-1 = {N - 1} bond values")
    ensure_within_caps(RectLatticeSpec(N=N, n=1))


def z4_lattice(N: int, J1: Sequence[float], J2: Sequence[float], T: float = 1.0) -> RectLatticeSpec:
    """The n = 1 spin lattice carrying the same couplings."""
    return RectLatticeSpec(N=N, n=1, J=[[a, b] for a, b in zip(J1, J2)], T=T)


def _c(j: int, chain: int, N: int) -> np.ndarray:
    return fermion_annihilation(ModeIndex(site=j, spin=CHAIN_SPINS[chain]), N).matrix


def _n(j: int, chain: int, N: int) -> np.ndarray:
    c = _c(j, chain, N)
    return c.conj().T @ c


def pair_bracket(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """-a^dag b + a^dag b^dag + h.c."""
    term = -a.conj().T @ b + a.conj().T @ b.conj().T
    return term + term.conj().T


def z4_hamiltonians(N: int, J1: Sequence[float], J2: Sequence[float], printed_h2: bool = False):
    """
    (H1, H2, H3). ``printed_h2`` swaps in pi/2 sum n_{j,+} for H2; that form
    is kept only for comparison reports.
    """
    _check(N, J1, J2)
    eye = np.eye(4**N, dtype=complex)
    P = {j: pair_bracket(_c(j, 1, N), _c(j, 2, N)) for j in range(1, N + 1)}
    H1 = sum(
        J1[j - 1] * P[j] @ P[j + 1]
        + J2[j - 1] * (eye - 2 * _n(j + 1, 1, N)) @ pair_bracket(_c(j, 2, N), _c(j + 1, 2, N))
        for j in range(1, N)
    )
    if printed_h2:
        H2 = sum(math.pi / 2 * _n(j, 1, N) for j in range(1, N + 1))
    else:
        H2 = sum(math.pi * (_n(j, 1, N) - 0.5 * eye) for j in range(1, N + 1))
    H3 = np.zeros_like(eye)
    for j in range(1, N + 1):
        hop = _c(j, 1, N).conj().T @ _c(j, 2, N)
        H3 = H3 + (
            math.pi * _n(j, 1, N) @ _n(j, 2, N)
            - math.pi / 2 * (hop + hop.conj().T)
            - math.pi / 2 * (_n(j, 1, N) + _n(j, 2, N))
        )
    return tuple(FockOperator(matrix=H, label=f"H{k}") for k, H in enumerate((H1, H2, H3), start=1))


def z4_application(
    N: int, J1: Sequence[float], J2: Sequence[float], T: float = 1.0, printed_h2: bool = False
) -> FockOperator:
    """exp(-i H3) exp(-i H2) exp(-i H1) on the spinful chain."""
    H1, H2, H3 = z4_hamiltonians(N, J1, J2, printed_h2)
    factors = [unitary_exponential(H, 1.0) for H in (H3, H2, H1)]
    log.debug(f"Fermionic Z4 Floquet operator for N={N}, T={T}")
    return product(factors, label="U_z4")


def z4_majorana_form(N: int, J1: Sequence[float], J2: Sequence[float]) -> FockOperator:
    """
    exp(-pi/4 sum_j (i a b a' b' + b' a + b a')) exp(pi/2 sum_j a b)
    exp(i sum_j (J1 b_j a'_j b_{j+1} a'_{j+1} + J2 b'_j a_{j+1} b_{j+1} a'_{j+1}))
    with a, b, a', b' the A, B Majoranas of spin +1 and -1.
    """
    _check(N, J1, J2)
    a = {j: gamma("A", j, 1, N).matrix for j in range(1, N + 1)}
    b = {j: gamma("B", j, 1, N).matrix for j in range(1, N + 1)}
    a_ = {j: gamma("A", j, -1, N).matrix for j in range(1, N + 1)}
    b_ = {j: gamma("B", j, -1, N).matrix for j in range(1, N + 1)}
    onsite = sum(1j * a[j] @ b[j] @ a_[j] @ b_[j] + b_[j] @ a[j] + b[j] @ a_[j] for j in range(1, N + 1))
    flip = sum(a[j] @ b[j] for j in range(1, N + 1))
    coupling = sum(
        J1[j - 1] * b[j] @ a_[j] @ b[j + 1] @ a_[j + 1] + J2[j - 1] * b_[j] @ a[j + 1] @ b[j + 1] @ a_[j + 1]
        for j in range(1, N)
    )
    factors = [exp_anti_hermitian(onsite, -math.pi / 4), exp_anti_hermitian(flip, math.pi / 2), exp_i_hermitian(coupling, 1.0)]
    return product([FockOperator(matrix=f) for f in factors], label="U_z4_maj")


def bond_gauge(N: int) -> FockOperator:
    """c_{j,s} -> (-1)^j c_{j,s}: fermion parity of every odd site."""
    eye = np.eye(4**N, dtype=complex)
    G = eye
    for j in range(1, N + 1, 2):
        G = G @ (eye - 2 * _n(j, 1, N)) @ (eye - 2 * _n(j, 2, N))
    return FockOperator(matrix=G, label="G")


def z4_report(N: int, J1: Sequence[float], J2: Sequence[float], T: float = 1.0) -> Dict[str, float]:
    """
    Eigenphase distances between the spin, Majorana and fermion forms.
    The Majorana form drops the constant exp(-i pi N/4) of the spin form,
    and the fermion form matches it after the bond gauge.
    """
    spin = build_spin_floquet_tilde(z4_lattice(N, J1, J2, T))
    fermion = z4_application(N, J1, J2, T)
    majorana = z4_majorana_form(N, J1, J2)
    spin_phases = eigenphases(spin)
    offset = math.pi * N / 4
    G = bond_gauge(N)
    report = {
        "fermion_vs_spin": phase_multiset_distance(eigenphases(fermion), spin_phases),
        "majorana_vs_spin": phase_multiset_distance(eigenphases(majorana) - offset, spin_phases),
        "majorana_vs_fermion_operator": residual((G @ fermion @ G.dag()) * complex(np.exp(1j * offset)), majorana),
        "printed_h2_vs_spin": phase_multiset_distance(
            eigenphases(z4_application(N, J1, J2, T, printed_h2=True)), spin_phases
        ),
    }
    log.info(f"Z4 representation report for N={N}: {report}")
    return report
