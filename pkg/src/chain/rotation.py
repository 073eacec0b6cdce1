"""
Rotated frame of the ideal chain.

Per site j write a, b, a', b' for gamma_A,+1, gamma_B,+1, gamma_A,-1,
gamma_B,-1 and Q_j = a b a' b'. The ideal Floquet operator rotates into
Gbar * S with

    Gbar = exp(i pi/4 sum Q_j) exp(pi/4 sum (b a' + b' a)) exp(pi/2 sum a b)
    S    = exp(i JT/5 sum S1_j) exp(i JT/5 sum S2_j)
    S1_j = b_j a_{j+1} a'_j b'_j,   S2_j = b'_j a'_{j+1} a_{j+1} b_{j+1}

and the rotation R is a product of single-site factors: exp(i pi/4 Q)
exp(pi/4 (b a' + b' a)) on odd sites, exp(pi/2 a b) on even sites.
"""

from functools import lru_cache
from typing import Dict, Iterable, Tuple
from src.algebra.fock import FockOperator, exp_majorana_bilinear, gamma, residual, unitary_exponential
from src.chain.hamiltonians import build_floquet
from src.chain.parameters import ideal_parameters
from src.common.errors import DimensionError
from src.common.logger import log
import numpy as np
import math


@lru_cache(maxsize=16)
def site_majoranas(N: int) -> Dict[Tuple[str, int], np.ndarray]:
    """{('a', j): gamma_A,j,+1, ('b', j), ('a_', j): gamma_A,j,-1, ('b_', j)}."""
    table = {}
    for j in range(1, N + 1):
        table[("a", j)] = gamma("A", j, 1, N).matrix
        table[("b", j)] = gamma("B", j, 1, N).matrix
        table[("a_", j)] = gamma("A", j, -1, N).matrix
        table[("b_", j)] = gamma("B", j, -1, N).matrix
    return table


def _m(N, name, j):
    return site_majoranas(N)[(name, j)]


def quartic(N: int, j: int) -> np.ndarray:
    return _m(N, "a", j) @ _m(N, "b", j) @ _m(N, "a_", j) @ _m(N, "b_", j)


def bond_quartic_s1(N: int, j: int) -> np.ndarray:
    return _m(N, "b", j) @ _m(N, "a", j + 1) @ _m(N, "a_", j) @ _m(N, "b_", j)


def bond_quartic_s2(N: int, j: int) -> np.ndarray:
    return _m(N, "b_", j) @ _m(N, "a_", j + 1) @ _m(N, "a", j + 1) @ _m(N, "b", j + 1)


def exp_anti_hermitian(X: np.ndarray, theta: float) -> np.ndarray:
    """exp(theta X) for anti-Hermitian X."""
    return unitary_exponential(FockOperator(matrix=1j * X, label="iX"), theta).matrix


def exp_i_hermitian(H: np.ndarray, theta: float) -> np.ndarray:
    """exp(i theta H) for Hermitian H."""
    return unitary_exponential(FockOperator(matrix=H, label="H"), -theta).matrix


def _dim(N):
    return 4**N


def _zero(N):
    return np.zeros((_dim(N), _dim(N)), dtype=complex)


def g_quartic(N: int, sites: Iterable[int], sign: float = 1.0) -> np.ndarray:
    generator = _zero(N)
    for j in sites:
        generator = generator + quartic(N, j)
    return exp_i_hermitian(generator, sign * math.pi / 4)


def _bilinear_product(N: int, pairs, theta: float) -> np.ndarray:
    """Product of exp(theta x y) over mutually commuting Majorana pairs."""
    table = {key: FockOperator(matrix=m, label=f"{key[0]}{key[1]}") for key, m in site_majoranas(N).items()}
    U = np.eye(_dim(N), dtype=complex)
    for x, y in pairs:
        U = U @ exp_majorana_bilinear(theta, table[x], table[y]).matrix
    return U


def g_zeeman(N: int, sites: Iterable[int]) -> np.ndarray:
    pairs = []
    for j in sites:
        pairs += [(("b", j), ("a_", j)), (("b_", j), ("a", j))]
    return _bilinear_product(N, pairs, math.pi / 4)


def g_onsite(N: int, sites: Iterable[int], theta: float = math.pi / 2, both_spins: bool = False) -> np.ndarray:
    """exp(theta sum a b), optionally adding a' b' on the same sites."""
    pairs = []
    for j in sites:
        pairs.append((("a", j), ("b", j)))
        if both_spins:
            pairs.append((("a_", j), ("b_", j)))
    return _bilinear_product(N, pairs, theta)


def _odd(N):
    return range(1, N + 1, 2)


def _even(N):
    return range(2, N + 1, 2)


def rotation_R(N: int) -> FockOperator:
    if N % 2:
        raise DimensionError("the rotation R is defined on site pairs; N must be even")
    R = g_quartic(N, _odd(N)) @ g_zeeman(N, _odd(N)) @ g_onsite(N, _even(N))
    return FockOperator(matrix=R, label="R")


def edge_rotation(N: int) -> FockOperator:
    """Site-1 factor of R; carries left-edge operators between frames for any N."""
    return FockOperator(matrix=g_quartic(N, [1]) @ g_zeeman(N, [1]), label="R_edge")


def clifford_gbar(N: int) -> FockOperator:
    sites = range(1, N + 1)
    G = g_quartic(N, sites) @ g_zeeman(N, sites) @ g_onsite(N, sites)
    return FockOperator(matrix=G, label="Gbar")


def s_factor(N: int, J: float, T: float) -> FockOperator:
    theta = J * T / 5.0
    s1, s2 = _zero(N), _zero(N)
    for j in range(1, N):
        s1 = s1 + bond_quartic_s1(N, j)
        s2 = s2 + bond_quartic_s2(N, j)
    S = exp_i_hermitian(s1, theta) @ exp_i_hermitian(s2, theta)
    return FockOperator(matrix=S, label="S")


def build_rotated_floquet(N: int, J: float, T: float) -> FockOperator:
    """Gbar * S, the ideal-case Floquet operator in the rotated frame."""
    U = clifford_gbar(N).matrix @ s_factor(N, J, T).matrix
    return FockOperator(matrix=U, label="U_rot")


def to_rotated_frame(op: FockOperator, N: int) -> FockOperator:
    R = rotation_R(N)
    return R @ op @ R.dag()


def lab_seed(op: FockOperator, N: int) -> FockOperator:
    """
    Rotated-frame left-edge operator expressed in the lab frame, R^dag op R.
    Only the site-1 factor of R acts on it, so odd N is allowed.
    """
    r = edge_rotation(N)
    return FockOperator(matrix=r.matrix.conj().T @ op.matrix @ r.matrix, label=f"lab({op.label})")


def _bond_bilinears(N: int, odd_spin_minus: bool) -> np.ndarray:
    """sum of b_{j+1,s} a_{j,s} with s = -1 on odd bonds when odd_spin_minus."""
    generator = _zero(N)
    for j in range(1, N):
        minus = (j % 2 == 1) == odd_spin_minus
        b, a = ("b_", "a_") if minus else ("b", "a")
        generator = generator + _m(N, b, j + 1) @ _m(N, a, j)
    return generator


def lambda_gamma_check(N: int, J: float, T: float) -> Dict[str, float]:
    """
    Residuals between the five-factor conjugation forms of Lambda and Gamma
    and their single-exponential forms.
    """
    if N % 2:
        raise DimensionError("Lambda and Gamma are defined for even N")
    theta = J * T / 5.0
    quarter = math.pi / 4

    lam_bonds = exp_anti_hermitian(_bond_bilinears(N, odd_spin_minus=True), theta)
    lam_five = (
        g_quartic(N, _even(N), sign=-1.0)
        @ g_onsite(N, _odd(N), -quarter, both_spins=True)
        @ lam_bonds
        @ g_onsite(N, _odd(N), quarter, both_spins=True)
        @ g_quartic(N, _even(N))
    )
    gam_bonds = exp_anti_hermitian(_bond_bilinears(N, odd_spin_minus=False), theta)
    gam_five = (
        g_quartic(N, _odd(N))
        @ g_onsite(N, _even(N), quarter, both_spins=True)
        @ gam_bonds
        @ g_onsite(N, _even(N), -quarter, both_spins=True)
        @ g_quartic(N, _odd(N), sign=-1.0)
    )

    lam_gen, gam_gen = _zero(N), _zero(N)
    for j in range(1, N):
        if j % 2 == 1:
            lam_gen = lam_gen + bond_quartic_s2(N, j)
            gam_gen = gam_gen + bond_quartic_s1(N, j)
        else:
            lam_gen = lam_gen + bond_quartic_s1(N, j)
            gam_gen = gam_gen + bond_quartic_s2(N, j)
    lam_single = exp_i_hermitian(lam_gen, theta)
    gam_single = exp_i_hermitian(gam_gen, theta)

    report = {
        "lambda": _res(lam_five, lam_single),
        "gamma": _res(gam_five, gam_single),
    }
    log.debug(f"Lambda/Gamma rearrangement residuals at N={N}: {report}")
    return report


def rotation_equality_residual(N: int, J: float, T: float, layout: str = "majorana") -> float:
    """|| R U_lab R^dag - Gbar S || at the ideal point."""
    params = ideal_parameters(N, J, T)
    lab = build_floquet(params, layout)
    return residual(to_rotated_frame(lab, N), build_rotated_floquet(N, J, T))


def _res(a: np.ndarray, b: np.ndarray) -> float:
    return float(np.linalg.norm(a - b) / max(np.linalg.norm(b), 1.0))
