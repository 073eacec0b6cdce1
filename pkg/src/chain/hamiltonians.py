from functools import lru_cache
from typing import List
from src.algebra.fock import (
    FockOperator,
    ModeIndex,
    fermion_annihilation,
    identity,
    unitary_exponential,
)
from src.chain.parameters import DriveParameters
from src.common import config
from src.common.logger import log
from src.common.utils import measure_time
import numpy as np


SPINS = (1, -1)
LAYOUTS = ("majorana", "printed")


@lru_cache(maxsize=16)
def _annihilators(N: int):
    """c[(site, spin)] matrices for a chain of N sites."""
    return {
        (j, s): fermion_annihilation(ModeIndex(site=j, spin=s), N).matrix
        for j in range(1, N + 1)
        for s in SPINS
    }


def _s_index(s: int) -> int:
    return 0 if s == 1 else 1


def _dag(m: np.ndarray) -> np.ndarray:
    return m.conj().T


def onsite_term(N: int, site: int, spin: int, mu: float) -> np.ndarray:
    c = _annihilators(N)[(site, spin)]
    return spin * mu * (_dag(c) @ c)


def zeeman_term(N: int, site: int, spin: int, J1: float) -> np.ndarray:
    """J1 c^dag_{j,s} c_{j,-s}; summing both spins gives a Hermitian term."""
    c = _annihilators(N)
    return J1 * (_dag(c[(site, spin)]) @ c[(site, -spin)])


def kitaev_term(N: int, site: int, spin: int, J2: float, Delta: float) -> np.ndarray:
    """-J2 c^dag_{j+1,s} c_{j,s} + Delta c^dag_{j+1,s} c^dag_{j,s} + h.c."""
    c = _annihilators(N)
    left, right = c[(site, spin)], c[(site + 1, spin)]
    term = -J2 * (_dag(right) @ left) + Delta * (_dag(right) @ _dag(left))
    return term + _dag(term)


def interaction_term(N: int, site: int, U: float) -> np.ndarray:
    c = _annihilators(N)
    up, down = c[(site, 1)], c[(site, -1)]
    return U * (_dag(up) @ up) @ (_dag(down) @ down)


def _traceless(matrix: np.ndarray) -> np.ndarray:
    dim = matrix.shape[0]
    return matrix - (np.trace(matrix) / dim) * np.eye(dim)


def carries_onsite(step: int, layout: str, site: int) -> bool:
    """Whether step 1 or 5 carries the onsite term on ``site``."""
    odd = site % 2 == 1
    if layout == "majorana":
        return odd if step == 5 else not odd
    return not odd if step == 5 else odd


def build_step_hamiltonians(params: DriveParameters, layout: str = config.DEFAULT_SITE_LAYOUT) -> List[FockOperator]:
    """
    H1..H5 of the five-step drive, identity parts removed.

    Steps 1 and 5 split the chain by site parity into onsite and Zeeman
    sites; ``layout`` picks which parity carries which term. Bond j -> j+1
    enters H2 with spin +1 when j is odd and spin -1 when j is even, and H4
    with the opposite spin.
    """
    if layout not in LAYOUTS:
        raise ValueError(f"Unknown site layout: {layout}")
    N = params.N
    dim = 4**N
    steps = [np.zeros((dim, dim), dtype=complex) for _ in range(5)]

    for j in range(1, N + 1):
        for step, zeeman_sign in ((1, -1.0), (5, 1.0)):
            if carries_onsite(step, layout, j):
                for s in SPINS:
                    steps[step - 1] += onsite_term(N, j, s, params.mu[j - 1][_s_index(s)])
            else:
                for s in SPINS:
                    steps[step - 1] += zeeman_sign * zeeman_term(N, j, s, params.J1[j - 1])
        steps[2] += interaction_term(N, j, params.U[j - 1])

    for j in range(1, N):
        h2_spin = 1 if j % 2 == 1 else -1
        for step, s in ((2, h2_spin), (4, -h2_spin)):
            k = _s_index(s)
            steps[step - 1] += kitaev_term(N, j, s, params.J2[j - 1][k], params.Delta[j - 1][k])

    log.debug(f"Built step Hamiltonians for N={N} ({layout} layout)")
    return [FockOperator(matrix=_traceless(h), label=f"H{i + 1}") for i, h in enumerate(steps)]


def build_floquet(params: DriveParameters, layout: str = config.DEFAULT_SITE_LAYOUT) -> FockOperator:
    """U = exp(-i H5 T/5) ... exp(-i H1 T/5)."""
    tau = params.T / 5.0
    with measure_time(f"Floquet operator N={params.N}", log):
        U = identity(4**params.N).matrix
        for H in build_step_hamiltonians(params, layout):
            U = unitary_exponential(H, tau).matrix @ U
    return FockOperator(matrix=U, label="U_lab")


def trotter_oracle(params: DriveParameters, substeps: int = config.TROTTER_SUBSTEPS, layout: str = config.DEFAULT_SITE_LAYOUT) -> FockOperator:
    """
    Time-ordered product of exp(-i H(t) dt) over uniform substeps, with H(t)
    looked up from the piecewise-constant protocol at each midpoint.
    """
    hamiltonians = build_step_hamiltonians(params, layout)
    dt = params.T / substeps
    propagators = [unitary_exponential(H, dt).matrix for H in hamiltonians]
    U = identity(4**params.N).matrix
    for k in range(substeps):
        t = (k + 0.5) * dt
        step = min(int(5 * t / params.T), 4)
        U = propagators[step] @ U
    return FockOperator(matrix=U, label="U_trotter")
