from functools import partial
from typing import List, Sequence
from src.chain.hamiltonians import build_floquet
from src.chain.parameters import fig2_parameters
from src.chain.rotation import lab_seed
from src.common import config
from src.common.logger import log
from src.common.utils import parallel_map
from src.modes.ideal import ideal_left_modes
from src.spectral.functions import SpectralConfig, spectral_quadruple
import math


FIG2_COLUMNS = ("axis_value", "mode_phase_over_pi", "s_0", "s_plus_half_pi", "s_minus_half_pi", "s_pi")
FIG2_AXES = {"J1": "J1", "mu": "mu", "U": "U", "delta": "delta", "delta_pair": "delta"}


def lab_edge_modes(N: int):
    """Left-edge parafermions psi_{+pi/2}, psi_{-pi/2} carried into the lab frame."""
    return [(cand.target_phase, lab_seed(cand.operator, N)) for cand in ideal_left_modes(N)]


def _fig2_rows(value: float, axis: str, N: int, T: float, spectral_config: SpectralConfig) -> List[tuple]:
    U = build_floquet(fig2_parameters(axis, value, N, T))
    rows = []
    for phase, mode in lab_edge_modes(N):
        estimates = spectral_quadruple(U, mode, spectral_config)
        rows.append((float(value), phase / math.pi, *(e.value for e in estimates)))
    return rows


def fig2_sweep(
    vary: str,
    values: Sequence[float],
    spectral_config: SpectralConfig = SpectralConfig(),
    N: int = 4,
    T: float = config.DEFAULT_PERIOD,
    n_jobs: int = None,
) -> List[tuple]:
    """
    Spectral quadruple of both left-edge modes along one axis through the
    fixed point; rows follow ``FIG2_COLUMNS``, two per swept value.
    """
    if vary not in FIG2_AXES:
        raise ValueError(f"Unknown sweep axis: {vary}")
    axis = FIG2_AXES[vary]
    log.info(f"Spectral sweep over {axis}: {len(values)} values, N={N}")
    blocks = parallel_map(
        partial(_fig2_rows, axis=axis, N=N, T=T, spectral_config=spectral_config),
        list(values),
        n_jobs=n_jobs,
        desc=f"spectral {axis}",
    )
    return [row for block in blocks for row in block]
