"""
Deformation sweeps, the disorder ensemble and the solvable-point
cross-deformations. Every driver returns plain row tuples; column names
live next to each driver.
"""

from functools import partial
from typing import Dict, List, Literal, Sequence, Tuple
from src.adiabatic.paths import ParameterPath
from src.adiabatic.transport import check_seed, deform, transport_unitary
from src.chain.hamiltonians import build_floquet
from src.chain.parameters import (
    DisorderSpec,
    DriveParameters,
    cross_deformation_parameters,
    fig2_parameters,
    ideal_parameters,
    sample_disorder,
    solvable_parameters,
)
from src.chain.rotation import lab_seed
from src.common import config
from src.common.logger import log
from src.common.utils import parallel_map
from src.modes.candidates import ModeCandidate
from src.modes.ideal import ideal_left_modes
from src.modes.solvable import appendixB2_modes, appendixB3_modes, appendixB4_modes
from src.spectral.functions import SpectralConfig, eigensystem, spectral_function
import numpy as np
import math


FIG3_COLUMNS = ("axis_value", "mode_phase_over_pi", "s_target", "branch_crossings")
DISORDER_COLUMNS = ("width", "N", "mode_phase_over_pi", "mean_s", "std_s", "realizations")
REALIZATION_COLUMNS = ("width", "N", "realization", "mode_phase_over_pi", "s_target")
CROSS_COLUMNS = ("axis_value", "seed", "target_phase_over_pi", "s_target", "branch_crossings")

CROSS_PANELS = {"a": ("B2", "J1"), "b": ("B2", "chi"), "c": ("B3", "chi_tilde"), "d": ("B4", "delta")}
CROSS_SEEDS = {
    "B2": ("gamma_0", "gamma_pi", "gamma_+pi/2", "gamma_-pi/2"),
    "B3": ("gammaNI_+pi/2", "gammaNI_-pi/2"),
    "B4": ("c_0", "c_pi"),
}


def lab_mode_seeds(N: int) -> List[ModeCandidate]:
    """Left-edge parafermions of the ideal chain in the lab frame."""
    return [
        cand.model_copy(update={"operator": lab_seed(cand.operator, N), "label": f"lab_{cand.label}"})
        for cand in ideal_left_modes(N)
    ]


def ideal_axis_value(axis: str, T: float = config.DEFAULT_PERIOD) -> float:
    w = math.pi / T
    values = {"J1": 2.5 * w, "mu": 2.5 * w, "U": 5.0 * w, "delta": 0.0}
    if axis not in values:
        raise ValueError(f"Unknown sweep axis: {axis}")
    return values[axis]


def _score(U, seeds, deformed_ops, spectral_config) -> List[Tuple[float, float]]:
    system = eigensystem(U)
    return [
        (seed.target_phase, spectral_function(U, op, seed.target_phase, spectral_config, system).value)
        for seed, op in zip(seeds, deformed_ops)
    ]


def _fig3_rows(value: float, axis: str, N: int, T: float, steps: int, spectral_config: SpectralConfig) -> List[tuple]:
    base = fig2_parameters(axis, ideal_axis_value(axis, T), N, T)
    path = ParameterPath(axis=axis, start=ideal_axis_value(axis, T), end=value, steps=steps, base=base)
    seeds = lab_mode_seeds(N)
    transport = transport_unitary(path)
    deformed = [deform(seed, path, transport).operator for seed in seeds]
    U = build_floquet(path.point(value))
    return [
        (float(value), phase / math.pi, s, transport.branch_crossings)
        for phase, s in _score(U, seeds, deformed, spectral_config)
    ]


def fig3_sweep(
    axis: str,
    values: Sequence[float],
    spectral_config: SpectralConfig = SpectralConfig(),
    N: int = 4,
    T: float = config.DEFAULT_PERIOD,
    steps: int = None,
    n_jobs: int = None,
) -> List[tuple]:
    """
    Transports both left-edge parafermions from the ideal point to every
    value of ``axis`` and scores them at their own phase (``FIG3_COLUMNS``).
    """
    start = ideal_axis_value(axis, T)
    base = fig2_parameters(axis, start, N, T)
    for seed in lab_mode_seeds(N):
        check_seed(seed, ParameterPath(axis=axis, start=start, end=start, steps=2, base=base), config.DEFAULT_SITE_LAYOUT)
    log.info(f"Deformation sweep over {axis}: {len(values)} values, N={N}")
    blocks = parallel_map(
        partial(_fig3_rows, axis=axis, N=N, T=T, steps=steps, spectral_config=spectral_config),
        list(values),
        n_jobs=n_jobs,
        desc=f"deform {axis}",
    )
    return [row for block in blocks for row in block]


def disorder_base(N: int, T: float = config.DEFAULT_PERIOD) -> DriveParameters:
    """2 mu = 2 J1 = 4 J2 = 4 Delta = U = 5 pi / T."""
    return ideal_parameters(N, 1.25 * math.pi / T, T)


def _realization_rows(
    index: int,
    spec: DisorderSpec,
    base: DriveParameters,
    transport_mode: str,
    steps: int,
    spectral_config: SpectralConfig,
) -> List[tuple]:
    params = sample_disorder(spec, base, index)
    seeds = lab_mode_seeds(base.N)
    if transport_mode == "per_realization":
        path = ParameterPath.interpolation(base, params, steps)
        transport = transport_unitary(path)
        operators = [deform(seed, path, transport).operator for seed in seeds]
    else:
        operators = [seed.operator for seed in seeds]
    U = build_floquet(params)
    width = max(spec.half_widths.values(), default=0.0)
    return [
        (width, base.N, index, phase / math.pi, s)
        for phase, s in _score(U, seeds, operators, spectral_config)
    ]


def disorder_realizations(
    spec: DisorderSpec,
    N: int,
    spectral_config: SpectralConfig = SpectralConfig(),
    transport_mode: Literal["per_realization", "clean"] = "per_realization",
    T: float = config.DEFAULT_PERIOD,
    steps: int = None,
    n_jobs: int = None,
) -> List[tuple]:
    """One row per realization and edge mode (``REALIZATION_COLUMNS``)."""
    if transport_mode not in ("per_realization", "clean"):
        raise ValueError(f"Unknown transport mode: {transport_mode}")
    base = disorder_base(N, T)
    blocks = parallel_map(
        partial(
            _realization_rows,
            spec=spec,
            base=base,
            transport_mode=transport_mode,
            steps=steps,
            spectral_config=spectral_config,
        ),
        list(range(spec.realizations)),
        n_jobs=n_jobs,
        desc=f"disorder N={N}",
    )
    return [row for block in blocks for row in block]


def summarize_realizations(rows: Sequence[tuple]) -> List[tuple]:
    groups: Dict[Tuple[float, int, float], List[float]] = {}
    for width, N, _, phase, s in rows:
        groups.setdefault((width, N, phase), []).append(s)
    return [
        (width, N, phase, float(np.mean(values)), float(np.std(values)), len(values))
        for (width, N, phase), values in sorted(groups.items())
    ]


def disorder_study(
    spec: DisorderSpec,
    N: int,
    spectral_config: SpectralConfig = SpectralConfig(),
    transport_mode: Literal["per_realization", "clean"] = "per_realization",
    T: float = config.DEFAULT_PERIOD,
    steps: int = None,
    n_jobs: int = None,
) -> List[tuple]:
    """Mean and spread of the transported modes' spectral weight (``DISORDER_COLUMNS``)."""
    log.info(f"Disorder study at N={N}: {spec.realizations} realizations, widths {spec.half_widths}")
    rows = disorder_realizations(spec, N, spectral_config, transport_mode, T, steps, n_jobs)
    return summarize_realizations(rows)


def disorder_scan(
    widths: Sequence[float],
    sizes: Sequence[int],
    seed: int = 0,
    realizations: Dict[int, int] = None,
    spectral_config: SpectralConfig = SpectralConfig(),
    transport_mode: str = "per_realization",
    T: float = config.DEFAULT_PERIOD,
    n_jobs: int = None,
) -> List[tuple]:
    """Common box width ``w`` on every family, per size."""
    realizations = config.FIG4_REALIZATIONS if realizations is None else realizations
    table = []
    for N in sizes:
        for w in widths:
            spec = DisorderSpec.common_width(w, seed=seed, realizations=realizations.get(N, 1))
            table.extend(disorder_study(spec, N, spectral_config, transport_mode, T, n_jobs=n_jobs))
    return table


def cross_seeds(case: str, N: int, T: float = config.DEFAULT_PERIOD) -> Tuple[DriveParameters, List[ModeCandidate]]:
    """Solvable point of ``case`` and the seeds carried away from it."""
    if case == "B2":
        modes = appendixB2_modes(N, T)
        params = solvable_parameters("B2", N, T)
    elif case == "B3":
        modes = appendixB3_modes(N, T)
        params = solvable_parameters("B3", N, T)
    elif case == "B4":
        modes = appendixB4_modes(N, T)
        params = solvable_parameters("B4", N, T)
    else:
        raise ValueError(f"Unknown solvable case: {case}")
    return params, [modes[label] for label in CROSS_SEEDS[case] if label in modes]


def _cross_rows(value: float, case: str, axis: str, N: int, T: float, steps: int, spectral_config: SpectralConfig) -> List[tuple]:
    start, seeds = cross_seeds(case, N, T)
    target = cross_deformation_parameters(axis, value, N, T)
    path = ParameterPath.interpolation(start, target, steps)
    transport = transport_unitary(path)
    deformed = [deform(seed, path, transport).operator for seed in seeds]
    U = build_floquet(target)
    return [
        (float(value), seed.label, phase / math.pi, s, transport.branch_crossings)
        for seed, (phase, s) in zip(seeds, _score(U, seeds, deformed, spectral_config))
    ]


def appendixB_cross_deformation(
    case: str,
    axis: str,
    values: Sequence[float],
    spectral_config: SpectralConfig = SpectralConfig(),
    N: int = 4,
    T: float = config.DEFAULT_PERIOD,
    steps: int = None,
    n_jobs: int = None,
) -> List[tuple]:
    """
    Carries the ordinary-fermion modes of a solvable point along a straight
    line to each cross-deformation point and scores them at their own
    phase (``CROSS_COLUMNS``).
    """
    start, seeds = cross_seeds(case, N, T)
    for seed in seeds:
        check_seed(seed, ParameterPath.interpolation(start, start), config.DEFAULT_SITE_LAYOUT)
    log.info(f"Cross-deformation of {case} seeds along {axis}: {len(values)} values, N={N}")
    blocks = parallel_map(
        partial(_cross_rows, case=case, axis=axis, N=N, T=T, steps=steps, spectral_config=spectral_config),
        list(values),
        n_jobs=n_jobs,
        desc=f"cross {case} {axis}",
    )
    return [row for block in blocks for row in block]
