"""
Dispatches an ExperimentConfig to its driver, writes the result tables and
returns the process exit code: 0 on success, 1 when a checked identity
fails, 2 on invalid input.
"""

from typing import Any, Dict, List, Optional
from pydantic import BaseModel, ConfigDict, Field, ValidationError
from src.adiabatic.experiments import (
    CROSS_COLUMNS,
    CROSS_PANELS,
    DISORDER_COLUMNS,
    FIG3_COLUMNS,
    appendixB_cross_deformation,
    disorder_scan,
    disorder_study,
    fig3_sweep,
)
from src.algebra.spins import RectLatticeSpec
from src.bdg.edges import SWEEP_COLUMNS, sweep_spectrum
from src.chain.parameters import DriveParameters, fig1_parameters
from src.common import config
from src.common.errors import ConfigurationError, DimensionError, ParafloquetError, SizeCapError
from src.common.logger import log
from src.common.utils import load_json_from_file, measure_time
from src.harness.experiment import ExperimentConfig
from src.harness.results import ResultTable, build_metadata, table_from_report, write_tables
from src.harness.suites import default_couplings, failures, paragen_suite, verification_suite
from src.paragen.analysis import eigenphases
from src.paragen.lattice import build_spin_floquet_rotated, build_spin_floquet_tilde
from src.spectral.functions import SpectralConfig
from src.spectral.sweeps import FIG2_COLUMNS, fig2_sweep
import numpy as np
import json
import math
import os


EXIT_OK = 0
EXIT_VERIFICATION = 1
EXIT_INPUT = 2

SPECTRUM_COLUMNS = ("frame", "index", "phase_over_pi")
INPUT_ERRORS = (ValidationError, ConfigurationError, SizeCapError, DimensionError, json.JSONDecodeError, FileNotFoundError)


class RunOutcome(BaseModel):
    """Tables produced by one run plus any failed checks."""

    model_config = ConfigDict(frozen=True)

    tables: List[ResultTable]
    failed: Dict[str, float] = Field(default_factory=dict)
    extra: Dict[str, Any] = Field(default_factory=dict)


def load_experiment(path: Optional[str], overrides: Dict[str, Any] = None) -> ExperimentConfig:
    """
    Reads a JSON run file and applies flag overrides on top. Nested blocks
    (model, sweep, lattice, spectral) are merged key by key.
    """
    data: Dict[str, Any] = load_json_from_file(path) if path else {}
    if not isinstance(data, dict):
        raise ConfigurationError(f"{path} must hold a JSON object")
    for key, value in (overrides or {}).items():
        if isinstance(value, dict) and isinstance(data.get(key), dict):
            data[key] = {**data[key], **value}
        else:
            data[key] = value
    return ExperimentConfig.model_validate(data)


def _with_overrides(params: DriveParameters, experiment: ExperimentConfig) -> DriveParameters:
    given = experiment.model.given()
    if not given:
        return params
    return params.with_arrays(**{family: np.full_like(params.array(family), value) for family, value in given.items()})


def _warn_unused_overrides(experiment: ExperimentConfig):
    if experiment.model.given():
        log.warning(f"{experiment.command} runs on its own fixed point; ignoring model overrides {experiment.model.given()}")


def _bdg_sweep(experiment: ExperimentConfig) -> RunOutcome:
    axis = experiment.sweep.axis
    panel = "a" if axis == "J" else "b"
    params = _with_overrides(fig1_parameters(panel, 0.0, experiment.N, experiment.T), experiment)
    rows = sweep_spectrum(params, axis, experiment.sweep.grid(), experiment.boundary, experiment.layout, experiment.jobs)
    return RunOutcome(tables=[ResultTable(name=experiment.run_name, columns=SWEEP_COLUMNS, rows=rows)])


def _spectral(experiment: ExperimentConfig) -> RunOutcome:
    _warn_unused_overrides(experiment)
    rows = fig2_sweep(
        experiment.sweep.axis, experiment.sweep.grid(), experiment.spectral, experiment.N, experiment.T, experiment.jobs
    )
    return RunOutcome(tables=[ResultTable(name=experiment.run_name, columns=FIG2_COLUMNS, rows=rows)])


def _adiabatic(experiment: ExperimentConfig) -> RunOutcome:
    _warn_unused_overrides(experiment)
    if experiment.case is not None:
        rows = appendixB_cross_deformation(
            experiment.case,
            experiment.sweep.axis,
            experiment.sweep.grid(),
            experiment.spectral,
            experiment.N,
            experiment.T,
            experiment.steps,
            experiment.jobs,
        )
        return RunOutcome(tables=[ResultTable(name=experiment.run_name, columns=CROSS_COLUMNS, rows=rows)])
    rows = fig3_sweep(
        experiment.sweep.axis,
        experiment.sweep.grid(),
        experiment.spectral,
        experiment.N,
        experiment.T,
        experiment.steps,
        experiment.jobs,
    )
    return RunOutcome(tables=[ResultTable(name=experiment.run_name, columns=FIG3_COLUMNS, rows=rows)])


def _disorder(experiment: ExperimentConfig) -> RunOutcome:
    if experiment.disorder is not None:
        rows = []
        for N in experiment.sizes:
            rows.extend(
                disorder_study(
                    experiment.disorder,
                    N,
                    experiment.spectral,
                    experiment.transport,
                    experiment.T,
                    experiment.steps,
                    experiment.jobs,
                )
            )
    else:
        rows = disorder_scan(
            experiment.sweep.grid(),
            experiment.sizes,
            experiment.seed,
            realizations=None if experiment.realizations is None else {N: experiment.realizations for N in experiment.sizes},
            spectral_config=experiment.spectral,
            transport_mode=experiment.transport,
            T=experiment.T,
            n_jobs=experiment.jobs,
        )
    return RunOutcome(tables=[ResultTable(name=experiment.run_name, columns=DISORDER_COLUMNS, rows=rows)])


def _paragen(experiment: ExperimentConfig) -> RunOutcome:
    options = experiment.lattice
    J = default_couplings(options.n, options.N) if options.J is None else options.J
    report = paragen_suite(options.n, options.N, J, options.sector)
    lattice = RectLatticeSpec(N=options.N, n=options.n, J=J)
    rotated, _ = build_spin_floquet_rotated(lattice)
    spectra = {"unrotated": eigenphases(build_spin_floquet_tilde(lattice)), "rotated": eigenphases(rotated)}
    rows = [
        (frame, index, float(phase / math.pi))
        for frame, phases in spectra.items()
        for index, phase in enumerate(phases)
    ]
    tables = [
        table_from_report(experiment.run_name, report),
        ResultTable(name=f"{experiment.run_name}_spectrum", columns=SPECTRUM_COLUMNS, rows=rows),
    ]
    return RunOutcome(tables=tables, failed=failures(report), extra={"couplings": J})


def _verify(experiment: ExperimentConfig) -> RunOutcome:
    report = verification_suite(min(max(experiment.N, 2), 4), experiment.T)
    return RunOutcome(tables=[table_from_report(experiment.run_name, report)], failed=failures(report))


def reproduce_figure(
    figure_id: str,
    N: int = 4,
    T: float = config.DEFAULT_PERIOD,
    spectral_config: SpectralConfig = SpectralConfig(),
    seed: int = 0,
    n_jobs: int = None,
) -> ResultTable:
    """Runs the preset sweep behind one figure panel and returns its table."""
    w = math.pi / T
    name = f"figure_{figure_id}"
    group, panel = figure_id[:-1], figure_id[-1]
    if group == "1":
        axis = "J" if panel in ("a", "c") else "mu"
        boundary = "open" if panel in ("a", "b") else "periodic"
        params = fig1_parameters("a" if axis == "J" else "b", 0.0, config.BAND_SWEEP_SITES, T)
        values = np.linspace(0.0, 5 * w, config.FIG1_POINTS).tolist()
        rows = sweep_spectrum(params, axis, values, boundary, n_jobs=n_jobs)
        return ResultTable(name=name, columns=SWEEP_COLUMNS, rows=rows)
    if group in ("2", "3"):
        axis, stop = {"a": ("J1", 5 * w), "b": ("mu", 5 * w), "c": ("U", 10 * w), "d": ("delta", 2.5 * w)}[panel]
        values = np.linspace(0.0, stop, config.FIG2_POINTS).tolist()
        if group == "2":
            rows = fig2_sweep(axis, values, spectral_config, N, T, n_jobs)
            return ResultTable(name=name, columns=FIG2_COLUMNS, rows=rows)
        rows = fig3_sweep(axis, values, spectral_config, N, T, n_jobs=n_jobs)
        return ResultTable(name=name, columns=FIG3_COLUMNS, rows=rows)
    if group == "4":
        sizes = [5] if panel == "a" else [3, 4, 5]
        rows = disorder_scan(config.FIG4_WIDTHS, sizes, seed, spectral_config=spectral_config, T=T, n_jobs=n_jobs)
        return ResultTable(name=name, columns=DISORDER_COLUMNS, rows=rows)
    if group == "S1":
        case, axis = CROSS_PANELS[panel]
        stop = {"J1": 5 * w, "chi": 0.5, "chi_tilde": 0.5, "delta": 2.5 * w}[axis]
        values = np.linspace(0.0, stop, config.FIG2_POINTS).tolist()
        rows = appendixB_cross_deformation(case, axis, values, spectral_config, N, T, n_jobs=n_jobs)
        return ResultTable(name=name, columns=CROSS_COLUMNS, rows=rows)
    raise ConfigurationError(f"Unknown figure id: {figure_id}")


def _figure(experiment: ExperimentConfig) -> RunOutcome:
    table = reproduce_figure(
        experiment.figure, experiment.N, experiment.T, experiment.spectral, experiment.seed, experiment.jobs
    )
    return RunOutcome(tables=[table.model_copy(update={"name": experiment.run_name})])


DISPATCH = {
    "verify": _verify,
    "bdg-sweep": _bdg_sweep,
    "spectral": _spectral,
    "adiabatic": _adiabatic,
    "disorder": _disorder,
    "paragen": _paragen,
    "figure": _figure,
}


def run(experiment: ExperimentConfig) -> int:
    """Runs one experiment and writes ``<name>.csv`` / ``<name>.meta.json`` pairs plus a run report."""
    log.info(f"Starting '{experiment.command}' run '{experiment.run_name}'")
    with measure_time(f"Run '{experiment.run_name}'", log) as timer:
        outcome = DISPATCH[experiment.command](experiment)
    metadata = build_metadata(experiment, timer.elapsed, {"failed_checks": outcome.failed, **outcome.extra})
    tables = [table.model_copy(update={"metadata": {**metadata, **table.metadata}}) for table in outcome.tables]
    os.makedirs(experiment.output, exist_ok=True)
    paths = write_tables(tables, experiment.output)
    log.info(f"Wrote {len(paths)} files to {experiment.output}")
    if outcome.failed:
        log.error(f"{len(outcome.failed)} checks failed: {sorted(outcome.failed)}")
        return EXIT_VERIFICATION
    return EXIT_OK


def execute(path: Optional[str], overrides: Dict[str, Any] = None) -> int:
    """Loads, validates and runs; maps every failure onto an exit code."""
    try:
        experiment = load_experiment(path, overrides)
    except INPUT_ERRORS as e:
        log.error(f"Invalid experiment configuration: {e}")
        return EXIT_INPUT
    try:
        return run(experiment)
    except INPUT_ERRORS as e:
        log.error(f"Invalid input for '{experiment.command}': {e}")
        return EXIT_INPUT
    except ParafloquetError as e:
        log.error(f"Run '{experiment.run_name}' failed: {e}")
        return EXIT_VERIFICATION
    except ValueError as e:
        log.error(f"Invalid input for '{experiment.command}': {e}")
        return EXIT_INPUT
