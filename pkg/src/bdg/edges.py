from functools import partial
from typing import List, Sequence, Tuple
from pydantic import BaseModel, Field
from src.bdg.floquet import (
    BdGUnitary,
    build_bdg_floquet,
    degenerate_clusters,
    fold_quasienergies,
    nambu_cell,
    unitary_eigensystem,
)
from src.chain.parameters import FAMILIES, DriveParameters
from src.common import config
from src.common.errors import ConfigurationError
from src.common.logger import log
from src.common.utils import parallel_map
import numpy as np
import math


SWEEP_COLUMNS = ("axis_value", "band_index", "epsilonT_over_pi", "edge_weight_left", "edge_weight_right")


class LocalizedMode(BaseModel):
    index: int
    epsilon: float = Field(description="quasienergy in (-pi/T, pi/T]")
    weight_left: float = Field(ge=0.0, description="weight on the first unit cell")
    weight_right: float = Field(ge=0.0, description="weight on the last unit cell")
    is_edge: bool


def _localize(U: BdGUnitary, window: Tuple[float, float]) -> List[LocalizedMode]:
    eigenvalues, vectors = unitary_eigensystem(U.matrix)
    eps = fold_quasienergies(eigenvalues, U.T)
    cells = np.array([nambu_cell(i, U.N) for i in range(4 * U.N)])
    last = cells.max()
    position = np.diag(cells.astype(float))

    modes = []
    for group in degenerate_clusters(eigenvalues):
        members = [i for i in group if window[0] <= eps[i] <= window[1]]
        if not members:
            continue
        V = vectors[:, members]
        if len(members) > 1:
            # inside a degenerate eigenspace pick the basis of definite position
            _, rotation = np.linalg.eigh(V.conj().T @ position @ V)
            V = V @ rotation
        for column, i in enumerate(members):
            weights = np.abs(V[:, column]) ** 2
            left = float(weights[cells == 0].sum())
            right = float(weights[cells == last].sum())
            modes.append(
                LocalizedMode(
                    index=i,
                    epsilon=float(eps[i]),
                    weight_left=left,
                    weight_right=right,
                    is_edge=max(left, right) > config.EDGE_WEIGHT_THRESHOLD,
                )
            )
    return sorted(modes, key=lambda m: (m.epsilon, m.weight_right))


def edge_locality(U: BdGUnitary, window: Tuple[float, float]) -> List[LocalizedMode]:
    """
    Outer-cell weights of the eigenvectors with quasienergy in ``window``.
    An empty window gives an empty report.
    """
    if U.boundary != "open":
        raise ConfigurationError("edge locality is only defined for open chains")
    modes = _localize(U, window)
    log.debug(f"{sum(m.is_edge for m in modes)} of {len(modes)} modes in {window} are edge-localized")
    return modes


def with_axis(params: DriveParameters, vary: str, value: float) -> DriveParameters:
    """
    Replaces one coupling family by a uniform ``value``. ``J`` sets
    J1 = J and J2 = Delta = J / 2 together.
    """
    if vary == "J":
        return params.with_arrays(
            J1=np.full(params.N, value),
            J2=np.full((params.N - 1, 2), value / 2),
            Delta=np.full((params.N - 1, 2), value / 2),
        )
    elif vary in FAMILIES:
        return params.with_arrays(**{vary: np.full_like(params.array(vary), value)})
    else:
        raise ValueError(f"Unknown sweep parameter: {vary}")


def _spectrum_rows(item: Tuple[float, DriveParameters], boundary: str, layout: str) -> List[tuple]:
    value, params = item
    U = build_bdg_floquet(params, boundary, layout)
    limit = math.pi / U.T
    if boundary == "open":
        modes = _localize(U, (-limit, limit))
        weights = [(m.epsilon, m.weight_left, m.weight_right) for m in modes]
    else:
        eigenvalues, _ = unitary_eigensystem(U.matrix)
        eps = np.sort(fold_quasienergies(eigenvalues, U.T))
        weights = [(e, math.nan, math.nan) for e in eps]
    weights.sort(key=lambda row: row[0])
    return [
        (float(value), band, float(e * U.T / math.pi), left, right)
        for band, (e, left, right) in enumerate(weights)
    ]


def sweep_spectrum(
    params: DriveParameters,
    vary: str,
    values: Sequence[float],
    boundary: str = "open",
    layout: str = config.DEFAULT_SITE_LAYOUT,
    n_jobs: int = None,
) -> List[tuple]:
    """One block of spectrum rows (``SWEEP_COLUMNS``) per swept value."""
    points = [with_axis(params, vary, v) for v in values]
    log.info(f"Sweeping {vary} over {len(points)} values ({boundary} boundary, N={params.N})")
    blocks = parallel_map(
        partial(_spectrum_rows, boundary=boundary, layout=layout),
        list(zip(values, points)),
        n_jobs=n_jobs,
        desc=f"bdg {vary}",
    )
    return [row for block in blocks for row in block]