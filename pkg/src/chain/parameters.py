from typing import Dict, List, Optional
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator
from src.common import config
from src.common.errors import DimensionError
from src.common.logger import log
import numpy as np
import math


FAMILIES = ("mu", "J1", "J2", "Delta", "U")


class DriveParameters(BaseModel):
    """
    Couplings of the five-step drive on an open chain of N sites.

    Per-site arrays: ``mu[j][s]`` (s index 0 for spin +1, 1 for spin -1),
    ``J1[j]`` and ``U[j]``. Per-bond arrays (bond j couples sites j, j+1):
    ``J2[j][s]`` and ``Delta[j][s]``. Indices are 0-based.
    """

    model_config = ConfigDict(frozen=True)

    N: int = Field(ge=1, description="chain length in sites")
    T: float = Field(default=config.DEFAULT_PERIOD, gt=0, description="driving period")
    mu: List[List[float]] = Field(description="chemical potentials per site and spin")
    J1: List[float] = Field(description="Zeeman fields per site")
    J2: List[List[float]] = Field(description="hopping per bond and spin")
    Delta: List[List[float]] = Field(description="p-wave pairing per bond and spin")
    U: List[float] = Field(description="Hubbard strengths per site")

    @field_validator("mu", "J2", "Delta", mode="before")
    @classmethod
    def _pairs(cls, value):
        return [[float(x) for x in row] for row in value]

    @field_validator("J1", "U", mode="before")
    @classmethod
    def _singles(cls, value):
        return [float(x) for x in value]

    @model_validator(mode="after")
    def _check_shapes(self):
        bonds = max(self.N - 1, 0)
        expected = {
            "mu": (self.N, 2),
            "J1": (self.N,),
            "J2": (bonds, 2),
            "Delta": (bonds, 2),
            "U": (self.N,),
        }
        for name, shape in expected.items():
            array = np.asarray(getattr(self, name), dtype=float).reshape(-1)
            if array.size != math.prod(shape):
                raise DimensionError(f"{name} must have shape {shape}")
            if not np.all(np.isfinite(array)):
                raise DimensionError(f"{name} has non-finite entries")
        return self

    @classmethod
    def uniform(cls, N, T=config.DEFAULT_PERIOD, mu=0.0, J1=0.0, J2=0.0, Delta=0.0, U=0.0):
        bonds = max(N - 1, 0)
        return cls(
            N=N,
            T=T,
            mu=[[mu, mu] for _ in range(N)],
            J1=[J1] * N,
            J2=[[J2, J2] for _ in range(bonds)],
            Delta=[[Delta, Delta] for _ in range(bonds)],
            U=[U] * N,
        )

    def array(self, family: str) -> np.ndarray:
        if family not in FAMILIES:
            raise ValueError(f"Unknown parameter family: {family}")
        return np.asarray(getattr(self, family), dtype=float)

    def with_arrays(self, **arrays) -> "DriveParameters":
        data = self.model_dump()
        for family, value in arrays.items():
            if family not in FAMILIES:
                raise ValueError(f"Unknown parameter family: {family}")
            data[family] = np.asarray(value, dtype=float).tolist()
        return DriveParameters(**data)

    def interpolate(self, other: "DriveParameters", s: float) -> "DriveParameters":
        """Linear path (1 - s) * self + s * other."""
        if other.N != self.N or other.T != self.T:
            raise DimensionError("interpolation needs equal N and T")
        return self.with_arrays(
            **{f: (1.0 - s) * self.array(f) + s * other.array(f) for f in FAMILIES}
        )

    @property
    def is_noninteracting(self) -> bool:
        return bool(np.all(self.array("U") == 0.0))

    @property
    def is_uniform(self) -> bool:
        return all(np.ptp(self.array(f)) == 0.0 for f in FAMILIES if self.array(f).size)


class DisorderSpec(BaseModel):
    """Uniform box disorder [p - w, p + w] around per-site base values."""

    model_config = ConfigDict(frozen=True)

    half_widths: Dict[str, float] = Field(default_factory=dict)
    means: Optional[Dict[str, float]] = Field(
        default=None, description="uniform family means overriding the base values"
    )
    seed: int = Field(default=0, ge=0, lt=2**64)
    realizations: int = Field(default=1, ge=1)

    @field_validator("half_widths")
    @classmethod
    def _nonnegative(cls, value):
        for family, width in value.items():
            if family not in FAMILIES:
                raise ValueError(f"Unknown parameter family: {family}")
            if width < 0:
                raise ValueError(f"half-width of {family} must be >= 0")
        return value

    @classmethod
    def common_width(cls, w: float, seed: int = 0, realizations: int = 1) -> "DisorderSpec":
        return cls(half_widths={f: w for f in FAMILIES}, seed=seed, realizations=realizations)


def _pi_over_T(T):
    return math.pi / T


def ideal_parameters(N: int, J: float, T: float = config.DEFAULT_PERIOD) -> DriveParameters:
    """U = 2 mu = 2 J1 = 5 pi / T and J2 = Delta = J."""
    if N < 2:
        raise DimensionError("the ideal chain needs N >= 2")
    w = _pi_over_T(T)
    return DriveParameters.uniform(N, T, mu=2.5 * w, J1=2.5 * w, J2=J, Delta=J, U=5 * w)


def solvable_parameters(case: str, N: int, T: float = config.DEFAULT_PERIOD, J: float = None) -> DriveParameters:
    w = _pi_over_T(T)
    if case == "B2":
        return DriveParameters.uniform(N, T, mu=2.5 * w, J1=0.0, J2=1.25 * w, Delta=1.25 * w, U=5 * w)
    elif case == "B3":
        J = config.FIG2_MEAN_HOPPING * w if J is None else J
        return DriveParameters.uniform(N, T, mu=2.5 * w, J1=2.5 * w, J2=J, Delta=J, U=0.0)
    elif case == "B4":
        return DriveParameters.uniform(N, T, mu=2.5 * w, J1=2.5 * w, J2=2.5 * w, Delta=0.0, U=5 * w)
    else:
        raise ValueError(f"Unknown solvable case: {case}")


def _substream(seed: int, realization_index: int) -> np.random.Generator:
    # counter-keyed child of the master seed; independent of evaluation order
    return np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(realization_index,)))


def sample_disorder(spec: DisorderSpec, base: DriveParameters, realization_index: int) -> DriveParameters:
    rng = _substream(spec.seed, realization_index)
    arrays = {}
    for family in FAMILIES:
        mean = base.array(family)
        if spec.means and family in spec.means:
            mean = np.full_like(mean, spec.means[family])
        width = spec.half_widths.get(family, 0.0)
        # draw for every family so substreams line up regardless of widths
        draws = rng.uniform(-1.0, 1.0, size=mean.shape)
        arrays[family] = mean + width * draws if width > 0 else mean
    log.debug(f"Sampled disorder realization {realization_index} (seed {spec.seed})")
    return base.with_arrays(**arrays)


def fig1_parameters(panel: str, value: float, N: int, T: float = config.DEFAULT_PERIOD) -> DriveParameters:
    """
    Panels a/c vary J with J1 = 2 J2 = J at mu T / 5 = pi / 2; panels b/d vary
    mu at J1 T / 5 = pi / 2 - 0.2 and J2 T / 5 = pi / 4. Noninteracting, J2 = Delta.
    """
    if panel in ("a", "c"):
        return DriveParameters.uniform(N, T, mu=2.5 * math.pi / T, J1=value, J2=value / 2, Delta=value / 2)
    elif panel in ("b", "d"):
        J1 = 5.0 * (math.pi / 2 - 0.2) / T
        J2 = 5.0 * (math.pi / 4) / T
        return DriveParameters.uniform(N, T, mu=value, J1=J1, J2=J2, Delta=J2)
    else:
        raise ValueError(f"Unknown band-sweep panel: {panel}")


def fig2_parameters(axis: str, value: float, N: int = 4, T: float = config.DEFAULT_PERIOD) -> DriveParameters:
    """
    Fixed point (J2 + Delta) / 2 = 1.1875 pi / T, U = 2 mu = 2 J1 = 5 pi / T,
    with one axis replaced by ``value``.
    """
    w = _pi_over_T(T)
    mean_hop = config.FIG2_MEAN_HOPPING * w
    point = {"mu": 2.5 * w, "J1": 2.5 * w, "U": 5 * w, "delta": 0.0}
    if axis not in point:
        raise ValueError(f"Unknown sweep axis: {axis}")
    point[axis] = value
    return DriveParameters.uniform(
        N,
        T,
        mu=point["mu"],
        J1=point["J1"],
        J2=mean_hop + point["delta"],
        Delta=mean_hop - point["delta"],
        U=point["U"],
    )


def cross_deformation_parameters(axis: str, value: float, N: int = 4, T: float = config.DEFAULT_PERIOD) -> DriveParameters:
    """
    Cross-deformation axes on top of the spectral-sweep fixed point:
    ``J1``; ``chi`` with 2 J1 T / (5 pi) = 1 - U T / (5 pi) = 2 chi;
    ``chi_tilde`` with 1 - 2 J1 T / (5 pi) = U T / (5 pi) = 2 chi_tilde;
    ``delta`` = (J2 - Delta) / 2.
    """
    w = _pi_over_T(T)
    if axis == "J1":
        return fig2_parameters("J1", value, N, T)
    elif axis == "chi":
        base = fig2_parameters("J1", 5.0 * w * value, N, T)
        return base.with_arrays(U=np.full(N, 5.0 * w * (1.0 - 2.0 * value)))
    elif axis == "chi_tilde":
        base = fig2_parameters("J1", 2.5 * w * (1.0 - 2.0 * value), N, T)
        return base.with_arrays(U=np.full(N, 10.0 * w * value))
    elif axis == "delta":
        return fig2_parameters("delta", value, N, T)
    else:
        raise ValueError(f"Unknown cross-deformation axis: {axis}")
