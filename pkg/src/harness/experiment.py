from typing import List, Literal, Optional, Tuple
from pydantic import BaseModel, ConfigDict, Field, model_validator
from src.chain.parameters import DisorderSpec
from src.common import config
from src.spectral.functions import SpectralConfig
import numpy as np


COMMANDS = ("verify", "bdg-sweep", "spectral", "adiabatic", "disorder", "paragen", "figure")
FIGURE_IDS = (
    "1a", "1b", "1c", "1d",
    "2a", "2b", "2c", "2d",
    "3a", "3b", "3c", "3d",
    "4a", "4b",
    "S1a", "S1b", "S1c", "S1d",
)


class Sweep(BaseModel):
    """Either explicit ``values`` or an inclusive ``linspace`` (start, stop, points)."""

    model_config = ConfigDict(frozen=True)

    axis: Optional[str] = None
    values: List[float] = Field(default_factory=list)
    linspace: Optional[Tuple[float, float, int]] = None

    @model_validator(mode="after")
    def _one_source(self):
        if self.values and self.linspace is not None:
            raise ValueError("give either values or linspace, not both")
        if self.linspace is not None and self.linspace[2] < 1:
            raise ValueError("linspace needs at least one point")
        return self

    def grid(self) -> List[float]:
        if self.linspace is not None:
            start, stop, points = self.linspace
            return np.linspace(start, stop, points).tolist()
        return list(self.values)


class ModelOverrides(BaseModel):
    """Uniform couplings replacing the command's default drive."""

    model_config = ConfigDict(frozen=True)

    mu: Optional[float] = None
    J1: Optional[float] = None
    J2: Optional[float] = None
    Delta: Optional[float] = None
    U: Optional[float] = None

    def given(self) -> dict:
        return {k: v for k, v in self.model_dump().items() if v is not None}


class LatticeOptions(BaseModel):
    model_config = ConfigDict(frozen=True)

    n: int = Field(default=1, ge=1)
    N: int = Field(default=2, ge=2)
    J: Optional[List[List[float]]] = Field(default=None, description="N-1 rows of n+1 couplings")
    sector: Optional[List[List[int]]] = None


class ExperimentConfig(BaseModel):
    """One harness run. Loaded from JSON; CLI flags override file values."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    command: Literal["verify", "bdg-sweep", "spectral", "adiabatic", "disorder", "paragen", "figure"]
    N: int = Field(default=4, ge=1, description="chain length")
    T: float = Field(default=config.DEFAULT_PERIOD, gt=0)
    model: ModelOverrides = Field(default_factory=ModelOverrides)
    sweep: Sweep = Field(default_factory=Sweep)
    spectral: SpectralConfig = Field(default_factory=SpectralConfig)
    disorder: Optional[DisorderSpec] = None
    sizes: List[int] = Field(default_factory=lambda: [3, 4])
    realizations: Optional[int] = Field(default=None, ge=1, description="per size, for width sweeps")
    transport: Literal["per_realization", "clean"] = "per_realization"
    steps: Optional[int] = Field(default=None, ge=2)
    boundary: Literal["open", "periodic"] = "open"
    layout: Literal["majorana", "printed"] = config.DEFAULT_SITE_LAYOUT
    lattice: LatticeOptions = Field(default_factory=LatticeOptions)
    figure: Optional[str] = None
    case: Optional[Literal["B2", "B3", "B4"]] = None
    seed: int = Field(default=0, ge=0, lt=2**64)
    output: str = config.OUTPUT_DIR
    name: Optional[str] = None
    jobs: Optional[int] = Field(default=None, ge=-1)

    @model_validator(mode="after")
    def _check_command(self):
        if self.command == "figure" and self.figure not in FIGURE_IDS:
            raise ValueError(f"figure must be one of {', '.join(FIGURE_IDS)}")
        if self.command in ("bdg-sweep", "spectral", "adiabatic"):
            if not self.sweep.axis:
                raise ValueError(f"{self.command} needs sweep.axis")
            if not self.sweep.grid():
                raise ValueError(f"{self.command} needs sweep values")
        if self.command == "disorder" and self.disorder is None and not self.sweep.grid():
            raise ValueError("disorder needs a disorder block or sweep widths")
        if self.command in ("spectral", "adiabatic") and self.N < 2:
            raise ValueError("interacting sweeps need N >= 2")
        return self

    @property
    def run_name(self) -> str:
        if self.name:
            return self.name
        if self.command == "figure":
            return f"figure_{self.figure}"
        return self.command
