from typing import Iterator, Literal, Optional
from pydantic import BaseModel, ConfigDict, Field, model_validator
from src.chain.parameters import DriveParameters
from src.common import config
from src.common.errors import DimensionError
import numpy as np
import math


AXES = ("J1", "mu", "U", "delta", "interpolation")


def replace_axis(base: DriveParameters, axis: str, value: float) -> DriveParameters:
    """
    Sets one uniform axis on ``base``. ``delta`` is (J2 - Delta) / 2 at
    fixed (J2 + Delta) / 2.
    """
    if axis in ("J1", "mu", "U"):
        return base.with_arrays(**{axis: np.full_like(base.array(axis), value)})
    elif axis == "delta":
        mean = 0.5 * (base.array("J2") + base.array("Delta"))
        return base.with_arrays(J2=mean + value, Delta=mean - value)
    else:
        raise ValueError(f"Unknown path axis: {axis}")


class ParameterPath(BaseModel):
    """
    Straight path in one axis through ``base``, or from ``base`` (s = 0)
    to ``target`` (s = 1) for ``interpolation``.
    """

    model_config = ConfigDict(frozen=True)

    axis: Literal["J1", "mu", "U", "delta", "interpolation"]
    start: float
    end: float
    steps: int = Field(ge=2, description="midpoint steps M")
    base: DriveParameters
    target: Optional[DriveParameters] = None

    @model_validator(mode="before")
    @classmethod
    def _default_steps(cls, data):
        if isinstance(data, dict) and data.get("steps") is None:
            span = abs(float(data.get("end", 0.0)) - float(data.get("start", 0.0)))
            data = {**data, "steps": max(2, math.ceil(config.PATH_STEPS * span))}
        return data

    @model_validator(mode="after")
    def _check(self):
        if not (math.isfinite(self.start) and math.isfinite(self.end)):
            raise ValueError("path endpoints must be finite")
        if self.axis == "interpolation":
            if self.target is None:
                raise ValueError("interpolation paths need a target")
            if self.target.N != self.base.N or self.target.T != self.base.T:
                raise DimensionError("interpolation needs equal N and T")
        return self

    @classmethod
    def interpolation(cls, base: DriveParameters, target: DriveParameters, steps: int = None) -> "ParameterPath":
        return cls(axis="interpolation", start=0.0, end=1.0, steps=steps, base=base, target=target)

    @property
    def length(self) -> float:
        return abs(self.end - self.start)

    @property
    def step(self) -> float:
        return (self.end - self.start) / self.steps

    def midpoints(self) -> Iterator[float]:
        for k in range(self.steps):
            yield self.start + (k + 0.5) * self.step

    def point(self, s: float) -> DriveParameters:
        if self.axis == "interpolation":
            return self.base.interpolate(self.target, s)
        return replace_axis(self.base, self.axis, s)

    def reversed(self) -> "ParameterPath":
        return self.model_copy(update={"start": self.end, "end": self.start})

    @property
    def is_stationary(self) -> bool:
        """True when every point of the path is the same drive."""
        if self.axis == "interpolation":
            return self.length == 0.0 or self.base == self.target
        return self.length == 0.0
