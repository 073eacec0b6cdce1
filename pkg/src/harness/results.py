from importlib import metadata as importlib_metadata
from typing import Any, Dict, List, Sequence, Tuple
from pydantic import BaseModel, ConfigDict, Field, model_validator
from src.common import config
from src.common.utils import write_csv, write_json
import os


PACKAGE_VERSION = "0.1.0"


def package_versions() -> Dict[str, str]:
    versions = {"parafloquet": PACKAGE_VERSION}
    for name in ("numpy", "scipy", "pydantic"):
        try:
            versions[name] = importlib_metadata.version(name)
        except importlib_metadata.PackageNotFoundError:
            versions[name] = "unknown"
    return versions


def tolerances() -> Dict[str, float]:
    return {
        "hermiticity": config.HERMITICITY_TOL,
        "unitarity": config.UNITARITY_TOL,
        "degeneracy": config.DEGENERACY_TOL,
        "branch_cut": config.BRANCH_CUT_TOL,
        "step_doubling": config.STEP_DOUBLING_TOL,
    }


class ResultTable(BaseModel):
    """Rectangular table of results with the metadata needed to regenerate it."""

    model_config = ConfigDict(frozen=True)

    name: str
    columns: Tuple[str, ...]
    rows: List[tuple] = Field(default_factory=list)
    metadata: Dict[str, Any] = Field(default_factory=dict)

    @model_validator(mode="after")
    def _rectangular(self):
        for index, row in enumerate(self.rows):
            if len(row) != len(self.columns):
                raise ValueError(f"row {index} has {len(row)} cells, expected {len(self.columns)}")
        return self

    def to_csv(self, directory: str) -> str:
        return write_csv(os.path.join(directory, f"{self.name}.csv"), self.columns, self.rows)

    def to_json(self, directory: str) -> str:
        payload = {"name": self.name, "columns": list(self.columns), "metadata": self.metadata}
        return write_json(os.path.join(directory, f"{self.name}.meta.json"), payload)


def build_metadata(experiment, wall_time: float, extra: Dict[str, Any] = None) -> Dict[str, Any]:
    meta = {
        "config": experiment.model_dump(mode="json"),
        "seed": experiment.seed,
        "tolerances": tolerances(),
        "wall_time_s": round(wall_time, 3),
        "versions": package_versions(),
    }
    meta.update(extra or {})
    return meta


def table_from_report(name: str, report: Dict[str, Dict[str, float]]) -> ResultTable:
    """Flattens {check: {value, tolerance, passed}} into rows."""
    rows = [
        (check, float(entry["value"]), float(entry["tolerance"]), bool(entry["passed"]))
        for check, entry in sorted(report.items())
    ]
    return ResultTable(name=name, columns=("check", "value", "tolerance", "passed"), rows=rows)


def write_tables(tables: Sequence[ResultTable], directory: str) -> List[str]:
    paths = []
    for table in tables:
        paths.append(table.to_csv(directory))
        paths.append(table.to_json(directory))
    return paths
