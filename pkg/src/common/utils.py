from contextlib import contextmanager
from typing import Any, Callable, Dict, Iterable, List, Sequence
from src.common.logger import log
from src.common import config
from joblib import Parallel, delayed
from tqdm import tqdm
import joblib
import json
import time
import os
import csv


class Stopwatch:
    elapsed: float = 0.0


@contextmanager
def measure_time(label, log):
    watch = Stopwatch()
    start = time.time()
    yield watch
    watch.elapsed = time.time() - start
    log.info(f"{label} took {watch.elapsed:.2f} seconds")


class _TqdmBatchCompletionCallback(joblib.parallel.BatchCompletionCallBack):
    """Advance a tqdm bar whenever a joblib batch completes."""

    def __init__(self, tqdm_object, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self.tqdm_object = tqdm_object

    def __call__(self, *args, **kwargs):
        self.tqdm_object.update(n=self.batch_size)
        return super().__call__(*args, **kwargs)


@contextmanager
def tqdm_joblib(tqdm_object):
    original_callback = joblib.parallel.BatchCompletionCallBack
    joblib.parallel.BatchCompletionCallBack = (
        lambda *args, **kwargs: _TqdmBatchCompletionCallback(tqdm_object, *args, **kwargs)
    )
    try:
        with tqdm_object as pbar:
            yield pbar
    finally:
        joblib.parallel.BatchCompletionCallBack = original_callback


def parallel_map(
    func: Callable, items: Sequence, n_jobs: int = None, desc: str = "tasks"
) -> List[Any]:
    """
    Evaluates ``func`` on every item and returns results in input order.

    joblib preserves the submission order of results, so the merged output is
    independent of completion order and of the worker count.
    """
    n_jobs = config.N_JOBS if n_jobs is None else n_jobs
    items = list(items)
    if n_jobs == 1 or len(items) <= 1:
        return [func(item) for item in tqdm(items, desc=desc, disable=len(items) <= 1)]
    bar = tqdm(total=len(items), desc=desc)
    with tqdm_joblib(bar):
        return Parallel(n_jobs=n_jobs)(delayed(func)(item) for item in items)


def load_json_from_file(fp: str) -> Dict[str, Any]:
    """Loads a JSON file and returns its content."""
    try:
        with open(file=fp, mode="r", encoding="utf-8") as f:
            return json.load(f)
    except FileNotFoundError:
        log.error(f"Error: The file at {fp} was not found.")
        raise
    except json.JSONDecodeError:
        log.error(f"Error: The file at {fp} is not a valid JSON file.")
        raise


def write_json(fp: str, payload: Dict[str, Any]) -> str:
    os.makedirs(os.path.dirname(fp) or ".", exist_ok=True)
    with open(file=fp, mode="w", encoding="utf-8") as f:
        json.dump(payload, f, indent=2, sort_keys=True, default=_json_default)
        f.write("\n")
    log.debug(f"Wrote {fp}")
    return fp


def write_csv(fp: str, columns: Sequence[str], rows: Iterable[Sequence[float]]) -> str:
    os.makedirs(os.path.dirname(fp) or ".", exist_ok=True)
    with open(file=fp, mode="w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_format_cell(value) for value in row])
    log.debug(f"Wrote {fp}")
    return fp


def _format_cell(value):
    if isinstance(value, float):
        return repr(float(value))
    return value


def _json_default(value):
    # numpy scalars and arrays
    if hasattr(value, "tolist"):
        return value.tolist()
    if isinstance(value, complex):
        return [value.real, value.imag]
    raise TypeError(f"Object of type {type(value).__name__} is not JSON serializable")
