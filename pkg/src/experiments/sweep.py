"""
Sweep engine: D_n / G^n against its prediction over a set of sizes
"""
import json
import logging
import os
from dataclasses import asdict, dataclass
from multiprocessing import Pool
from typing import Iterable, List, Optional, Tuple

import pandas as pd

from config import get_settings
from src.asymptotics import AsymptoticPrediction, jump_prediction, predict
from src.exceptions import ValidationError
from src.matrix import build, det_log
from src.potential import PiecewiseFunction
from .scenario import Scenario

logger = logging.getLogger(__name__)

RECORD_COLUMNS = ["n", "ratio", "prediction", "error"]


@dataclass
class SweepRecord:
    """One row of a sweep"""
    n: int
    ratio: float
    prediction: float
    error: float


def _sweep_one(task: Tuple[PiecewiseFunction, int, float, AsymptoticPrediction]) -> SweepRecord:
    f, n, epsilon, p = task
    # build and det_log put n into their error messages
    ratio = det_log(build(f, n, epsilon), p.G_log).ratio
    prediction = jump_prediction(p, n)
    return SweepRecord(n=n, ratio=ratio, prediction=prediction, error=ratio - prediction)


def sweep_potential(
    f: PiecewiseFunction,
    ns: Iterable[int],
    epsilon: float = 1.0,
    workers: Optional[int] = None,
    prediction: Optional[AsymptoticPrediction] = None,
) -> List[SweepRecord]:
    """
    Compute one record per n, each independently

    Args:
        f: Potential
        ns: Matrix sizes
        epsilon: Index shift
        workers: Worker processes (1 runs serially)
        prediction: Precomputed prediction for f and epsilon

    Returns:
        Records ordered by n
    """
    ns = sorted(set(ns))
    if not ns:
        raise ValidationError("empty n set")
    workers = get_settings().sweep_workers if workers is None else workers
    p = predict(f, epsilon) if prediction is None else prediction
    tasks = [(f, n, epsilon, p) for n in ns]

    logger.info(f"Sweeping {len(ns)} sizes ({ns[0]}..{ns[-1]}) with {workers} worker(s)")
    if workers > 1 and len(tasks) > 1:
        with Pool(min(workers, len(tasks))) as pool:
            records = pool.map(_sweep_one, tasks, chunksize=max(1, len(tasks) // (4 * workers)))
    else:
        records = [_sweep_one(task) for task in tasks]
    return sorted(records, key=lambda r: r.n)


def run_sweep(scenario: Scenario, workers: Optional[int] = None) -> List[SweepRecord]:
    """Sweep a scenario's potential over its n set"""
    workers = scenario.workers if workers is None else workers
    return sweep_potential(scenario.potential(), scenario.n_values, scenario.epsilon, workers)


def records_to_frame(records: List[SweepRecord]) -> pd.DataFrame:
    """Records as a DataFrame with columns n, ratio, prediction, error"""
    return pd.DataFrame([asdict(r) for r in records], columns=RECORD_COLUMNS)


def records_to_csv(records: List[SweepRecord], path: Optional[str] = None) -> str:
    """
    Render records as CSV with full double precision

    Writes to ``path`` when given; always returns the text.
    """
    digits = get_settings().csv_significant_digits
    text = records_to_frame(records).to_csv(index=False, float_format=f"%.{digits}g", lineterminator="\n")
    if path:
        _write_text(path, text)
    return text


def records_to_json(records: List[SweepRecord], path: Optional[str] = None) -> str:
    """Same fields as the CSV, as a JSON list"""
    text = json.dumps([asdict(r) for r in records], indent=2)
    if path:
        _write_text(path, text + "\n")
    return text


def save_records(records: List[SweepRecord], path: str, fmt: str = "csv") -> None:
    """Write records in the chosen format"""
    if fmt == "csv":
        records_to_csv(records, path)
    elif fmt == "json":
        records_to_json(records, path)
    else:
        raise ValidationError(f"unknown output format {fmt!r}")
    logger.info(f"Wrote {len(records)} records to {path}")


def load_records(path: str) -> List[SweepRecord]:
    """Read records back from a CSV or JSON sweep file"""
    if path.endswith(".json"):
        with open(path, "r") as f:
            rows = json.load(f)
    else:
        rows = pd.read_csv(path, float_precision="round_trip").to_dict(orient="records")
    return [
        SweepRecord(n=int(r["n"]), ratio=float(r["ratio"]), prediction=float(r["prediction"]), error=float(r["error"]))
        for r in rows
    ]


def _write_text(path: str, text: str) -> None:
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(path, "w") as f:
        f.write(text)
