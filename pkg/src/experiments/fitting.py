"""
Least-squares error laws: A n^b against A B^n, both fitted on log|error|
"""
import logging
import math
from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np
from sklearn.linear_model import LinearRegression

from src.exceptions import FitError
from .sweep import SweepRecord

logger = logging.getLogger(__name__)

MIN_RECORDS = 10
DEGENERATE_ERROR = 1e-14


@dataclass
class PowerLawFit:
    """Fitted A n^b, with the competing exponential model A' B^n"""
    A: float
    b: float
    rss: float
    n_min: int
    n_max: int
    count: int
    exp_A: float
    exp_B: float
    exp_rss: float
    model: str = "A*n^b"

    @property
    def best_model(self) -> str:
        return "power" if self.rss <= self.exp_rss else "exponential"

    def predict(self, n: float) -> float:
        return self.A * n ** self.b


def _linear_fit(x: np.ndarray, y: np.ndarray) -> Tuple[float, float, float]:
    """Intercept, slope and residual sum of squares of y ~ x"""
    reg = LinearRegression().fit(x.reshape(-1, 1), y)
    residuals = y - reg.predict(x.reshape(-1, 1))
    return float(reg.intercept_), float(reg.coef_[0]), float(np.dot(residuals, residuals))


def fit_error_law(ns: Sequence[float], errors: Sequence[float]) -> PowerLawFit:
    """
    Fit log|error| against log n (power law) and against n (exponential)

    Args:
        ns: Sizes
        errors: Errors at those sizes; |error| <= 1e-14 is dropped

    Returns:
        Both fits and their residual sums of squares (in log space)

    Raises:
        FitError: Fewer than 10 usable points remain
    """
    ns = np.asarray(ns, dtype=float)
    errors = np.abs(np.asarray(errors, dtype=float))
    usable = errors > DEGENERATE_ERROR
    if usable.sum() < MIN_RECORDS:
        raise FitError(f"only {int(usable.sum())} usable records; need at least {MIN_RECORDS}")
    ns, y = ns[usable], np.log(errors[usable])

    log_a, b, rss = _linear_fit(np.log(ns), y)
    exp_log_a, log_b, exp_rss = _linear_fit(ns, y)
    fit = PowerLawFit(
        A=math.exp(log_a),
        b=b,
        rss=rss,
        n_min=int(ns.min()),
        n_max=int(ns.max()),
        count=int(ns.size),
        exp_A=math.exp(exp_log_a),
        exp_B=math.exp(log_b),
        exp_rss=exp_rss,
    )
    logger.info(f"Power law {fit.A:.6g} n^{fit.b:.6g} (rss {fit.rss:.3g}) vs exponential rss {fit.exp_rss:.3g}")
    return fit


def fit_power_law(records: List[SweepRecord]) -> PowerLawFit:
    """Fit the error column of sweep records"""
    return fit_error_law([r.n for r in records], [r.error for r in records])
