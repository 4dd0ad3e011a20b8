"""
Adaptive Simpson quadrature over smooth panels
"""
import logging
import math
from typing import Callable, Iterable, Optional, Tuple

import numpy as np

from config import get_settings
from src.exceptions import QuadratureError

logger = logging.getLogger(__name__)


def integrate_adaptive_simpson(
    f: Callable[[float], float],
    a: float,
    b: float,
    tol: Optional[float] = None,
    max_depth: Optional[int] = None,
) -> Tuple[float, float]:
    """
    Adaptive Simpson's rule with Richardson correction

    Args:
        f: Scalar integrand, smooth on [a, b]
        a: Lower bound
        b: Upper bound
        tol: Absolute error tolerance
        max_depth: Maximum recursion depth

    Returns:
        Tuple of (integral_value, error_estimate)

    Raises:
        QuadratureError: If a panel reaches max_depth without meeting its share
            of the tolerance
    """
    settings = get_settings()
    tol = settings.quad_tol if tol is None else tol
    max_depth = settings.quad_max_depth if max_depth is None else max_depth
    if a == b:
        return 0.0, 0.0
    if a > b:
        value, error = integrate_adaptive_simpson(f, b, a, tol, max_depth)
        return -value, error

    failed = []

    def _simpson(fa: float, fm: float, fb: float, h: float) -> float:
        return h / 3.0 * (fa + 4.0 * fm + fb)

    def _adaptive(a, b, fa, fm, fb, whole, depth, tol) -> Tuple[float, float]:
        m = 0.5 * (a + b)
        h = 0.25 * (b - a)
        flm = f(a + h)
        frm = f(b - h)
        left = _simpson(fa, flm, fm, h)
        right = _simpson(fm, frm, fb, h)
        estimate = (left + right - whole) / 15.0
        if abs(estimate) <= tol:
            return left + right + estimate, abs(estimate)
        if depth >= max_depth:
            failed.append((a, b))
            return left + right + estimate, abs(estimate)
        lv, le = _adaptive(a, m, fa, flm, fm, left, depth + 1, tol / 2.0)
        rv, re = _adaptive(m, b, fm, frm, fb, right, depth + 1, tol / 2.0)
        return lv + rv, le + re

    fa, fm, fb = f(a), f(0.5 * (a + b)), f(b)
    whole = _simpson(fa, fm, fb, 0.5 * (b - a))
    value, error = _adaptive(a, b, fa, fm, fb, whole, 0, tol)
    if failed or not math.isfinite(value):
        raise QuadratureError(
            f"adaptive Simpson did not converge on [{a}, {b}] "
            f"({len(failed)} panels at depth {max_depth}, first near {failed[0] if failed else None})"
        )
    return value, error


def integrate_panels(
    f: Callable[[float], float],
    panels: Iterable[Tuple[float, float]],
    tol: Optional[float] = None,
    max_depth: Optional[int] = None,
) -> float:
    """Integrate over consecutive panels, splitting the tolerance evenly"""
    panels = list(panels)
    tol = get_settings().quad_tol if tol is None else tol
    share = tol / max(len(panels), 1)
    return math.fsum(
        integrate_adaptive_simpson(f, a, b, share, max_depth)[0] for a, b in panels
    )


def periodic_trapezoid(g: Callable[[np.ndarray], np.ndarray], nodes: Optional[int] = None) -> float:
    """
    (1/2pi) * integral over one period of g(t), by the trapezoid rule

    Spectrally accurate for smooth periodic integrands.
    """
    nodes = get_settings().trapezoid_nodes if nodes is None else nodes
    t = 2.0 * np.pi * np.arange(nodes) / nodes
    return float(np.mean(g(t)))
