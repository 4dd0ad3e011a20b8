"""
Eigenvalues of symmetric tridiagonal matrices by Sturm-sequence bisection
"""
import logging
import math
from typing import Callable, Optional, Union

import numpy as np

from config import get_settings
from src.exceptions import EigenCapError, ValidationError
from .schrodinger import SchrodingerMatrix

logger = logging.getLogger(__name__)

# Pivots smaller than this are replaced by -PIVOT_MIN so the count stays defined.
PIVOT_MIN = 1e-300

Phi = Union[int, str]


def sturm_count(m: SchrodingerMatrix, shifts: np.ndarray) -> np.ndarray:
    """
    Number of eigenvalues strictly below each shift

    Counts negative pivots q_k of the LDL^T factorisation of T - xI:
    q_1 = d_1 - x, q_k = d_k - x - 1/q_{k-1}.
    """
    shifts = np.atleast_1d(np.asarray(shifts, dtype=float))
    count = np.zeros(shifts.shape, dtype=np.int64)
    q = None
    for d in m.diag.tolist():
        q = (d - shifts) if q is None else (d - shifts) - 1.0 / q
        q[np.abs(q) < PIVOT_MIN] = -PIVOT_MIN
        count += q < 0
    return count


def eigenvalues(
    m: SchrodingerMatrix,
    tol: Optional[float] = None,
    cap: Optional[int] = None,
) -> np.ndarray:
    """
    All eigenvalues of T_n, sorted ascending

    Every eigenvalue is bisected simultaneously from the Gershgorin interval;
    eigenvalue k is kept bracketed by count(lo) <= k < count(hi).

    Args:
        m: Matrix
        tol: Absolute tolerance per eigenvalue (capped at 1e-10)
        cap: Largest n accepted

    Returns:
        Sorted eigenvalues
    """
    settings = get_settings()
    tol = min(settings.eigen_tol if tol is None else tol, 1e-10)
    cap = settings.eigen_cap if cap is None else cap
    if m.n > cap:
        raise EigenCapError(f"n={m.n} exceeds eigensolver cap {cap}")

    radius = 2.0 if m.n > 1 else 0.0
    lower = float(m.diag.min()) - radius - tol
    upper = float(m.diag.max()) + radius + tol
    lo = np.full(m.n, lower)
    hi = np.full(m.n, upper)
    target = np.arange(m.n)

    steps = int(math.ceil(math.log2((upper - lower) / tol))) + 1
    for _ in range(min(steps, 200)):
        mid = 0.5 * (lo + hi)
        above = sturm_count(m, mid) > target
        hi = np.where(above, mid, hi)
        lo = np.where(above, lo, mid)
    logger.debug(f"Bisected {m.n} eigenvalues in {steps} steps")
    return np.sort(0.5 * (lo + hi))


def phi_function(phi: Phi) -> Callable[[np.ndarray], np.ndarray]:
    """Map 1..4 (or 's1'..'s4') to a power and 'log' to the logarithm"""
    if isinstance(phi, str):
        key = phi.strip().lower()
        if key == "log":
            return np.log
        key = key.lstrip("s").lstrip("^")
        try:
            phi = int(key)
        except ValueError:
            raise ValidationError(f"unknown phi {phi!r}; use 1..4 or 'log'")
    if not float(phi).is_integer():
        raise ValidationError(f"phi power must be an integer, got {phi}")
    if not 1 <= int(phi) <= 4:
        raise ValidationError(f"phi power must be between 1 and 4, got {phi}")
    p = int(phi)
    return lambda s: np.power(s, p)


def trace_phi(m: SchrodingerMatrix, phi: Phi, tol: Optional[float] = None) -> float:
    """
    Tr phi(T_n) from the computed spectrum

    Args:
        m: Matrix
        phi: Power 1..4 or 'log'
        tol: Eigenvalue tolerance

    Returns:
        Sum of phi over the eigenvalues
    """
    fn = phi_function(phi)
    return math.fsum(fn(eigenvalues(m, tol=tol)).tolist())
