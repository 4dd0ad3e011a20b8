"""
Discrete Schrödinger matrices T_n(f; eps) and their determinants
"""
import logging
import math
from dataclasses import dataclass
from typing import List, Optional

import numpy as np

from src.exceptions import NumericalError, PotentialDomainError, ValidationError
from src.potential import PiecewiseFunction

logger = logging.getLogger(__name__)

BRUTE_FORCE_MAX_N = 8


@dataclass(frozen=True, eq=False)
class SchrodingerMatrix:
    """Symmetric tridiagonal matrix: diagonal samples of f, constant off-diagonal"""
    n: int
    diag: np.ndarray
    offdiag_sign: int = -1
    epsilon: float = 1.0

    def to_dense(self) -> np.ndarray:
        """Dense copy, for oracles and small examples"""
        dense = np.diag(self.diag.astype(float))
        off = np.full(self.n - 1, float(self.offdiag_sign))
        return dense + np.diag(off, 1) + np.diag(off, -1)


@dataclass
class DeterminantResult:
    """Log-scale determinant of T_n"""
    n: int
    log_det: float
    ratio_log: Optional[float] = None
    min_minor_ratio: float = math.inf

    @property
    def ratio(self) -> Optional[float]:
        """D_n / G^n, when a geometric mean was supplied"""
        return None if self.ratio_log is None else math.exp(self.ratio_log)


def sample_points(n: int, epsilon: float = 1.0) -> np.ndarray:
    """Grid (k - 1 + eps) / n for k = 1..n"""
    return (np.arange(n, dtype=float) + epsilon) / n


def build(
    f: PiecewiseFunction,
    n: int,
    epsilon: float = 1.0,
    sign: int = -1,
) -> SchrodingerMatrix:
    """
    Build T_n(f; eps)

    Args:
        f: Potential; its side convention decides values at jump points
        n: Matrix size
        epsilon: Index shift (1 reproduces diag f(k/n))
        sign: Off-diagonal entries, -1 or +1

    Returns:
        Schrödinger matrix
    """
    if n < 1:
        raise ValidationError(f"n must be positive, got {n}")
    if sign not in (-1, 1):
        raise ValidationError(f"off-diagonal sign must be -1 or +1, got {sign}")
    xs = sample_points(n, epsilon)
    try:
        diag = f.sample(xs)
    except PotentialDomainError as e:
        raise PotentialDomainError(
            f"n={n}, epsilon={epsilon}: {e} (shift too large or domain too small)"
        ) from e
    return SchrodingerMatrix(n=n, diag=diag, offdiag_sign=sign, epsilon=epsilon)


def minor_ratios(m: SchrodingerMatrix) -> List[float]:
    """
    Ratios r_k = D_k / D_{k-1} of consecutive leading principal minors

    r_1 = d_1 and r_k = d_k - 1/r_{k-1}; the off-diagonal enters squared, so
    its sign never matters.
    """
    ratios = []
    previous = None
    for k, d in enumerate(m.diag.tolist(), start=1):
        r = d if previous is None else d - 1.0 / previous
        if r <= 1.0:
            raise NumericalError(
                f"minor ratio r_{k}={r:.6g} <= 1; diagonal not bounded below by 2", n=m.n
            )
        ratios.append(r)
        previous = r
    return ratios


def det_log(m: SchrodingerMatrix, g_log: Optional[float] = None) -> DeterminantResult:
    """
    Natural log of det T_n without forming the overflowing product

    Args:
        m: Matrix
        g_log: Optional log G(f); fills ``ratio_log`` = log_det - n*g_log

    Returns:
        Determinant result
    """
    ratios = minor_ratios(m)
    log_det = math.fsum(math.log(r) for r in ratios)
    ratio_log = None if g_log is None else log_det - m.n * g_log
    return DeterminantResult(
        n=m.n, log_det=log_det, ratio_log=ratio_log, min_minor_ratio=min(ratios)
    )


def ratio(
    f: PiecewiseFunction,
    n: int,
    epsilon: float,
    g_log: float,
    sign: int = -1,
) -> float:
    """D_n(f; eps) / G(f)^n"""
    result = det_log(build(f, n, epsilon, sign), g_log)
    return math.exp(result.ratio_log)


def _cofactor_det(rows: List[List[float]]) -> float:
    if len(rows) == 1:
        return rows[0][0]
    total = 0.0
    for j, a in enumerate(rows[0]):
        if a == 0.0:
            continue
        minor = [row[:j] + row[j + 1:] for row in rows[1:]]
        total += (-1) ** j * a * _cofactor_det(minor)
    return total


def det_bruteforce(m: SchrodingerMatrix) -> float:
    """Laplace expansion along the first row (n <= 8), used as an oracle"""
    if m.n > BRUTE_FORCE_MAX_N:
        raise ValidationError(f"cofactor expansion limited to n <= {BRUTE_FORCE_MAX_N}")
    return _cofactor_det(m.to_dense().tolist())


def chebyshev_determinant(a: float, n: int) -> float:
    """
    Closed form det T_n for the constant potential f = a > 2

    D_n = (r^(n+1) - r^-(n+1)) / (r - 1/r) with r + 1/r = a.
    """
    r = (a + math.sqrt(a * a - 4.0)) / 2.0
    return (r ** (n + 1) - r ** (-(n + 1))) / (r - 1.0 / r)
