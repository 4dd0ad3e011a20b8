"""
Spectral checks: the trace formula and shift invariance of eigenvalue statistics
"""
import logging
import math
from typing import NamedTuple, Optional

import numpy as np

from src.asymptotics import integrate_panels, periodic_trapezoid
from src.matrix import build, eigenvalues, phi_function
from src.potential import PiecewiseFunction

logger = logging.getLogger(__name__)

SYMBOL_TOL = 1e-10


class KmsCheck(NamedTuple):
    """Tr phi(T_n)/n, the symbol integral, and their distance"""
    lhs: float
    rhs: float
    gap: float


def symbol_integral(f: PiecewiseFunction, phi, nodes: Optional[int] = None, tol: float = SYMBOL_TOL) -> float:
    """
    (1/2pi) int_0^1 int_0^2pi phi(f(x) - 2cos t) dt dx

    x by adaptive Simpson per smooth panel, t by the periodic trapezoid rule.
    """
    fn = phi_function(phi)
    panels = f.smooth_panels(0.0, 1.0)
    total = []
    for a, b, piece in panels:
        inner = lambda x, e=piece.expr: periodic_trapezoid(
            lambda t: fn(float(e.evaluate(x)) - 2.0 * np.cos(t)), nodes
        )
        total.append(integrate_panels(inner, [(a, b)], tol / len(panels)))
    return math.fsum(total)


def kms_check(f: PiecewiseFunction, n: int, phi=2, epsilon: float = 1.0) -> KmsCheck:
    """
    Compare Tr phi(T_n(f; eps)) / n with the symbol integral

    Args:
        f: Potential
        n: Matrix size (within the eigensolver cap)
        phi: Power 1..4 or 'log'
        epsilon: Index shift; the limit does not depend on it

    Returns:
        (lhs, rhs, gap)
    """
    fn = phi_function(phi)
    lam = eigenvalues(build(f, n, epsilon))
    lhs = math.fsum(fn(lam).tolist()) / n
    rhs = symbol_integral(f, phi)
    logger.debug(f"trace check n={n} phi={phi}: lhs={lhs!r} rhs={rhs!r}")
    return KmsCheck(lhs=lhs, rhs=rhs, gap=abs(lhs - rhs))


def shift_invariance_check(f: PiecewiseFunction, n: int, eps_a: float, eps_b: float) -> float:
    """
    max over p in {1, 2} of |Tr T_n(f; eps_a)^p - Tr T_n(f; eps_b)^p| / n

    Expected to be O(1/n): the eigenvalue distribution forgets the shift.
    """
    spectra = [eigenvalues(build(f, n, eps)) for eps in (eps_a, eps_b)]
    gaps = []
    for p in (1, 2):
        traces = [math.fsum(np.power(lam, p).tolist()) for lam in spectra]
        gaps.append(abs(traces[0] - traces[1]) / n)
    return max(gaps)
