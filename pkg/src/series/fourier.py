"""
Fourier coefficients of log(f(x) - 2cos t) and the Mejlbo–Schmidt constant.

The closed form follows from f - 2cos t = rho (1 - e^{it}/rho)(1 - e^{-it}/rho):
V_0 = log rho and V_k = -rho^{-|k|}/|k|.
"""
import logging
import math
from dataclasses import dataclass
from typing import Dict, List, Optional

import numpy as np

from src.asymptotics import endpoint_values, kac_limit, periodic_trapezoid, rho
from src.exceptions import PotentialDomainError, ValidationError
from src.potential import Approach, PiecewiseFunction

logger = logging.getLogger(__name__)


@dataclass
class FourierLogCoefficients:
    """V_k(f; x) for |k| <= K"""
    x: float
    rho_x: float
    K: int

    def coefficient(self, k: int) -> float:
        if abs(k) > self.K:
            raise ValidationError(f"|k|={abs(k)} beyond truncation order {self.K}")
        if k == 0:
            return math.log(self.rho_x)
        return -self.rho_x ** (-abs(k)) / abs(k)

    def as_dict(self) -> Dict[int, float]:
        return {k: self.coefficient(k) for k in range(-self.K, self.K + 1)}

    @property
    def tail_bound(self) -> float:
        """Bound on sum of |V_k| for k > K"""
        q = 1.0 / self.rho_x
        return q ** self.K / (self.K * (1.0 - q))

    def weighted_square_sum(self) -> float:
        """sum_{k=1..K} k V_k V_{-k}"""
        return math.fsum(k * self.coefficient(k) * self.coefficient(-k) for k in range(1, self.K + 1))


def fourier_coefficients(f: PiecewiseFunction, x: float, K: int) -> FourierLogCoefficients:
    """
    Closed-form V_k(f; x), |k| <= K

    Args:
        f: Potential
        x: Point in [0, 1]
        K: Truncation order (>= 1)

    Returns:
        Coefficient table
    """
    if K < 1:
        raise ValidationError("truncation order K must be at least 1")
    if not 0.0 <= x <= 1.0:
        raise PotentialDomainError(f"x={x} outside [0, 1]")
    return FourierLogCoefficients(x=x, rho_x=rho(f.eval(x, Approach.AT)), K=K)


def quadrature_coefficient(v: float, k: int, nodes: Optional[int] = None) -> float:
    """
    V_k for the value v = f(x), by the trapezoid rule on the defining integral

    The symbol is even in t, so the coefficient is the cosine transform.
    """
    nodes = 4096 if nodes is None else nodes
    return periodic_trapezoid(lambda t: np.log(v - 2.0 * np.cos(t)) * np.cos(k * t), nodes)


def default_truncation(f: PiecewiseFunction) -> int:
    """Smallest K with rho_min^(-2K) below 1e-12, plus a margin of 5"""
    rho_min = min(rho(v) for v in endpoint_values(f))
    return int(math.ceil(12.0 * math.log(10.0) / (2.0 * math.log(rho_min)))) + 5


@dataclass
class MejlboSchmidtConstant:
    """E(f) as displayed, with its truncation data and the Kac comparison"""
    value: float
    K: int
    truncation_bound: float
    kac_value: Optional[float]
    endpoint_rhos: List[float]

    @property
    def discrepancy(self) -> Optional[float]:
        """E(f) / kac_limit; equals rho for constant potentials"""
        return None if self.kac_value is None else self.value / self.kac_value


def ms_constant(f: PiecewiseFunction, K: Optional[int] = None) -> MejlboSchmidtConstant:
    """
    E(f) = exp(1/2 {V_0(0) + V_0(1) + sum k V_k V_-k (0) + sum k V_k V_-k (1)})

    Evaluated exactly as written and truncated at K. Only f(0) and f(1)
    enter. For f = a constant this evaluates to rho^3/(rho^2 - 1), a factor
    rho above Kac's limit; the value is reported as is.
    """
    K = default_truncation(f) if K is None else K
    f0, f1 = endpoint_values(f)
    total = 0.0
    bound = 0.0
    rhos = []
    for value in (f0, f1):
        r = rho(value)
        coeffs = FourierLogCoefficients(x=0.0, rho_x=r, K=K)
        total += coeffs.coefficient(0) + coeffs.weighted_square_sum()
        q2 = r ** -2
        bound += q2 ** (K + 1) / ((K + 1) * (1.0 - q2))
        rhos.append(r)
    try:
        kac = kac_limit(f)
    except ValidationError:
        kac = None
    result = MejlboSchmidtConstant(
        value=math.exp(0.5 * total),
        K=K,
        truncation_bound=0.5 * bound,
        kac_value=kac,
        endpoint_rhos=rhos,
    )
    if result.discrepancy is not None and abs(result.discrepancy - 1.0) > 1e-6:
        logger.warning(
            f"E(f)={result.value:.10g} differs from Kac's limit {kac:.10g} by a factor {result.discrepancy:.10g}"
        )
    return result
