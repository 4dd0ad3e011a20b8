"""
Closed-form asymptotics of D_n(f) / G(f)^n: the geometric mean, Kac's
constant, the index-shifted limit, jump corrections and their envelope
"""
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Tuple, Union

import numpy as np

from config import get_settings
from src.exceptions import ValidationError
from src.potential import Approach, PiecewiseFunction, Side
from .quadrature import integrate_panels

logger = logging.getLogger(__name__)

MAX_CYCLE_LENGTH = 10_000


# ==================== Building blocks ====================
def rho(v: Union[float, np.ndarray]) -> Union[float, np.ndarray]:
    """
    Larger root of r + 1/r = v, i.e. (v + sqrt(v^2 - 4)) / 2

    Args:
        v: Value(s) strictly above 2

    Returns:
        rho(v) > 1
    """
    arr = np.asarray(v, dtype=float)
    if np.any(~(arr > 2.0)):
        raise ValidationError(f"rho needs v > 2, got min {float(np.min(arr))}")
    result = 0.5 * (arr + np.sqrt(arr * arr - 4.0))
    return float(result) if np.ndim(result) == 0 else result


def log_rho(v: Union[float, np.ndarray]) -> Union[float, np.ndarray]:
    """log rho(v), the integrand of log G(f)"""
    return np.log(rho(v))


def _log_rho_scalar(v: float) -> float:
    return math.log(0.5 * (v + math.sqrt(v * v - 4.0)))


def _root_gap(v: float) -> float:
    """sqrt(v^2 - 4) computed as rho - 1/rho"""
    r = rho(v)
    return r - 1.0 / r


def frac(x: float) -> float:
    """Fractional part with floor convention, in [0, 1)"""
    return x - math.floor(x)


def frac_prime(x: float) -> float:
    """Fractional part that equals 1 at integers, in (0, 1]"""
    return 1.0 + x - math.ceil(x)


def grid_exponent(n: int, c: float, side: Side) -> float:
    """
    {nc} for left-continuous jumps, {nc}' for right-continuous ones

    nc counts as an integer exactly when a grid point k/n lands on c in
    floating point, which is when the matrix sample sees the jump value.
    """
    k = round(n * c)
    if k / n == c:
        return 1.0 if side is Side.RIGHT else 0.0
    x = n * c
    return frac_prime(x) if side is Side.RIGHT else frac(x)


def endpoint_values(f: PiecewiseFunction) -> Tuple[float, float]:
    """(f(0+), f(1-)), the endpoint values entering every closed form"""
    return f.eval(0.0, Approach.RIGHT), f.eval(1.0, Approach.LEFT)


# ==================== G(f), alpha, shifted limit ====================
def geometric_mean_log(
    f: PiecewiseFunction,
    tol: Optional[float] = None,
    max_depth: Optional[int] = None,
) -> float:
    """
    log G(f) = integral over [0, 1] of log rho(f(x))

    Each panel between breakpoints is integrated with its own piece, so the
    integrand is smooth on every panel.
    """
    total = 0.0
    panels = f.smooth_panels(0.0, 1.0)
    tol = get_settings().quad_tol if tol is None else tol
    for a, b, piece in panels:
        integrand = lambda x, e=piece.expr: _log_rho_scalar(float(e.evaluate(x)))
        total += integrate_panels(integrand, [(a, b)], tol / len(panels), max_depth)
    logger.debug(f"log G(f) = {total!r} over {len(panels)} panels")
    return total


def _alpha_from_endpoints(f0: float, f1: float, epsilon: float = 1.0) -> float:
    s0, s1 = _root_gap(f0), _root_gap(f1)
    log_value = (
        (1.0 - epsilon) * math.log(f0 + s0)
        + epsilon * math.log(f1 + s1)
        - math.log(2.0)
        - 0.5 * math.log(s0 * s1)
    )
    return math.exp(log_value)


def kac_limit(f: PiecewiseFunction) -> float:
    """
    Kac's limit of D_n(f) / G(f)^n for smooth f

    (1/2) (f(1) + sqrt(f(1)^2 - 4)) / ((f(0)^2 - 4)(f(1)^2 - 4))^(1/4)
    """
    if f.has_jumps:
        raise ValidationError("potential has jumps; use jump_prediction")
    return _alpha_from_endpoints(*endpoint_values(f))


def shifted_limit(f: PiecewiseFunction, epsilon: float) -> float:
    """
    Limit of det T_n(f; eps) / G(f)^n

    (f(0)+sqrt(f(0)^2-4))^(1-eps) (f(1)+sqrt(f(1)^2-4))^eps
    / (2 ((f(0)^2-4)(f(1)^2-4))^(1/4)); equals kac_limit at eps = 1.
    """
    if f.has_jumps:
        raise ValidationError("shifted limit needs a potential without jumps")
    return _alpha_from_endpoints(*endpoint_values(f), epsilon=epsilon)


def epsilon_for_target(f: PiecewiseFunction, target: float) -> float:
    """
    Shift eps whose limit det T_n(f; eps) / G^n equals target

    The log of the shifted limit is affine in eps, so the solve is exact.
    """
    if target <= 0:
        raise ValidationError("target limit must be positive")
    if f.has_jumps:
        raise ValidationError("shift solve needs a potential without jumps")
    f0, f1 = endpoint_values(f)
    a0, a1 = math.log(rho(f0)), math.log(rho(f1))
    if a0 == a1:
        raise ValidationError("f(0) = f(1): the shifted limit does not depend on eps")
    base = math.log(_alpha_from_endpoints(f0, f1, epsilon=0.0))
    return (math.log(target) - base) / (a1 - a0)


# ==================== Jumps ====================
@dataclass(frozen=True)
class JumpParameters:
    """Correction factors for one jump"""
    c: float
    side: Side
    beta: float
    gamma: float


def jump_parameters(f: PiecewiseFunction, j: int) -> Tuple[float, float]:
    """
    (beta_j, gamma_j) for the j-th jump of f

    Args:
        f: Potential
        j: Jump index, 0-based

    Returns:
        Tuple of (beta, gamma)
    """
    if not 0 <= j < len(f.jumps):
        raise ValidationError(f"jump index {j} out of range (potential has {len(f.jumps)})")
    return beta_gamma(*f.limits_at(f.jumps[j].c))


def beta_gamma(f_minus: float, f_plus: float) -> Tuple[float, float]:
    """beta and gamma from the one-sided limits f(c-), f(c+)"""
    s_minus, s_plus = _root_gap(f_minus), _root_gap(f_plus)
    beta = (f_minus - f_plus + s_plus + s_minus) / (2.0 * math.sqrt(s_plus * s_minus))
    gamma = (f_plus + s_plus) / (f_minus + s_minus)
    return beta, gamma


@dataclass(frozen=True)
class AsymptoticPrediction:
    """Everything needed to predict D_n(f) / G(f)^n"""
    G_log: float
    alpha: float
    jumps: Tuple[JumpParameters, ...] = ()
    epsilon: float = 1.0

    @property
    def G(self) -> float:
        return math.exp(self.G_log)

    def prediction(self, n: int) -> float:
        return jump_prediction(self, n)


def predict(f: PiecewiseFunction, epsilon: float = 1.0, g_log: Optional[float] = None) -> AsymptoticPrediction:
    """
    Assemble G(f), alpha and per-jump (beta, gamma)

    With jumps, alpha uses f(0+) and f(1-); the jump formula is only
    established for the unshifted grid, so eps must be 1 then.
    """
    if f.has_jumps and epsilon != 1.0:
        raise ValidationError("jump predictions are only defined for epsilon = 1")
    g_log = geometric_mean_log(f) if g_log is None else g_log
    alpha = _alpha_from_endpoints(*endpoint_values(f), epsilon=epsilon)
    jumps = []
    for j, jump in enumerate(f.jumps):
        beta, gamma = jump_parameters(f, j)
        jumps.append(JumpParameters(jump.c, jump.side, beta, gamma))
    return AsymptoticPrediction(G_log=g_log, alpha=alpha, jumps=tuple(jumps), epsilon=epsilon)


def jump_prediction(p: AsymptoticPrediction, n: int) -> float:
    """alpha * prod_j beta_j * gamma_j^(e_j(n)), e_j = {n c_j} or {n c_j}'"""
    value = p.alpha
    for jump in p.jumps:
        value *= jump.beta * jump.gamma ** grid_exponent(n, jump.c, jump.side)
    return value


# ==================== Envelope and cycles ====================
def rational_approximation(c: float, max_denominator: Optional[int] = None, tol: Optional[float] = None) -> Optional[Fraction]:
    """p/q with q <= max_denominator and |c - p/q| < tol, or None"""
    settings = get_settings()
    max_denominator = settings.rational_max_denominator if max_denominator is None else max_denominator
    tol = settings.rational_tol if tol is None else tol
    approx = Fraction(c).limit_denominator(max_denominator)
    return approx if abs(c - float(approx)) < tol else None


def attained_exponents(c: float, side: Side) -> Tuple[float, float, Optional[int]]:
    """
    Smallest and largest exponent e(n) taken infinitely often, and q

    Rational c = p/q: {0, 1/q, ..., (q-1)/q} for left-continuous jumps and
    {1/q, ..., 1} for right-continuous ones. Irrational c: the closure [0, 1].
    """
    approx = rational_approximation(c)
    if approx is None:
        return 0.0, 1.0, None
    q = approx.denominator
    if q == 1:
        return (1.0, 1.0, q) if side is Side.RIGHT else (0.0, 0.0, q)
    if side is Side.RIGHT:
        return 1.0 / q, 1.0, q
    return 0.0, (q - 1.0) / q, q


@dataclass
class Envelope:
    """limsup / liminf of D_n / G^n implied by the jump formula"""
    limsup: float
    liminf: float
    denominators: List[Optional[int]] = field(default_factory=list)
    extrapolated: bool = False


def envelope(p: AsymptoticPrediction) -> Envelope:
    """
    limsup and liminf of the predicted sequence

    A right-continuous jump at c = p/q gives alpha*beta*max/min{gamma^(1/q), gamma};
    a left-continuous one gives alpha*beta*max/min{1, gamma^((q-1)/q)}; irrational
    c gives alpha*beta*max/min{1, gamma} for either side. With several jumps
    the per-jump extrema are multiplied, which bounds the true values.
    """
    upper = lower = p.alpha
    denominators: List[Optional[int]] = []
    for jump in p.jumps:
        e_lo, e_hi, q = attained_exponents(jump.c, jump.side)
        candidates = (jump.gamma ** e_lo, jump.gamma ** e_hi)
        upper *= jump.beta * max(candidates)
        lower *= jump.beta * min(candidates)
        denominators.append(q)
    extrapolated = len(p.jumps) > 1
    if extrapolated:
        logger.warning("Envelope over several jumps is a product of per-jump extrema (bound only)")
    return Envelope(limsup=upper, liminf=lower, denominators=denominators, extrapolated=extrapolated)


def prediction_cycle(p: AsymptoticPrediction) -> List[float]:
    """
    One period of the predicted sequence when every jump sits at a rational c

    Entry r is the prediction for n = q + r, where q is the common denominator.
    """
    if not p.jumps:
        return [p.alpha]
    q = 1
    for jump in p.jumps:
        approx = rational_approximation(jump.c)
        if approx is None:
            raise ValidationError(f"jump at {jump.c} is not rational; no finite cycle")
        q = q * approx.denominator // math.gcd(q, approx.denominator)
    if q > MAX_CYCLE_LENGTH:
        raise ValidationError(f"cycle length {q} exceeds {MAX_CYCLE_LENGTH}")
    return [jump_prediction(p, q + r) for r in range(q)]
