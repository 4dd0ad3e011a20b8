"""
Euler–Maclaurin summation lemmas checked against brute-force sums.

Every sum here is sum_{k=1}^{n-1} g((k - 1 + eps) / n), i.e. g sampled on the
first n-1 points of the matrix grid.
"""
import logging
import math
from dataclasses import dataclass
from typing import Callable, Iterable, List, Optional, Tuple

import numpy as np

from src.asymptotics import grid_exponent, integrate_panels, log_rho
from src.exceptions import PotentialDomainError, ValidationError
from src.matrix import sample_points
from src.potential import Approach, JumpPoint, PiecewiseFunction, Side

logger = logging.getLogger(__name__)

FORMULAS = ("em", "shifted", "jump", "piecewise")


@dataclass(frozen=True)
class Summand:
    """
    A piecewise function, optionally composed with a pointwise transform

    ``Summand(f, log_rho)`` is the summand log rho(f(x)) of the determinant
    proof; ``Summand(f)`` sums f itself.
    """
    func: PiecewiseFunction
    transform: Optional[Callable] = None
    label: str = "g"

    def _apply(self, values):
        return values if self.transform is None else self.transform(values)

    @property
    def jumps(self) -> Tuple[JumpPoint, ...]:
        return self.func.jumps

    @property
    def domain(self) -> Tuple[float, float]:
        return self.func.domain

    def sample(self, xs: np.ndarray) -> np.ndarray:
        return np.asarray(self._apply(self.func.sample(xs)), dtype=float)

    def value(self, x: float, approach: Approach = Approach.AT) -> float:
        return float(self._apply(self.func.eval(x, approach)))

    def limits_at(self, c: float) -> Tuple[float, float]:
        return self.value(c, Approach.LEFT), self.value(c, Approach.RIGHT)

    def integral(self, a: float = 0.0, b: float = 1.0, tol: Optional[float] = None) -> float:
        """Integral over [a, b], one adaptive Simpson run per smooth panel"""
        total = []
        for lo, hi, piece in self.func.smooth_panels(a, b):
            integrand = lambda x, e=piece.expr: float(self._apply(float(e.evaluate(x))))
            total.append(integrate_panels(integrand, [(lo, hi)], tol))
        return math.fsum(total)


def log_rho_summand(f: PiecewiseFunction) -> Summand:
    """g(x) = log rho(f(x)), the summand behind log D_n"""
    return Summand(f, log_rho, label="log rho(f)")


def _as_summand(g) -> Summand:
    return g if isinstance(g, Summand) else Summand(g)


def exact_sum(g, n: int, epsilon: float = 1.0) -> float:
    """
    Brute-force sum_{k=1}^{n-1} g((k - 1 + eps) / n)

    Ascending k with compensated accumulation (``math.fsum``).
    """
    g = _as_summand(g)
    if n < 2:
        return 0.0
    xs = sample_points(n, epsilon)[:-1]
    return math.fsum(g.sample(xs).tolist())


def em_formula(g, n: int) -> float:
    """n * int_0^1 g - (g(0) + g(1)) / 2, for g without jumps"""
    g = _as_summand(g)
    if g.jumps:
        raise ValidationError("summand has jumps; use jump_formula")
    return n * g.integral() - 0.5 * (g.value(0.0) + g.value(1.0))


def shifted_formula(g, n: int, epsilon: float) -> float:
    """
    n * int_0^1 g + (eps - 3/2) g(1) + (1/2 - eps) g(0)

    Args:
        g: Smooth summand whose domain holds every shifted sample point
        n: Number of grid cells
        epsilon: Index shift

    Returns:
        Formula value
    """
    g = _as_summand(g)
    if g.jumps:
        raise ValidationError("shifted lemma needs a summand without jumps")
    lo, hi = g.domain
    first, last = epsilon / n, (n - 2 + epsilon) / n
    if n >= 2 and (first < lo or last > hi):
        raise PotentialDomainError(
            f"shifted points [{first:.6g}, {last:.6g}] leave domain [{lo}, {hi}] (n={n}, epsilon={epsilon})"
        )
    return n * g.integral() + (epsilon - 1.5) * g.value(1.0) + (0.5 - epsilon) * g.value(0.0)


def jump_formula(g, n: int) -> float:
    """
    n * int g - (g(0) + g(1))/2 + sum_j (e_j(n) - 1/2) (g(c_j+) - g(c_j-))

    e_j is {n c_j} for left-continuous jumps and {n c_j}' for right-continuous
    ones. Without jumps this is ``em_formula``.
    """
    g = _as_summand(g)
    total = n * g.integral() - 0.5 * (g.value(0.0) + g.value(1.0))
    corrections = []
    for jump in g.jumps:
        if not 0.0 < jump.c < 1.0:
            raise PotentialDomainError(f"jump at {jump.c} must lie strictly inside (0, 1)")
        minus, plus = g.limits_at(jump.c)
        corrections.append((grid_exponent(n, jump.c, jump.side) - 0.5) * (plus - minus))
    return total + math.fsum(corrections)


def piecewise_em_formula(g, n: int) -> float:
    """
    Euler–Maclaurin applied to each smooth part separately

    On a part [a, b] the sum over grid points is n*int_a^b g
    + (1/2 - e_b) g(b-) - (1/2 - e_a) g(a+), where e is the grid exponent of
    the boundary (the side convention decides which part owns a grid point
    sitting on it). The k = n term picked up by the last part is removed.
    """
    g = _as_summand(g)
    sides = {jump.c: jump.side for jump in g.jumps}
    cuts = [0.0] + list(g.func.breakpoints) + [1.0]
    terms = []
    for a, b in zip(cuts, cuts[1:]):
        e_a = grid_exponent(n, a, sides.get(a, Side.LEFT)) if 0.0 < a else 0.0
        e_b = grid_exponent(n, b, sides.get(b, Side.LEFT)) if b < 1.0 else 0.0
        terms.append(n * g.integral(a, b))
        terms.append((0.5 - e_b) * g.value(b, Approach.LEFT))
        terms.append(-(0.5 - e_a) * g.value(a, Approach.RIGHT))
    terms.append(-g.value(1.0))
    return math.fsum(terms)


@dataclass
class SumComparison:
    """Brute-force sum against a lemma's formula"""
    n: int
    exact_sum: float
    formula_value: float
    residual: float

    @property
    def scaled_residual(self) -> float:
        return self.residual * self.n


def compare(g, n: int, formula: str = "em", epsilon: float = 1.0) -> SumComparison:
    """
    Evaluate one lemma at one n

    Args:
        g: Summand or piecewise function
        n: Number of grid cells
        formula: 'em', 'shifted', 'jump' or 'piecewise'
        epsilon: Shift (only 'shifted' accepts eps != 1)

    Returns:
        Comparison record
    """
    if formula not in FORMULAS:
        raise ValidationError(f"unknown formula {formula!r}; choose from {', '.join(FORMULAS)}")
    if formula != "shifted" and epsilon != 1.0:
        raise ValidationError(f"formula {formula!r} is stated for epsilon = 1 only")
    g = _as_summand(g)
    if formula == "em":
        value = em_formula(g, n)
    elif formula == "shifted":
        value = shifted_formula(g, n, epsilon)
    elif formula == "jump":
        value = jump_formula(g, n)
    else:
        value = piecewise_em_formula(g, n)
    exact = exact_sum(g, n, epsilon)
    return SumComparison(n=n, exact_sum=exact, formula_value=value, residual=exact - value)


def residual_table(g, ns: Iterable[int], formula: str = "em", epsilon: float = 1.0) -> List[SumComparison]:
    """Comparisons over several n, ascending"""
    table = [compare(g, n, formula, epsilon) for n in sorted(set(ns))]
    logger.debug(f"{formula} lemma: max |residual|*n = {residual_constant(table):.6g}")
    return table


def residual_constant(table: List[SumComparison]) -> float:
    """C = max |residual| * n over a table"""
    return max((abs(row.scaled_residual) for row in table), default=0.0)
