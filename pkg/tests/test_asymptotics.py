"""
Unit tests for quadrature and the closed-form asymptotics
"""
import math
import random

import numpy as np
import pytest
import os
import sys
from scipy.integrate import quad

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from conftest import jump_source
from src.asymptotics import (
    AsymptoticPrediction,
    JumpParameters,
    attained_exponents,
    beta_gamma,
    envelope,
    epsilon_for_target,
    frac,
    frac_prime,
    geometric_mean_log,
    grid_exponent,
    integrate_adaptive_simpson,
    integrate_panels,
    jump_prediction,
    kac_limit,
    log_rho,
    periodic_trapezoid,
    predict,
    prediction_cycle,
    rational_approximation,
    rho,
    shifted_limit,
)
from src.exceptions import QuadratureError, ValidationError
from src.matrix import ratio
from src.potential import Side, parse_potential

RHO_3 = (3 + math.sqrt(5)) / 2
RHO_4 = 2 + math.sqrt(3)
S_3 = math.sqrt(5)
S_4 = math.sqrt(12)


class TestQuadrature:
    """Test adaptive Simpson and the periodic trapezoid rule"""

    def test_polynomial_exact(self):
        """Test Simpson is exact on cubics"""
        value, error = integrate_adaptive_simpson(lambda x: x ** 3 - x, 0.0, 2.0)
        assert value == pytest.approx(2.0, abs=1e-13)
        assert error <= 1e-12

    def test_reversed_and_empty(self):
        """Test orientation and empty intervals"""
        assert integrate_adaptive_simpson(math.exp, 1.0, 0.0)[0] == pytest.approx(1.0 - math.e, abs=1e-12)
        assert integrate_adaptive_simpson(math.exp, 0.5, 0.5) == (0.0, 0.0)

    def test_non_convergence(self):
        """Test a singular integrand exhausts the depth"""
        with pytest.raises(QuadratureError):
            integrate_adaptive_simpson(lambda x: 1.0 / x if x else 1e300, 0.0, 1.0, tol=1e-12, max_depth=8)

    def test_panels(self):
        """Test a kink integrates exactly when it sits on a panel edge"""
        panels = [(0.0, 1 / 3), (1 / 3, 1.0)]
        assert integrate_panels(lambda x: abs(x - 1 / 3), panels) == pytest.approx(5 / 18, abs=1e-12)

    def test_periodic_trapezoid(self):
        """Test spectral accuracy on a smooth periodic integrand"""
        value = periodic_trapezoid(lambda t: 1.0 / (3.0 - 2.0 * np.cos(t)), 256)
        assert value == pytest.approx(1.0 / math.sqrt(5.0), abs=1e-14)


class TestBuildingBlocks:
    """Test rho, fractional parts and grid exponents"""

    def test_rho(self):
        """Test the larger root of r + 1/r = v"""
        assert rho(3.0) == pytest.approx(2.618033988749895, rel=1e-15)
        assert log_rho(3.0) == pytest.approx(0.9624236501192069, rel=1e-14)
        values = rho([3.0, 4.0])
        assert values[1] == pytest.approx(RHO_4, rel=1e-15)
        with pytest.raises(ValidationError):
            rho(2.0)

    def test_rho_identities(self):
        """Test rho * (1/rho) = 1, rho + 1/rho = v and sqrt(v^2 - 4) = rho - 1/rho"""
        v = np.linspace(2.01, 100.0, 500)
        r = rho(v)
        np.testing.assert_allclose(r * (1.0 / r), 1.0, rtol=1e-12)
        np.testing.assert_allclose(r + 1.0 / r, v, rtol=1e-12)
        np.testing.assert_allclose(np.sqrt(v * v - 4.0), r - 1.0 / r, rtol=1e-12)

    def test_fractional_parts(self):
        """Test {x} and {x}'"""
        assert frac(2.0) == 0.0 and frac_prime(2.0) == 1.0
        assert frac(2.25) == 0.25 and frac_prime(2.25) == 0.25
        assert frac(-0.75) == 0.25

    def test_grid_exponent(self):
        """Test exponents for grid-aligned and misaligned jumps"""
        assert grid_exponent(10, 0.5, Side.RIGHT) == 1.0
        assert grid_exponent(10, 0.5, Side.LEFT) == 0.0
        assert grid_exponent(11, 0.5, Side.RIGHT) == 0.5
        assert grid_exponent(11, 0.5, Side.LEFT) == 0.5
        assert grid_exponent(3, 1 / 3, Side.RIGHT) == 1.0
        assert grid_exponent(7, 1 / math.pi, Side.LEFT) == pytest.approx(7 / math.pi - 2)


class TestSmoothLimits:
    """Test G(f), Kac's limit and the shifted limit"""

    def test_geometric_mean_constant(self, constant_potential):
        """Test log G = log rho(3) for f = 3"""
        assert geometric_mean_log(constant_potential) == pytest.approx(math.log(RHO_3), abs=1e-12)

    def test_geometric_mean_against_scipy(self):
        """Test log G against an independent quadrature"""
        f = parse_potential("piece [0, 1]: 3.3 + x^2/2 + sin(3*x)")
        reference, _ = quad(lambda x: math.log(rho(3.3 + x * x / 2 + math.sin(3 * x))), 0, 1, epsabs=1e-14)
        assert geometric_mean_log(f) == pytest.approx(reference, abs=1e-11)

    def test_geometric_mean_stable_under_tighter_tolerance(self):
        """Test the jump potential's log G is converged"""
        f = parse_potential(jump_source("1/2"))
        assert geometric_mean_log(f) == pytest.approx(geometric_mean_log(f, tol=1e-14), abs=1e-12)

    def test_kac_constant(self, constant_potential):
        """Test Kac's limit for f = 3"""
        assert kac_limit(constant_potential) == pytest.approx(1.1708203932, abs=1e-10)

    def test_kac_linear(self, linear_potential):
        """Test Kac's limit for f = x + 3"""
        expected = 0.5 * (4 + S_4) / (5 * 12) ** 0.25
        assert kac_limit(linear_potential) == pytest.approx(expected, rel=1e-14)
        assert kac_limit(linear_potential) == pytest.approx(1.3409395, abs=1e-7)

    def test_shifted_limit(self, linear_potential):
        """Test the shifted limit and its reduction to Kac at eps = 1"""
        expected = 0.5 * (3 + S_3) / 60 ** 0.25
        assert shifted_limit(linear_potential, 0.0) == pytest.approx(expected, rel=1e-14)
        assert shifted_limit(linear_potential, 1.0) == pytest.approx(kac_limit(linear_potential), abs=1e-12)

    def test_unit_shift_is_kac_for_random_potentials(self):
        """Test eps = 1 reproduces Kac's limit across random smooth potentials"""
        rng = random.Random(4242)
        for _ in range(20):
            a = round(rng.uniform(3.8, 6.0), 4)
            b = round(rng.uniform(-1.0, 1.0), 4)
            c = round(rng.uniform(0.0, 0.5), 4)
            w = round(rng.uniform(1.0, 5.0), 3)
            f = parse_potential(f"piece [0, 1]: {a} + {b}*x + {c}*sin({w}*x)")
            assert shifted_limit(f, 1.0) == pytest.approx(kac_limit(f), abs=1e-12)

    def test_shift_sensitivity(self, linear_potential):
        """Test the determinant limit depends strongly on eps"""
        a, b = shifted_limit(linear_potential, 0.0), shifted_limit(linear_potential, 5.0)
        assert abs(a / b - 1) > 0.5
        assert a / b == pytest.approx((RHO_3 / RHO_4) ** 5, rel=1e-12)

    def test_shift_irrelevant_for_symmetric_endpoints(self, constant_potential):
        """Test f(0) = f(1) makes the shifted limit constant"""
        assert shifted_limit(constant_potential, 0.3) == pytest.approx(kac_limit(constant_potential), rel=1e-14)
        with pytest.raises(ValidationError):
            epsilon_for_target(constant_potential, 1.0)

    def test_epsilon_for_target(self, linear_potential):
        """Test solving for the shift that hits a target limit"""
        target = shifted_limit(linear_potential, 0.37)
        assert epsilon_for_target(linear_potential, target) == pytest.approx(0.37, abs=1e-12)
        eps = epsilon_for_target(linear_potential, 2.0)
        assert shifted_limit(linear_potential, eps) == pytest.approx(2.0, rel=1e-12)
        with pytest.raises(ValidationError):
            epsilon_for_target(linear_potential, -1.0)

    def test_smooth_requirements(self, step_potential):
        """Test smooth-only limits refuse jumps"""
        with pytest.raises(ValidationError):
            kac_limit(step_potential)
        with pytest.raises(ValidationError):
            shifted_limit(step_potential, 0.5)
        with pytest.raises(ValidationError):
            epsilon_for_target(step_potential, 1.0)


class TestJumps:
    """Test jump parameters, predictions and envelopes"""

    def test_beta_gamma(self):
        """Test the correction factors for f(c-) = 3, f(c+) = 4"""
        beta, gamma = beta_gamma(3.0, 4.0)
        assert beta == pytest.approx(0.84440, abs=1e-5)
        assert gamma == pytest.approx(1.42552, abs=1e-5)
        assert beta_gamma(4.0, 3.0)[1] == pytest.approx(1 / gamma, rel=1e-14)
        assert beta_gamma(3.5, 3.5) == pytest.approx((1.0, 1.0), rel=1e-15)

    def test_predict_step(self, step_potential):
        """Test the assembled prediction for the step potential"""
        p = predict(step_potential)
        assert p.G_log == pytest.approx(0.5 * math.log(RHO_3) + 0.5 * math.log(RHO_4), abs=1e-13)
        assert p.alpha == pytest.approx(RHO_4 / math.sqrt(S_3 * S_4), rel=1e-14)
        assert len(p.jumps) == 1
        assert p.jumps[0].side is Side.RIGHT

    def test_predict_requires_unshifted_grid(self, step_potential):
        """Test jump predictions refuse eps != 1"""
        with pytest.raises(ValidationError):
            predict(step_potential, epsilon=0.5)

    @pytest.mark.parametrize("side", ["left", "right"])
    def test_step_prediction_is_exact(self, side):
        """Test D_n/G^n for a piecewise constant potential matches the jump formula"""
        f = parse_potential(f"piece [0, 0.5]: 3\npiece [0.5, 1]: 4\njump at 0.5 side {side}")
        p = predict(f)
        for n in range(30, 42):
            assert ratio(f, n, 1.0, p.G_log) == pytest.approx(p.prediction(n), rel=1e-9)

    def test_step_alternates(self, step_potential):
        """Test the prediction alternates between alpha*beta*gamma and alpha*beta*gamma^(1/2)"""
        p = predict(step_potential)
        j = p.jumps[0]
        assert jump_prediction(p, 100) == pytest.approx(p.alpha * j.beta * j.gamma, rel=1e-14)
        assert jump_prediction(p, 101) == pytest.approx(p.alpha * j.beta * j.gamma ** 0.5, rel=1e-14)

    def test_no_jumps_prediction_is_alpha(self, linear_potential):
        """Test the prediction of a smooth potential is its shifted limit"""
        p = predict(linear_potential, epsilon=0.5)
        assert p.prediction(123) == pytest.approx(shifted_limit(linear_potential, 0.5), rel=1e-14)
        assert prediction_cycle(p) == [p.alpha]


class TestEnvelope:
    """Test limsup/liminf and prediction cycles"""

    def setup_method(self):
        beta, gamma = beta_gamma(3.0, 4.0)
        self.beta, self.gamma, self.alpha = beta, gamma, 1.3

    def _prediction(self, *jumps):
        return AsymptoticPrediction(G_log=1.0, alpha=self.alpha, jumps=tuple(jumps))

    def test_rational_right(self):
        """Test c = 1/2, right-continuous"""
        env = envelope(self._prediction(JumpParameters(0.5, Side.RIGHT, self.beta, self.gamma)))
        ab = self.alpha * self.beta
        assert env.limsup == pytest.approx(ab * self.gamma, rel=1e-14)
        assert env.liminf == pytest.approx(ab * self.gamma ** 0.5, rel=1e-14)
        assert env.denominators == [2]
        assert not env.extrapolated

    def test_rational_left(self):
        """Test c = 1/3, left-continuous"""
        env = envelope(self._prediction(JumpParameters(1 / 3, Side.LEFT, self.beta, self.gamma)))
        ab = self.alpha * self.beta
        assert env.limsup == pytest.approx(ab * self.gamma ** (2 / 3), rel=1e-14)
        assert env.liminf == pytest.approx(ab, rel=1e-14)

    def test_unmatched_location(self):
        """Test a location with no close rational uses the closure [0, 1]"""
        c = 0.5 + 3e-7
        assert rational_approximation(c) is None
        assert attained_exponents(c, Side.RIGHT) == (0.0, 1.0, None)
        env = envelope(self._prediction(JumpParameters(c, Side.RIGHT, self.beta, self.gamma)))
        ab = self.alpha * self.beta
        assert env.limsup == pytest.approx(ab * self.gamma, rel=1e-14)
        assert env.liminf == pytest.approx(ab, rel=1e-14)

    def test_inverse_pi_is_effectively_irrational(self):
        """Test 1/pi only matches fractions with huge denominators"""
        e_lo, e_hi, q = attained_exponents(1 / math.pi, Side.LEFT)
        assert q > 100_000
        env = envelope(self._prediction(JumpParameters(1 / math.pi, Side.LEFT, self.beta, self.gamma)))
        ab = self.alpha * self.beta
        assert env.limsup == pytest.approx(ab * self.gamma, rel=1e-5)
        assert env.liminf == pytest.approx(ab, rel=1e-5)
        with pytest.raises(ValidationError):
            prediction_cycle(self._prediction(JumpParameters(1 / math.pi, Side.LEFT, self.beta, self.gamma)))

    def test_two_jumps_are_extrapolated(self, caplog):
        """Test several jumps give a flagged product bound"""
        env = envelope(self._prediction(
            JumpParameters(0.25, Side.LEFT, self.beta, self.gamma),
            JumpParameters(0.5, Side.RIGHT, 1.1, 0.9),
        ))
        assert env.extrapolated
        assert env.limsup >= env.liminf
        assert "bound" in caplog.text

    @pytest.mark.parametrize("side", ["left", "right"])
    @pytest.mark.parametrize("c", ["1/2", "1/3", "2/7"])
    def test_sequence_stays_inside_envelope(self, c, side):
        """Test every n in 2..400 lies between liminf and limsup, and both are reached"""
        p = predict(parse_potential(jump_source(c, side)))
        env = envelope(p)
        values = [jump_prediction(p, n) for n in range(2, 401)]
        assert all(env.liminf * (1 - 1e-12) <= v <= env.limsup * (1 + 1e-12) for v in values)
        assert min(values) == pytest.approx(env.liminf, rel=1e-12)
        assert max(values) == pytest.approx(env.limsup, rel=1e-12)

    def test_cycle(self):
        """Test one period for c = 1/3"""
        p = self._prediction(JumpParameters(1 / 3, Side.RIGHT, self.beta, self.gamma))
        cycle = prediction_cycle(p)
        assert len(cycle) == 3
        ab = self.alpha * self.beta
        assert cycle[0] == pytest.approx(ab * self.gamma, rel=1e-14)
        assert cycle[1] == pytest.approx(ab * self.gamma ** (1 / 3), rel=1e-12)
        assert cycle[2] == pytest.approx(ab * self.gamma ** (2 / 3), rel=1e-12)
        assert jump_prediction(p, 7) == pytest.approx(cycle[1], rel=1e-12)


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
