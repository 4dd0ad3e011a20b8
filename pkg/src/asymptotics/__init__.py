from .quadrature import integrate_adaptive_simpson, integrate_panels, periodic_trapezoid
from .limits import (
    AsymptoticPrediction,
    Envelope,
    JumpParameters,
    attained_exponents,
    beta_gamma,
    endpoint_values,
    envelope,
    epsilon_for_target,
    frac,
    frac_prime,
    geometric_mean_log,
    grid_exponent,
    jump_parameters,
    jump_prediction,
    kac_limit,
    log_rho,
    predict,
    prediction_cycle,
    rational_approximation,
    rho,
    shifted_limit,
)

__all__ = [
    "integrate_adaptive_simpson",
    "integrate_panels",
    "periodic_trapezoid",
    "AsymptoticPrediction",
    "Envelope",
    "JumpParameters",
    "attained_exponents",
    "beta_gamma",
    "endpoint_values",
    "envelope",
    "epsilon_for_target",
    "frac",
    "frac_prime",
    "geometric_mean_log",
    "grid_exponent",
    "jump_parameters",
    "jump_prediction",
    "kac_limit",
    "log_rho",
    "predict",
    "prediction_cycle",
    "rational_approximation",
    "rho",
    "shifted_limit",
]
