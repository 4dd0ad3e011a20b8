from .fourier import (
    FourierLogCoefficients,
    MejlboSchmidtConstant,
    default_truncation,
    fourier_coefficients,
    ms_constant,
    quadrature_coefficient,
)

__all__ = [
    "FourierLogCoefficients",
    "MejlboSchmidtConstant",
    "default_truncation",
    "fourier_coefficients",
    "ms_constant",
    "quadrature_coefficient",
]
