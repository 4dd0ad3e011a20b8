from .lemmas import (
    FORMULAS,
    Summand,
    SumComparison,
    compare,
    em_formula,
    exact_sum,
    jump_formula,
    log_rho_summand,
    piecewise_em_formula,
    residual_constant,
    residual_table,
    shifted_formula,
)

__all__ = [
    "FORMULAS",
    "Summand",
    "SumComparison",
    "compare",
    "em_formula",
    "exact_sum",
    "jump_formula",
    "log_rho_summand",
    "piecewise_em_formula",
    "residual_constant",
    "residual_table",
    "shifted_formula",
]
