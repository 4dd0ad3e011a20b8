from .schrodinger import (
    SchrodingerMatrix,
    DeterminantResult,
    build,
    chebyshev_determinant,
    det_bruteforce,
    det_log,
    minor_ratios,
    ratio,
    sample_points,
)
from .spectrum import eigenvalues, phi_function, sturm_count, trace_phi

__all__ = [
    "SchrodingerMatrix",
    "DeterminantResult",
    "build",
    "chebyshev_determinant",
    "det_bruteforce",
    "det_log",
    "minor_ratios",
    "ratio",
    "sample_points",
    "eigenvalues",
    "phi_function",
    "sturm_count",
    "trace_phi",
]
