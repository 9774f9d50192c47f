from src.cauchy.identities import (
    CauchyReport,
    CauchySpec,
    DualMode,
    cauchy_product,
    conjugate_polynomial_identity,
    verify_cauchy,
    verify_dual_cauchy,
    verify_general_cauchy,
)
from src.cauchy.window import CauchyWindow, WindowOrder, braid_experiment, verify_window

__all__ = [
    "CauchyReport",
    "CauchySpec",
    "CauchyWindow",
    "DualMode",
    "WindowOrder",
    "braid_experiment",
    "cauchy_product",
    "conjugate_polynomial_identity",
    "verify_cauchy",
    "verify_dual_cauchy",
    "verify_general_cauchy",
    "verify_window",
]
