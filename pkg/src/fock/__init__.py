from src.fock.operators import (
    FockVector,
    KappaValues,
    OperatorKind,
    PolynomialKind,
    apply_operator,
    kappa,
    operator_polynomial,
)
from src.fock.relations import CommutationPair, CommutationReport, verify_commutation

__all__ = [
    "CommutationPair",
    "CommutationReport",
    "FockVector",
    "KappaValues",
    "OperatorKind",
    "PolynomialKind",
    "apply_operator",
    "kappa",
    "operator_polynomial",
    "verify_commutation",
]
