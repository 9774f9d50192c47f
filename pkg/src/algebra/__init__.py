from src.algebra.poly import (
    ArithOp,
    Family,
    Monomial,
    MPoly,
    Place,
    Q,
    Sign,
    VarId,
    expand_product_factor,
    poly_arith,
    poly_sum,
    product,
    series_truncate,
    specialize,
    w,
    x,
    y,
    z,
)

__all__ = [
    "ArithOp",
    "Family",
    "Monomial",
    "MPoly",
    "Place",
    "Q",
    "Sign",
    "VarId",
    "expand_product_factor",
    "poly_arith",
    "poly_sum",
    "product",
    "series_truncate",
    "specialize",
    "w",
    "x",
    "y",
    "z",
]
