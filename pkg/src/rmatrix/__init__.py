from src.rmatrix.fixture import load_fixture, pin_strand_order, pin_type_assignment, save_fixture
from src.rmatrix.train import train_argument, train_argument_demo
from src.rmatrix.weights import (
    PINNED_ASSIGNMENT,
    R1Config,
    RKind,
    RTypeAssignment,
    RTypeName,
    RVertex,
    StrandOrder,
    r_weight,
)
from src.rmatrix.ybe import YBEReport, verify_ybe

__all__ = [
    "PINNED_ASSIGNMENT",
    "R1Config",
    "RKind",
    "RTypeAssignment",
    "RTypeName",
    "RVertex",
    "StrandOrder",
    "YBEReport",
    "load_fixture",
    "pin_strand_order",
    "pin_type_assignment",
    "r_weight",
    "save_fixture",
    "train_argument",
    "train_argument_demo",
    "verify_ybe",
]
