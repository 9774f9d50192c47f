from src.combinatorics.shapes import (
    BetaSet,
    Partition,
    ShapeBound,
    SkewShape,
    StripMode,
    StripResult,
    Tiling,
    add_strips,
    conjugate,
    from_beta,
    n_core,
    remove_strips,
    ribbon_tilings,
    to_beta,
)
from src.combinatorics.tableaux import (
    AlphabetOrder,
    Letter,
    LetterKind,
    SuperTableau,
    enumerate_tableaux,
    interleavings,
    super_llt,
)

__all__ = [
    "AlphabetOrder",
    "BetaSet",
    "Letter",
    "LetterKind",
    "Partition",
    "ShapeBound",
    "SkewShape",
    "StripMode",
    "StripResult",
    "SuperTableau",
    "Tiling",
    "add_strips",
    "conjugate",
    "enumerate_tableaux",
    "from_beta",
    "interleavings",
    "n_core",
    "remove_strips",
    "ribbon_tilings",
    "super_llt",
    "to_beta",
]
