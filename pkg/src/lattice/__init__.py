from src.lattice.branching import BranchingReport, verify_branching
from src.lattice.system import (
    LatticeState,
    LatticeSystem,
    build_alternate_system,
    build_original_system,
    build_system,
    enumerate_states,
    partition_function,
    render_state,
)
from src.lattice.vertices import (
    Horizontal,
    RowKind,
    RowSpec,
    VertexSite,
    VertexType,
    Vertical,
    vertex_type,
    vertex_weight,
)

__all__ = [
    "BranchingReport",
    "Horizontal",
    "LatticeState",
    "LatticeSystem",
    "RowKind",
    "RowSpec",
    "VertexSite",
    "VertexType",
    "Vertical",
    "build_alternate_system",
    "build_original_system",
    "build_system",
    "enumerate_states",
    "partition_function",
    "render_state",
    "verify_branching",
    "vertex_type",
    "vertex_weight",
]
