"""Supersimple 2-(n,4,lambda) designs, Conway groupoids, and incidence codes."""

from .design import (
    Design,
    build_affine_design,
    build_boolean,
    build_p3,
    build_sp_design,
    design_from_json,
    design_to_json,
    search_designs,
    validate,
)
from .f2 import F2Matrix, SymplecticSpace, sp_order, space
from .groupoid import (
    GroupoidSummary,
    elementary_move,
    groupoid_contains,
    groupoid_size,
    hole_stabilizer,
    move_group,
    move_sequence,
    orbit_partition_k_subsets,
    summarize,
)
from .perm import Permutation, PermGroup

__all__ = [
    "Design",
    "F2Matrix",
    "GroupoidSummary",
    "PermGroup",
    "Permutation",
    "SymplecticSpace",
    "build_affine_design",
    "build_boolean",
    "build_p3",
    "build_sp_design",
    "design_from_json",
    "design_to_json",
    "elementary_move",
    "groupoid_contains",
    "groupoid_size",
    "hole_stabilizer",
    "move_group",
    "move_sequence",
    "orbit_partition_k_subsets",
    "search_designs",
    "space",
    "sp_order",
    "summarize",
    "validate",
]
