"""Exact domination variants on flower snarks J_n."""

__version__ = "0.1.0"

from .graph import (  # noqa: E402
    FlowerSnark,
    VertexSet,
    build_flower_snark,
    chromatic_index,
    copy_subset,
    copy_weights,
    export_graph,
    girth,
    is_connected_induced,
    weight_histogram,
)
from .validators import GuardFunction, Variant, has_cyclic_pattern, validate  # noqa: E402
from .certificates import certificate, formula_value  # noqa: E402
from .solvers import CapacityError, SolveResult, enumerate_valid_sets, solve  # noqa: E402

__all__ = [
    "CapacityError",
    "FlowerSnark",
    "GuardFunction",
    "SolveResult",
    "Variant",
    "VertexSet",
    "build_flower_snark",
    "certificate",
    "chromatic_index",
    "copy_subset",
    "copy_weights",
    "enumerate_valid_sets",
    "export_graph",
    "formula_value",
    "girth",
    "has_cyclic_pattern",
    "is_connected_induced",
    "solve",
    "validate",
    "weight_histogram",
]
