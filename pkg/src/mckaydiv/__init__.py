"""Search for degree-divisibility bijections between Irr_p'(G) and Irr_p'(N_G(P))."""

from .chardeg import DegreeMultiset, PPrimeDegrees, character_degrees, pprime_filter
from .checker import CheckReport, batch, check_group, degrees_command, symmetric_table
from .matching import brute_force_match, build_graph, kuhn_match, verify_result
from .permcore import (
    ElementTable,
    GroupSpec,
    Permutation,
    compose,
    conjugate,
    generate_elements,
    group_order,
    inverse,
    parse_cycles,
)

__all__ = [
    "CheckReport",
    "DegreeMultiset",
    "ElementTable",
    "GroupSpec",
    "PPrimeDegrees",
    "Permutation",
    "batch",
    "brute_force_match",
    "build_graph",
    "character_degrees",
    "check_group",
    "compose",
    "conjugate",
    "degrees_command",
    "generate_elements",
    "group_order",
    "inverse",
    "kuhn_match",
    "parse_cycles",
    "pprime_filter",
    "symmetric_table",
    "verify_result",
]
