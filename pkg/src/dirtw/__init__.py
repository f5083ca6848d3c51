"""Directed tree-width toolkit: arboreal decompositions with guaranteed
width or linked-set certificates, haven evaluation, bramble-hitting paths,
well-linked sets, and path systems, plus exact small-scale oracles."""

from .digraph import (
    Digraph,
    FlowNetwork,
    MengerResult,
    Path,
    SccDecomposition,
    Vertex,
    is_guarded,
    menger,
    parse_edge_list,
    reachable,
    scc,
    serialize_edge_list,
    vkey,
    vsorted,
)
from .lincut import (
    CutCertificate,
    TerminalSequence,
    brute_force_vertex_cut,
    linear_edge_cut,
    linear_vertex_cut,
)
from .balsep import (
    BalancedSeparatorInstance,
    BalancedSeparatorResult,
    balanced_separator,
    brute_force_balanced_separator,
    is_balanced_separator,
    ordered_partitions,
)
from .arboreal import (
    ArborealDecomposition,
    LinkedSetCertificate,
    ValidationReport,
    Violation,
    decompose,
    haven_eval,
    validate,
)
from .bramble import (
    PathSystem,
    SplitState,
    TBramble,
    build_path_system,
    complement_order_at_most,
    extend_split,
    hitting_path,
    is_hitting_set,
    order_parameter,
    verify_well_linked,
    well_linked_set,
)

__all__ = [
    "ArborealDecomposition",
    "LinkedSetCertificate",
    "ValidationReport",
    "Violation",
    "decompose",
    "haven_eval",
    "validate",
    "PathSystem",
    "SplitState",
    "TBramble",
    "build_path_system",
    "complement_order_at_most",
    "extend_split",
    "hitting_path",
    "is_hitting_set",
    "order_parameter",
    "verify_well_linked",
    "well_linked_set",
    "BalancedSeparatorInstance",
    "BalancedSeparatorResult",
    "balanced_separator",
    "brute_force_balanced_separator",
    "is_balanced_separator",
    "ordered_partitions",
    "CutCertificate",
    "TerminalSequence",
    "brute_force_vertex_cut",
    "linear_edge_cut",
    "linear_vertex_cut",
    "Digraph",
    "FlowNetwork",
    "MengerResult",
    "Path",
    "SccDecomposition",
    "Vertex",
    "is_guarded",
    "menger",
    "parse_edge_list",
    "reachable",
    "scc",
    "serialize_edge_list",
    "vkey",
    "vsorted",
]
