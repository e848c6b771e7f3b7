"""Edge fragility, graph spanners and sigma-resilient spanner augmentation."""

__version__ = "0.1.0"

from .fragility import (
    all_fragilities,
    check_girth_bound,
    edge_fragility,
    fragility_oracle,
    high_fragility_subgraph,
)
from .generators import (
    gen_basic,
    gen_fragility_gap_gadget,
    gen_intersection_complement,
    gen_random,
    triangle_deleted_spanner,
)
from .graph import (
    INF,
    BackupCycle,
    Graph,
    GraphError,
    Path,
    bridges,
    build_graph,
    distance_avoiding_edge,
    girth,
    short_cycle,
    sssp,
    two_edge_connected_components,
)
from .io import Report, emit_report, parse_edge_list, parse_report, serialize_edge_list
from .resilient import (
    backup_cycle,
    cycle_union_stats,
    fragility_classes,
    make_resilient,
    verify_resilient,
)
from .spanners import (
    Spanner,
    additive2_spanner,
    fault_tolerant_fragility_bound,
    fault_tolerant_spanner,
    greedy_spanner,
    verify_fault_tolerance,
    verify_spanner,
)

__all__ = [
    "BackupCycle",
    "Graph",
    "GraphError",
    "INF",
    "Path",
    "Report",
    "Spanner",
    "additive2_spanner",
    "all_fragilities",
    "backup_cycle",
    "bridges",
    "build_graph",
    "check_girth_bound",
    "cycle_union_stats",
    "distance_avoiding_edge",
    "edge_fragility",
    "emit_report",
    "fault_tolerant_fragility_bound",
    "fault_tolerant_spanner",
    "fragility_classes",
    "fragility_oracle",
    "gen_basic",
    "gen_fragility_gap_gadget",
    "gen_intersection_complement",
    "gen_random",
    "girth",
    "greedy_spanner",
    "high_fragility_subgraph",
    "make_resilient",
    "parse_edge_list",
    "parse_report",
    "serialize_edge_list",
    "short_cycle",
    "sssp",
    "triangle_deleted_spanner",
    "two_edge_connected_components",
    "verify_fault_tolerance",
    "verify_resilient",
    "verify_spanner",
]
