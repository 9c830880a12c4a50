"""FOON graphs: text-format parsing and task-tree retrieval by search."""

from .core import (
    FoonError,
    FoonGraph,
    FunctionalUnit,
    InvalidNodeError,
    InvalidUnitError,
    Kitchen,
    MotionNode,
    NodeKey,
    ObjectNode,
    StateDescriptor,
    TaskTree,
    ValidationReport,
    build_graph,
    input_keys,
    node_key,
    normalize,
    output_keys,
    reachable_oracle,
    unit_signature,
    validate_tree,
)
from .parsing import (
    FoonWarning,
    ParseDiagnostic,
    SchemaError,
    apply_motion_rates,
    export_dot,
    parse_foon_text,
    parse_goals,
    parse_kitchen,
    parse_motion_rates,
    serialize_task_tree,
    serialize_units,
)
from .search import (
    DEPTH_EXHAUSTED,
    INPUT_COUNT,
    SOLVED,
    SUCCESS_RATE,
    UNSOLVABLE,
    SearchConfig,
    SearchOutcome,
    SearchStats,
    depth_limited_search,
    finalize_tree,
    gbfs_search,
    heuristic_select,
    ids_search,
)

__version__ = "0.1.0"

__all__ = [
    "DEPTH_EXHAUSTED",
    "FoonError",
    "FoonGraph",
    "FoonWarning",
    "FunctionalUnit",
    "INPUT_COUNT",
    "InvalidNodeError",
    "InvalidUnitError",
    "Kitchen",
    "MotionNode",
    "NodeKey",
    "ObjectNode",
    "ParseDiagnostic",
    "SOLVED",
    "SUCCESS_RATE",
    "SchemaError",
    "SearchConfig",
    "SearchOutcome",
    "SearchStats",
    "StateDescriptor",
    "TaskTree",
    "UNSOLVABLE",
    "ValidationReport",
    "apply_motion_rates",
    "build_graph",
    "depth_limited_search",
    "export_dot",
    "finalize_tree",
    "gbfs_search",
    "heuristic_select",
    "ids_search",
    "input_keys",
    "node_key",
    "normalize",
    "output_keys",
    "parse_foon_text",
    "parse_goals",
    "parse_kitchen",
    "parse_motion_rates",
    "reachable_oracle",
    "serialize_task_tree",
    "serialize_units",
    "unit_signature",
    "validate_tree",
]
