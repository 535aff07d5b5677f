"""Hypergraph connectivity, element-connectivity reduction, and splitting-off."""

from .errors import (
    HypersplitError,
    InstanceTooLargeError,
    InternalInvariantError,
    InvalidCutError,
    InvalidQueryError,
    MergeNotAlmostDisjointError,
    MissingEdgeError,
    NonTerminalEndpointError,
    ParseError,
    ReplayError,
    TerminalEndpointError,
    TrimMissingVertexError,
    UnknownVertexError,
)
from .flow import (
    ConnTable,
    FlowNetwork,
    conn_table_elements,
    conn_table_hyper,
    element_connectivity,
    hyperedge_connectivity,
    max_flow,
)
from .hypergraph import (
    Hypergraph,
    Incidence,
    Merge,
    SplitOffOp,
    Trim,
    apply_op,
    delta,
    hypergraph_equal,
    incidence_graph,
    replay,
)
from .multigraph import ElementConnInstance, Multigraph
from .oracle import (
    GenParams,
    SplitMix64,
    oracle_element_conn,
    oracle_lambda,
    random_element_instance,
    random_hypergraph,
)
from .reduction import (
    MinorTrace,
    ReductionStep,
    is_deletion_preserving,
    maximal_preserving_deletions,
    reduce_edge,
    reduce_to_stable,
)
from .splitoff import (
    Certificate,
    GadgetInstance,
    SplitOffResult,
    Stage,
    StagePipeline,
    build_gadget,
    complete_split_off,
    extract_h_star,
    extract_op_log,
    run_pipeline,
)

__all__ = [
    "HypersplitError",
    "InstanceTooLargeError",
    "InternalInvariantError",
    "InvalidCutError",
    "InvalidQueryError",
    "MergeNotAlmostDisjointError",
    "MissingEdgeError",
    "NonTerminalEndpointError",
    "ParseError",
    "ReplayError",
    "TerminalEndpointError",
    "TrimMissingVertexError",
    "UnknownVertexError",
    "ConnTable",
    "FlowNetwork",
    "conn_table_elements",
    "conn_table_hyper",
    "element_connectivity",
    "hyperedge_connectivity",
    "max_flow",
    "Hypergraph",
    "Incidence",
    "Merge",
    "SplitOffOp",
    "Trim",
    "apply_op",
    "delta",
    "hypergraph_equal",
    "incidence_graph",
    "replay",
    "ElementConnInstance",
    "Multigraph",
    "GenParams",
    "SplitMix64",
    "oracle_element_conn",
    "oracle_lambda",
    "random_element_instance",
    "random_hypergraph",
    "MinorTrace",
    "ReductionStep",
    "is_deletion_preserving",
    "maximal_preserving_deletions",
    "reduce_edge",
    "reduce_to_stable",
    "Certificate",
    "GadgetInstance",
    "SplitOffResult",
    "Stage",
    "StagePipeline",
    "build_gadget",
    "complete_split_off",
    "extract_h_star",
    "extract_op_log",
    "run_pipeline",
]

__version__ = "0.1.0"
