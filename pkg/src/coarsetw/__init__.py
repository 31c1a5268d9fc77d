"""Compressing partitions of bounded-treewidth graphs and the quasi-isometry pipeline."""
from .compress import (ClaimError, CompressionResult, PreconditionError, build_compressing,
                       change_providers)
from .graph import INF, Graph, GraphError, as_scalar, format_scalar, graph_power, weak_diameter
from .kernels import BACKEND
from .qi import (IndexedPartition, QIError, QuasiIsometryMap, check_qi, cluster_partition,
                 power_partition, pull_back, qi_from_partition, qi_to_bounded_width_pipeline, quotient)
from .treedecomp import (DecompositionError, TreeDecomposition, heuristic_pd, heuristic_td,
                         priority_order, root_at, validate)
from .verify import verify_result

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "INF", "ClaimError", "CompressionResult", "DecompositionError", "Graph", "GraphError",
    "IndexedPartition", "PreconditionError", "QIError", "QuasiIsometryMap", "TreeDecomposition",
    "as_scalar", "build_compressing", "change_providers", "check_qi", "cluster_partition",
    "format_scalar", "graph_power", "heuristic_pd", "heuristic_td", "power_partition",
    "priority_order", "pull_back", "qi_from_partition", "qi_to_bounded_width_pipeline", "quotient",
    "root_at", "validate", "verify_result", "weak_diameter",
]
