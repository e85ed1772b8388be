"""Conditional independence structures of weighted DAGs under max-plus arithmetic."""

from .graph import Dag, CycleError, dag_from_edges, enumerate_paths, transitive_closure
from .tropical import (
    NEG_INF,
    TropicalMatrix,
    WeightedDag,
    critical_paths,
    is_generic,
    kleene_star,
    path_weight,
    weighted_dag_from_list,
)
from .separation import (
    CiStatement,
    Maxoid,
    c_star_separated,
    closure_weights,
    critical_dag,
    derive_set_statement,
    maxoid,
    parse_ci_statement,
    perturb_across_facet,
    weighted_transitive_reduction,
)

__all__ = [
    "Dag",
    "CycleError",
    "dag_from_edges",
    "enumerate_paths",
    "transitive_closure",
    "NEG_INF",
    "TropicalMatrix",
    "WeightedDag",
    "critical_paths",
    "is_generic",
    "kleene_star",
    "path_weight",
    "weighted_dag_from_list",
    "CiStatement",
    "Maxoid",
    "c_star_separated",
    "closure_weights",
    "critical_dag",
    "derive_set_statement",
    "maxoid",
    "parse_ci_statement",
    "perturb_across_facet",
    "weighted_transitive_reduction",
]
