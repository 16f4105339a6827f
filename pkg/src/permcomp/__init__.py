"""Competition graphs of permutations and of pattern-avoiding permutations.

The library layers are ``perm`` (one-line permutations, patterns),
``graph`` (graph types, canonical keys, interval recognition),
``compgraph`` (D, C and W of a permutation), ``structure`` (minimisation,
partitions, 132-realisation, base permutations), ``bijections`` (the T and
M maps) and ``enumeration`` (class sweeps, h(m, n) and its series).
"""

__version__ = "0.1.0"

from .bijections import M, M_inverse, T_power, path_labeling, path_to_star, star_labeling, star_to_path
from .compgraph import (
    competition_graph,
    digraph_of,
    pointset_competition_graph,
    pointset_to_permutation,
    weighted_competition_graph,
)
from .errors import PermCompError
from .graph import SimpleGraph, WeightedGraph, canonical_key, is_interval, is_isomorphic, iso_modulo_isolated
from .perm import Permutation, avoiders, avoids, contains, count, inflate, occurrences, reduce
from .report import Report
from .structure import component_partition, dominating_vertex, is_redundant, minimize, realize_132

__all__ = [
    "__version__",
    "M",
    "M_inverse",
    "T_power",
    "path_labeling",
    "path_to_star",
    "star_labeling",
    "star_to_path",
    "competition_graph",
    "digraph_of",
    "pointset_competition_graph",
    "pointset_to_permutation",
    "weighted_competition_graph",
    "PermCompError",
    "SimpleGraph",
    "WeightedGraph",
    "canonical_key",
    "is_interval",
    "is_isomorphic",
    "iso_modulo_isolated",
    "Permutation",
    "avoiders",
    "avoids",
    "contains",
    "count",
    "inflate",
    "occurrences",
    "reduce",
    "Report",
    "component_partition",
    "dominating_vertex",
    "is_redundant",
    "minimize",
    "realize_132",
]
