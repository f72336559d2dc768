"""Linear-time covering constructions on graphs with few cycles, plus exact
oracles to check them against."""

from .errors import (
    CycloCoverError,
    InputError,
    InternalInvariantViolation,
    LimitExceeded,
    MinDegreeTooSmall,
    UnknownProblemTag,
)
from .dispatch import CONSTRUCTIONS, construct
from .geodesy import dem_construct, geodetic_construct, meg_construct
from .good_edges import GoodEdgeSet, good_edge_set, is_good, root_path
from .graph_core import Graph, base_decomposition, bfs_index, parse_graph, structure_profile
from .instances import FamilySpec, gen_bouquet, gen_family, gen_k2k_plus_edge, gen_random_cyclomatic
from .metric_dim import (
    doubly_resolving_construct,
    edge_resolving_construct,
    mixed_resolving_construct,
    resolving_construct,
)
from .oracle import (
    brute_force_min_path_system,
    brute_force_min_set,
    verify_path_system,
    verify_set,
    xp_solve,
)
from .path_cover import ipec_construct, ipp_construct, leaf_pairing_repair
from .solutions import PathSystem, SolutionSet, size_bound

__version__ = "0.1.0"
