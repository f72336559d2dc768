"""Problem tag to construction lookup, shared by the CLI and the tests."""

from __future__ import annotations

from .errors import UnknownProblemTag
from .geodesy import dem_construct, geodetic_construct, meg_construct
from .graph_core import Graph
from .metric_dim import (
    doubly_resolving_construct,
    edge_resolving_construct,
    mixed_resolving_construct,
    resolving_construct,
)
from .path_cover import ipec_construct, ipp_construct
from .solutions import PathSystem, SolutionSet

CONSTRUCTIONS = {
    "dim": resolving_construct,
    "edim": edge_resolving_construct,
    "mdim": mixed_resolving_construct,
    "doubly": doubly_resolving_construct,
    "geodetic": geodetic_construct,
    "meg": meg_construct,
    "dem": dem_construct,
    "ipec": ipec_construct,
    "ipp": ipp_construct,
}


def construct(problem: str, g: Graph, root: int | None = None) -> SolutionSet | PathSystem:
    try:
        fn = CONSTRUCTIONS[problem]
    except KeyError:
        raise UnknownProblemTag(f"unknown problem {problem!r}") from None
    return fn(g, root)
