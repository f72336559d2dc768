"""Result containers shared by the constructions and the exact solvers, plus
the size bound each construction is entitled to claim."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import ceil
from typing import Any

from .errors import UnknownProblemTag
from .graph_core import Graph, StructureProfile, articulation_points, structure_profile

SET_PROBLEMS = ("dim", "edim", "mdim", "doubly", "geodetic", "meg", "dem")
PATH_PROBLEMS = ("ipec", "ipp")
PATH_MODES = {"ipec": "edge_cover", "ipp": "vertex_partition"}


@dataclass(frozen=True)
class SolutionSet:
    problem: str
    vertices: tuple[int, ...]
    method: str
    claimed_bound: int
    root_used: int | None = None

    @property
    def size(self) -> int:
        return len(self.vertices)

    def to_json(self) -> dict[str, Any]:
        return {
            "problem": self.problem,
            "method": self.method,
            "size": self.size,
            "vertices": list(self.vertices),
            "bound": self.claimed_bound,
            "root": self.root_used,
        }


@dataclass(frozen=True)
class PathSystem:
    mode: str
    paths: tuple[tuple[int, ...], ...]
    claimed_bound: int
    root: int | None = field(default=None, compare=False)

    @property
    def count(self) -> int:
        return len(self.paths)

    def to_json(self) -> dict[str, Any]:
        return {
            "mode": self.mode,
            "count": self.count,
            "bound": self.claimed_bound,
            "paths": [list(p) for p in self.paths],
        }


def size_bound(
    problem: str,
    g: Graph,
    profile: StructureProfile | None = None,
    has_cut: bool | None = None,
) -> int:
    """Upper bound on the optimum guaranteed by the constructions in this package.

    Degenerate graphs on one or two vertices get the obvious exact values
    where the general formulas fall short (a single edge needs both ends in
    any geodetic set, and a lone vertex is one path).
    """
    p = profile or structure_profile(g)
    if has_cut is None:
        has_cut = bool(articulation_points(g))
    c, ell = p.cyclomatic, p.leaf_count
    mindeg2 = p.min_degree >= 2
    if problem in ("dim", "edim"):
        if mindeg2:
            return 2 * c if has_cut else 2 * c + 1
        return p.dim_lower_bound + 2 * c
    if problem == "mdim":
        if mindeg2:
            return 2 * c if has_cut else 2 * c + 1
        return ell + 2 * c
    if problem == "doubly":
        return 2 * c if has_cut else 2 * c + 1
    if problem == "geodetic":
        if g.n <= 2:
            return g.n
        return 2 * c + ell if has_cut else 2 * c + 1
    if problem == "meg":
        return 3 * c + ell if has_cut else 3 * c + ell + 1
    if problem == "dem":
        return c + 1
    if problem == "ipec":
        return 3 * c + ceil((ell + 1) / 2)
    if problem == "ipp":
        return max(2 * c + ell, 1)
    raise UnknownProblemTag(f"unknown problem {problem!r}")
