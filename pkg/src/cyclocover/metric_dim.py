"""Resolving-set constructions: metric, edge, mixed and doubly resolving sets.

Every construction takes a good edge set (of the graph, or of its base
graph when there are leaves), keeps the root and both endpoints of every
edge in it, and adds leaves to deal with the trees hanging off the base
graph.  The root is dropped again when it separates two parts of the graph
that both contain chosen vertices; that test is run, never assumed.
"""

from __future__ import annotations

from typing import Iterable

from .errors import InputError, MinDegreeTooSmall
from .good_edges import good_edge_set
from .graph_core import (
    Graph,
    StructureProfile,
    articulation_points,
    base_decomposition,
    check_vertex,
    components_hit,
    structure_profile,
)
from .solutions import SolutionSet, size_bound


def _finish(problem, g, profile, chosen, root, dropped, has_cut) -> SolutionSet:
    bound = size_bound(problem, g, profile, has_cut=has_cut)
    if has_cut and not dropped:
        # root kept although a cut vertex exists: one more than the theorem
        bound += 1
    return SolutionSet(
        problem=problem,
        vertices=tuple(sorted(chosen)),
        method="construct",
        claimed_bound=bound,
        root_used=root,
    )


def _with_root_dropped(g: Graph, root: int, chosen: set[int]) -> tuple[set[int], bool]:
    rest = chosen - {root}
    if rest and components_hit(g, root, rest) >= 2:
        return rest, True
    return chosen, False


def _mindeg2_set(problem: str, g: Graph, profile: StructureProfile, root: int | None) -> SolutionSet:
    cuts = articulation_points(g)
    r = root if root is not None else (min(cuts) if cuts else 0)
    ges = good_edge_set(g, r)
    chosen = ges.endpoints() | {r}
    dropped = False
    if r in cuts:
        chosen, dropped = _with_root_dropped(g, r, chosen)
    return _finish(problem, g, profile, chosen, r, dropped, bool(cuts))


def _leafy_set(
    problem: str, g: Graph, profile: StructureProfile, leaf_part: Iterable[int], root: int | None
) -> SolutionSet:
    """Non-tree with leaves: ``leaf_part`` plus the good-edge-set vertices of the base graph."""
    leaf_part = set(leaf_part)
    base = base_decomposition(g)
    if root is None:
        r = min(base.attachment[x] for x in leaf_part)
    else:
        if not base.in_base[check_vertex(g, root)]:
            raise InputError(f"root {root} is not a vertex of the base graph")
        r = root
    ges = good_edge_set(g, r, within=base.in_base)
    chosen, dropped = _with_root_dropped(g, r, leaf_part | ges.endpoints() | {r})
    # a graph with leaves and a cycle always has a cut vertex
    return _finish(problem, g, profile, chosen, r, dropped, True)


def doubly_resolving_construct(g: Graph, root: int | None = None) -> SolutionSet:
    """Root plus endpoints of a good edge set; needs minimum degree 2.

    Without an explicit ``root`` the lowest-id cut vertex is used when there
    is one, and then dropped.
    """
    profile = structure_profile(g)
    if g.n == 1 or profile.min_degree < 2:
        raise MinDegreeTooSmall(f"minimum degree {profile.min_degree} < 2")
    return _mindeg2_set("doubly", g, profile, root)


def _tree_resolving(problem: str, g: Graph, profile: StructureProfile) -> SolutionSet:
    if g.n == 1:
        chosen: tuple[int, ...] = ()
    elif profile.branch_resolving == 0:
        # a path: one end suffices
        chosen = (profile.leaves[0],)
    else:
        chosen = profile.branch_resolving_choice
    return _finish(problem, g, profile, chosen, None, True, False)


def resolving_construct(g: Graph, root: int | None = None, problem: str = "dim") -> SolutionSet:
    """Resolving set of size at most ``max(L, 1) + 2c`` (leaves present, ``L`` the branch-resolving number) or
    ``2c + 1`` / ``2c`` (minimum degree 2, without / with a cut vertex)."""
    profile = structure_profile(g)
    if profile.is_tree:
        return _tree_resolving(problem, g, profile)
    if profile.min_degree >= 2:
        return _mindeg2_set(problem, g, profile, root)
    leaf_part = profile.branch_resolving_choice or profile.leaves[:1]
    return _leafy_set(problem, g, profile, leaf_part, root)


def edge_resolving_construct(g: Graph, root: int | None = None) -> SolutionSet:
    # the same vertex set resolves edges as well
    return resolving_construct(g, root, problem="edim")


def mixed_resolving_construct(g: Graph, root: int | None = None) -> SolutionSet:
    profile = structure_profile(g)
    if profile.is_tree:
        return _finish("mdim", g, profile, profile.leaves, None, True, False)
    if profile.min_degree >= 2:
        return _mindeg2_set("mdim", g, profile, root)
    return _leafy_set("mdim", g, profile, profile.leaves, root)
