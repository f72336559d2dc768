"""Geodetic, monitoring edge-geodetic and distance-edge-monitoring sets."""

from __future__ import annotations

from .errors import InputError
from .good_edges import good_edge_set
from .graph_core import (
    Graph,
    base_decomposition,
    check_vertex,
    components_hit,
    cut_structure,
    structure_profile,
)
from .solutions import SolutionSet, size_bound


def _solution(problem, g, profile, chosen, root, has_cut, extra=0) -> SolutionSet:
    return SolutionSet(
        problem=problem,
        vertices=tuple(sorted(chosen)),
        method="construct",
        claimed_bound=size_bound(problem, g, profile, has_cut=has_cut) + extra,
        root_used=root,
    )


def geodetic_construct(g: Graph, root: int | None = None) -> SolutionSet:
    """Leaves plus endpoints of a good edge set, rooted at a cut vertex when
    one exists; the root joins the set only when it is not a cut vertex."""
    profile = structure_profile(g)
    if g.n == 1:
        return _solution("geodetic", g, profile, {0}, 0, False)
    cuts, _ = cut_structure(g)
    r = root if root is not None else (min(cuts) if cuts else 0)
    ges = good_edge_set(g, r)
    chosen = set(profile.leaves) | ges.endpoints()
    extra = 0
    if r not in cuts:
        chosen.add(r)
        extra = 1 if cuts else 0
    return _solution("geodetic", g, profile, chosen, r, bool(cuts), extra)


def meg_construct(g: Graph, root: int | None = None) -> SolutionSet:
    """Monitoring edge-geodetic set within ``3c + leaves (+1)``.

    On top of the root, the leaves and the endpoints of the good edge set,
    every vertex with two or more up-edges contributes all the
    endpoints of that bundle.
    """
    profile = structure_profile(g)
    if profile.is_tree:
        return _solution("meg", g, profile, profile.leaves, None, g.n > 2)
    cuts, bridges = cut_structure(g)
    on_cycle = [False] * g.n
    for e in g.edges:
        if e not in bridges:
            on_cycle[e[0]] = on_cycle[e[1]] = True
    if root is None:
        cyclic_cuts = [v for v in sorted(cuts) if on_cycle[v]]
        r = cyclic_cuts[0] if cyclic_cuts else on_cycle.index(True)
    else:
        if not on_cycle[check_vertex(g, root)]:
            raise InputError(f"root {root} does not lie on a cycle")
        r = root
    ges = good_edge_set(g, r)
    chosen = {r} | set(profile.leaves) | ges.endpoints()
    for u, closer in enumerate(ges.index.up):
        if len(closer) >= 2:
            chosen.add(u)
            chosen.update(closer)
    dropped = False
    if r in cuts:
        rest = chosen - {r}
        if components_hit(g, r, rest) >= 2:
            chosen, dropped = rest, True
    extra = 1 if cuts and not dropped else 0
    return _solution("meg", g, profile, chosen, r, bool(cuts), extra)


def dem_construct(g: Graph, root: int | None = None) -> SolutionSet:
    """Distance-edge-monitoring set of size at most ``c + 1``, built on the
    base graph: the root plus one endpoint per good edge (the far one
    for vertical edges, the lower id for horizontal ones)."""
    profile = structure_profile(g)
    if profile.is_tree:
        r = 0 if root is None else check_vertex(g, root)
        return _solution("dem", g, profile, {r}, r, False)
    base = base_decomposition(g)
    if root is None:
        r = base.base_vertices[0]
    else:
        if not base.in_base[check_vertex(g, root)]:
            raise InputError(f"root {root} is not a vertex of the base graph")
        r = root
    ges = good_edge_set(g, r, within=base.in_base)
    dist = ges.dist
    chosen = {r}
    for u, v in ges.edges:
        if dist[u] == dist[v]:
            chosen.add(u)
        else:
            chosen.add(u if dist[u] > dist[v] else v)
    return _solution("dem", g, profile, chosen, r, False)
