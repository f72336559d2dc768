"""Good edge sets with respect to a root and the BFS tree they leave behind.

An edge set is good for a root when it holds every horizontal edge and all
but one of the edges joining each vertex to the layer above it.  Here the
edge left out is always the BFS parent edge, so removing the set leaves the
lowest-id BFS tree and every path
towards the root in it is a shortest path of ``G``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .graph_core import Edge, Graph, RootedBfsIndex, bfs_index, edge


@dataclass(frozen=True)
class GoodEdgeSet:
    root: int
    edges: tuple[Edge, ...]
    tree_parent: tuple[int, ...]
    horizontal_edges: tuple[Edge, ...]
    vertical_edges: tuple[Edge, ...]
    index: RootedBfsIndex

    @property
    def dist(self) -> tuple[int, ...]:
        return self.index.dist

    def endpoints(self) -> set[int]:
        return {x for e in self.edges for x in e}


def good_edge_set(g: Graph, r: int, within: Sequence[bool] | None = None) -> GoodEdgeSet:
    """Good edge set of ``g`` (or of the induced subgraph ``within``) for root ``r``."""
    idx = bfs_index(g, r, within)
    vertical = []
    parent = idx.parent
    for u, closer in enumerate(idx.up):
        if len(closer) > 1:
            keep = parent[u]
            vertical.extend(edge(u, w) for w in closer if w != keep)
    vertical.sort()
    horizontal = idx.horizontal_edges
    return GoodEdgeSet(
        root=r,
        edges=tuple(sorted(horizontal + tuple(vertical))),
        tree_parent=parent,
        horizontal_edges=horizontal,
        vertical_edges=tuple(vertical),
        index=idx,
    )


@dataclass(frozen=True)
class GoodnessReport:
    good: bool
    clause: str | None = None
    witness: object = None

    def __bool__(self) -> bool:
        return self.good


def is_good(g: Graph, r: int, edges: Iterable[Sequence[int]]) -> GoodnessReport:
    """Check the definition directly.

    On failure ``clause`` is ``"not an edge"``, ``"horizontal"`` (witness: the
    missing horizontal edge) or ``"bundle"`` (witness: the vertex ``u`` whose
    up-edges are not all chosen but one).
    """
    chosen = {edge(u, v) for u, v in edges}
    for e in sorted(chosen):
        if not g.has_edge(*e):
            return GoodnessReport(False, "not an edge", e)
    idx = bfs_index(g, r)
    for e in idx.horizontal_edges:
        if e not in chosen:
            return GoodnessReport(False, "horizontal", e)
    for u in range(g.n):
        if u == r:
            continue
        bu = idx.up_edges(u)
        hit = sum(1 for e in bu if e in chosen)
        if hit != len(bu) - 1:
            # all but exactly one of the up-edges of u must be chosen
            return GoodnessReport(False, "bundle", u)
    return GoodnessReport(True)


def root_path(ges: GoodEdgeSet, v: int) -> list[int]:
    """Tree path from ``v`` up to the root, ``v`` first."""
    if ges.dist[v] < 0:
        raise ValueError(f"vertex {v} is not covered by this good edge set")
    parent = ges.tree_parent
    path = [v]
    while v != ges.root:
        v = parent[v]
        path.append(v)
    return path
