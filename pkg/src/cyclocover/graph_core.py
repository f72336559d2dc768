"""Graph representation, edge-list parsing, BFS layering and structural statistics.

Vertices are the integers ``0..n-1`` and are never relabelled; subgraphs
(the base graph, pendant trees) are described by vertex subsets of the
original graph.  Adjacency lists are sorted ascending, and every tie in
this package is broken towards the lowest vertex id.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import (
    Disconnected,
    DuplicateEdge,
    InputError,
    MalformedLine,
    SelfLoop,
    VertexOutOfRange,
)

Edge = tuple[int, int]


def edge(u: int, v: int) -> Edge:
    """Canonical (low, high) form of an undirected edge."""
    return (u, v) if u < v else (v, u)


class Graph:
    """Simple, undirected, connected graph on vertices ``0..n-1``.

    Construction validates the edge list; instances are treated as immutable.
    """

    __slots__ = ("n", "edges", "adj", "_edge_set")

    def __init__(self, n: int, edges: Iterable[Sequence[int]]):
        if n < 1:
            raise InputError(f"graph needs at least one vertex, got n={n}")
        seen: set[Edge] = set()
        adj: list[list[int]] = [[] for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise VertexOutOfRange(f"edge {u} {v} outside 0..{n - 1}")
            if u == v:
                raise SelfLoop(f"self-loop at vertex {u}")
            e = edge(u, v)
            if e in seen:
                raise DuplicateEdge(f"duplicate edge {e[0]} {e[1]}")
            seen.add(e)
            adj[u].append(v)
            adj[v].append(u)
        for nbrs in adj:
            nbrs.sort()
        self.n = n
        self.adj: tuple[tuple[int, ...], ...] = tuple(map(tuple, adj))
        self.edges: tuple[Edge, ...] = tuple(sorted(seen))
        self._edge_set = frozenset(seen)
        if _count_reached(self.adj, 0) != n:
            raise Disconnected("graph is not connected")

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return edge(u, v) in self._edge_set

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def _count_reached(adj: Sequence[Sequence[int]], start: int) -> int:
    seen = [False] * len(adj)
    seen[start] = True
    stack = [start]
    count = 1
    while stack:
        u = stack.pop()
        for v in adj[u]:
            if not seen[v]:
                seen[v] = True
                count += 1
                stack.append(v)
    return count


def parse_graph(text: str) -> Graph:
    """Parse the edge-list format: ``n m`` header then ``m`` lines ``u v``.

    Lines starting with ``#`` and blank lines are ignored; CRLF is accepted.
    """
    header: tuple[int, int] | None = None
    pairs: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise MalformedLine(f"line {lineno}: expected two integers, got {raw!r}")
        try:
            a, b = int(parts[0]), int(parts[1])
        except ValueError:
            raise MalformedLine(f"line {lineno}: expected two integers, got {raw!r}") from None
        if header is None:
            if a < 1 or b < 0:
                raise MalformedLine(f"line {lineno}: bad header n={a} m={b}")
            header = (a, b)
        else:
            if len(pairs) == header[1]:
                raise MalformedLine(f"line {lineno}: more than m={header[1]} edge lines")
            pairs.append((a, b))
    if header is None:
        raise MalformedLine("missing 'n m' header line")
    if len(pairs) != header[1]:
        raise MalformedLine(f"expected {header[1]} edge lines, found {len(pairs)}")
    return Graph(header[0], pairs)


def check_vertex(g: Graph, v: int) -> int:
    if not 0 <= v < g.n:
        raise VertexOutOfRange(f"vertex {v} outside 0..{g.n - 1}")
    return v


def format_graph(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class RootedBfsIndex:
    """BFS layering of a graph (or of an induced subgraph) from ``root``.

    ``dist[v]`` is ``-1`` and ``parent[v]`` is ``-1`` for vertices outside the
    searched subgraph; ``parent[root]`` is also ``-1``.  ``up[u]`` lists the
    neighbours of ``u`` one layer closer to the root, ascending, so the edges
    returned by ``up_edges(u)`` are ``(u, w)`` for ``w in up[u]``.
    """

    root: int
    dist: tuple[int, ...]
    layers: tuple[tuple[int, ...], ...]
    parent: tuple[int, ...]
    horizontal_edges: tuple[Edge, ...]
    up: tuple[tuple[int, ...], ...]

    def up_edges(self, u: int) -> list[Edge]:
        return [edge(u, w) for w in self.up[u]]

    def is_horizontal(self, u: int, v: int) -> bool:
        return self.dist[u] == self.dist[v]


def bfs_index(g: Graph, r: int, within: Sequence[bool] | None = None) -> RootedBfsIndex:
    """Layer ``g`` by distance from ``r``.

    With ``within`` (a per-vertex mask) the search runs on the induced
    subgraph of the masked vertices; that is how the base graph is handled
    without relabelling.
    """
    if not 0 <= r < g.n:
        raise VertexOutOfRange(f"root {r} outside 0..{g.n - 1}")
    if within is not None and not within[r]:
        raise InputError(f"root {r} is outside the searched subgraph")
    adj = g.adj
    n = g.n
    dist = [-1] * n
    dist[r] = 0
    parent = [-1] * n
    up: list[tuple[int, ...]] = [()] * n
    horizontal: list[Edge] = []
    layers: list[list[int]] = [[r]]
    queue = deque([r])
    # when u is dequeued its own layer and the one above are fully labelled,
    # so closer and same-layer neighbours can be read off in the same pass
    while queue:
        u = queue.popleft()
        du = dist[u]
        closer = []
        for v in adj[u]:
            dv = dist[v]
            if dv < 0:
                if within is None or within[v]:
                    dist[v] = du + 1
                    if du + 1 == len(layers):
                        layers.append([])
                    layers[du + 1].append(v)
                    queue.append(v)
            elif dv < du:
                closer.append(v)
            elif dv == du and u < v:
                horizontal.append((u, v))
        if closer:
            up[u] = tuple(closer)
            parent[u] = closer[0]
    for layer in layers:
        layer.sort()
    horizontal.sort()
    return RootedBfsIndex(
        root=r,
        dist=tuple(dist),
        layers=tuple(map(tuple, layers)),
        parent=tuple(parent),
        horizontal_edges=tuple(horizontal),
        up=tuple(up),
    )


def bfs_distances(g: Graph, source: int) -> list[int]:
    dist = [-1] * g.n
    dist[source] = 0
    queue = deque([source])
    adj = g.adj
    while queue:
        u = queue.popleft()
        du = dist[u] + 1
        for v in adj[u]:
            if dist[v] < 0:
                dist[v] = du
                queue.append(v)
    return dist


def shortest_path(g: Graph, u: int, v: int) -> list[int]:
    """One isometric u-v path: from ``u``, repeatedly step to the lowest-id
    neighbour that is one closer to ``v``."""
    to_v = bfs_distances(g, v)
    path = [u]
    cur = u
    while cur != v:
        want = to_v[cur] - 1
        cur = next(w for w in g.adj[cur] if to_v[w] == want)
        path.append(cur)
    return path


@dataclass(frozen=True)
class StructureProfile:
    cyclomatic: int
    leaf_count: int
    leaves: tuple[int, ...]
    min_degree: int
    legs: dict[int, int]
    branch_resolving: int
    dim_lower_bound: int
    branch_resolving_choice: tuple[int, ...]

    @property
    def is_tree(self) -> bool:
        return self.cyclomatic == 0


def _legs_by_branch_vertex(g: Graph) -> dict[int, list[tuple[int, int]]]:
    """Map each branch vertex to its legs as ``(length, leaf)`` pairs."""
    legs: dict[int, list[tuple[int, int]]] = {}
    adj = g.adj
    for leaf in range(g.n):
        if len(adj[leaf]) != 1:
            continue
        prev, cur, length = leaf, adj[leaf][0], 1
        while len(adj[cur]) == 2:
            a, b = adj[cur]
            prev, cur = cur, (b if a == prev else a)
            length += 1
        if len(adj[cur]) >= 3:
            legs.setdefault(cur, []).append((length, leaf))
        # degree 1 at the far end: the whole graph is a path, no legs
    return legs


def structure_profile(g: Graph) -> StructureProfile:
    degrees = [len(a) for a in g.adj]
    leaves = tuple(v for v, d in enumerate(degrees) if d == 1)
    legs = _legs_by_branch_vertex(g)
    choice: list[int] = []
    L = 0
    for v in sorted(legs):
        vlegs = legs[v]
        if len(vlegs) < 2:
            continue
        L += len(vlegs) - 1
        # keep the longest leg (lowest leaf id on ties) out of the choice
        skipped = min(vlegs, key=lambda t: (-t[0], t[1]))
        choice.extend(leaf for length, leaf in vlegs if (length, leaf) != skipped)
    return StructureProfile(
        cyclomatic=g.m - g.n + 1,
        leaf_count=len(leaves),
        leaves=leaves,
        min_degree=min(degrees),
        legs={v: len(l) for v, l in sorted(legs.items())},
        branch_resolving=L,
        dim_lower_bound=max(L, 1),
        branch_resolving_choice=tuple(sorted(choice)),
    )


@dataclass(frozen=True)
class PendantTree:
    attachment: int
    vertices: tuple[int, ...]  # includes the attachment vertex
    edges: tuple[Edge, ...]


@dataclass(frozen=True)
class BaseDecomposition:
    """Base graph (leaves peeled repeatedly) plus the trees hanging off it.

    ``toward_base[v]`` is the neighbour of a peeled vertex ``v`` on its way to
    the base graph (``-1`` for base vertices); ``attachment[v]`` is the base
    vertex whose pendant tree holds ``v`` (``v`` itself for base vertices).
    Both are ``-1`` everywhere for tree inputs.
    """

    base_vertices: tuple[int, ...]
    base_edges: tuple[Edge, ...]
    pendant_trees: dict[int, PendantTree]
    is_tree_input: bool
    in_base: tuple[bool, ...] = field(repr=False)
    toward_base: tuple[int, ...] = field(repr=False)
    attachment: tuple[int, ...] = field(repr=False)


def base_decomposition(g: Graph) -> BaseDecomposition:
    n = g.n
    if g.m == n - 1:
        return BaseDecomposition(
            base_vertices=(),
            base_edges=(),
            pendant_trees={},
            is_tree_input=True,
            in_base=(False,) * n,
            toward_base=(-1,) * n,
            attachment=(-1,) * n,
        )
    adj = g.adj
    deg = [len(a) for a in adj]
    removed = [False] * n
    toward = [-1] * n
    peeled: list[int] = []
    stack = [v for v in range(n) if deg[v] == 1]
    while stack:
        v = stack.pop()
        removed[v] = True
        peeled.append(v)
        for w in adj[v]:
            if not removed[w]:
                toward[v] = w
                deg[w] -= 1
                if deg[w] == 1:
                    stack.append(w)
    attachment = [v if not removed[v] else -1 for v in range(n)]
    for v in reversed(peeled):
        p = toward[v]
        attachment[v] = attachment[p]
    groups: dict[int, list[int]] = {}
    for v in peeled:
        groups.setdefault(attachment[v], []).append(v)
    pendant = {}
    for a in sorted(groups):
        members = groups[a]
        pendant[a] = PendantTree(
            attachment=a,
            vertices=tuple(sorted(members + [a])),
            edges=tuple(sorted(edge(v, toward[v]) for v in members)),
        )
    in_base = tuple(not x for x in removed)
    base_vertices = tuple(v for v in range(n) if in_base[v])
    base_edges = tuple(e for e in g.edges if in_base[e[0]] and in_base[e[1]])
    return BaseDecomposition(
        base_vertices=base_vertices,
        base_edges=base_edges,
        pendant_trees=pendant,
        is_tree_input=False,
        in_base=in_base,
        toward_base=tuple(toward),
        attachment=tuple(attachment),
    )


def cut_structure(g: Graph) -> tuple[frozenset[int], frozenset[Edge]]:
    """Articulation points and bridges, by an iterative lowpoint DFS."""
    n = g.n
    adj = g.adj
    disc = [-1] * n
    low = [0] * n
    parent = [-1] * n
    cuts: set[int] = set()
    bridges: set[Edge] = set()
    timer = 1
    disc[0] = low[0] = 0
    root_children = 0
    stack = [(0, iter(adj[0]))]
    while stack:
        u, it = stack[-1]
        for v in it:
            if disc[v] < 0:
                disc[v] = low[v] = timer
                timer += 1
                parent[v] = u
                stack.append((v, iter(adj[v])))
                break
            if v != parent[u] and disc[v] < low[u]:
                low[u] = disc[v]
        else:
            stack.pop()
            p = parent[u]
            if p < 0:
                continue
            lu = low[u]
            if lu < low[p]:
                low[p] = lu
            if lu > disc[p]:
                bridges.add((u, p) if u < p else (p, u))
            if p == 0:
                root_children += 1
            elif lu >= disc[p]:
                cuts.add(p)
    if root_children > 1:
        cuts.add(0)
    return frozenset(cuts), frozenset(bridges)


def articulation_points(g: Graph) -> frozenset[int]:
    return cut_structure(g)[0]


def component_labels_without(g: Graph, removed: int) -> list[int]:
    """Component label of every vertex of ``g - removed`` (``-1`` for it)."""
    label = [-1] * g.n
    adj = g.adj
    current = 0
    for start in adj[removed]:
        if label[start] >= 0:
            continue
        label[start] = current
        stack = [start]
        while stack:
            u = stack.pop()
            for v in adj[u]:
                if v != removed and label[v] < 0:
                    label[v] = current
                    stack.append(v)
        current += 1
    label[removed] = -1
    return label


def components_hit(g: Graph, removed: int, chosen: Iterable[int]) -> int:
    """How many components of ``g - removed`` contain a vertex of ``chosen``."""
    label = component_labels_without(g, removed)
    return len({label[v] for v in chosen if v != removed})
