"""Isometric path edge-covers and isometric path partitions.

Both constructions only use paths that run towards the root in the BFS
tree left by a good edge set, so every path (and every subpath) is a
shortest path.
Leaves are handled by pairing them up (edge-cover) or by walking each leaf
up the tree until the already covered region is reached (partition).
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import shortest_path as csgraph_shortest_path

from .errors import InputError, InternalInvariantViolation
from .good_edges import GoodEdgeSet, good_edge_set, root_path
from .graph_core import (
    BaseDecomposition,
    Edge,
    Graph,
    base_decomposition,
    check_vertex,
    edge,
    structure_profile,
)
from .solutions import PathSystem, size_bound


@dataclass(frozen=True)
class LeafPairing:
    members: tuple[int, ...]
    pairs: tuple[tuple[int, int], ...]


def initial_pairing(members) -> LeafPairing:
    """Pair sorted members consecutively; an odd one out is paired with the first."""
    ms = sorted(members)
    pairs = [(ms[i], ms[i + 1]) for i in range(0, len(ms) - 1, 2)]
    if len(ms) % 2 == 1 and len(ms) > 1:
        pairs.append((ms[-1], ms[0]))
    return LeafPairing(tuple(ms), tuple(pairs))


class _Forest:
    """The trees hanging off the base graph, oriented towards their
    attachment vertex, with Euler-tour intervals for subtree queries.

    For a tree input the whole tree hangs off the chosen root.
    """

    def __init__(self, g: Graph, base: BaseDecomposition, root: int):
        n = g.n
        if base.is_tree_input:
            up = [-1] * n
            seen = [False] * n
            seen[root] = True
            order = [root]
            for u in order:
                for w in g.adj[u]:
                    if not seen[w]:
                        seen[w] = True
                        up[w] = u
                        order.append(w)
            self.up = up
            self.attach = [root] * n
            self.in_base = [v == root for v in range(n)]
        else:
            self.up = list(base.toward_base)
            self.attach = list(base.attachment)
            self.in_base = list(base.in_base)
        children: list[list[int]] = [[] for _ in range(n)]
        for v in range(n):
            if self.up[v] >= 0:
                children[self.up[v]].append(v)
        self.depth = [0] * n
        self.tin = [0] * n
        self.tout = [0] * n
        clock = 0
        for a in range(n):
            if not self.in_base[a]:
                continue
            stack = [(a, False)]
            while stack:
                v, done = stack.pop()
                if done:
                    self.tout[v] = clock
                    continue
                self.tin[v] = clock
                clock += 1
                stack.append((v, True))
                for c in children[v]:
                    self.depth[c] = self.depth[v] + 1
                    stack.append((c, False))

    def climb(self, v: int, stop: int | None = None) -> list[int]:
        """Vertices from ``v`` up to ``stop`` (default: the attachment), inclusive."""
        out = [v]
        target = self.attach[v] if stop is None else stop
        while v != target:
            v = self.up[v]
            out.append(v)
        return out

    def inside(self, v: int, top: int) -> bool:
        """Is ``v`` in the subtree hanging below ``top``?"""
        return self.tin[top] <= self.tin[v] < self.tout[top] or v == top


class _BaseRouter:
    """Lowest-id shortest paths between base vertices.

    Same paths as :func:`shortest_path`: a vertex outside the base graph is
    never closer to a base vertex than the attachment it hangs from.  The
    base graph is compressed to its vertices of base-degree >= 3 (at most
    ``2c - 2`` of them) joined by chains, so a distance query is a handful
    of table lookups and a path costs time proportional to its length.
    """

    def __init__(self, g: Graph, forest: _Forest):
        in_base = forest.in_base
        self.nbrs = nbrs = {
            v: [w for w in g.adj[v] if in_base[w]] for v in range(g.n) if in_base[v]
        }
        hubs = sorted(v for v, ws in nbrs.items() if len(ws) >= 3) or [min(nbrs)]
        hub_id = {v: i for i, v in enumerate(hubs)}
        # base vertex -> ((hub index, steps), ...) and, off the hubs, its chain
        self.ends: dict[int, tuple[tuple[int, int], ...]] = {v: ((i, 0),) for v, i in hub_id.items()}
        self.chain: dict[int, tuple[int, int]] = {}
        self.walks: list[list[int]] = []
        rows, cols, weights = [], [], []
        n_chains = 0
        for p in hubs:
            for w in nbrs[p]:
                if w in self.chain or (w in hub_id and w < p):
                    continue
                walk = [p, w]
                while walk[-1] not in hub_id:
                    a, b = nbrs[walk[-1]]
                    walk.append(b if a == walk[-2] else a)
                q, length = walk[-1], len(walk) - 1
                for pos, x in enumerate(walk[1:-1], start=1):
                    self.chain[x] = (n_chains, pos)
                    self.ends[x] = ((hub_id[p], pos), (hub_id[q], length - pos))
                n_chains += 1
                self.walks.append(walk)
                rows.append(hub_id[p])
                cols.append(hub_id[q])
                weights.append(length)
        k = len(hubs)
        if rows:
            # keep the shortest of parallel chains; loops never shorten anything
            best: dict[tuple[int, int], int] = {}
            for a, b, wt in zip(rows, cols, weights):
                if a != b:
                    key = (min(a, b), max(a, b))
                    best[key] = min(best.get(key, wt), wt)
            mat = csr_matrix(
                ([wt for wt in best.values()], ([a for a, _ in best], [b for _, b in best])),
                shape=(k, k),
            )
            self.hub_dist = csgraph_shortest_path(mat, method="D", directed=False)
        else:
            self.hub_dist = np.zeros((k, k))

    def dist(self, x: int, y: int) -> int:
        hd = self.hub_dist
        best = min(a + hd[i, j] + b for i, a in self.ends[x] for j, b in self.ends[y])
        cx, cy = self.chain.get(x), self.chain.get(y)
        if cx is not None and cy is not None and cx[0] == cy[0]:
            best = min(best, abs(cx[1] - cy[1]))
        return int(best)

    def __call__(self, u: int, v: int) -> list[int]:
        path = [u]
        cur = u
        left = self.dist(u, v)
        while left:
            w = next(w for w in self.nbrs[cur] if self.dist(w, v) == left - 1)
            if w not in self.chain:
                path.append(w)
                cur, left = w, left - 1
                continue
            # inside a chain the descent is forced until v or the far hub
            cid, pos = self.chain[w]
            walk = self.walks[cid]
            step = 1 if walk[pos - 1] == cur else -1
            stop = 0 if step < 0 else len(walk) - 1
            target = self.chain.get(v)
            if target is not None and target[0] == cid and (target[1] - pos) * step >= 0:
                stop = target[1]
            piece = walk[pos : stop + 1] if step > 0 else walk[stop : pos + 1][::-1]
            path.extend(piece)
            cur, left = piece[-1], left - len(piece)
        return path


def _pair_path(router: _BaseRouter, forest: _Forest, a: int, b: int) -> list[int]:
    if forest.attach[a] == forest.attach[b]:
        # same hanging tree: climb both sides to the meeting point
        x, y = a, b
        left, right = [x], [y]
        while x != y:
            if forest.depth[x] >= forest.depth[y]:
                x = forest.up[x]
                left.append(x)
            else:
                y = forest.up[y]
                right.append(y)
        return left + right[-2::-1]
    down = forest.climb(b)
    return forest.climb(a) + router(forest.attach[a], forest.attach[b])[1:-1] + down[::-1]


def _pendant_edges(path, forest: _Forest) -> list[Edge]:
    return [edge(x, y) for x, y in zip(path, path[1:]) if not (forest.in_base[x] and forest.in_base[y])]


def leaf_pairing_repair(
    g: Graph, base: BaseDecomposition, pairing: LeafPairing, root: int | None = None
) -> tuple[LeafPairing, list[list[int]]]:
    """Swap pairs until the pair paths cover every edge outside the base graph.

    While some such edge ``e`` is uncovered, the members below ``e`` are all
    paired among themselves, and so are the ones on the root side; taking a
    pair ``{a, b}`` below and ``{c, d}`` above and re-pairing them as
    ``{a, c}``, ``{b, d}`` keeps every covered edge covered and adds ``e``.
    ``root`` is the base vertex included among the members (defaults to the
    member that lies in the base graph).
    """
    if root is None:
        in_base = [True] * g.n if base.is_tree_input else base.in_base
        root = next(v for v in pairing.members if in_base[v])
    forest = _Forest(g, base, root)
    router = _BaseRouter(g, forest)
    pairs = [tuple(p) for p in pairing.pairs]
    paths = [_pair_path(router, forest, a, b) for a, b in pairs]
    cover: dict[Edge, int] = {}
    for p in paths:
        for e in _pendant_edges(p, forest):
            cover[e] = cover.get(e, 0) + 1

    pendant = sorted(
        (edge(v, forest.up[v]), v) for v in range(g.n) if forest.up[v] >= 0
    )
    by_tin = sorted((forest.tin[v], v) for v in pairing.members)
    tins = [t for t, _ in by_tin]
    member_pairs: dict[int, list[int]] = {}
    for i, (a, b) in enumerate(pairs):
        member_pairs.setdefault(a, []).append(i)
        member_pairs.setdefault(b, []).append(i)

    covered_count = len(cover)
    for e, low in pendant:
        if cover.get(e, 0):
            continue
        # members in the subtree below e, found through their Euler-tour times
        lo = bisect_left(tins, forest.tin[low])
        hi = bisect_left(tins, forest.tout[low])
        below = [v for _, v in by_tin[lo:hi]]
        inner = next(
            (i for v in below for i in member_pairs[v]
             if forest.inside(pairs[i][0], low) and forest.inside(pairs[i][1], low)),
            None,
        )
        outer = next(
            (i for i in member_pairs[root]
             if not forest.inside(pairs[i][0], low) and not forest.inside(pairs[i][1], low)),
            None,
        )
        if inner is None or outer is None:
            raise InternalInvariantViolation(f"no pairs to swap across uncovered edge {e}")
        (a, b), (c, d) = pairs[inner], pairs[outer]
        for i in (inner, outer):
            for f in _pendant_edges(paths[i], forest):
                cover[f] -= 1
                if not cover[f]:
                    del cover[f]
        pairs[inner], pairs[outer] = (a, c), (b, d)
        for i in (inner, outer):
            paths[i] = _pair_path(router, forest, *pairs[i])
            for f in _pendant_edges(paths[i], forest):
                cover[f] = cover.get(f, 0) + 1
        for v in (a, b, c, d):
            member_pairs[v] = sorted(i for i in set(member_pairs[v]) | {inner, outer} if v in pairs[i])
        if len(cover) <= covered_count or e not in cover:
            raise InternalInvariantViolation("pair swap did not enlarge the covered set")
        covered_count = len(cover)
    return LeafPairing(pairing.members, tuple(pairs)), paths


def _dedupe(paths) -> tuple[tuple[int, ...], ...]:
    seen = set()
    out = []
    for p in paths:
        key = tuple(p) if p[0] <= p[-1] else tuple(reversed(p))
        if key not in seen:
            seen.add(key)
            out.append(tuple(p))
    return tuple(out)


def ipec_construct(g: Graph, root: int | None = None) -> PathSystem:
    """Isometric path edge-cover with at most ``3c + ceil((leaves + 1) / 2)`` paths.

    Built on the base graph: each horizontal good edge gives itself plus
    the tree paths of its two ends; each vertex with two or more up-edges gives one
    path per up-edge; the leaves, together with the root, are paired and
    joined by shortest paths.  Identical paths are listed once.
    """
    profile = structure_profile(g)
    bound = size_bound("ipec", g, profile, has_cut=False)
    if g.n == 1:
        return PathSystem("edge_cover", (), bound, root=0)
    base = base_decomposition(g)
    paths: list[list[int]] = []
    if base.is_tree_input:
        r = profile.leaves[0] if root is None else check_vertex(g, root)
    else:
        if root is None:
            r = base.base_vertices[0]
        elif not base.in_base[check_vertex(g, root)]:
            raise InputError(f"root {root} is not a vertex of the base graph")
        else:
            r = root
        ges = good_edge_set(g, r, within=base.in_base)
        for x, y in ges.horizontal_edges:
            paths.append([x, y])
            paths.append(root_path(ges, x))
            paths.append(root_path(ges, y))
        for v, closer in enumerate(ges.index.up):
            if len(closer) >= 2:
                for u in closer:
                    paths.append([v] + root_path(ges, u))
    if profile.leaf_count:
        pairing = initial_pairing(set(profile.leaves) | {r})
        _, pair_paths = leaf_pairing_repair(g, base, pairing, root=r)
        paths.extend(pair_paths)
    return PathSystem("edge_cover", _dedupe(paths), bound, root=r)


def ipp_candidates(ges: GoodEdgeSet, leaves) -> list[int]:
    """Far endpoints of the tree paths the partition is carved from, in order.

    Horizontal good edges contribute both ends; a vertex ``v`` with two or
    more up-edges contributes itself and each upper neighbour other than its
    tree parent; then every leaf.
    """
    order: list[int] = []
    for x, y in ges.horizontal_edges:
        order += [x, y]
    for v, closer in enumerate(ges.index.up):
        if len(closer) >= 2:
            order.append(v)
            order.extend(u for u in closer if u != ges.tree_parent[v])
    order.extend(v for v in leaves if v != ges.root)
    return order


def ipp_construct(g: Graph, root: int | None = None) -> PathSystem:
    """Isometric path partition with at most ``2c + leaves`` paths.

    Candidates are processed in order and each contributes the still
    uncovered stretch of its tree path, starting at its far end.  Because
    the covered region always contains the root and is closed under taking
    tree parents, that stretch is one contiguous piece.
    """
    profile = structure_profile(g)
    bound = size_bound("ipp", g, profile, has_cut=False)
    if root is None:
        r = profile.leaves[0] if profile.leaves else 0
    else:
        r = check_vertex(g, root)
    ges = good_edge_set(g, r)
    parent = ges.tree_parent
    covered = [False] * g.n
    paths: list[tuple[int, ...]] = []
    for w in ipp_candidates(ges, profile.leaves):
        piece = []
        v = w
        while v >= 0 and not covered[v]:
            covered[v] = True
            piece.append(v)
            v = parent[v]
        if piece:
            paths.append(tuple(piece))
    if not covered[r]:
        covered[r] = True
        paths.append((r,))
    _check_partition(g, ges, paths, covered, bound)
    return PathSystem("vertex_partition", tuple(paths), bound, root=r)


def _check_partition(g: Graph, ges: GoodEdgeSet, paths, covered, bound) -> None:
    if not all(covered):
        raise InternalInvariantViolation(f"vertex {covered.index(False)} left uncovered")
    if sum(len(p) for p in paths) != g.n:
        raise InternalInvariantViolation("paths overlap")
    dist = ges.dist
    for p in paths:
        for a, b in zip(p, p[1:]):
            if dist[a] != dist[b] + 1 or not g.has_edge(a, b):
                raise InternalInvariantViolation(f"path {p} does not climb the BFS tree")
    if len(paths) > bound:
        raise InternalInvariantViolation(f"{len(paths)} paths exceed the bound {bound}")
