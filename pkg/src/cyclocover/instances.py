"""Graph generators: the extremal families and seeded random graphs with a
prescribed cyclomatic number.

Labelling conventions (stable, so expected answers can be written down):

* bouquet: hub is 0; each cycle, then each path, takes the next free ids
  walking away from the hub.
* k2k_plus_edge: 0 and 1 are the two degree-k vertices, joined by an edge;
  2..k+1 are adjacent to both.
* theta(a, b, c): hubs 0 and 1, joined by paths of a, b and c edges.
* spider(t): spine 0..t-1; internal spine vertex v gets a centre vertex
  whose two further neighbours are leaves.
"""

from __future__ import annotations

import heapq
import random
from dataclasses import dataclass
from typing import Sequence

from .errors import EvenCycleLength, InvalidSpec, TooManyEdges
from .graph_core import Graph, base_decomposition, edge

FAMILIES = ("bouquet", "k2k_plus_edge", "theta", "cycle", "path", "spider", "random")


@dataclass(frozen=True)
class FamilySpec:
    family: str
    parameters: tuple[int, ...] = ()
    seed: int | None = None


def _as_lengths(lengths: int | Sequence[int], count: int, what: str) -> list[int]:
    if isinstance(lengths, int):
        return [lengths] * count
    lengths = list(lengths)
    if len(lengths) != count:
        raise InvalidSpec(f"expected {count} {what} lengths, got {len(lengths)}")
    return lengths


def gen_bouquet(
    k: int,
    cycle_lengths: int | Sequence[int] = 5,
    l: int = 0,
    path_lengths: int | Sequence[int] = 1,
) -> Graph:
    """``k`` odd cycles and ``l`` pendant paths glued at the hub vertex 0.

    A path of length ``p`` adds ``p`` new vertices.
    """
    if k < 0 or l < 0:
        raise InvalidSpec("k and l must be non-negative")
    cycles = _as_lengths(cycle_lengths, k, "cycle")
    paths = _as_lengths(path_lengths, l, "path")
    for c in cycles:
        if c < 3 or c % 2 == 0:
            raise EvenCycleLength(f"cycle length {c} must be odd and at least 3")
    if any(p < 1 for p in paths):
        raise InvalidSpec("path lengths must be at least 1")
    edges = []
    nxt = 1
    for c in cycles:
        ring = [0] + list(range(nxt, nxt + c - 1))
        nxt += c - 1
        edges += [(ring[i], ring[(i + 1) % c]) for i in range(c)]
    for p in paths:
        chain = [0] + list(range(nxt, nxt + p))
        nxt += p
        edges += list(zip(chain, chain[1:]))
    return Graph(nxt, edges)


def gen_k2k_plus_edge(k: int) -> Graph:
    if k < 2:
        raise InvalidSpec("k2k_plus_edge needs k >= 2")
    edges = [(0, 1)]
    for v in range(2, k + 2):
        edges += [(0, v), (1, v)]
    return Graph(k + 2, edges)


def gen_cycle(n: int) -> Graph:
    if n < 3:
        raise InvalidSpec("a cycle needs at least 3 vertices")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def gen_path(n: int) -> Graph:
    if n < 1:
        raise InvalidSpec("a path needs at least one vertex")
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def gen_theta(a: int, b: int, c: int) -> Graph:
    lengths = sorted((a, b, c))
    if lengths[0] < 1 or lengths[1] < 2:
        raise InvalidSpec("theta paths need lengths >= 1 with at most one of length 1")
    edges = []
    nxt = 2
    for length in (a, b, c):
        chain = [0] + list(range(nxt, nxt + length - 1)) + [1]
        nxt += length - 1
        edges += list(zip(chain, chain[1:]))
    return Graph(nxt, edges)


def gen_spider(t: int) -> Graph:
    """Spine of ``t`` vertices with a copy of P3 hung by its centre from each
    internal spine vertex: ``2t - 2`` leaves."""
    if t < 3:
        raise InvalidSpec("spider needs t >= 3")
    edges = [(i, i + 1) for i in range(t - 1)]
    nxt = t
    for v in range(1, t - 1):
        centre, x, y = nxt, nxt + 1, nxt + 2
        nxt += 3
        edges += [(v, centre), (centre, x), (centre, y)]
    return Graph(nxt, edges)


def _random_tree_edges(n: int, rng: random.Random) -> list[tuple[int, int]]:
    """Uniform labelled tree: decode a uniformly random Pruefer sequence."""
    if n == 1:
        return []
    if n == 2:
        return [(0, 1)]
    seq = [rng.randrange(n) for _ in range(n - 2)]
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    heap = [v for v in range(n) if degree[v] == 1]
    heapq.heapify(heap)
    edges = []
    for x in seq:
        leaf = heapq.heappop(heap)
        edges.append((leaf, x))
        degree[x] -= 1
        if degree[x] == 1:
            heapq.heappush(heap, x)
    u, v = heapq.heappop(heap), heapq.heappop(heap)
    edges.append((u, v))
    return edges


def gen_random_cyclomatic(n: int, c: int, seed: int) -> Graph:
    """Uniform random labelled tree on ``n`` vertices plus ``c`` distinct
    random extra edges; the same ``(n, c, seed)`` always gives the same graph."""
    if n < 1 or c < 0:
        raise InvalidSpec("need n >= 1 and c >= 0")
    if c > n * (n - 1) // 2 - (n - 1):
        raise TooManyEdges(f"cannot add {c} edges to a tree on {n} vertices")
    rng = random.Random(seed)
    edges = _random_tree_edges(n, rng)
    present = {edge(u, v) for u, v in edges}
    free = n * (n - 1) // 2 - len(present)
    if c * 3 > free:
        # dense request: sample from the explicit list of non-edges
        pool = [(u, v) for u in range(n) for v in range(u + 1, n) if (u, v) not in present]
        extra = rng.sample(pool, c)
    else:
        extra = []
        while len(extra) < c:
            u, v = rng.randrange(n), rng.randrange(n)
            e = edge(u, v)
            if u != v and e not in present:
                present.add(e)
                extra.append(e)
    return Graph(n, edges + extra)


def base_graph_relabelled(g: Graph) -> Graph:
    """The base graph as a graph in its own right, vertices renumbered in
    increasing order of their original ids.  Trees map to a single vertex."""
    base = base_decomposition(g)
    if base.is_tree_input:
        return Graph(1, [])
    new_id = {v: i for i, v in enumerate(base.base_vertices)}
    return Graph(len(new_id), [(new_id[u], new_id[v]) for u, v in base.base_edges])


def gen_family(spec: FamilySpec) -> Graph:
    p = list(spec.parameters)
    fam = spec.family
    try:
        if fam == "cycle":
            (n,) = p
            return gen_cycle(n)
        if fam == "path":
            (n,) = p
            return gen_path(n)
        if fam == "theta":
            a, b, c = p
            return gen_theta(a, b, c)
        if fam == "spider":
            (t,) = p
            return gen_spider(t)
        if fam == "k2k_plus_edge":
            (k,) = p
            return gen_k2k_plus_edge(k)
        if fam == "bouquet":
            # k, k cycle lengths, l, l path lengths
            k = p[0]
            cycles = p[1 : 1 + k]
            l = p[1 + k]
            paths = p[2 + k :]
            if len(cycles) != k or len(paths) != l:
                raise InvalidSpec("bouquet parameters: k c_1..c_k l p_1..p_l")
            return gen_bouquet(k, cycles, l, paths)
        if fam == "random":
            n, c = p
            return gen_random_cyclomatic(n, c, spec.seed or 0)
    except (ValueError, IndexError) as exc:
        if isinstance(exc, InvalidSpec):
            raise
        raise InvalidSpec(f"bad parameters {p} for family {fam!r}") from None
    raise InvalidSpec(f"unknown family {fam!r}")
