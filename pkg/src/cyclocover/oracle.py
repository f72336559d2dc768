"""Independent checkers and exact solvers.

Nothing here reuses the constructions: distances come from
``scipy.sparse.csgraph`` and every property is checked from its definition.
"e lies on all shortest x-y paths" is decided by deleting ``e`` and seeing
whether the x-y distance grows (disconnection counts as infinite).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Any, Iterable, Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import shortest_path

from .errors import InputError, LimitExceeded, UnknownProblemTag, VertexOutOfRange
from .graph_core import Edge, Graph, edge, structure_profile
from .solutions import PATH_MODES, PathSystem, SolutionSet, size_bound

VERIFIABLE = ("dim", "edim", "mdim", "doubly", "geodetic", "meg", "dem")
XP_PROBLEMS = ("dim", "edim", "mdim", "geodetic", "meg", "dem")


@dataclass(frozen=True)
class VerificationReport:
    valid: bool
    witness: Any = None

    def __bool__(self) -> bool:
        return self.valid

    def to_json(self) -> dict[str, Any]:
        return {"valid": self.valid, "witness": self.witness}


def _adjacency(n: int, edges: Iterable[Edge]) -> csr_matrix:
    edges = list(edges)
    rows = [u for u, _ in edges]
    cols = [v for _, v in edges]
    return csr_matrix((np.ones(len(edges)), (rows, cols)), shape=(n, n))


def distance_matrix(g: Graph, without: Edge | None = None, rows: Sequence[int] | None = None) -> np.ndarray:
    """All-pairs (or ``rows``-to-all) distances, optionally in ``g - without``.

    Unreachable pairs come back as ``inf``.
    """
    edges = g.edges if without is None else [e for e in g.edges if e != without]
    A = _adjacency(g.n, edges)
    if rows is not None:
        return shortest_path(A, directed=False, unweighted=True, indices=list(rows))
    return shortest_path(A, directed=False, unweighted=True)


def _edge_distances(g: Graph, D: np.ndarray) -> np.ndarray:
    """``out[i, s]`` = distance from vertex ``s`` to edge ``g.edges[i]``."""
    if not g.edges:
        return np.zeros((0, g.n))
    us = np.array([u for u, _ in g.edges])
    vs = np.array([v for _, v in g.edges])
    return np.minimum(D[:, us], D[:, vs]).T


def _element(label: int | Edge) -> int | list[int]:
    return label if isinstance(label, int) else list(label)


def _first_collision(rows: np.ndarray, labels: Sequence) -> tuple | None:
    seen: dict[bytes, int] = {}
    rows = np.ascontiguousarray(rows)
    for i in range(rows.shape[0]):
        key = rows[i].tobytes()
        j = seen.setdefault(key, i)
        if j != i:
            return labels[j], labels[i]
    return None


def _check_subset(problem: str, g: Graph, S: Sequence[int]) -> VerificationReport:
    D = distance_matrix(g)
    S = list(S)
    if problem in ("dim", "edim", "mdim"):
        blocks, labels = [], []
        if problem in ("dim", "mdim"):
            blocks.append(D[:, S])
            labels.extend(range(g.n))
        if problem in ("edim", "mdim"):
            blocks.append(_edge_distances(g, D)[:, S])
            labels.extend(g.edges)
        hit = _first_collision(np.vstack(blocks), labels)
        if hit:
            return VerificationReport(False, {"unresolved": [_element(x) for x in hit]})
        return VerificationReport(True)
    if problem == "doubly":
        rows = D[:, S] - D[:, S[:1]] if S else np.zeros((g.n, 0))
        hit = _first_collision(rows, list(range(g.n)))
        if hit:
            return VerificationReport(False, {"not_doubly_resolved": list(hit)})
        return VerificationReport(True)
    if problem == "geodetic":
        covered = np.zeros(g.n, dtype=bool)
        DS = D[S]
        for i, a in enumerate(S):
            # v lies between a and b iff d(a,v) + d(v,b) = d(a,b)
            covered |= ((DS[i][None, :] + DS) == D[a, S][:, None]).any(axis=0)
        if not covered.all():
            return VerificationReport(False, {"uncovered_vertex": int(np.argmin(covered))})
        return VerificationReport(True)
    if problem in ("meg", "dem"):
        if not S:
            if g.edges:
                return VerificationReport(False, {"unmonitored_edge": list(g.edges[0])})
            return VerificationReport(True)
        DS = D[S]
        for e in g.edges:
            De = distance_matrix(g, without=e, rows=S)
            grew = De > DS
            if problem == "meg":
                grew = grew[:, S]
            if not grew.any():
                return VerificationReport(False, {"unmonitored_edge": list(e)})
        return VerificationReport(True)
    raise UnknownProblemTag(f"unknown problem {problem!r}")


def _validate_subset(g: Graph, S: Iterable[int]) -> list[int]:
    out = sorted(set(S))
    for v in out:
        if not (isinstance(v, (int, np.integer)) and 0 <= v < g.n):
            raise VertexOutOfRange(f"vertex {v} outside 0..{g.n - 1}")
    return [int(v) for v in out]


def verify_set(problem: str, g: Graph, S: Iterable[int]) -> VerificationReport:
    """Exhaustively check that ``S`` solves ``problem`` on ``g``.

    On failure the witness names the unresolved pair, uncovered vertex or
    unmonitored edge.
    """
    if problem not in VERIFIABLE:
        raise UnknownProblemTag(f"unknown problem {problem!r}")
    return _check_subset(problem, g, _validate_subset(g, S))


def edge_on_all_shortest_paths(g: Graph, e: Sequence[int], x: int, y: int) -> bool:
    e = edge(*e)
    if not g.has_edge(*e):
        raise InputError(f"{e} is not an edge")

    def bfs(skip: Edge | None) -> list[float]:
        dist = [float("inf")] * g.n
        dist[x] = 0
        queue = deque([x])
        while queue:
            u = queue.popleft()
            for w in g.adj[u]:
                if dist[w] == float("inf") and (skip is None or edge(u, w) != skip):
                    dist[w] = dist[u] + 1
                    queue.append(w)
        return dist

    return bfs(e)[y] > bfs(None)[y]


def verify_path_system(g: Graph, ps: PathSystem) -> VerificationReport:
    """Check that every path is isometric, then edge coverage or exact
    vertex partition depending on ``ps.mode``."""
    dist_cache: dict[int, np.ndarray] = {}
    for i, path in enumerate(ps.paths):
        if not path:
            return VerificationReport(False, {"path_index": i, "reason": "empty path"})
        if any(not (0 <= v < g.n) for v in path):
            return VerificationReport(False, {"path_index": i, "reason": "vertex out of range"})
        if len(set(path)) != len(path):
            return VerificationReport(False, {"path_index": i, "reason": "repeated vertex"})
        if any(not g.has_edge(a, b) for a, b in zip(path, path[1:])):
            return VerificationReport(False, {"path_index": i, "reason": "consecutive vertices not adjacent"})
        start = path[0]
        if start not in dist_cache:
            dist_cache[start] = distance_matrix(g, rows=[start])[0]
        if dist_cache[start][path[-1]] != len(path) - 1:
            return VerificationReport(False, {"path_index": i, "reason": "not isometric"})
    if ps.mode == "edge_cover":
        covered = {edge(a, b) for p in ps.paths for a, b in zip(p, p[1:])}
        for e in g.edges:
            if e not in covered:
                return VerificationReport(False, {"uncovered_edge": list(e)})
        return VerificationReport(True)
    if ps.mode == "vertex_partition":
        owner: dict[int, int] = {}
        for i, p in enumerate(ps.paths):
            for v in p:
                if v in owner:
                    return VerificationReport(False, {"shared_vertex": v, "paths": [owner[v], i]})
                owner[v] = i
        for v in range(g.n):
            if v not in owner:
                return VerificationReport(False, {"uncovered_vertex": v})
        return VerificationReport(True)
    raise UnknownProblemTag(f"unknown path mode {ps.mode!r}")


class SubsetChecker:
    """Validity test for many candidate sets on one small graph.

    Everything that does not depend on the candidate set is tabulated once,
    so each test is a few array lookups.
    """

    def __init__(self, problem: str, g: Graph):
        if problem not in VERIFIABLE:
            raise UnknownProblemTag(f"unknown problem {problem!r}")
        self.problem = problem
        self.g = g
        D = distance_matrix(g)
        self.D = D.astype(np.int32)
        if problem in ("dim", "mdim", "doubly"):
            self.vrows = self.D
        if problem in ("edim", "mdim"):
            self.erows = _edge_distances(g, D).astype(np.int32)
        if problem == "mdim":
            self.mrows = np.vstack([self.vrows, self.erows])
        if problem == "geodetic":
            self.between = (D[:, None, :] + D[None, :, :]) == D[:, :, None]
        if problem in ("meg", "dem"):
            if g.edges:
                self.grows = np.stack([distance_matrix(g, without=e) > D for e in g.edges])
            else:
                self.grows = np.zeros((0, g.n, g.n), dtype=bool)

    @staticmethod
    def _distinct(rows: np.ndarray) -> bool:
        rows = np.ascontiguousarray(rows)
        return len({rows[i].tobytes() for i in range(rows.shape[0])}) == rows.shape[0]

    def __call__(self, S: Sequence[int]) -> bool:
        S = list(S)
        p = self.problem
        if p == "dim":
            return self._distinct(self.vrows[:, S])
        if p == "edim":
            return self._distinct(self.erows[:, S])
        if p == "mdim":
            return self._distinct(self.mrows[:, S])
        if p == "doubly":
            if not S:
                return self.g.n <= 1
            return self._distinct(self.vrows[:, S] - self.vrows[:, S[:1]])
        if p == "geodetic":
            if not S:
                return False
            return bool(self.between[np.ix_(S, S)].any(axis=(0, 1)).all())
        if p == "meg":
            if not S:
                return not self.g.edges
            return bool(self.grows[:, S][:, :, S].any(axis=(1, 2)).all())
        # dem
        if not S:
            return not self.g.edges
        return bool(self.grows[:, S, :].any(axis=(1, 2)).all())


def _search(check, candidates, forced, max_extra, budget) -> tuple[int, ...] | None:
    tried = 0
    for k in range(max_extra + 1):
        for extra in combinations(candidates, k):
            tried += 1
            if tried > budget:
                raise LimitExceeded(f"more than {budget} candidate sets")
            S = tuple(sorted(forced + extra))
            if check(S):
                return S
    return None


def brute_force_min_set(
    problem: str,
    g: Graph,
    limit: int | None = None,
    max_n: int = 20,
    budget: int = 3_000_000,
) -> SolutionSet:
    """Lexicographically smallest minimum-size solution by plain enumeration
    (sizes ascending, lexicographic within a size)."""
    if problem not in VERIFIABLE:
        raise UnknownProblemTag(f"unknown problem {problem!r}")
    if g.n > max_n:
        raise LimitExceeded(f"n={g.n} exceeds brute-force cap {max_n}")
    check = SubsetChecker(problem, g)
    cap = g.n if limit is None else min(limit, g.n)
    S = _search(check, tuple(range(g.n)), (), cap, budget)
    if S is None:
        raise LimitExceeded(f"no valid {problem} set of size <= {cap}")
    return SolutionSet(problem, S, "brute", size_bound(problem, g))


def xp_forced_vertices(problem: str, g: Graph) -> tuple[int, ...]:
    """Vertices the exact search starts from: leaves for the geodetic family
    and mixed resolving sets, the branch-resolving leaves for metric and edge
    dimension, nothing for distance-edge monitoring."""
    p = structure_profile(g)
    if problem in ("geodetic", "meg", "mdim"):
        return p.leaves
    if problem in ("dim", "edim"):
        return p.branch_resolving_choice
    if problem == "dem":
        return ()
    raise UnknownProblemTag(f"xp_solve does not handle {problem!r}")


def xp_solve(problem: str, g: Graph, budget: int = 3_000_000, max_n: int = 200) -> SolutionSet:
    """Exact search over small extensions of a forced leaf set.

    The extension size is capped by the proven bound minus the forced part,
    so a valid set always lies inside the search space; the work is
    polynomial in ``n`` for every fixed cyclomatic number.
    """
    if problem not in XP_PROBLEMS:
        raise UnknownProblemTag(f"xp_solve does not handle {problem!r}")
    if g.n > max_n:
        raise LimitExceeded(f"n={g.n} exceeds xp cap {max_n}")
    forced = xp_forced_vertices(problem, g)
    bound = size_bound(problem, g)
    check = SubsetChecker(problem, g)
    fixed = set(forced)
    candidates = tuple(v for v in range(g.n) if v not in fixed)
    S = _search(check, candidates, tuple(forced), max(bound - len(forced), 0), budget)
    if S is None:
        raise LimitExceeded(f"no valid {problem} extension within the bound {bound}")
    return SolutionSet(problem, S, "xp", bound)


def isometric_paths(g: Graph, D: np.ndarray | None = None) -> list[tuple[int, ...]]:
    """Every shortest path of ``g``, once per unordered endpoint pair
    (single vertices included), oriented from the lower endpoint."""
    if D is None:
        D = distance_matrix(g)
    out: list[tuple[int, ...]] = []
    for u in range(g.n):
        for v in range(u, g.n):
            stack = [(u,)]
            while stack:
                p = stack.pop()
                last = p[-1]
                if last == v:
                    out.append(p)
                    continue
                want = D[last, v] - 1
                for w in g.adj[last]:
                    if D[w, v] == want:
                        stack.append(p + (w,))
    return out


def brute_force_min_path_system(
    mode: str, g: Graph, max_n: int = 16, budget: int = 5_000_000
) -> PathSystem:
    """Minimum isometric path edge-cover or partition by branch and bound
    over all shortest paths."""
    mode = PATH_MODES.get(mode, mode)
    if mode not in ("edge_cover", "vertex_partition"):
        raise UnknownProblemTag(f"unknown path mode {mode!r}")
    if g.n > max_n:
        raise LimitExceeded(f"n={g.n} exceeds brute-force cap {max_n}")
    problem = "ipec" if mode == "edge_cover" else "ipp"
    bound = size_bound(problem, g)
    paths = isometric_paths(g)

    if mode == "edge_cover":
        eid = {e: i for i, e in enumerate(g.edges)}
        masks: dict[int, tuple[int, ...]] = {}
        for p in paths:
            mk = 0
            for a, b in zip(p, p[1:]):
                mk |= 1 << eid[edge(a, b)]
            if mk and mk not in masks:
                masks[mk] = p
        # keep only paths whose edge set is not inside another path's
        items = sorted(masks.items(), key=lambda t: -bin(t[0]).count("1"))
        kept: list[tuple[int, tuple[int, ...]]] = []
        for mk, p in items:
            if not any(mk & other == mk for other, _ in kept):
                kept.append((mk, p))
        n_elems = g.m
    else:
        kept = []
        for p in paths:
            mk = 0
            for v in p:
                mk |= 1 << v
            kept.append((mk, p))
        kept.sort(key=lambda t: -len(t[1]))
        n_elems = g.n

    universe = (1 << n_elems) - 1
    if universe == 0:
        return PathSystem(mode, (), bound)
    by_elem: list[list[tuple[int, tuple[int, ...]]]] = [[] for _ in range(n_elems)]
    for mk, p in kept:
        for i in range(n_elems):
            if mk >> i & 1:
                by_elem[i].append((mk, p))
    widest = max(bin(mk).count("1") for mk, _ in kept)
    partition = mode == "vertex_partition"

    best: list[list[tuple[int, ...]] | None] = [None]
    best_len = [n_elems + 1]
    nodes = [0]

    def recurse(covered: int, chosen: list[tuple[int, ...]]) -> None:
        nodes[0] += 1
        if nodes[0] > budget:
            raise LimitExceeded(f"path search exceeded {budget} nodes")
        if covered == universe:
            if len(chosen) < best_len[0]:
                best_len[0] = len(chosen)
                best[0] = list(chosen)
            return
        left = bin(universe & ~covered).count("1")
        if len(chosen) + -(-left // widest) >= best_len[0]:
            return
        # branch on the uncovered element with the fewest usable candidates
        pick, pick_opts = None, None
        rest = universe & ~covered
        while rest:
            low = rest & -rest
            i = low.bit_length() - 1
            rest ^= low
            opts = [(mk, p) for mk, p in by_elem[i] if not (partition and mk & covered)]
            if pick_opts is None or len(opts) < len(pick_opts):
                pick, pick_opts = i, opts
                if len(opts) <= 1:
                    break
        for mk, p in pick_opts:
            chosen.append(p)
            recurse(covered | mk, chosen)
            chosen.pop()

    recurse(0, [])
    assert best[0] is not None
    return PathSystem(mode, tuple(best[0]), bound)
