"""Acceptance suite: one test per criterion, each recording a PASS/FAIL line
that is printed at the end of the pytest run (see conftest.py).

Every check here is computed from scratch (plain BFS, the brute-force
oracle, the stated bound formulas); nothing is taken from the objects the
constructions return except their vertex sets and paths.
"""

import json
import random
import subprocess
import sys
import textwrap
import time
from collections import deque
from math import ceil
from pathlib import Path

from cyclocover.dispatch import CONSTRUCTIONS
from cyclocover.errors import MinDegreeTooSmall
from cyclocover.good_edges import good_edge_set, root_path
from cyclocover.graph_core import Graph, articulation_points, structure_profile
from cyclocover.instances import (
    base_graph_relabelled,
    gen_bouquet,
    gen_k2k_plus_edge,
    gen_random_cyclomatic,
    gen_spider,
    gen_theta,
)
from cyclocover.metric_dim import mixed_resolving_construct, resolving_construct
from cyclocover.oracle import (
    brute_force_min_path_system,
    brute_force_min_set,
    verify_path_system,
    verify_set,
    xp_solve,
)
from cyclocover.solutions import PathSystem

ARTIFACTS = Path(__file__).resolve().parent.parent / "acceptance_artifacts"


def bfs(g, s):
    dist = [-1] * g.n
    dist[s] = 0
    q = deque([s])
    while q:
        u = q.popleft()
        for w in g.adj[u]:
            if dist[w] < 0:
                dist[w] = dist[u] + 1
                q.append(w)
    return dist


def spanning_tree(n, edges):
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in edges:
        a, b = find(u), find(v)
        if a == b:
            return False
        parent[a] = b
    return len(edges) == n - 1


def random_graph(rng, max_n, max_c, min_n=1):
    n = rng.randint(min_n, max_n)
    c = rng.randint(0, min(max_c, (n - 1) * (n - 2) // 2))
    return gen_random_cyclomatic(n, c, rng.randrange(2**32))


def tight_families():
    out = []
    for k in range(3):
        for l in range(4):
            if k + l:
                out.append(gen_bouquet(k, 5, l))
    out.append(gen_bouquet(2, [5, 5], 3, [2, 3, 4]))
    out += [gen_k2k_plus_edge(k) for k in (2, 3, 4)]
    out += [gen_spider(t) for t in (3, 4, 5)]
    out += [gen_theta(2, 2, 2), gen_theta(1, 3, 4)]
    return out


def stated_bound(problem, g):
    p = structure_profile(g)
    c, ell = p.cyclomatic, p.leaf_count
    cut = bool(articulation_points(g))
    two = 2 * c if cut else 2 * c + 1
    deg2 = p.min_degree >= 2
    return {
        "dim": two if deg2 else p.dim_lower_bound + 2 * c,
        "edim": two if deg2 else p.dim_lower_bound + 2 * c,
        "mdim": two if deg2 else ell + 2 * c,
        "doubly": two,
        "geodetic": 2 * c + ell if cut else 2 * c + 1,
        "meg": 3 * c + ell if cut else 3 * c + ell + 1,
        "dem": c + 1,
        "ipec": 3 * c + ceil((ell + 1) / 2),
        "ipp": 2 * c + ell,
    }[problem]


def bounds_suite():
    """500 graphs, n <= 40, c <= 6; odd trials are replaced by their base
    graph (minimum degree 2), so both regimes are well represented."""
    rng = random.Random(2024)
    out = []
    while len(out) < 500:
        g = random_graph(rng, 40, 6, min_n=3)
        if len(out) % 2:
            if g.m < g.n:
                continue
            g = base_graph_relabelled(g)
            if g.n < 3:
                continue
        out.append(g)
    return out


_SUITE = {}


def suite_outputs():
    if not _SUITE:
        rows = []
        for g in bounds_suite():
            for problem, fn in CONSTRUCTIONS.items():
                try:
                    rows.append((g, problem, fn(g)))
                except MinDegreeTooSmall:
                    assert problem == "doubly" and structure_profile(g).min_degree < 2
        _SUITE["rows"] = rows
    return _SUITE["rows"]


# ---------------------------------------------------------------- 1


def test_criterion_1_good_edge_sets(record_criterion):
    rng = random.Random(1)
    cases = []
    for _ in range(1000):
        g = random_graph(rng, 60, 8)
        cases.append((g, rng.randrange(g.n)))
    for g in tight_families():
        cases += [(g, r) for r in range(g.n)]
    failures = []
    start = time.perf_counter()
    for g, r in cases:
        ges = good_edge_set(g, r)
        dist = bfs(g, r)
        rest = sorted(set(g.edges) - set(ges.edges))
        ok = len(ges.edges) == g.m - g.n + 1 and spanning_tree(g.n, rest)
        ok = ok and all(len(root_path(ges, v)) - 1 == dist[v] for v in range(g.n))
        if not ok:
            failures.append((g.edges, r))
    elapsed = time.perf_counter() - start
    passed = not failures and elapsed < 10
    record_criterion("1 good-edge-set properties", passed,
                     f"{len(cases)} rooted graphs, {len(failures)} failures, {elapsed:.2f}s")
    assert not failures, failures[:3]
    assert elapsed < 10


# ---------------------------------------------------------------- 2, 3


def test_criterion_2_bounds(record_criterion):
    violations = []
    graphs = {id(g): g for g, _, _ in suite_outputs()}
    deg2 = sum(structure_profile(g).min_degree >= 2 for g in graphs.values())
    for g, problem, sol in suite_outputs():
        size = sol.count if isinstance(sol, PathSystem) else sol.size
        if size > stated_bound(problem, g):
            violations.append((problem, g.edges, size))
    record_criterion("2 theorem bounds", not violations,
                     f"{len(suite_outputs())} outputs on {len(graphs)} graphs "
                     f"({deg2} with min degree >= 2), {len(violations)} violations")
    assert not violations, violations[:3]


def test_criterion_3_oracle_validity(record_criterion):
    failures = []
    for g, problem, sol in suite_outputs():
        if isinstance(sol, PathSystem):
            rep = verify_path_system(g, sol)
        else:
            rep = verify_set(problem, g, sol.vertices)
        if not rep:
            failures.append((problem, g.edges, rep.witness))
    record_criterion("3 oracle validity", not failures,
                     f"{len(suite_outputs())} outputs, {len(failures)} rejected")
    assert not failures, failures[:3]


# ---------------------------------------------------------------- 4


def bouquet_cases():
    # the closed forms describe bouquets whose hub is a cut vertex
    return [(k, l) for k in range(3) for l in range(4) if k + l >= 2]


def test_criterion_4a_bouquet_geodetic(record_criterion):
    misses = []
    for k, l in bouquet_cases():
        got = brute_force_min_set("geodetic", gen_bouquet(k, 5, l)).size
        if got != 2 * k + l:
            misses.append({"k": k, "l": l, "exact": got, "formula": 2 * k + l})
    record_criterion("4a bouquet geodetic = 2k+l", not misses,
                     f"{len(bouquet_cases())} bouquets, mismatches {misses}")
    assert not misses


def test_criterion_4b_bouquet_ipp(record_criterion):
    misses = []
    for k, l in bouquet_cases():
        got = brute_force_min_path_system("ipp", gen_bouquet(k, 5, l)).count
        if got != 2 * k + l - 1:
            misses.append({"k": k, "l": l, "exact": got, "formula": 2 * k + l - 1})
    record_criterion("4b bouquet ipp = 2k+l-1", not misses,
                     f"{len(bouquet_cases())} bouquets, mismatches {misses}")
    assert not misses


def test_criterion_4c_bouquet_ipec(record_criterion):
    misses = []
    for k, l in bouquet_cases():
        got = brute_force_min_path_system("ipec", gen_bouquet(k, 5, l)).count
        want = 3 * k + ceil(l / 2)
        if got != want:
            misses.append({"k": k, "l": l, "exact": got, "formula": want})
    record_criterion("4c bouquet ipec = 3k+ceil(l/2)", not misses,
                     f"{len(bouquet_cases())} bouquets, mismatches {misses}")
    assert not misses


def test_criterion_4d_k2k_geodetic(record_criterion):
    got = {k: brute_force_min_set("geodetic", gen_k2k_plus_edge(k)).size for k in (2, 3, 4)}
    passed = all(got[k] == k for k in got)
    record_criterion("4d K2,k plus edge geodetic = k", passed, f"exact {got}")
    assert passed


def test_criterion_4e_trees(record_criterion):
    rng = random.Random(4)
    misses = []
    for _ in range(40):
        g = gen_random_cyclomatic(rng.randint(2, 14), 0, rng.randrange(2**32))
        leaves = structure_profile(g).leaves
        if brute_force_min_set("meg", g).size != len(leaves):
            misses.append(("meg", g.edges))
        if mixed_resolving_construct(g).vertices != leaves:
            misses.append(("mdim construct", g.edges))
    record_criterion("4e trees: meg = leaves, mixed construct = leaf set", not misses,
                     f"40 trees, {len(misses)} mismatches")
    assert not misses


def test_criterion_4f_paths(record_criterion):
    sizes = {n: resolving_construct(Graph(n, [(i, i + 1) for i in range(n - 1)])).size
             for n in range(2, 21)}
    passed = set(sizes.values()) == {1}
    record_criterion("4f paths: dim construct size 1", passed, f"P2..P20 sizes {set(sizes.values())}")
    assert passed


# ---------------------------------------------------------------- 5, 7

_CROSS = {}


def cross_suite():
    if not _CROSS:
        rng = random.Random(5)
        rows = []
        for _ in range(200):
            g = random_graph(rng, 10, 6, min_n=2)
            rows.append((g, {p: (brute_force_min_set(p, g).size, xp_solve(p, g).size)
                             for p in ("geodetic", "meg", "dem", "mdim", "dim", "edim")}))
        _CROSS["rows"] = rows
    return _CROSS["rows"]


def test_criterion_5_cross_solver(record_criterion):
    mismatches, findings, order = [], [], []
    for g, res in cross_suite():
        for p in ("geodetic", "meg", "dem", "mdim"):
            brute, xp = res[p]
            if brute != xp:
                mismatches.append((p, g.edges, brute, xp))
        for p in ("dim", "edim"):
            brute, xp = res[p]
            built = CONSTRUCTIONS[p](g).size
            if not brute <= xp <= built:
                order.append((p, g.edges, brute, xp, built))
            if brute < xp:
                findings.append({"problem": p, "n": g.n, "edges": [list(e) for e in g.edges],
                                 "brute": brute, "xp": xp})
    ARTIFACTS.mkdir(exist_ok=True)
    (ARTIFACTS / "xp_dim_findings.json").write_text(json.dumps(findings, indent=1) + "\n")
    passed = not mismatches and not order
    record_criterion("5 cross-solver equivalence", passed,
                     f"200 graphs, {len(mismatches)} xp/brute mismatches, {len(order)} order "
                     f"violations, {len(findings)} dim/edim findings (reported)")
    assert not mismatches, mismatches[:3]
    assert not order, order[:3]


def test_criterion_7_dim_edim_gap(record_criterion):
    violations = []
    # the inequality is stated for graphs other than K2, where dim = 1 and edim = 0
    rows = [(g, res) for g, res in cross_suite() if g.n > 2]
    for g, res in rows:
        c = g.m - g.n + 1
        if abs(res["dim"][0] - res["edim"][0]) > 2 * c:
            violations.append((g.edges, res["dim"][0], res["edim"][0]))
    record_criterion("7 |dim - edim| <= 2c", not violations,
                     f"{len(rows)} graphs ({len(cross_suite()) - len(rows)} copies of K2 skipped), "
                     f"{len(violations)} violations")
    assert not violations


# ---------------------------------------------------------------- 6


def test_criterion_6_small_values(record_criterion):
    def cyc(n):
        return Graph(n, [(i, (i + 1) % n) for i in range(n)])

    got = {
        "dim(C6)": (brute_force_min_set("dim", cyc(6)).size, 2),
        "g(C5)": (brute_force_min_set("geodetic", cyc(5)).size, 3),
        "g(C6)": (brute_force_min_set("geodetic", cyc(6)).size, 2),
        "dem(C4)": (brute_force_min_set("dem", cyc(4)).size, 2),
        "ipec(C5)": (brute_force_min_path_system("ipec", cyc(5)).count, 3),
        "ipp(C4)": (brute_force_min_path_system("ipp", cyc(4)).count, 2),
        "ipp(spider4)": (brute_force_min_path_system("ipp", gen_spider(4)).count, 3),
    }
    wrong = {k: v for k, v in got.items() if v[0] != v[1]}
    record_criterion("6 small-graph exact values", not wrong,
                     f"{len(got)} values, mismatches {wrong}")
    assert not wrong


# ---------------------------------------------------------------- 8

PERF_SCRIPT = textwrap.dedent(
    """
    import json, resource, time
    from cyclocover.dispatch import CONSTRUCTIONS
    from cyclocover.good_edges import good_edge_set
    from cyclocover.instances import base_graph_relabelled, gen_random_cyclomatic

    g = gen_random_cyclomatic(100000, 50, 8)
    core = base_graph_relabelled(g)

    def best(fn, repeat=3):
        times = []
        for _ in range(repeat):
            t = time.perf_counter()
            fn()
            times.append(time.perf_counter() - t)
        return min(times)

    out = {"good_edge_set": best(lambda: good_edge_set(g, 0))}
    for p in ("dim", "edim", "mdim", "geodetic", "meg", "dem"):
        out[p] = best(lambda: CONSTRUCTIONS[p](g))
    # the doubly resolving construction needs minimum degree 2: use the base graph
    out["doubly (base graph)"] = best(lambda: CONSTRUCTIONS["doubly"](core))
    extra = {p: best(lambda: CONSTRUCTIONS[p](g), 1) for p in ("ipec", "ipp")}
    rss = resource.getrusage(resource.RUSAGE_SELF).ru_maxrss / 1024
    print(json.dumps({"times": out, "paths": extra, "rss_mb": rss}))
    """
)


def test_criterion_8_performance(record_criterion):
    proc = subprocess.run([sys.executable, "-c", PERF_SCRIPT], capture_output=True, text=True,
                          timeout=600)
    assert proc.returncode == 0, proc.stderr
    res = json.loads(proc.stdout)
    slow = {k: round(v, 3) for k, v in res["times"].items() if v >= 1.0}
    worst = max(res["times"], key=res["times"].get)
    passed = not slow and res["rss_mb"] < 500
    record_criterion(
        "8 performance n=100000 c=50", passed,
        f"slowest {worst} {res['times'][worst]:.3f}s, peak {res['rss_mb']:.0f} MB "
        f"(path constructions, not gated: "
        + ", ".join(f"{k} {v:.2f}s" for k, v in res["paths"].items()) + ")",
    )
    assert not slow, slow
    assert res["rss_mb"] < 500
