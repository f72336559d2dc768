from collections import deque

from hypothesis import given, settings
from hypothesis import strategies as st

from cyclocover.good_edges import good_edge_set, is_good, root_path
from cyclocover.graph_core import Graph, bfs_distances
from cyclocover.instances import gen_bouquet, gen_k2k_plus_edge, gen_spider, gen_theta
from strategies import LAYERED, LAYERED_GOOD, cycle, graphs, path


def is_spanning_tree(n, edges):
    if len(edges) != n - 1:
        return False
    adj = {v: [] for v in range(n)}
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    seen = {0}
    q = deque([0])
    while q:
        u = q.popleft()
        for w in adj[u]:
            if w not in seen:
                seen.add(w)
                q.append(w)
    return len(seen) == n


def test_tree_has_no_good_edges():
    for r in range(6):
        assert good_edge_set(path(6), r).edges == ()


def test_c5_good_edge_is_the_horizontal_edge():
    for r in range(5):
        ges = good_edge_set(cycle(5), r)
        assert ges.edges == ges.horizontal_edges
        assert len(ges.edges) == 1


def test_layered_example_red_set_is_good():
    assert is_good(LAYERED, 0, LAYERED_GOOD)
    assert len(good_edge_set(LAYERED, 0).edges) == 5


def test_missing_horizontal_edge_reported():
    rep = is_good(cycle(5), 0, [])
    assert not rep and rep.clause == "horizontal"
    assert rep.witness == (2, 3)


def test_whole_bundle_in_F_reported():
    rep = is_good(cycle(4), 0, [(1, 2), (2, 3)])
    assert not rep and rep.clause == "bundle" and rep.witness == 2


def test_non_edge_reported():
    rep = is_good(cycle(4), 0, [(0, 2)])
    assert not rep and rep.clause == "not an edge"


def test_root_path_of_root():
    ges = good_edge_set(cycle(5), 3)
    assert root_path(ges, 3) == [3]


def test_root_path_c5():
    ges = good_edge_set(cycle(5), 0)
    p = root_path(ges, 2)
    assert p == [2, 1, 0]


FAMILIES = [
    gen_bouquet(2, 5, 3, [2, 3, 4]),
    gen_bouquet(1, 5, 2),
    gen_k2k_plus_edge(4),
    gen_spider(4),
    gen_theta(2, 2, 2),
    cycle(6),
]


def check_good_edge_set(g, r):
    ges = good_edge_set(g, r)
    assert len(ges.edges) == g.m - g.n + 1
    rest = sorted(set(g.edges) - set(ges.edges))
    assert is_spanning_tree(g.n, rest)
    assert is_good(g, r, ges.edges)
    d = bfs_distances(g, r)
    for v in range(g.n):
        p = root_path(ges, v)
        assert len(p) - 1 == d[v]
        assert all(g.has_edge(a, b) for a, b in zip(p, p[1:]))
        assert all(a not in ges.edges for a in zip(p, p[1:]))


def test_families():
    for g in FAMILIES:
        for r in range(g.n):
            check_good_edge_set(g, r)


@settings(max_examples=200)
@given(graphs(max_n=16, max_extra=6), st.data())
def test_good_edge_set_properties(g, data):
    check_good_edge_set(g, data.draw(st.integers(0, g.n - 1)))


@given(graphs(max_n=12), st.data())
def test_tree_is_the_complement(g, data):
    r = data.draw(st.integers(0, g.n - 1))
    ges = good_edge_set(g, r)
    tree = {tuple(sorted((v, ges.tree_parent[v]))) for v in range(g.n) if v != r}
    assert tree | set(ges.edges) == set(g.edges)
    assert not tree & set(ges.edges)


def test_restricted_to_base():
    # C5 with a tail; F computed on the cycle only
    g = Graph(7, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 5), (5, 6)])
    within = [True] * 5 + [False, False]
    ges = good_edge_set(g, 0, within=within)
    assert ges.edges == ((2, 3),)
    assert ges.dist[5] == -1
