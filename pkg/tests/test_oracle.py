from splitdecomp.graph import Graph, bfs_layering
from splitdecomp.oracle import (
    brute_borders,
    classify_quotient,
    crosses,
    enumerate_splits,
    is_split,
    quotient_graph,
    reference_tree,
    strong_splits,
)
from splitdecomp.splittree import CLIQUE, PRIME, STAR


def path(n):
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n):
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n):
    return Graph.from_edges(n, [(a, b) for a in range(n) for b in range(a + 1, n)])


def test_p4_split_witness():
    w = is_split(path(4), [0, 1])
    assert w.v2 == {1} and w.v3 == {2} and not w.trivial


def test_non_split():
    assert is_split(cycle(5), [0, 1]) is None


def test_every_bipartition_of_a_clique_splits():
    assert len(enumerate_splits(complete(4))) == 2**3 - 1


def test_crossing_clique_splits():
    sp = {frozenset(s.x2): s for s in enumerate_splits(complete(4))}
    assert crosses(sp[frozenset([1, 2])], sp[frozenset([2, 3])])
    assert not crosses(sp[frozenset([1, 2])], sp[frozenset([1, 2, 3])])


def test_strong_splits_of_p4():
    nontrivial = [s for s in strong_splits(path(4)) if not s.trivial]
    assert [sorted(s.x1) for s in nontrivial] == [[0, 1]]


def test_c5_has_only_trivial_splits():
    assert all(s.trivial for s in enumerate_splits(cycle(5)))


def test_quotient_classification():
    assert classify_quotient(complete(4)) == (CLIQUE, None)
    star = Graph.from_edges(4, [(2, 0), (2, 1), (2, 3)])
    assert classify_quotient(star) == (STAR, 2)
    assert classify_quotient(cycle(5))[0] == PRIME
    q = quotient_graph(path(4), [[0, 1], [2], [3]])
    assert q.edge_count == 2


def test_reference_trees():
    assert reference_tree(complete(4)).counts() == {PRIME: 0, CLIQUE: 1, STAR: 0}
    assert reference_tree(cycle(5)).counts() == {PRIME: 1, CLIQUE: 0, STAR: 0}
    t = reference_tree(path(4))
    assert t.counts()[STAR] == 2
    centres = sorted(t.vertex[t.center[u]] for u in t.internal())
    assert centres == [1, 2]


def test_borders_of_p4():
    lay = bfs_layering(path(4), 0)
    assert brute_borders(path(4), lay, 2) == {frozenset([2])}


def test_borders_of_a_four_cycle():
    g = Graph.from_edges(4, [(0, 1), (0, 2), (1, 3), (2, 3)])
    lay = bfs_layering(g, 0)
    assert {frozenset([1]), frozenset([2]), frozenset([1, 2])} <= brute_borders(g, lay, 1)
