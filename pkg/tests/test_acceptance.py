"""Acceptance criteria, one test each; every test records a PASS/FAIL line
that conftest prints at the end of the run."""
import random
import statistics
import time

import networkx as nx

from conftest import ACCEPTANCE
from corpus import (
    atlas,
    eight_vertex_graphs,
    random_cograph,
    random_connected,
    random_family,
    random_partitive_tree,
    to_graph,
)
from splitdecomp.generate import random_connected_graph
from splitdecomp.graph import Graph, bfs_layering
from splitdecomp.modules import layer_restricted_modules, modular_decomposition
from splitdecomp.oracle import brute_borders, brute_modules, brute_orthogonal, reference_tree, split_sides
from splitdecomp.orthogonal import orthogonal_tree
from splitdecomp.partitive import enumerate_members, generator_family, swap_labels, trees_equal
from splitdecomp.split import compute_borders, split_decomposition
from splitdecomp.splittree import CLIQUE, PRIME, STAR


def record(k, title, ok, detail):
    ACCEPTANCE[k] = (title, ok, detail)
    assert ok, detail


def graphs_up_to_eight():
    return atlas(7) + eight_vertex_graphs()


def test_c1_exhaustive_oracle_equivalence():
    checked = bad = 0
    first = None
    for g in atlas(7):
        for r in range(g.n):
            checked += 1
            if not split_decomposition(g, r).same_as(reference_tree(g, r)):
                bad += 1
                first = first or (list(g.edges()), r)
    record(1, "exhaustive oracle equivalence, connected n<=7, every root", bad == 0,
           f"{checked} (graph, root) pairs, {bad} mismatches" + (f", first {first}" if first else ""))


def test_c2_random_oracle_equivalence():
    rng = random.Random(20240601)
    bad = 0
    for _ in range(1000):
        g = random_connected(rng, rng.randint(8, 10))
        r = rng.randrange(g.n)
        if not split_decomposition(g, r).same_as(reference_tree(g, r)):
            bad += 1
    record(2, "random oracle equivalence, 1000 graphs 8<=n<=10", bad == 0, f"{bad} mismatches")


def test_c3_orthogonal_correctness():
    rng = random.Random(7)
    bad = 0
    for _ in range(1000):
        f = random_family(rng, rng.randint(1, 12), rng.randint(0, 12))
        got = enumerate_members(orthogonal_tree(f).tree).as_set()
        if got != brute_orthogonal(f).as_set():
            bad += 1
    record(3, "orthogonal tree equals brute force, 1000 families, ground<=12", bad == 0, f"{bad} mismatches")


def test_c4_partitive_identities():
    rng = random.Random(99)
    involution = reproduce = union = 0
    for _ in range(500):
        t = random_partitive_tree(rng, rng.randint(1, 10))
        s = swap_labels(t)
        if not trees_equal(swap_labels(s), t):
            involution += 1
        if not (trees_equal(orthogonal_tree(generator_family(s)).tree, s)
                and trees_equal(orthogonal_tree(generator_family(t)).tree, t)):
            reproduce += 1
        ground = t.ground
        f, f2 = random_family(rng, ground), random_family(rng, ground)
        lhs = enumerate_members(orthogonal_tree(f | f2).tree).as_set()
        rhs = enumerate_members(orthogonal_tree(f).tree).as_set() & enumerate_members(orthogonal_tree(f2).tree).as_set()
        if lhs != rhs:
            union += 1
    ok = involution == reproduce == union == 0
    record(4, "partitive identities on 500 random trees", ok,
           f"involution failures {involution}, generator round-trip failures {reproduce}, union/intersection failures {union}")


def test_c5_borders_per_layer():
    checked = bad = 0
    for g in graphs_up_to_eight():
        sides = split_sides(g)
        for r in range(g.n):
            lay = bfs_layering(g, r)
            for h in range(1, lay.max_dist + 1):
                b = compute_borders(g, lay, h)
                layer = b.layer
                whole = frozenset(layer)
                got = {frozenset(layer[i] for i in m) for m in enumerate_members(b.tree).members} - {whole}
                want = set(brute_borders(g, lay, h, sides)) - {whole}
                checked += 1
                if got != want:
                    bad += 1
    record(5, "borders per layer equal brute force, connected n<=8, all roots and layers", bad == 0,
           f"{checked} (graph, root, layer) triples, {bad} mismatches")


def _layer_modules_brute(g, lay, h):
    """Modules of G[<=h] contained in layer h, by subsets of the layer."""
    layer = lay.layers[h]
    upto = [v for v in range(g.n) if lay.dist[v] <= h]
    out = set()
    k = len(layer)
    for mask in range(1, 1 << k):
        s = {layer[i] for i in range(k) if mask >> i & 1}
        ok = True
        for x in upto:
            if x in s:
                continue
            seen = len(s & g.adjset(x))
            if 0 < seen < len(s):
                ok = False
                break
        if ok:
            out.add(frozenset(s))
    return out


def test_c6_module_machinery():
    md_bad = layer_bad = 0
    worst = 0.0
    for g in atlas(7, connected=False) + eight_vertex_graphs(connected=False):
        if enumerate_members(modular_decomposition(g)).as_set() != brute_modules(g).as_set():
            md_bad += 1

    def ratio(g, lay, h):
        mf = layer_restricted_modules(g, lay, h)
        layer = set(lay.layers[h])
        prev = set(lay.layers[h - 1])
        e_h = sum(1 for u in layer for w in g.adjacency[u] if w in layer) // 2
        e_up = sum(1 for u in layer for w in g.adjacency[u] if w in prev)
        return mf, mf.generator_norm() / (e_h + e_up + len(layer))

    for g in graphs_up_to_eight():
        for r in range(g.n):
            lay = bfs_layering(g, r)
            for h in range(1, lay.max_dist + 1):
                mf, q = ratio(g, lay, h)
                worst = max(worst, q)
                layer = mf.layer
                got = {frozenset(layer[i] for i in m) for m in enumerate_members(mf.tree).members}
                if not mf.layer_is_module:
                    got.discard(frozenset(layer))
                if got != _layer_modules_brute(g, lay, h):
                    layer_bad += 1
    rng = random.Random(6)
    for _ in range(300):
        g = random_connected(rng, rng.randint(10, 60))
        lay = bfs_layering(g, rng.randrange(g.n))
        for h in range(1, lay.max_dist + 1):
            worst = max(worst, ratio(g, lay, h)[1])
    ok = md_bad == 0 and layer_bad == 0 and worst <= 4
    record(6, "modular decomposition and layer modules equal brute force, n<=8; norm ratio <= 4", ok,
           f"{md_bad} decomposition mismatches, {layer_bad} layer mismatches, worst norm ratio {worst:.2f}")


def _single(t, kind):
    return t.internal() and len(t.internal()) == 1 and t.kind[t.internal()[0]] == kind


def test_c7_structural_goldens():
    failures = []
    for n in range(3, 9):
        g = to_graph(nx.complete_graph(n))
        if not _single(split_decomposition(g, 0), CLIQUE):
            failures.append(f"K{n}")
    for n in range(3, 9):
        g = to_graph(nx.star_graph(n))  # vertex 0 is the hub
        for r in (0, 1):
            t = split_decomposition(g, r)
            if not (_single(t, STAR) and t.vertex[t.center[t.internal()[0]]] == 0):
                failures.append(f"K1,{n} root {r}")
    p4 = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)], ["a", "b", "c", "d"])
    t = split_decomposition(p4, 0)
    centres = sorted(p4.labels[t.vertex[t.center[u]]] for u in t.internal())
    if t.counts() != {PRIME: 0, CLIQUE: 0, STAR: 2} or centres != ["b", "c"]:
        failures.append("P4")
    for name, G in [("C5", nx.cycle_graph(5)), ("Petersen", nx.petersen_graph())]:
        g = to_graph(G)
        if not _single(split_decomposition(g, 0), PRIME):
            failures.append(name)
    c5 = to_graph(nx.cycle_graph(5))
    if not reference_tree(c5, 0).same_as(split_decomposition(c5, 0)):
        failures.append("C5 oracle")
    c6 = to_graph(nx.cycle_graph(6))
    if not reference_tree(c6, 0).same_as(split_decomposition(c6, 0)):
        failures.append("C6 oracle")
    rng = random.Random(17)
    for _ in range(300):
        g = random_cograph(rng, rng.randint(2, 10))
        t = split_decomposition(g, rng.randrange(g.n))
        if any(t.kind[u] == PRIME for u in t.internal()):
            failures.append("cograph with a prime node")
            break
    record(7, "structural goldens (cliques, stars, P4, C5, C6, Petersen, cographs)", not failures,
           "all goldens hold" if not failures else ", ".join(failures))


def test_c8_root_invariance():
    rng = random.Random(8)
    bad = 0
    for _ in range(200):
        g = random_connected(rng, rng.randint(2, 9))
        keys = {split_decomposition(g, r).canonical_key() for r in range(g.n)}
        bad += len(keys) != 1
    record(8, "root invariance on 200 random graphs n<=9", bad == 0, f"{bad} graphs depend on the root")


def test_c9_scaling():
    times = []
    for i, k in enumerate(range(14, 18)):
        m = 2**k
        g = random_connected_graph(m // 4, m, seed=1000 + i)
        best = None
        for _ in range(2):
            t0 = time.perf_counter()
            split_decomposition(g, 0)
            dt = time.perf_counter() - t0
            best = dt if best is None else min(best, dt)
        times.append(best)
    ratios = [b / a for a, b in zip(times, times[1:])]
    med = statistics.median(ratios)
    detail = "times " + ", ".join(f"{t:.2f}s" for t in times) + "; ratios " + ", ".join(f"{r:.2f}" for r in ratios)
    record(9, "scaling, m = 2^14..2^17, median doubling ratio <= 2.6", med <= 2.6, f"median {med:.2f} ({detail})")
