"""Compare split_decomposition with the brute-force tree on every connected
graph of the networkx atlas (n <= 7) and every root, then on random graphs.

    python scripts/exhaustive_check.py --random 500 --max-n 10
"""
import argparse
import random
import sys

import networkx as nx

from splitdecomp.generate import random_connected_graph
from splitdecomp.graph import Graph
from splitdecomp.oracle import reference_tree
from splitdecomp.split import split_decomposition


def from_nx(G):
    nodes = sorted(G.nodes())
    idx = {v: i for i, v in enumerate(nodes)}
    return Graph.from_edges(len(nodes), [(idx[a], idx[b]) for a, b in G.edges()], [str(v) for v in nodes])


def check(g, roots):
    bad = []
    for r in roots:
        if not split_decomposition(g, r).same_as(reference_tree(g, r)):
            bad.append(r)
    return bad


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--random", type=int, default=200, help="random graphs after the atlas")
    ap.add_argument("--min-n", type=int, default=8)
    ap.add_argument("--max-n", type=int, default=10)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    pairs = mismatches = 0
    for G in nx.graph_atlas_g()[1:]:
        if G.number_of_nodes() < 2 or not nx.is_connected(G):
            continue
        g = from_nx(G)
        bad = check(g, range(g.n))
        pairs += g.n
        mismatches += len(bad)
        for r in bad:
            print("MISMATCH atlas", sorted(G.edges()), "root", r)
    print(f"atlas: {pairs} (graph, root) pairs, {mismatches} mismatches")

    rng = random.Random(args.seed)
    rbad = 0
    for i in range(args.random):
        n = rng.randint(args.min_n, args.max_n)
        m = rng.randint(n - 1, n * (n - 1) // 2)
        g = random_connected_graph(n, m, seed=rng.randrange(2**32))
        bad = check(g, [rng.randrange(n)])
        rbad += len(bad)
        for r in bad:
            print("MISMATCH random", list(g.edges()), "root", r)
    print(f"random: {args.random} graphs, {rbad} mismatches")
    return 1 if mismatches or rbad else 0


if __name__ == "__main__":
    sys.exit(main())
