"""Seeded random connected graphs: a random spanning tree plus extra edges."""
from __future__ import annotations

import random

from .graph import Graph, GraphError


def random_connected_graph(n: int, m: int, seed=None) -> Graph:
    """Uniform random labelled tree (Pruefer code) plus ``m - n + 1`` distinct extra edges."""
    if n < 1:
        raise GraphError("need at least one vertex")
    if m < n - 1:
        raise GraphError(f"{m} edges cannot connect {n} vertices (need at least {n - 1})")
    if m > n * (n - 1) // 2:
        raise GraphError(f"{m} edges exceed the {n * (n - 1) // 2} possible on {n} vertices")
    rng = random.Random(seed)
    edges = set()
    if n == 2:
        edges.add((0, 1))
    elif n > 2:
        code = [rng.randrange(n) for _ in range(n - 2)]
        degree = [1] * n
        for x in code:
            degree[x] += 1
        import heapq

        leaves = [v for v in range(n) if degree[v] == 1]
        heapq.heapify(leaves)
        for x in code:
            leaf = heapq.heappop(leaves)
            edges.add((min(leaf, x), max(leaf, x)))
            degree[x] -= 1
            if degree[x] == 1:
                heapq.heappush(leaves, x)
        a, b = heapq.heappop(leaves), heapq.heappop(leaves)
        edges.add((min(a, b), max(a, b)))
    extra = m - len(edges)
    total = n * (n - 1) // 2
    if extra > total // 2:
        # dense: sample the complement instead
        missing = set()
        pool = [(a, b) for a in range(n) for b in range(a + 1, n) if (a, b) not in edges]
        rng.shuffle(pool)
        missing = set(pool[: total - m])
        edges |= {e for e in pool if e not in missing}
    else:
        while extra > 0:
            a, b = rng.randrange(n), rng.randrange(n)
            if a == b:
                continue
            e = (min(a, b), max(a, b))
            if e not in edges:
                edges.add(e)
                extra -= 1
    perm = list(range(n))
    rng.shuffle(perm)
    return Graph.from_edges(n, [(perm[a], perm[b]) for a, b in sorted(edges)], [str(i) for i in range(n)])
