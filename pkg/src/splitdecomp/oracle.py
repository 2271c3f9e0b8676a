"""Exponential reference implementations used as ground truth in tests.

Everything works on bitmasks over vertex indices and enumerates subsets
directly from the definitions.  Size caps keep accidental large calls from
hanging.
"""
from __future__ import annotations

from dataclasses import dataclass

from .family import SetFamily
from .graph import Graph, Layering
from .splittree import CLIQUE, LEAF, PRIME, STAR, SplitTree, single_edge_tree

SPLIT_CAP = 16
TREE_CAP = 12
ORTHOGONAL_CAP = 16
MODULE_CAP = 16


class OracleCapExceeded(RuntimeError):
    pass


def _cap(n, cap, what):
    if n > cap:
        raise OracleCapExceeded(f"{what}: size {n} exceeds oracle cap {cap}")


def _bits(s) -> int:
    m = 0
    for x in s:
        m |= 1 << x
    return m


def _members(mask) -> tuple:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def _adj_masks(g: Graph) -> list:
    return [_bits(g.adjacency[v]) for v in range(g.n)]


@dataclass(frozen=True)
class SplitWitness:
    x1: frozenset
    x2: frozenset
    v1: frozenset
    v2: frozenset
    v3: frozenset
    v4: frozenset

    @property
    def trivial(self) -> bool:
        return len(self.x1) == 1 or len(self.x2) == 1


def _split_masks(adj, full, a):
    b = full & ~a
    v2 = v3 = 0
    x = a
    while x:
        low = x & -x
        i = low.bit_length() - 1
        if adj[i] & b:
            v2 |= low
        x ^= low
    x = b
    while x:
        low = x & -x
        i = low.bit_length() - 1
        nb = adj[i] & a
        if nb:
            v3 |= low
            if nb != v2:
                return None
        x ^= low
    return v2, v3


def _witness(a, b, v2, v3) -> SplitWitness:
    f = lambda m: frozenset(_members(m))  # noqa: E731
    return SplitWitness(f(a), f(b), f(a & ~v2), f(v2), f(v3), f(b & ~v3))


def is_split(g: Graph, x1) -> SplitWitness | None:
    full = (1 << g.n) - 1
    a = _bits(x1)
    if a == 0 or a == full:
        raise ValueError("both sides of a bipartition must be non-empty")
    r = _split_masks(_adj_masks(g), full, a)
    if r is None:
        return None
    return _witness(a, full & ~a, *r)


def split_sides(g: Graph) -> list:
    """All splits as the mask of the side not containing vertex 0."""
    _cap(g.n, SPLIT_CAP, "enumerate_splits")
    adj = _adj_masks(g)
    full = (1 << g.n) - 1
    out = []
    for b in range(2, 1 << g.n, 2):
        if _split_masks(adj, full, full & ~b) is not None:
            out.append(b)
    return out


def enumerate_splits(g: Graph) -> list[SplitWitness]:
    adj = _adj_masks(g)
    full = (1 << g.n) - 1
    out = []
    for b in split_sides(g):
        a = full & ~b
        out.append(_witness(a, b, *_split_masks(adj, full, a)))
    return out


def _overlap(a, b) -> bool:
    return bool(a & b) and (a & ~b) != 0 and (b & ~a) != 0


def _cross(a, b, full) -> bool:
    return bool(a & b) and bool(a & ~b & full) and bool(~a & b & full) and bool(full & ~a & ~b)


def crosses(s1: SplitWitness, s2: SplitWitness) -> bool:
    a, b = _bits(s1.x1), _bits(s2.x1)
    full = a | _bits(s1.x2)
    return _cross(a, b, full)


def _strong_sides(g: Graph) -> list:
    full = (1 << g.n) - 1
    sides = split_sides(g)
    nontriv = [s for s in sides if s & (s - 1) and (full & ~s) & ((full & ~s) - 1)]
    out = []
    for s in sides:
        if all(not _cross(s, t, full) for t in nontriv):
            out.append(s)
    return out


def strong_splits(g: Graph) -> list[SplitWitness]:
    adj = _adj_masks(g)
    full = (1 << g.n) - 1
    out = []
    for b in _strong_sides(g):
        a = full & ~b
        out.append(_witness(a, b, *_split_masks(adj, full, a)))
    return out


def quotient_graph(g: Graph, parts) -> Graph:
    owner = {}
    for i, p in enumerate(parts):
        for v in p:
            owner[v] = i
    edges = {(min(owner[u], owner[v]), max(owner[u], owner[v])) for u, v in g.edges() if owner[u] != owner[v]}
    return Graph.from_edges(len(parts), sorted(edges), [str(i) for i in range(len(parts))])


def classify_quotient(q: Graph):
    """('clique'|'star'|'prime', centre index or None) for a quotient on >= 3 vertices."""
    k = q.n
    if q.edge_count == k * (k - 1) // 2:
        return CLIQUE, None
    if q.edge_count == k - 1:
        hubs = [v for v in range(k) if len(q.adjacency[v]) == k - 1]
        if hubs:
            return STAR, hubs[0]
    return PRIME, None


def reference_tree(g: Graph, r: int = 0) -> SplitTree:
    """Cunningham tree from the strong splits, labelled through quotient graphs."""
    _cap(g.n, TREE_CAP, "reference_tree")
    n = g.n
    if n < 2:
        raise ValueError("split trees need at least two vertices")
    if n == 2:
        return single_edge_tree(g.labels, 0, 1)
    full = (1 << n) - 1
    rbit = 1 << r
    sides = set()
    for s in _strong_sides(g):
        sides.add(s if not s & rbit else full & ~s)
    laminar = sorted(sides, key=lambda m: -bin(m).count("1"))
    t = SplitTree(g.labels)
    node = {}
    owner = [None] * n
    for s in laminar:
        if s & (s - 1):
            u = t.add_node(PRIME)
        else:
            u = t.add_node(LEAF, s.bit_length() - 1)
        node[s] = u
        par = owner[(s & -s).bit_length() - 1]
        if par is not None:
            t.add_edge(par, u)
        for v in _members(s):
            owner[v] = u
    lr = t.add_node(LEAF, r)
    t.add_edge(lr, node[full & ~rbit])
    parts = t.parts()
    for u in t.internal():
        nbrs = list(parts[u])
        q = quotient_graph(g, [parts[u][w] for w in nbrs])
        lab, c = classify_quotient(q)
        t.kind[u] = lab
        if c is not None:
            t.center[u] = nbrs[c]
    return t.contract_degree_two()


def brute_orthogonal(f: SetFamily) -> SetFamily:
    _cap(f.ground, ORTHOGONAL_CAP, "brute_orthogonal")
    ms = [_bits(m) for m in set(f.members)]
    out = []
    for s in range(1, 1 << f.ground):
        if not any(_overlap(s, m) for m in ms):
            out.append(_members(s))
    return SetFamily(f.ground, tuple(sorted(out, key=lambda s: (len(s), s))))


def _is_module(adj, full, s) -> bool:
    outside = full & ~s
    while outside:
        low = outside & -outside
        nb = adj[low.bit_length() - 1] & s
        if nb and nb != s:
            return False
        outside ^= low
    return True


def brute_modules(g: Graph) -> SetFamily:
    _cap(g.n, MODULE_CAP, "brute_modules")
    adj = _adj_masks(g)
    full = (1 << g.n) - 1
    out = [_members(s) for s in range(1, 1 << g.n) if _is_module(adj, full, s)]
    return SetFamily(g.n, tuple(sorted(out, key=lambda s: (len(s), s))))


def brute_borders(g: Graph, lay: Layering, h: int, sides=None) -> frozenset:
    """Borders (root-free attachment sets) of all splits whose border lies at distance h.

    ``sides`` may carry a cached ``split_sides(g)``.
    """
    adj = _adj_masks(g)
    full = (1 << g.n) - 1
    rbit = 1 << lay.root
    out = set()
    for b in split_sides(g) if sides is None else sides:
        bottom = b if not b & rbit else full & ~b
        top = full & ~bottom
        v3 = 0
        for v in _members(bottom):
            if adj[v] & top:
                v3 |= 1 << v
        vs = _members(v3)
        if min(lay.dist[v] for v in vs) == h:
            out.add(frozenset(vs))
    return frozenset(out)


def strong_bottoms(g: Graph, r: int) -> frozenset:
    """Root-free sides of all strong splits."""
    full = (1 << g.n) - 1
    rbit = 1 << r
    return frozenset(
        frozenset(_members(s if not s & rbit else full & ~s)) for s in _strong_sides(g)
    )
