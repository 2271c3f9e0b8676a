"""Simple undirected graphs over dense vertex indices, plus BFS layering.

Vertices are integers ``0..n-1``; the external labels are only kept for
input and output.  Every vertex set returned from this module is a sorted
list, and component lists are ordered by their smallest vertex.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field


class GraphError(ValueError):
    """Raised for malformed or unsupported graph input."""


class ParseError(GraphError):
    pass


class SelfLoopError(GraphError):
    pass


class DisconnectedGraphError(GraphError):
    def __init__(self, a, b):
        super().__init__(f"graph is disconnected: {a!r} and {b!r} lie in different components")
        self.samples = (a, b)


@dataclass(frozen=True)
class Graph:
    labels: tuple
    adjacency: tuple
    edge_count: int
    _adjsets: tuple = field(default=(), repr=False, compare=False)

    @property
    def vertex_count(self) -> int:
        return len(self.labels)

    @property
    def n(self) -> int:
        return len(self.labels)

    def neighbors(self, v: int) -> tuple:
        return self.adjacency[v]

    def adjacent(self, u: int, v: int) -> bool:
        return v in self._adjsets[u]

    def adjset(self, v: int) -> frozenset:
        return self._adjsets[v]

    def edges(self):
        for u, nbrs in enumerate(self.adjacency):
            for v in nbrs:
                if u < v:
                    yield u, v

    def index(self, label) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise GraphError(f"unknown vertex {label!r}") from None

    @classmethod
    def from_edges(cls, n: int, edges, labels=None) -> "Graph":
        """Build a graph on ``n`` vertices; duplicate edges are collapsed."""
        adj = [set() for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise SelfLoopError(f"self-loop on vertex {u!r}")
            adj[u].add(v)
            adj[v].add(u)
        if labels is None:
            labels = [str(i) for i in range(n)]
        if len(labels) != n:
            raise GraphError("label count does not match vertex count")
        m = sum(len(a) for a in adj) // 2
        return cls(
            labels=tuple(labels),
            adjacency=tuple(tuple(sorted(a)) for a in adj),
            edge_count=m,
            _adjsets=tuple(frozenset(a) for a in adj),
        )

    def induced(self, vertices) -> tuple["Graph", list]:
        """Subgraph induced by ``vertices`` and the index map back into ``self``."""
        verts = sorted(vertices)
        pos = {v: i for i, v in enumerate(verts)}
        edges = [(pos[u], pos[w]) for u in verts for w in self.adjacency[u] if w in pos and u < w]
        return Graph.from_edges(len(verts), edges, [self.labels[v] for v in verts]), verts

    def is_connected(self) -> bool:
        return len(connected_components(self)) <= 1


def parse_edge_list(text: str) -> tuple[list, list]:
    """Parse edge-list text into (labels in first-appearance order, index pairs)."""
    labels: list = []
    index: dict = {}
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        toks = line.split()
        if len(toks) != 2:
            raise ParseError(f"line {lineno}: expected two vertex tokens, got {len(toks)}")
        ids = []
        for tok in toks:
            if tok not in index:
                index[tok] = len(labels)
                labels.append(tok)
            ids.append(index[tok])
        if ids[0] == ids[1]:
            raise SelfLoopError(f"line {lineno}: self-loop on vertex {toks[0]!r}")
        edges.append((ids[0], ids[1]))
    return labels, edges


def load_graph(text: str, require_connected: bool = True) -> Graph:
    labels, edges = parse_edge_list(text)
    if not labels:
        raise ParseError("no edges in input")
    g = Graph.from_edges(len(labels), edges, labels)
    if require_connected:
        comps = connected_components(g)
        if len(comps) > 1:
            raise DisconnectedGraphError(g.labels[comps[0][0]], g.labels[comps[1][0]])
    return g


def format_edge_list(g: Graph) -> str:
    return "".join(f"{g.labels[u]} {g.labels[v]}\n" for u, v in g.edges())


def connected_components(g: Graph, vertices=None) -> list[list[int]]:
    """Components of the subgraph induced by ``vertices`` (default: all)."""
    if vertices is None:
        allowed = None
        order = range(g.n)
    else:
        allowed = set(vertices)
        order = sorted(allowed)
    seen = set()
    comps = []
    for s in order:
        if s in seen:
            continue
        seen.add(s)
        comp = [s]
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in g.adjacency[u]:
                if w not in seen and (allowed is None or w in allowed):
                    seen.add(w)
                    comp.append(w)
                    queue.append(w)
        comp.sort()
        comps.append(comp)
    return comps


@dataclass(frozen=True)
class Layering:
    root: int
    dist: tuple
    layers: tuple

    @property
    def max_dist(self) -> int:
        return len(self.layers) - 1


def bfs_layering(g: Graph, r: int) -> Layering:
    if not 0 <= r < g.n:
        raise GraphError(f"root {r} is not a vertex")
    dist = [-1] * g.n
    dist[r] = 0
    queue = deque([r])
    while queue:
        u = queue.popleft()
        for w in g.adjacency[u]:
            if dist[w] < 0:
                dist[w] = dist[u] + 1
                queue.append(w)
    if min(dist) < 0:
        raise DisconnectedGraphError(g.labels[r], g.labels[dist.index(-1)])
    layers = [[] for _ in range(max(dist) + 1)]
    for v in range(g.n):
        layers[dist[v]].append(v)
    return Layering(r, tuple(dist), tuple(tuple(layer) for layer in layers))


def components_above(g: Graph, lay: Layering, h: int, strict: bool = True) -> list[list[int]]:
    """Components of G[>h] (strict) or G[>=h]."""
    lo = h + 1 if strict else h
    verts = [v for v in range(g.n) if lay.dist[v] >= lo]
    return connected_components(g, verts)


def layer_neighborhood(g: Graph, lay: Layering, xs, h: int) -> list[int]:
    out = set()
    for x in xs:
        for w in g.adjacency[x]:
            if lay.dist[w] == h:
                out.add(w)
    return sorted(out)


def h_components(g: Graph, lay: Layering, h: int) -> list[list[int]]:
    """Partition of layer ``h`` by the components of G[>=h] that contain them."""
    parts = []
    for comp in components_above(g, lay, h, strict=False):
        part = [v for v in comp if lay.dist[v] == h]
        if part:
            parts.append(part)
    return parts
