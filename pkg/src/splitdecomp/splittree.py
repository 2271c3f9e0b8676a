"""Unrooted split trees: leaves are graph vertices, internal nodes are
Prime, Clique or Star, and each Star records which neighbour is its centre."""
from __future__ import annotations

import json
from dataclasses import dataclass, field

LEAF = "leaf"
PRIME = "prime"
CLIQUE = "clique"
STAR = "star"

_SHORT = {PRIME: "P", CLIQUE: "C", STAR: "S"}


@dataclass
class SplitTree:
    labels: tuple
    kind: list = field(default_factory=list)
    vertex: list = field(default_factory=list)
    center: list = field(default_factory=list)
    adj: list = field(default_factory=list)

    def add_node(self, kind, vertex=None) -> int:
        self.kind.append(kind)
        self.vertex.append(vertex)
        self.center.append(None)
        self.adj.append([])
        return len(self.kind) - 1

    def add_edge(self, a, b):
        self.adj[a].append(b)
        self.adj[b].append(a)

    def leaf_of(self, v) -> int:
        for i, x in enumerate(self.vertex):
            if x == v:
                return i
        raise KeyError(v)

    def internal(self) -> list:
        return [i for i, k in enumerate(self.kind) if k != LEAF]

    # -- derived views ----------------------------------------------------

    def _rooted(self, root):
        parent = {root: None}
        order = [root]
        for u in order:
            for w in self.adj[u]:
                if w not in parent:
                    parent[w] = u
                    order.append(w)
        below = {}
        for u in reversed(order):
            s = {self.vertex[u]} if self.kind[u] == LEAF else set()
            for w in self.adj[u]:
                if parent.get(w) == u:
                    s |= below[w]
            below[u] = frozenset(s)
        return parent, below

    def parts(self) -> dict:
        """node -> {neighbour: vertex set on that neighbour's side}."""
        if not self.kind:
            return {}
        parent, below = self._rooted(0)
        everything = below[0]
        out = {}
        for u in range(len(self.kind)):
            d = {}
            for w in self.adj[u]:
                d[w] = below[w] if parent.get(w) == u else everything - below[u]
            out[u] = d
        return out

    def canonical_key(self) -> frozenset:
        """Root-independent identity: one (label, parts, centre part) per internal node."""
        parts = self.parts()
        key = set()
        for u in self.internal():
            ps = parts[u]
            c = self.center[u]
            key.add((self.kind[u], frozenset(ps.values()), ps[c] if c is not None else None))
        verts = frozenset(x for x in self.vertex if x is not None)
        edges = frozenset()
        if not key:
            edges = frozenset(
                frozenset((self.vertex[a], self.vertex[b])) for a in range(len(self.adj)) for b in self.adj[a]
            )
        return frozenset(key) | {("vertices", verts, edges)}

    def same_as(self, other: "SplitTree") -> bool:
        return self.canonical_key() == other.canonical_key()

    def counts(self) -> dict:
        out = {PRIME: 0, CLIQUE: 0, STAR: 0}
        for k in self.kind:
            if k != LEAF:
                out[k] += 1
        return out

    def check(self):
        assert sum(len(a) for a in self.adj) == 2 * (len(self.kind) - 1), "not a tree"
        for u in self.internal():
            assert len(self.adj[u]) >= 3, f"internal node {u} has degree {len(self.adj[u])}"
            if self.kind[u] == STAR:
                assert self.center[u] in self.adj[u], f"star {u} lacks a centre"
        return self

    # -- rewriting --------------------------------------------------------

    def contract_degree_two(self) -> "SplitTree":
        """Splice out internal nodes of degree two (both edges carry the same split)."""
        alive = [True] * len(self.kind)
        for u in range(len(self.kind)):
            if self.kind[u] == LEAF or len(self.adj[u]) != 2:
                continue
            a, b = self.adj[u]
            self.adj[a] = [b if w == u else w for w in self.adj[a]]
            self.adj[b] = [a if w == u else w for w in self.adj[b]]
            for x, y in ((a, b), (b, a)):
                if self.center[x] == u:
                    self.center[x] = y
            alive[u] = False
        return self._compact(alive)

    def _compact(self, alive) -> "SplitTree":
        remap = {}
        out = SplitTree(self.labels)
        for u in range(len(self.kind)):
            if alive[u]:
                remap[u] = out.add_node(self.kind[u], self.vertex[u])
        for u, nu in remap.items():
            out.adj[nu] = [remap[w] for w in self.adj[u]]
            if self.center[u] is not None:
                out.center[nu] = remap[self.center[u]]
        return out

    # -- serialization ----------------------------------------------------

    def to_text(self, root_vertex=0) -> str:
        """``r -- <subtree>``; ``S^`` marks a star centred towards the parent, ``*`` a centre child.

        Children are listed by their smallest vertex index.
        """
        lr = self.leaf_of(root_vertex)
        parent = {lr: None}
        order = [lr]
        for u in order:
            for w in self.adj[u]:
                if w not in parent:
                    parent[w] = u
                    order.append(w)
        low = {}
        for u in reversed(order):
            best = self.vertex[u] if self.kind[u] == LEAF else None
            for w in self.adj[u]:
                if parent.get(w) == u and (best is None or low[w] < best):
                    best = low[w]
            low[u] = best
        text = {}
        for u in reversed(order):
            if u == lr:
                continue
            if self.kind[u] == LEAF:
                text[u] = str(self.labels[self.vertex[u]])
                continue
            kids = sorted((w for w in self.adj[u] if parent.get(w) == u), key=low.get)
            lab = _SHORT[self.kind[u]]
            if self.kind[u] == STAR and self.center[u] == parent[u]:
                lab += "^"
            inner = [("*" if self.kind[u] == STAR and self.center[u] == w else "") + text.pop(w) for w in kids]
            text[u] = lab + "(" + ", ".join(inner) + ")"
        (nb,) = self.adj[lr]
        return f"{self.labels[root_vertex]} -- {text[nb]}\n"

    def to_json(self, root_vertex=0) -> str:
        lr = self.leaf_of(root_vertex)
        nodes = []
        for u, k in enumerate(self.kind):
            d = {"id": u, "kind": k}
            if k == LEAF:
                d["vertex"] = self.labels[self.vertex[u]]
            if self.center[u] is not None:
                d["center"] = self.center[u]
            nodes.append(d)
        edges = sorted([a, b] for a in range(len(self.adj)) for b in self.adj[a] if a < b)
        return json.dumps({"root": self.adj[lr][0], "nodes": nodes, "edges": edges}) + "\n"

    @classmethod
    def from_json(cls, text: str, labels) -> "SplitTree":
        data = json.loads(text)
        index = {lab: i for i, lab in enumerate(labels)}
        ids = sorted(nd["id"] for nd in data["nodes"])
        pos = {nid: i for i, nid in enumerate(ids)}
        out = cls(tuple(labels))
        by_id = {nd["id"]: nd for nd in data["nodes"]}
        for nid in ids:
            nd = by_id[nid]
            out.add_node(nd["kind"], index[nd["vertex"]] if nd["kind"] == LEAF else None)
        for nid in ids:
            if "center" in by_id[nid]:
                out.center[pos[nid]] = pos[by_id[nid]["center"]]
        for a, b in data["edges"]:
            out.add_edge(pos[a], pos[b])
        return out

    def to_dot(self) -> str:
        lines = ["graph split_tree {"]
        for u, k in enumerate(self.kind):
            if k == LEAF:
                lab = str(self.labels[self.vertex[u]]).replace('"', '\\"')
                lines.append(f'  n{u} [shape=ellipse, label="{lab}"];')
            else:
                lines.append(f'  n{u} [shape=box, label="{_SHORT[k]}"];')
        for a in range(len(self.adj)):
            for b in self.adj[a]:
                if a >= b:
                    continue
                if self.center[a] == b:
                    lines.append(f"  n{a} -- n{b} [dir=forward];")
                elif self.center[b] == a:
                    lines.append(f"  n{b} -- n{a} [dir=forward];")
                else:
                    lines.append(f"  n{a} -- n{b};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def single_edge_tree(labels, u, v) -> SplitTree:
    t = SplitTree(tuple(labels))
    a = t.add_node(LEAF, u)
    b = t.add_node(LEAF, v)
    t.add_edge(a, b)
    return t
