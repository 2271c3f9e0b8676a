"""Split decomposition built one BFS layer at a time, deepest layer first.

For each layer ``h`` the borders of splits sitting in that layer are
computed as a partitive tree, turned into a forest over the layer, and the
roots of the forest built so far (everything strictly below ``h``) are hung
under the lowest border node containing their neighbourhood in layer ``h``.
After layer 1 a single tree remains; attaching the BFS root to it gives the
split tree.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .family import SetFamily
from .graph import Graph, Layering, bfs_layering, components_above
from .modules import ModuleForest, layer_restricted_modules
from .orthogonal import _DSU, orthogonal_tree
from .partitive import COMPLETE, LEAF as PLEAF, PRIME as PPRIME, PartitiveTree, complement_reduced_family, generator_family
from .splittree import CLIQUE, LEAF, PRIME, STAR, SplitTree, single_edge_tree

UNLABELED = "unlabeled"  # a component that is not a split bottom
DEAD = "dead"
PARENT = -1  # star centre lies towards the parent

TYPE1, TYPE2, TYPE3 = 1, 2, 3


class InconsistencyError(RuntimeError):
    """Internal state contradicts what the layer structure guarantees."""


@dataclass
class DecompForest:
    """Arena of forest nodes shared by every layer.

    ``children`` are dicts used as ordered sets so that a child can be
    replaced in constant time.  ``center`` is a child id, ``PARENT`` or None.
    """

    kind: list = field(default_factory=list)
    vertex: list = field(default_factory=list)
    parent: list = field(default_factory=list)
    children: list = field(default_factory=list)
    center: list = field(default_factory=list)
    roots: list = field(default_factory=list)
    h: int | None = None

    def add_node(self, kind, vertex=None, center=None) -> int:
        self.kind.append(kind)
        self.vertex.append(vertex)
        self.parent.append(None)
        self.children.append({})
        self.center.append(center)
        return len(self.kind) - 1

    def link(self, child, par):
        self.parent[child] = par
        self.children[par][child] = None

    def merge(self, src, dst):
        """Move the children of ``src`` under ``dst`` and delete ``src``."""
        for c in self.children[src]:
            self.parent[c] = dst
            self.children[dst][c] = None
        self.children[src] = {}
        self.kind[src] = DEAD

    def add_parent(self, node, kind, center=None) -> int:
        p = self.add_node(kind, center=center)
        par = self.parent[node]
        if par is not None:
            # keep p at node's place among the siblings
            self.children[par] = {(p if c == node else c): None for c in self.children[par]}
            self.parent[p] = par
        self.link(node, p)
        return p

    def top(self, u) -> int:
        while self.parent[u] is not None:
            u = self.parent[u]
        return u

    def preorder(self, u) -> list:
        out = []
        stack = [u]
        while stack:
            x = stack.pop()
            out.append(x)
            stack.extend(reversed(list(self.children[x])))
        return out

    def vertex_sets(self) -> dict:
        """node -> frozenset of vertices below it, for every reachable node."""
        sets = {}
        for root in self.roots:
            for u in reversed(self.preorder(root)):
                if self.kind[u] == LEAF:
                    sets[u] = frozenset((self.vertex[u],))
                else:
                    acc = set()
                    for c in self.children[u]:
                        acc |= sets[c]
                    sets[u] = frozenset(acc)
        return sets


@dataclass
class Borders:
    """Partitive tree of the borders of layer ``h`` (plus the layer itself).

    ``tree`` is over positions in ``layer``.  For component ``i`` of G[>h],
    ``attach[i]`` is its neighbourhood in the layer (positions) and
    ``container[i]`` the smallest tree node holding it.
    """

    layer: tuple
    tree: PartitiveTree
    attach: list
    container: list


def _components_below(g: Graph, lay: Layering, h: int) -> list:
    """Layer h+1 vertices of each component of G[>h]."""
    out = []
    for comp in components_above(g, lay, h, strict=True):
        part = [v for v in comp if lay.dist[v] == h + 1]
        out.append(part)
    return out


def compute_borders(g: Graph, lay: Layering, h: int, mf: ModuleForest | None = None, comps=None) -> Borders:
    """Borders at distance h via the orthogonal of modules plus neighbourhood families.

    ``comps`` lists, per component of G[>h], its vertices in layer h+1 (the
    only ones with neighbours in layer h); computed when not given.
    """
    if mf is None:
        mf = layer_restricted_modules(g, lay, h)
    if comps is None:
        comps = _components_below(g, lay, h)
    layer = lay.layers[h]
    pos = {v: i for i, v in enumerate(layer)}
    size = len(layer)
    members = list(generator_family(mf.tree).members)
    attach = []
    where = []
    for comp in comps:
        hoods = []
        union = set()
        for x in comp:
            nh = [pos[w] for w in g.adjacency[x] if w in pos]
            if nh:
                hoods.append(tuple(sorted(nh)))
                union.update(nh)
        x_i = tuple(sorted(union))
        w_i = complement_reduced_family(SetFamily(size, (x_i, *hoods)), x_i)
        where.append(len(members) + w_i.members.index(x_i))
        members.extend(w_i.members)
        attach.append(x_i)
    res = orthogonal_tree(SetFamily(size, tuple(members)))
    return Borders(tuple(layer), res.tree, attach, [res.container[i] for i in where])


@dataclass
class BorderForest:
    """The border forest of one layer, living in the shared arena.

    ``node`` maps border-tree nodes to arena nodes (the dropped layer root
    maps to nothing); ``size`` counts layer vertices below each arena node;
    ``hroot`` maps an h-component group to its added root; ``roots`` are the
    arena roots, one per group of layer vertices.
    """

    roots: list
    node: dict
    size: dict
    group_of: dict  # layer position -> group id
    hroot: dict
    root_of_pos: list  # layer position -> arena root
    dropped: int | None


def build_border_forest(g: Graph, lay: Layering, h: int, borders: Borders, forest: DecompForest,
                        layer_is_module: bool, hcomp_of, leaf_node: dict) -> BorderForest:
    """Materialize the border tree in ``forest``; ``hcomp_of[pos]`` names the h-component."""
    t = borders.tree
    layer = borders.layer
    post = t.postorder()
    rep = {}
    cnt = {}
    for v in post:
        if t.kind[v] == PLEAF:
            rep[v] = t.element[v]
            cnt[v] = 1
        else:
            kids = t.children[v]
            rep[v] = rep[kids[0]]
            cnt[v] = sum(cnt[c] for c in kids)
    dropped = t.root if (not layer_is_module and t.kind[t.root] != PLEAF) else None

    node = {}
    size = {}
    for v in reversed(post):  # parents before children
        if v == dropped:
            continue
        k = t.kind[v]
        if k == PLEAF:
            vert = layer[t.element[v]]
            u = forest.add_node(LEAF, vert)
            leaf_node[vert] = u
        elif k == PPRIME:
            u = forest.add_node(PRIME)
        else:
            a, b = t.children[v][0], t.children[v][1]
            if g.adjacent(layer[rep[a]], layer[rep[b]]):
                u = forest.add_node(CLIQUE)
            else:
                u = forest.add_node(STAR, center=PARENT)
        node[v] = u
        size[u] = cnt[v]
        p = t.parent[v]
        if v != t.root and p != dropped:
            forest.link(u, node[p])

    tree_roots = list(t.children[dropped]) if dropped is not None else [t.root]
    # group tree roots by the h-components they touch
    dsu = _DSU(len(layer))
    leaves_of_root = {}
    for tr in tree_roots:
        stack = [tr]
        first = None
        while stack:
            x = stack.pop()
            if t.kind[x] == PLEAF:
                e = t.element[x]
                leaves_of_root.setdefault(tr, []).append(e)
                if first is None:
                    first = e
                else:
                    dsu.union(first, e)
            else:
                stack.extend(t.children[x])
    # positions in one h-component join too
    hc_first = {}
    for pos_, hc in enumerate(hcomp_of):
        if hc in hc_first:
            dsu.union(hc_first[hc], pos_)
        else:
            hc_first[hc] = pos_
    groups = {}
    for tr in tree_roots:
        groups.setdefault(dsu.find(rep[tr]), []).append(tr)
    roots = []
    hroot = {}
    root_of_pos = [None] * len(layer)
    for gid, trs in groups.items():
        if len(trs) >= 2:
            u = forest.add_node(UNLABELED)
            for tr in trs:
                forest.link(node[tr], u)
            hroot[gid] = u
            size[u] = sum(cnt[tr] for tr in trs)
        else:
            u = node[trs[0]]
        roots.append(u)
        for tr in trs:
            for e in leaves_of_root[tr]:
                root_of_pos[e] = u
    group_of = {p: dsu.find(p) for p in range(len(layer))}
    return BorderForest(roots, node, size, group_of, hroot, root_of_pos, dropped)


def lowest_node(bf: BorderForest, borders: Borders, i: int) -> int:
    """Arena node of the lowest border-forest node containing attachment ``i``."""
    c = borders.container[i]
    if c == bf.dropped:
        return bf.hroot[bf.group_of[borders.attach[i][0]]]
    return bf.node[c]


def classify_root(labeled: bool, nh_size: int, b_size: int, nh_inside: bool = True) -> int:
    """Type of a root with respect to the lowest border node containing its neighbourhood.

    Inside the lowest container a neighbourhood that is a proper subset of
    the node has every attaching vertex seeing a proper subset, so sizes
    decide between the second and third type.
    """
    if not nh_inside:
        return TYPE1
    if labeled and nh_size == b_size:
        return TYPE3
    if nh_size < b_size or not labeled:
        return TYPE2
    raise InconsistencyError("labelled root neither of type 2 nor 3")


def update_forest(forest: DecompForest, bf: BorderForest, hung: list) -> list:
    """Hang the previous roots.  ``hung`` holds (root, |N_h(root)|, lowest node).

    Returns (old root, new root) pairs.
    """
    added = {}
    for r, nh_size, b in hung:
        kind_r = forest.kind[r]
        labeled = kind_r != UNLABELED
        is_border = forest.kind[b] != UNLABELED
        if not labeled:
            if forest.kind[b] == LEAF:
                raise InconsistencyError("component without a split merged into a single vertex")
            forest.merge(r, b)
            if forest.kind[b] in (CLIQUE, STAR):
                # a two-child border with a component hanging across both
                # children: no union of children is a bottom any more
                forest.kind[b] = PRIME
                forest.center[b] = None
            continue
        typ = classify_root(labeled, nh_size, bf.size[b])
        if typ == TYPE2 or not is_border:
            forest.link(r, b)
            continue
        p = added.get(b)
        if p is None:
            p = added[b] = forest.add_parent(b, STAR, center=b)
        if kind_r == STAR and forest.center[r] == PARENT:
            forest.merge(r, p)
        else:
            forest.link(r, p)
    forest.roots = [forest.top(u) for u in bf.roots]
    return forest.roots


@dataclass
class InvariantReport:
    h: int
    entries: list  # (name, ok, witness)

    @property
    def ok(self) -> bool:
        return all(ok for _, ok, _ in self.entries)

    def __str__(self):
        lines = []
        for name, ok, wit in self.entries:
            lines.append(f"{name}: {'pass' if ok else 'FAIL'}" + ("" if ok else f" ({wit})"))
        return "\n".join(lines)


def verify_invariants(forest: DecompForest, g: Graph, lay: Layering, h: int) -> InvariantReport:
    """Check the forest after layer ``h`` against the brute-force split structure."""
    from . import oracle

    sets = forest.vertex_sets()
    below = frozenset(v for v in range(g.n) if lay.dist[v] >= h)
    entries = []

    leaves = frozenset(forest.vertex[u] for u in sets if forest.kind[u] == LEAF)
    entries.append(("leaves", leaves == below, sorted(leaves ^ below)))

    strong = {b for b in oracle.strong_bottoms(g, lay.root) if min(lay.dist[v] for v in b) >= h}
    strong |= {frozenset((v,)) for v in below}
    have = set(sets.values())
    missing = [sorted(b) for b in strong if b not in have]
    entries.append(("strong bottoms represented", not missing, missing[:3]))

    full = frozenset(range(g.n))
    bad = []
    for u, s in sets.items():
        k = forest.kind[u]
        if k in (LEAF, UNLABELED):
            continue
        if s not in strong and forest.parent[u] is not None:
            bad.append((u, sorted(s), "not a strong bottom"))
            continue
        kids = list(forest.children[u])
        parts = [sets[c] for c in kids] + [full - s]
        q = oracle.quotient_graph(g, parts)
        lab, c = oracle.classify_quotient(q)
        if lab != k:
            bad.append((u, sorted(s), f"labelled {k}, quotient says {lab}"))
        elif k == STAR:
            want = len(kids) if forest.center[u] == PARENT else kids.index(forest.center[u])
            if c != want:
                bad.append((u, sorted(s), "star centre"))
    entries.append(("internal nodes labelled strong bottoms", not bad, bad[:3]))

    from .graph import connected_components

    comps = [frozenset(c) for c in connected_components(g, below)] if below else []
    comp_of = {v: c for c in comps for v in c}
    wrong = []
    for r in forest.roots:
        s = sets[r]
        k = forest.kind[r]
        union_of_comps = all(comp_of[v] <= s for v in s)
        is_bottom = len(s) == 1 or (len(s) < g.n - 1 and oracle.is_split(g, s) is not None) or s == full - {lay.root}
        connected = len(s) > 0 and comp_of[next(iter(s))] == s
        if k == UNLABELED:
            ok = connected and not is_bottom
        elif k == STAR:
            ok = union_of_comps and is_bottom
        else:
            ok = connected and is_bottom
        if not ok:
            wrong.append((r, k, sorted(s)))
    entries.append(("roots", not wrong, wrong[:3]))
    return InvariantReport(h, entries)


def _to_split_tree(g: Graph, forest: DecompForest, r: int) -> SplitTree:
    if len(forest.roots) != 1:
        raise InconsistencyError(f"{len(forest.roots)} trees left after the last layer")
    top = forest.roots[0]
    t = SplitTree(g.labels)
    ids = {}
    order = forest.preorder(top)
    for u in order:
        ids[u] = t.add_node(forest.kind[u], forest.vertex[u])
    lr = t.add_node(LEAF, r)
    for u in order:
        p = forest.parent[u]
        t.add_edge(ids[u], ids[p] if u != top else lr)
        c = forest.center[u]
        if forest.kind[u] == STAR:
            if c == PARENT:
                t.center[ids[u]] = ids[p] if u != top else lr
            else:
                t.center[ids[u]] = ids[c]
    for u in order:
        if t.kind[ids[u]] in (UNLABELED, DEAD):
            raise InconsistencyError(f"node {u} left without a label")
    return t.contract_degree_two()


def split_decomposition(g: Graph, r: int = 0, trace=None) -> SplitTree:
    """Split tree of a connected graph.  ``trace(h, forest, lay)`` sees every layer."""
    if g.n < 2:
        raise ValueError("split decomposition needs at least two vertices")
    lay = bfs_layering(g, r)
    if g.n == 2:
        return single_edge_tree(g.labels, 0, 1)
    dist = lay.dist
    forest = DecompForest()
    comp_dsu = _DSU(g.n)  # components of G[>=h]
    root_dsu = _DSU(g.n)  # vertices under one forest root
    root_at: dict = {}
    leaf_node: dict = {}
    for h in range(lay.max_dist, 0, -1):
        if h < lay.max_dist:
            groups: dict = {}
            for v in lay.layers[h + 1]:
                groups.setdefault(comp_dsu.find(v), []).append(v)
            comps = list(groups.values())
        else:
            comps = []
        layer = lay.layers[h]
        for v in layer:
            for w in g.adjacency[v]:
                if dist[w] >= h:
                    comp_dsu.union(v, w)
        hcomp_of = [comp_dsu.find(v) for v in layer]

        mf = layer_restricted_modules(g, lay, h)
        borders = compute_borders(g, lay, h, mf, comps)
        bf = build_border_forest(g, lay, h, borders, forest, mf.layer_is_module, hcomp_of, leaf_node)

        hung = []
        seen = set()
        anchor = []
        for i, comp in enumerate(comps):
            root = root_at[root_dsu.find(comp[0])]
            if root in seen:
                continue
            seen.add(root)
            hung.append((root, len(borders.attach[i]), lowest_node(bf, borders, i)))
            anchor.append((comp[0], borders.attach[i][0]))
        update_forest(forest, bf, hung)
        forest.h = h

        first_pos = {}
        for pos_, u in enumerate(bf.root_of_pos):
            if u in first_pos:
                root_dsu.union(layer[first_pos[u]], layer[pos_])
            else:
                first_pos[u] = pos_
        for v, p in anchor:
            root_dsu.union(layer[p], v)
        for u, p in first_pos.items():
            root_at[root_dsu.find(layer[p])] = forest.top(u)
        if trace is not None:
            trace(h, forest, lay)
    return _to_split_tree(g, forest, r)


def decompose(g: Graph, r: int = 0) -> SplitTree:
    return split_decomposition(g, r)
