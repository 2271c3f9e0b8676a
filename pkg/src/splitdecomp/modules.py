"""Modular decomposition, and the modules of G[<=h] that live inside layer h.

The decomposition follows the pivot scheme: for a vertex ``v`` the maximal
modules avoiding ``v`` are found by vertex-partition refinement, each is
decomposed recursively, and the strong modules containing ``v`` are read off
the strongly connected components of the forcing graph on those parts
(``X -> Y`` when a vertex of ``Y`` distinguishes ``v`` from ``X``).  The
components form a chain; singleton components give series/parallel levels,
larger ones give prime levels.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .graph import Graph, Layering
from .partitive import COMPLETE, LEAF, PRIME, PartitiveTree

SERIES = "series"
PARALLEL = "parallel"


def _maximal_modules_avoiding(g: Graph, inside: set, v: int) -> list[list[int]]:
    """Coarsest partition of ``inside - {v}`` into modules of G[inside].

    Every vertex must act once as a pivot against every block it does not
    belong to.  A block processed as a whole and later cut in two only needs
    its smaller half rescanned: the half pivots outwards, and the vertices
    outside it pivot against it through the half's own adjacency lists.
    """
    nv = g.adjset(v)
    adjacency = g.adjacency
    near = [x for x in inside if x != v and x in nv]
    far = [x for x in inside if x != v and x not in nv]
    block_of: dict = {}
    members: list = []
    processed: list = []
    tasks = deque()
    for b in (near, far):
        if b:
            for x in b:
                block_of[x] = len(members)
            members.append(set(b))
            processed.append(False)
            tasks.append((True, len(members) - 1))

    def refine(ys, own):
        touched: dict = {}
        for y in ys:
            c = block_of.get(y)
            if c is None or c == own:
                continue
            touched.setdefault(c, []).append(y)
        for c, part in touched.items():
            if len(part) == len(members[c]):
                continue
            nb = len(members)
            moved = set(part)
            members[c] -= moved
            members.append(moved)
            processed.append(processed[c])
            for y in part:
                block_of[y] = nb
            if processed[c]:
                tasks.append((False, list(moved if len(moved) <= len(members[c]) else members[c])))
            else:
                tasks.append((True, nb))

    while tasks:
        whole, item = tasks.popleft()
        if whole:
            processed[item] = True
            for x in list(members[item]):
                refine(adjacency[x], block_of[x])
            continue
        half = set(item)
        for x in item:
            refine(adjacency[x], block_of[x])
        hood: dict = {}
        for y in item:
            for x in adjacency[y]:
                if x not in half and x in block_of:
                    hood.setdefault(x, []).append(y)
        for x, ys in hood.items():
            refine(ys, block_of[x])
    return [sorted(m) for m in members if m]


def _chain_components(nparts: int, qadj: list, near_v: list) -> list[list[int]]:
    """SCCs of the forcing graph, sinks first.

    Successors of X: far parts adjacent to X and near parts not adjacent to X.
    """
    # pass 1: forward DFS finishing order
    unvisited_far = {i for i in range(nparts) if not near_v[i]}
    unvisited_near = {i for i in range(nparts) if near_v[i]}
    finish = []

    def next_forward(x, it):
        for y in it:
            if y in unvisited_far:
                return y
        for y in unvisited_near:
            if y != x and y not in qadj[x]:
                return y
        return None

    for s in range(nparts):
        if s not in unvisited_far and s not in unvisited_near:
            continue
        (unvisited_near if near_v[s] else unvisited_far).discard(s)
        stack = [(s, iter(qadj[s]))]
        while stack:
            x, it = stack[-1]
            y = next_forward(x, it)
            if y is None:
                stack.pop()
                finish.append(x)
                continue
            (unvisited_near if near_v[y] else unvisited_far).discard(y)
            stack.append((y, iter(qadj[y])))

    # pass 2: reverse graph.  Predecessors of a far Y: parts adjacent to Y;
    # of a near Y: parts not adjacent to Y.
    unvisited = set(range(nparts))

    def next_reverse(y, it):
        if near_v[y]:
            for x in unvisited:
                if x != y and x not in qadj[y]:
                    return x
            return None
        for x in it:
            if x in unvisited:
                return x
        return None

    comps = []
    for s in reversed(finish):
        if s not in unvisited:
            continue
        unvisited.discard(s)
        comp = [s]
        stack = [(s, iter(qadj[s]))]
        while stack:
            y, it = stack[-1]
            x = next_reverse(y, it)
            if x is None:
                stack.pop()
                continue
            unvisited.discard(x)
            comp.append(x)
            stack.append((x, iter(qadj[x])))
        comps.append(sorted(comp))
    comps.reverse()
    return comps


def _combine(g: Graph, v: int, parts: list, kids: list):
    pid = {}
    for i, p in enumerate(parts):
        for x in p:
            pid[x] = i
    qadj = [set() for _ in parts]
    near_v = [False] * len(parts)
    nv = g.adjset(v)
    for i, p in enumerate(parts):
        near_v[i] = p[0] in nv
        for x in p:
            for y in g.adjacency[x]:
                j = pid.get(y)
                if j is not None and j != i:
                    qadj[i].add(j)
    cur = ("leaf", v)
    for comp in _chain_components(len(parts), qadj, near_v):
        if len(comp) == 1:
            i = comp[0]
            typ = SERIES if near_v[i] else PARALLEL
            children = []
            for t in (cur, kids[i]):
                children.extend(t[1] if t[0] == typ else [t])
            cur = (typ, children)
        else:
            cur = ("prime", [cur] + [kids[i] for i in comp])
    return cur


def _md_nested(g: Graph, vertices) -> tuple:
    """Decomposition of G[vertices] as nested (type, children) / ("leaf", v) tuples."""
    final = None
    stack = [[sorted(vertices), None, None, []]]  # S, v, parts, kid results
    while stack:
        fr = stack[-1]
        s, v, parts, kids = fr
        result = None
        if parts is None:
            if len(s) == 1:
                result = ("leaf", s[0])
            else:
                fr[1] = v = s[0]
                fr[2] = parts = _maximal_modules_avoiding(g, set(s), v)
        if result is None:
            if len(kids) < len(parts):
                stack.append([parts[len(kids)], None, None, []])
                continue
            result = _combine(g, v, parts, kids)
        stack.pop()
        if stack:
            stack[-1][3].append(result)
        else:
            final = result
    return final


def _nested_to_tree(nested, ground: int, relabel=None) -> PartitiveTree:
    t = PartitiveTree.empty(ground)
    stack = [(nested, None)]
    while stack:
        node, par = stack.pop()
        if node[0] == "leaf":
            u = t.add_node(LEAF, node[1] if relabel is None else relabel[node[1]])
        else:
            typ = node[0]
            u = t.add_node(PRIME if typ == "prime" else COMPLETE, flag=typ)
            for c in reversed(node[1]):
                stack.append((c, u))
        if par is None:
            t.root = u
        else:
            t.attach(u, par)
    return t


def modular_decomposition(g: Graph) -> PartitiveTree:
    """Partitive tree of all modules; ``flags`` says series/parallel/prime."""
    if g.n == 0:
        raise ValueError("empty graph")
    return _nested_to_tree(_md_nested(g, range(g.n)), g.n)


@dataclass
class ModuleForest:
    """Modules of G[<=h] inside layer h, over positions in ``layer``.

    ``tree`` represents M plus the layer itself; when the layer is not a
    module its root is artificial and ``roots`` lists the real forest roots.
    """

    layer: tuple
    tree: PartitiveTree
    layer_is_module: bool
    roots: list

    def generator_norm(self) -> int:
        """Norm of the node sets of the forest (the artificial root excluded)."""
        sets = self.tree.node_sets()
        total = 0
        for v, s in sets.items():
            if v == self.tree.root and not self.layer_is_module:
                continue
            total += 1 + len(s)
        return total


def layer_restricted_modules(g: Graph, lay: Layering, h: int) -> ModuleForest:
    if not 1 <= h <= lay.max_dist:
        raise ValueError(f"layer {h} out of range")
    layer = lay.layers[h]
    pos = {v: i for i, v in enumerate(layer)}
    sub, verts = g.induced(list(lay.layers[h - 1]) + list(layer))
    md = _nested_to_tree(_md_nested(sub, range(sub.n)), sub.n)
    in_h = [verts[e] in pos for e in range(sub.n)]
    full = {}
    for v in md.postorder():
        if md.kind[v] == LEAF:
            full[v] = in_h[md.element[v]]
        else:
            full[v] = all(full[c] for c in md.children[v])

    out = PartitiveTree.empty(len(layer))

    def copy(v):
        # iterative copy of a fully marked subtree
        top = None
        stack = [(v, None)]
        while stack:
            x, par = stack.pop()
            if md.kind[x] == LEAF:
                u = out.add_node(LEAF, pos[verts[md.element[x]]])
            else:
                u = out.add_node(md.kind[x], flag=md.flags[x])
                for c in reversed(md.children[x]):
                    stack.append((c, u))
            if par is None:
                top = u
            else:
                out.attach(u, par)
        return top

    roots = []
    for v in md.postorder():
        if full[v] or md.kind[v] == LEAF:
            continue
        marked = [c for c in md.children[v] if full[c]]
        if md.kind[v] == COMPLETE and len(marked) >= 2:
            u = out.add_node(COMPLETE, flag=md.flags[v])
            for c in marked:
                out.attach(copy(c), u)
            roots.append(u)
        else:
            roots.extend(copy(c) for c in marked)
    if len(roots) == 1:
        out.root = roots[0]
        return ModuleForest(tuple(layer), out, True, roots)
    top = out.add_node(PRIME if len(roots) >= 3 else COMPLETE)
    for u in roots:
        out.attach(u, top)
    out.root = top
    return ModuleForest(tuple(layer), out, False, roots)
