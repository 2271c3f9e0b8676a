"""Partitive tree of the orthogonal of an arbitrary set family.

The construction goes through the overlap components of the family:

* components are found in one sweep over the members sorted by decreasing
  size.  Per-element membership lists and a prefix trie settle the common
  cases (a member meeting no earlier member it overlaps, or one sitting
  inside its latest container) in time linear in its size; otherwise the
  earlier members meeting it are counted to tell containers from overlaps;
* the union of each component with at least two distinct members becomes a
  Prime node whose children are the membership classes of the component;
* members overlapping nothing, the ground set and the singletons are the
  remaining (Complete) nodes.

All these sets form a laminar family, and its inclusion tree is the answer.
Running time is ``O(||F|| alpha)`` plus sorting when the fallback count is
not needed, and ``O(sum_x d(x)^2)`` in the worst case, ``d(x)`` being the
number of members containing ``x``.
"""
from __future__ import annotations

from dataclasses import dataclass

from .family import Partition, SetFamily
from .partitive import COMPLETE, LEAF, PRIME, PartitiveTree


class _DSU:
    def __init__(self, n):
        self.p = list(range(n))

    def find(self, x):
        p = self.p
        root = x
        while p[root] != root:
            root = p[root]
        while p[x] != root:
            p[x], x = root, p[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.p[rb] = ra


def overlap_components(sets: list) -> list[int]:
    """Component id for each set (sets must be distinct sorted tuples)."""
    order = sorted(range(len(sets)), key=lambda i: -len(sets[i]))
    dsu = _DSU(len(sets))
    containing: dict = {}  # element -> list of processed set ids, decreasing size
    trie_node: dict = {}  # element -> trie node of its processed prefix
    trie: list = [{}]
    for y in order:
        ys = sets[y]
        first = trie_node.get(ys[0], 0)
        same_prefix = all(trie_node.get(e, 0) == first for e in ys)
        if not same_prefix:
            preds = {containing[e][-1] if e in containing else None for e in ys}
            if len(preds) == 1 and None not in preds:
                # inside its latest container P: every earlier overlapper overlaps P
                dsu.union(preds.pop(), y)
            else:
                # earlier sets meeting y overlap it unless they contain all of it
                count: dict = {}
                for e in ys:
                    for z in containing.get(e, ()):
                        count[z] = count.get(z, 0) + 1
                size = len(ys)
                for z, c in count.items():
                    if c < size:
                        dsu.union(z, y)
        for e in ys:
            node = trie_node.get(e, 0)
            nxt = trie[node].get(y)
            if nxt is None:
                nxt = len(trie)
                trie.append({})
                trie[node][y] = nxt
            trie_node[e] = nxt
            containing.setdefault(e, []).append(y)
    return [dsu.find(i) for i in range(len(sets))]


@dataclass
class OrthogonalResult:
    tree: PartitiveTree
    container: list  # per input member: smallest tree node containing it


def orthogonal_tree(f: SetFamily) -> OrthogonalResult:
    n = f.ground
    distinct: dict = {}
    member_ids = []
    for m in f.members:
        member_ids.append(distinct.setdefault(m, len(distinct)))
    sets = list(distinct)
    comp = overlap_components(sets)
    groups: dict = {}
    for i, c in enumerate(comp):
        groups.setdefault(c, []).append(i)

    # laminar family: set -> index into lam_sets / lam_prime
    lam: dict = {}
    lam_sets: list = []
    lam_prime: list = []

    def add(key, prime):
        k = lam.get(key)
        if k is None:
            k = lam[key] = len(lam_sets)
            lam_sets.append(key)
            lam_prime.append(prime)
        elif prime:
            lam_prime[k] = True
        return k

    add(tuple(range(n)), False)
    set_lam = [0] * len(sets)
    for ids in groups.values():
        if len(ids) == 1:
            set_lam[ids[0]] = add(sets[ids[0]], False)
            continue
        union = sorted({e for i in ids for e in sets[i]})
        k = add(tuple(union), True)
        for i in ids:
            set_lam[i] = k
        part = Partition([union])
        for i in ids:
            part.refine(sets[i])
        for blk in part.blocks():
            if len(blk) > 1:
                add(tuple(blk), False)

    tree = PartitiveTree.empty(n)
    leaf = [tree.add_node(LEAF, e) for e in range(n)]
    owner = [None] * n
    lam_node = [None] * len(lam_sets)
    for k in sorted(range(len(lam_sets)), key=lambda k: -len(lam_sets[k])):
        s = lam_sets[k]
        if len(s) == 1:
            lam_node[k] = leaf[s[0]]
            continue
        v = tree.add_node(PRIME if lam_prime[k] else COMPLETE)
        lam_node[k] = v
        par = owner[s[0]]
        if par is None:
            tree.root = v
        else:
            tree.attach(v, par)
        for e in s:
            owner[e] = v
    for e in range(n):
        if owner[e] is None:
            tree.root = leaf[e]  # ground of size one
        else:
            tree.attach(leaf[e], owner[e])
    container = [lam_node[set_lam[mid]] for mid in member_ids]
    return OrthogonalResult(tree, container)
