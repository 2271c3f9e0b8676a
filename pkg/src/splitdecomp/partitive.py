"""Rooted Prime/Complete trees representing partitive families.

A leaf stands for one ground element.  A Prime node represents only its own
set; a Complete node represents every union of one or more of its children.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .family import SetFamily, partition_refine

LEAF = "leaf"
PRIME = "prime"
COMPLETE = "complete"


class CapExceeded(RuntimeError):
    pass


@dataclass
class PartitiveTree:
    """Arena-backed tree.  ``flags`` is free per-node metadata (e.g. series/parallel)."""

    ground: int
    kind: list
    element: list
    parent: list
    children: list
    root: int
    flags: list = field(default_factory=list)

    # -- construction -----------------------------------------------------

    @classmethod
    def empty(cls, ground: int) -> "PartitiveTree":
        t = cls(ground, [], [], [], [], -1, [])
        return t

    def add_node(self, kind, element=None, flag=None) -> int:
        self.kind.append(kind)
        self.element.append(element)
        self.parent.append(None)
        self.children.append([])
        self.flags.append(flag)
        return len(self.kind) - 1

    def attach(self, child, parent):
        self.parent[child] = parent
        self.children[parent].append(child)

    @classmethod
    def from_nested(cls, ground: int, nested) -> "PartitiveTree":
        """Build from nested tuples: an int is a leaf, ``("P"|"C", [kids])`` a node."""
        t = cls.empty(ground)

        def build(s):
            if isinstance(s, int):
                return t.add_node(LEAF, s)
            lab, kids = s
            v = t.add_node(PRIME if lab == "P" else COMPLETE)
            for k in kids:
                t.attach(build(k), v)
            return v

        t.root = build(nested)
        return t

    def copy(self) -> "PartitiveTree":
        return PartitiveTree(
            self.ground,
            list(self.kind),
            list(self.element),
            list(self.parent),
            [list(c) for c in self.children],
            self.root,
            list(self.flags),
        )

    # -- traversal --------------------------------------------------------

    def __len__(self):
        return len(self.kind)

    def postorder(self, start=None):
        start = self.root if start is None else start
        out = []
        stack = [(start, False)]
        while stack:
            v, done = stack.pop()
            if done:
                out.append(v)
                continue
            stack.append((v, True))
            for c in reversed(self.children[v]):
                stack.append((c, False))
        return out

    def node_sets(self) -> dict:
        """Sorted element tuple for every node reachable from the root."""
        sets = {}
        for v in self.postorder():
            if self.kind[v] == LEAF:
                sets[v] = (self.element[v],)
            else:
                acc = []
                for c in self.children[v]:
                    acc.extend(sets[c])
                acc.sort()
                sets[v] = tuple(acc)
        return sets

    def leaf_of(self) -> dict:
        return {self.element[v]: v for v in self.postorder() if self.kind[v] == LEAF}

    def internal_nodes(self):
        return [v for v in self.postorder() if self.kind[v] != LEAF]

    def serialize(self) -> str:
        """Nested text form, e.g. ``C(P(0,1,2),3)``; canonical after canonicalize()."""
        text = {}
        for v in self.postorder():
            if self.kind[v] == LEAF:
                text[v] = str(self.element[v])
            else:
                lab = "P" if self.kind[v] == PRIME else "C"
                text[v] = lab + "(" + ",".join(text[c] for c in self.children[v]) + ")"
        return text[self.root]

    def __str__(self):
        return self.serialize()

    def check(self):
        """Assert the structural invariants; returns self for chaining."""
        sets = self.node_sets()
        leaves = sorted(self.element[v] for v in sets if self.kind[v] == LEAF)
        assert leaves == list(range(self.ground)), "leaves must biject with the ground set"
        for v in sets:
            if self.kind[v] != LEAF:
                assert len(self.children[v]) >= 2, f"node {v} has fewer than two children"
                if len(self.children[v]) == 2:
                    assert self.kind[v] == COMPLETE, "two-child nodes are labelled Complete"
        return self


def swap_labels(t: PartitiveTree) -> PartitiveTree:
    """Exchange Prime and Complete labels (two-child nodes stay Complete)."""
    out = t.copy()
    for v, k in enumerate(out.kind):
        if k == PRIME:
            out.kind[v] = COMPLETE
        elif k == COMPLETE and len(out.children[v]) > 2:
            out.kind[v] = PRIME
    return out


def circulant(blocks) -> list:
    """Cyclic pairwise unions A1|A2, A2|A3, ..., Ap|A1."""
    p = len(blocks)
    return [tuple(sorted(blocks[i] + blocks[(i + 1) % p])) for i in range(p)]


def generator_family(t: PartitiveTree) -> SetFamily:
    """Compact family whose orthogonal is the family represented by ``t``.

    Every node set, plus the circulant family of the children of each Prime
    node.  Its norm is linear in the total size of the node sets.
    """
    sets = t.node_sets()
    members = [sets[v] for v in t.postorder()]
    for v in t.postorder():
        if t.kind[v] == PRIME:
            members.extend(circulant([list(sets[c]) for c in t.children[v]]))
    return SetFamily(t.ground, tuple(members))


def complement_reduced_family(f: SetFamily, x) -> SetFamily:
    """Small family with the same orthogonal as ``f`` plus ``{x - y : y in f}``.

    ``x`` must be a member of ``f`` and contain every member.  The classes of
    ``x`` under membership in ``f`` are returned together with ``x`` and, when
    there are at least three classes, their circulant family.
    """
    xs = tuple(sorted(x))
    xset = set(xs)
    present = False
    for m in f.members:
        if not xset.issuperset(m):
            raise ValueError(f"member {m} is not contained in {xs}")
        if m == xs:
            present = True
    if not present:
        raise ValueError("x must be a member of the family")
    classes = partition_refine([list(xs)], (m for m in f.members if m != xs))
    members = [tuple(c) for c in classes]
    if len(classes) > 1:
        members.append(xs)
    if len(classes) >= 3:
        members.extend(circulant(classes))
    return SetFamily(f.ground, tuple(members))


def count_members(t: PartitiveTree) -> int:
    """Number of distinct sets represented (without enumerating them)."""
    total = 0
    for v in t.postorder():
        if t.kind[v] == COMPLETE:
            k = len(t.children[v])
            total += 2**k - 1 - k  # unions of >= 2 children, the node itself included
        else:
            total += 1
    return total


def enumerate_members(t: PartitiveTree, cap: int = 1 << 16) -> SetFamily:
    if count_members(t) > cap:
        raise CapExceeded(f"represented family exceeds {cap} members")
    sets = t.node_sets()
    out = set()
    for v in t.postorder():
        out.add(sets[v])
        if t.kind[v] == COMPLETE:
            kids = [sets[c] for c in t.children[v]]
            for r in range(2, len(kids)):
                for combo in combinations(kids, r):
                    out.add(tuple(sorted(e for s in combo for e in s)))
    return SetFamily(t.ground, tuple(sorted(out, key=lambda s: (len(s), s))))


def member_test(t: PartitiveTree, s) -> bool:
    target = set(s)
    if not target:
        return False
    sets = t.node_sets()
    leaf = t.leaf_of()
    # lowest node containing s: walk up from one leaf until the set covers s
    v = leaf[next(iter(target))]
    while not target.issubset(sets[v]):
        v = t.parent[v]
    if len(sets[v]) == len(target):
        return True
    if t.kind[v] != COMPLETE:
        return False
    return all(target.issuperset(sets[c]) or target.isdisjoint(sets[c]) for c in t.children[v])


def canonicalize(t: PartitiveTree) -> PartitiveTree:
    """Copy with children sorted by smallest leaf, arena renumbered in preorder."""
    sets = t.node_sets()
    out = PartitiveTree.empty(t.ground)
    stack = [(t.root, None)]
    while stack:
        v, par = stack.pop()
        nv = out.add_node(t.kind[v], t.element[v], t.flags[v] if t.flags else None)
        if par is None:
            out.root = nv
        else:
            out.attach(nv, par)
        kids = sorted(t.children[v], key=lambda c: sets[c][0])
        for c in reversed(kids):
            stack.append((c, nv))
    # stack order attaches children in sorted order because each is pushed reversed
    return out


def trees_equal(a: PartitiveTree, b: PartitiveTree) -> bool:
    return a.ground == b.ground and canonicalize(a).serialize() == canonicalize(b).serialize()
