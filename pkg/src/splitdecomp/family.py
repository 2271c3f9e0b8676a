"""Set families over a ground set ``0..size-1`` and partition refinement."""
from __future__ import annotations

from dataclasses import dataclass


def overlap(x, y) -> bool:
    """True iff the sets intersect and neither contains the other."""
    x, y = set(x), set(y)
    return bool(x & y) and not x <= y and not y <= x


@dataclass(frozen=True)
class SetFamily:
    """A multiset of non-empty subsets of ``range(ground)``, members stored sorted."""

    ground: int
    members: tuple

    def __post_init__(self):
        if self.ground < 1:
            raise ValueError("ground set must be non-empty")

    @classmethod
    def of(cls, ground: int, members) -> "SetFamily":
        ms = []
        for m in members:
            t = tuple(sorted(set(m)))
            if not t:
                raise ValueError("empty member")
            if t[0] < 0 or t[-1] >= ground:
                raise ValueError(f"member {t} is not inside the ground set")
            ms.append(t)
        return cls(ground, tuple(ms))

    @property
    def norm(self) -> int:
        return len(self.members) + sum(len(m) for m in self.members)

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def as_set(self) -> frozenset:
        """Distinct members as frozensets (duplicates collapse)."""
        return frozenset(frozenset(m) for m in self.members)

    def __or__(self, other: "SetFamily") -> "SetFamily":
        if other.ground != self.ground:
            raise ValueError("families over different ground sets")
        return SetFamily(self.ground, self.members + other.members)


def norm(f: SetFamily) -> int:
    return f.norm


class Partition:
    """Partition refinement over a fixed element list.

    Blocks are contiguous ranges of an internal permutation; refining by a
    set ``s`` costs ``O(|s|)``.
    """

    def __init__(self, blocks):
        self.order = []
        self.pos = {}
        self.block_of = {}
        self.start = []
        self.end = []
        for blk in blocks:
            if not blk:
                continue
            b = len(self.start)
            self.start.append(len(self.order))
            for x in blk:
                if x in self.pos:
                    raise ValueError(f"element {x} appears in two blocks")
                self.pos[x] = len(self.order)
                self.order.append(x)
                self.block_of[x] = b
            self.end.append(len(self.order))

    def __len__(self):
        return len(self.start)

    def block(self, b) -> list:
        return self.order[self.start[b]:self.end[b]]

    def refine(self, s) -> list:
        """Split every block that ``s`` cuts; returns (old, new) block id pairs."""
        touched = {}
        for x in s:
            b = self.block_of.get(x)
            if b is None:
                raise ValueError(f"element {x} is outside the partitioned set")
            # move x to the front of its block
            k = touched.get(b, 0)
            i = self.start[b] + k
            j = self.pos[x]
            if j < i:
                continue  # duplicate element in s
            y = self.order[i]
            self.order[i], self.order[j] = x, y
            self.pos[x], self.pos[y] = i, j
            touched[b] = k + 1
        splits = []
        for b, k in touched.items():
            if k == self.end[b] - self.start[b]:
                continue
            nb = len(self.start)
            s0 = self.start[b]
            self.start.append(s0)
            self.end.append(s0 + k)
            self.start[b] = s0 + k
            for i in range(s0, s0 + k):
                self.block_of[self.order[i]] = nb
            splits.append((b, nb))
        return splits

    def blocks(self) -> list[list]:
        out = [sorted(self.block(b)) for b in range(len(self.start))]
        out.sort()
        return out


def partition_refine(initial, family) -> list[list]:
    """Coarsest refinement of ``initial`` whose blocks overlap no member.

    Two elements share a block iff they share an initial block and lie in
    exactly the same members.
    """
    part = Partition(initial)
    for member in family:
        part.refine(member)
    return part.blocks()
