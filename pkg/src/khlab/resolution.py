"""Bracket states, their loops, enhanced states and cube adjacency.

A resolution is stored as a bitmask over the crossings (bit ``k`` set means
crossing ``k`` is B-smoothed).  Loops are found by union-find over the edge
labels; a loop is reported as the sorted tuple of its edges, and each
crossingless circle ``k`` of the diagram appears as the pseudo-loop
``(-k,)``.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator

from .diagram import KnotDiagram
from .errors import CapExceededError

DEFAULT_CAP = 20

ONE, X = 0, 1
LABEL_NAMES = ("1", "x")


def default_cap() -> int:
    return int(os.environ.get("KHLAB_CAP", DEFAULT_CAP))


def check_cap(d: KnotDiagram, cap: int | None = None) -> None:
    cap = default_cap() if cap is None else cap
    if d.crossing_count > cap:
        raise CapExceededError(d.crossing_count, cap)


class UnionFind:
    def __init__(self, items=()):
        self.parent = {v: v for v in items}

    def find(self, v):
        root = v
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[v] != root:
            self.parent[v], v = root, self.parent[v]
        return root

    def union(self, a, b) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra

    def groups(self) -> list[tuple]:
        out: dict = {}
        for v in self.parent:
            out.setdefault(self.find(v), []).append(v)
        return [tuple(sorted(g)) for g in out.values()]


@dataclass(frozen=True)
class Resolution:
    mask: int
    size: int

    @classmethod
    def from_word(cls, word: str) -> "Resolution":
        mask = sum(1 << k for k, ch in enumerate(word.upper()) if ch == "B")
        return cls(mask, len(word))

    @property
    def b_count(self) -> int:
        return bin(self.mask).count("1")

    @property
    def word(self) -> str:
        return "".join("B" if self.is_b(k) else "A" for k in range(self.size))

    def is_b(self, site: int) -> bool:
        return bool(self.mask >> site & 1)

    def a_sites(self) -> list[int]:
        return [k for k in range(self.size) if not self.is_b(k)]

    def flip(self, site: int) -> "Resolution":
        return Resolution(self.mask ^ (1 << site), self.size)


def smoothing_pairs(crossing, b: bool) -> tuple[tuple[int, int], tuple[int, int]]:
    a, bb, c, d = crossing
    if b:
        return (a, bb), (c, d)
    return (a, d), (bb, c)


@dataclass(frozen=True)
class ResolvedState:
    resolution: Resolution
    loops: tuple[tuple[int, ...], ...]

    @property
    def loop_count(self) -> int:
        return len(self.loops)

    @cached_property
    def loop_of_edge(self) -> dict[int, int]:
        return {e: k for k, loop in enumerate(self.loops) for e in loop}


def resolve(d: KnotDiagram, r: Resolution) -> ResolvedState:
    if r.size != d.crossing_count:
        raise ValueError(f"resolution has {r.size} sites, diagram has {d.crossing_count} crossings")
    uf = UnionFind(range(1, d.edge_count + 1))
    for k, crossing in enumerate(d.crossings):
        for u, v in smoothing_pairs(crossing, r.is_b(k)):
            uf.union(u, v)
    loops = sorted(uf.groups())
    loops += [(-(k + 1),) for k in range(d.free_loops)]
    return ResolvedState(r, tuple(loops))


def tier_masks(n: int, b: int) -> Iterator[int]:
    """Masks with ``b`` bits set among ``n``, in increasing numeric order."""
    if b == 0:
        yield 0
        return
    if b > n:
        return
    v = (1 << b) - 1
    limit = 1 << n
    while v < limit:
        yield v
        c = v & -v
        r = v + c
        v = (((r ^ v) >> 2) // c) | r


def enumerate_states(d: KnotDiagram, cap: int | None = None) -> Iterator[ResolvedState]:
    """All ``2^c`` states, ordered by (number of B's, bitmask)."""
    check_cap(d, cap)
    n = d.crossing_count
    for b in range(n + 1):
        for mask in tier_masks(n, b):
            yield resolve(d, Resolution(mask, n))


@dataclass(frozen=True)
class EnhancedState:
    state: ResolvedState
    labels: tuple[int, ...]

    @property
    def i(self) -> int:
        return self.state.resolution.b_count

    @property
    def lam(self) -> int:
        return len(self.labels) - 2 * sum(self.labels)

    @property
    def j(self) -> int:
        return self.i + self.lam

    def label_string(self) -> str:
        return "".join(LABEL_NAMES[v] for v in self.labels)


def label_tuples(loop_count: int) -> Iterator[tuple[int, ...]]:
    """Loop labelings in lexicographic order with ``1`` before ``x``."""
    return itertools.product((ONE, X), repeat=loop_count)


def enumerate_enhanced(d: KnotDiagram, cap: int | None = None) -> Iterator[EnhancedState]:
    for st in enumerate_states(d, cap):
        for labels in label_tuples(st.loop_count):
            yield EnhancedState(st, labels)


@dataclass(frozen=True)
class SiteTransition:
    """Effect of re-smoothing one A-site to B.

    ``source_loops`` index loops of the source state, ``target_loops`` loops
    of the target.  A merge has two sources and one target; a split has one
    source and two targets (the loops through slot ``a`` and slot ``c`` of
    the crossing, in that order).
    """

    site: int
    target: Resolution
    kind: str
    source_loops: tuple[int, ...]
    target_loops: tuple[int, ...]
    loop_map: tuple[int, ...]  # source loop -> target loop, for every source loop


def transition(d: KnotDiagram, src: ResolvedState, dst: ResolvedState, site: int) -> SiteTransition:
    a, b, c, _ = d.crossings[site]
    s_of, t_of = src.loop_of_edge, dst.loop_of_edge
    la, lb = s_of[a], s_of[b]
    loop_map = tuple(t_of[loop[0]] for loop in src.loops)
    if la != lb:
        return SiteTransition(site, dst.resolution, "merge", (la, lb), (t_of[a],), loop_map)
    return SiteTransition(site, dst.resolution, "split", (la,), (t_of[a], t_of[c]), loop_map)


def transitions(d: KnotDiagram, r: Resolution) -> list[SiteTransition]:
    src = resolve(d, r)
    return [transition(d, src, resolve(d, r.flip(k)), k) for k in r.a_sites()]


def dump_states(d: KnotDiagram, cap: int | None = None) -> str:
    return "\n".join(f"word={s.resolution.word} loops={s.loop_count}" for s in enumerate_states(d, cap))
