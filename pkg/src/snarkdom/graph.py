"""Flower snark construction, vertex sets and basic graph queries.

Vertices are numbered ``4*i + role`` with copy index ``i`` in ``0..n-1`` and
role order ``b=0, a=1, c=2, d=3``.  The twist always sits between copy
``n-1`` and copy ``0``.  Human-readable labels are 1-based (``a^3`` is the
centre of copy index 2).
"""

from __future__ import annotations

import json
import re
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator

ROLES = "bacd"
B, A, C, D = range(4)

_LABEL_RE = re.compile(r"^([abcd])\^?(\d+)$")


def vertex_id(copy: int, role: int | str) -> int:
    if isinstance(role, str):
        role = ROLES.index(role)
    return 4 * copy + role


def decode(v: int) -> tuple[int, int]:
    return divmod(v, 4)


def label(v: int) -> str:
    i, role = decode(v)
    return f"{ROLES[role]}^{i + 1}"


def parse_label(text: str) -> int:
    """Inverse of :func:`label`; accepts ``a^3`` or ``a3``."""
    m = _LABEL_RE.match(text.strip())
    if not m or int(m.group(2)) < 1:
        raise ValueError(f"bad vertex label {text!r}")
    return vertex_id(int(m.group(2)) - 1, m.group(1))


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True, order=False)
class VertexSet:
    """Bit vector over the vertices ``0..universe-1``."""

    mask: int
    universe: int

    def __post_init__(self):
        if self.mask < 0 or self.mask >> self.universe:
            raise ValueError("mask has bits outside the universe")

    @classmethod
    def from_ids(cls, ids: Iterable[int], universe: int) -> VertexSet:
        mask = 0
        for v in ids:
            if not 0 <= v < universe:
                raise ValueError(f"vertex {v} outside [0, {universe})")
            mask |= 1 << v
        return cls(mask, universe)

    @classmethod
    def empty(cls, universe: int) -> VertexSet:
        return cls(0, universe)

    @classmethod
    def full(cls, universe: int) -> VertexSet:
        return cls((1 << universe) - 1, universe)

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __iter__(self) -> Iterator[int]:
        return iter_bits(self.mask)

    def __contains__(self, v: int) -> bool:
        return 0 <= v < self.universe and bool(self.mask >> v & 1)

    def _check(self, other: VertexSet) -> None:
        if self.universe != other.universe:
            raise ValueError("vertex sets over different universes")

    def __or__(self, other: VertexSet) -> VertexSet:
        self._check(other)
        return VertexSet(self.mask | other.mask, self.universe)

    def __and__(self, other: VertexSet) -> VertexSet:
        self._check(other)
        return VertexSet(self.mask & other.mask, self.universe)

    def __sub__(self, other: VertexSet) -> VertexSet:
        self._check(other)
        return VertexSet(self.mask & ~other.mask, self.universe)

    def complement(self) -> VertexSet:
        return VertexSet(((1 << self.universe) - 1) & ~self.mask, self.universe)

    def add(self, v: int) -> VertexSet:
        return VertexSet(self.mask | (1 << v), self.universe)

    def remove(self, v: int) -> VertexSet:
        return VertexSet(self.mask & ~(1 << v), self.universe)

    def ids(self) -> list[int]:
        return list(iter_bits(self.mask))

    def sort_key(self) -> tuple[int, ...]:
        """Lexicographic key on the sorted vertex ids (the solver tie-break order)."""
        return tuple(iter_bits(self.mask))

    def labels(self) -> list[str]:
        return [label(v) for v in self]

    def __repr__(self) -> str:
        return "{" + ", ".join(self.labels()) + "}"


class FlowerSnark:
    """The flower snark J_n.  Immutable once built."""

    def __init__(self, n: int):
        if not isinstance(n, int) or n < 3:
            raise ValueError(f"flower snark needs n >= 3, got {n!r}")
        self.n = n
        self.num_vertices = 4 * n
        nbrs: list[set[int]] = [set() for _ in range(self.num_vertices)]

        def join(u, v):
            nbrs[u].add(v)
            nbrs[v].add(u)

        for i in range(n):
            a = vertex_id(i, A)
            for role in (B, C, D):
                join(a, vertex_id(i, role))
            join(vertex_id(i, B), vertex_id((i + 1) % n, B))
        for i in range(n - 1):
            join(vertex_id(i, C), vertex_id(i + 1, C))
            join(vertex_id(i, D), vertex_id(i + 1, D))
        join(vertex_id(n - 1, C), vertex_id(0, D))
        join(vertex_id(n - 1, D), vertex_id(0, C))

        self.adjacency: tuple[tuple[int, ...], ...] = tuple(tuple(sorted(s)) for s in nbrs)
        self.open_masks: tuple[int, ...] = tuple(sum(1 << u for u in s) for s in nbrs)
        self.closed_masks: tuple[int, ...] = tuple(m | (1 << v) for v, m in enumerate(self.open_masks))
        self.full_mask = (1 << self.num_vertices) - 1

    @property
    def closed_neighborhoods(self) -> list[VertexSet]:
        return [VertexSet(m, self.num_vertices) for m in self.closed_masks]

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.num_vertices) for v in self.adjacency[u] if u < v]

    def vertex_set(self, ids: Iterable[int] = ()) -> VertexSet:
        return VertexSet.from_ids(ids, self.num_vertices)

    def copy_mask(self, i: int) -> int:
        return 0xF << (4 * i)

    def __repr__(self) -> str:
        return f"FlowerSnark(n={self.n})"


@lru_cache(maxsize=64)
def build_flower_snark(n: int) -> FlowerSnark:
    return FlowerSnark(n)


def copy_subset(g: FlowerSnark, s: VertexSet, i: int) -> VertexSet:
    if not 0 <= i < g.n:
        raise IndexError(f"copy index {i} out of range for n={g.n}")
    return VertexSet(s.mask & g.copy_mask(i), s.universe)


def copy_weights_mask(n: int, mask: int) -> tuple[int, ...]:
    return tuple((mask >> (4 * i) & 0xF).bit_count() for i in range(n))


def copy_weights(g: FlowerSnark, s: VertexSet) -> tuple[int, ...]:
    return copy_weights_mask(g.n, s.mask)


def weight_histogram(g: FlowerSnark, s: VertexSet) -> tuple[int, ...]:
    """Counts ``(w_0, .., w_4)`` of copies having each weight."""
    hist = [0] * 5
    for w in copy_weights(g, s):
        hist[w] += 1
    return tuple(hist)


def connected_mask(g: FlowerSnark, mask: int) -> bool:
    if mask & (mask - 1) == 0:
        return True
    low = mask & -mask
    reached = low
    frontier = low
    opens = g.open_masks
    while frontier:
        grow = 0
        for v in iter_bits(frontier):
            grow |= opens[v]
        frontier = grow & mask & ~reached
        reached |= frontier
    return reached == mask


def is_connected_induced(g: FlowerSnark, s: VertexSet) -> bool:
    return connected_mask(g, s.mask)


def girth(g: FlowerSnark) -> int:
    best = g.num_vertices + 1
    for root in range(g.num_vertices):
        dist = {root: 0}
        parent = {root: -1}
        queue = deque([root])
        while queue:
            u = queue.popleft()
            if 2 * dist[u] >= best:
                break
            for w in g.adjacency[u]:
                if w not in dist:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue.append(w)
                elif parent[u] != w:
                    best = min(best, dist[u] + dist[w] + 1)
    return best


def chromatic_index(g: FlowerSnark) -> int:
    """3 if a proper 3-edge-colouring exists, else 4 (Vizing, cubic graph).

    Plain backtracking; meant for n <= 9.
    """
    # order edges by BFS so each new edge touches already coloured ones
    order: list[tuple[int, int]] = []
    seen_edges = set()
    visited = {0}
    queue = deque([0])
    while queue:
        u = queue.popleft()
        for w in g.adjacency[u]:
            e = (min(u, w), max(u, w))
            if e not in seen_edges:
                seen_edges.add(e)
                order.append(e)
            if w not in visited:
                visited.add(w)
                queue.append(w)

    used = [0] * g.num_vertices  # bitmask of colours at each vertex
    colour: dict[tuple[int, int], int] = {}

    def place(k: int) -> bool:
        if k == len(order):
            return True
        u, v = order[k]
        free = ~(used[u] | used[v]) & 0b111
        # the first edge's colour is fixed by symmetry
        if k == 0:
            free &= 1
        for c in range(3):
            bit = 1 << c
            if free & bit:
                used[u] |= bit
                used[v] |= bit
                colour[(u, v)] = c
                if place(k + 1):
                    return True
                used[u] &= ~bit
                used[v] &= ~bit
        return False

    return 3 if place(0) else 4


def export_graph(g: FlowerSnark, fmt: str) -> str:
    edges = g.edges()
    if fmt == "dimacs":
        lines = [f"p edge {g.num_vertices} {len(edges)}"]
        lines += [f"e {u + 1} {v + 1}" for u, v in edges]
        return "\n".join(lines) + "\n"
    if fmt == "json":
        vertices = [
            {"id": v, "copy": v // 4, "role": ROLES[v % 4]} for v in range(g.num_vertices)
        ]
        return json.dumps({"n": g.n, "vertices": vertices, "edges": [list(e) for e in edges]})
    if fmt == "adjlist":
        return "".join(
            f"{v}: {' '.join(map(str, g.adjacency[v]))}\n" for v in range(g.num_vertices)
        )
    raise ValueError(f"unknown export format {fmt!r}")
