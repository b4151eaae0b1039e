"""Immutable bitmask graphs and the elementary set predicates.

Vertex sets are plain ``int`` bitmasks over ``range(n)``; bit ``v`` set means
vertex ``v`` is a member. Every other module in the package works with these
masks directly.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Iterator

MAX_VERTICES = 64


class GraphError(ValueError):
    """Raised on malformed graph input or violated set preconditions."""


class SetRelation(enum.Enum):
    COMPLETE = "complete"
    ANTICOMPLETE = "anticomplete"
    MIXED = "mixed"


def bits(mask: int) -> Iterator[int]:
    """Yield the members of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def lowest(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


def popcount(mask: int) -> int:
    return mask.bit_count()


def submasks(mask: int) -> Iterator[int]:
    """All submasks of ``mask`` in increasing integer order, including 0."""
    members = list(bits(mask))
    for i in range(1 << len(members)):
        m = 0
        j = 0
        while i:
            if i & 1:
                m |= 1 << members[j]
            i >>= 1
            j += 1
        yield m


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices ``0..n-1``.

    ``adj[v]`` is the neighbourhood bitmask of ``v``.
    """

    n: int
    adj: tuple[int, ...]

    def __post_init__(self):
        if not 0 <= self.n <= MAX_VERTICES:
            raise GraphError(f"vertex count {self.n} outside [0, {MAX_VERTICES}]")
        if len(self.adj) != self.n:
            raise GraphError("adjacency rows do not match vertex count")
        full = self.full
        for v, row in enumerate(self.adj):
            if row & ~full:
                raise GraphError(f"row {v} has bits outside [0, {self.n})")
            if row >> v & 1:
                raise GraphError(f"self-loop at {v}")
            for u in bits(row):
                if not self.adj[u] >> v & 1:
                    raise GraphError(f"asymmetric adjacency between {u} and {v}")

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in bits(self.adj[u] >> (u + 1) << (u + 1))]

    def edge_count(self) -> int:
        return sum(popcount(r) for r in self.adj) // 2

    def degree(self, v: int) -> int:
        return popcount(self.adj[v])

    def neighbours(self, mask: int) -> int:
        """Union of the neighbourhoods of the members of ``mask``."""
        out = 0
        for v in bits(mask):
            out |= self.adj[v]
        return out

    def common_neighbours(self, mask: int) -> int:
        """Vertices outside ``mask`` adjacent to every member of ``mask``."""
        out = self.full & ~mask
        for v in bits(mask):
            out &= self.adj[v]
        return out

    def induced(self, mask: int) -> tuple["Graph", list[int]]:
        """Induced subgraph relabelled to ``0..k-1``, plus the old labels."""
        verts = list(bits(mask))
        index = {v: i for i, v in enumerate(verts)}
        rows = []
        for v in verts:
            rows.append(mask_of(index[u] for u in bits(self.adj[v] & mask)))
        return Graph(len(verts), tuple(rows)), verts

    def delete(self, v: int) -> tuple["Graph", list[int]]:
        return self.induced(self.full & ~(1 << v))

    def relabel(self, perm: list[int]) -> "Graph":
        """Graph with vertex ``v`` renamed to ``perm[v]``."""
        rows = [0] * self.n
        for v in range(self.n):
            rows[perm[v]] = mask_of(perm[u] for u in bits(self.adj[v]))
        return Graph(self.n, tuple(rows))

    def __repr__(self):
        return f"Graph(n={self.n}, edges={self.edges()})"


def build_graph(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    if not 0 <= n <= MAX_VERTICES:
        raise GraphError(f"vertex count {n} outside [0, {MAX_VERTICES}]")
    rows = [0] * n
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"endpoint out of range in pair ({u}, {v})")
        if u == v:
            raise GraphError(f"self-loop in pair ({u}, {v})")
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return Graph(n, tuple(rows))


def complement(g: Graph) -> Graph:
    full = g.full
    return Graph(g.n, tuple(full & ~row & ~(1 << v) for v, row in enumerate(g.adj)))


def _component_of(adj: tuple[int, ...] | list[int], start: int, within: int) -> int:
    comp = 1 << start
    frontier = comp
    while frontier:
        nxt = 0
        for v in bits(frontier):
            nxt |= adj[v]
        nxt &= within & ~comp
        comp |= nxt
        frontier = nxt
    return comp


def components(g: Graph, X: int, side: str = "direct") -> list[int]:
    """Components (``side="direct"``) or anticomponents (``"complement"``) of g[X].

    Parts are ordered by smallest member.
    """
    if side == "direct":
        adj = g.adj
    elif side == "complement":
        full = g.full
        adj = [full & ~row & ~(1 << v) for v, row in enumerate(g.adj)]
    else:
        raise GraphError(f"unknown side {side!r}")
    parts = []
    rest = X
    while rest:
        comp = _component_of(adj, lowest(rest), X)
        parts.append(comp)
        rest &= ~comp
    return parts


def is_connected(g: Graph, X: int) -> bool:
    """True iff g[X] is connected; the empty set counts as not connected."""
    if not X:
        return False
    return _component_of(g.adj, lowest(X), X) == X


def is_anticonnected(g: Graph, X: int) -> bool:
    if not X:
        return False
    comp = 1 << lowest(X)
    frontier = comp
    while frontier:
        nxt = 0
        for v in bits(frontier):
            nxt |= X & ~g.adj[v]
        nxt &= ~comp
        comp |= nxt
        frontier = nxt
    return comp == X


def is_complete_to(g: Graph, A: int, B: int) -> bool:
    for v in bits(A):
        if B & ~g.adj[v]:
            return False
    return True


def is_anticomplete_to(g: Graph, A: int, B: int) -> bool:
    return not (g.neighbours(A) & B)


def relation(g: Graph, A: int, B: int) -> SetRelation:
    if not A or not B:
        raise GraphError("relation needs two nonempty sets")
    if A & B:
        raise GraphError("relation needs disjoint sets")
    if is_complete_to(g, A, B):
        return SetRelation.COMPLETE
    if is_anticomplete_to(g, A, B):
        return SetRelation.ANTICOMPLETE
    return SetRelation.MIXED


def vertex_vs_set(g: Graph, v: int, C: int) -> SetRelation:
    if C >> v & 1:
        raise GraphError(f"vertex {v} lies inside the set")
    if not C:
        raise GraphError("set must be nonempty")
    hit = g.adj[v] & C
    if hit == C:
        return SetRelation.COMPLETE
    if not hit:
        return SetRelation.ANTICOMPLETE
    return SetRelation.MIXED


def is_mixed(g: Graph, v: int, C: int) -> bool:
    hit = g.adj[v] & C
    return bool(hit) and hit != C


def attachments(g: Graph, A: int) -> int:
    return g.neighbours(A) & ~A
