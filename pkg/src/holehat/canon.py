"""Canonical labelling and isomorph-free generation of small graphs.

Canonical form: colour refinement to an equitable ordered partition, then
individualise-and-refine over the first smallest non-singleton cell; the
leaf whose relabelled upper-triangle code is largest wins. Only one vertex
per twin class of a cell is individualised.
"""

from __future__ import annotations

import random
from typing import Callable, Optional

from .graph import Graph, bits, popcount


def upper_code(adj: tuple[int, ...] | list[int], n: int) -> int:
    """Upper triangle read column by column (graph6 bit order) as an integer."""
    code = 0
    for j in range(1, n):
        row = adj[j]
        for i in range(j):
            code = code << 1 | (row >> i & 1)
    return code


def _refine(adj, cells: list[list[int]]) -> list[list[int]]:
    changed = True
    while changed:
        changed = False
        masks = []
        for c in cells:
            m = 0
            for v in c:
                m |= 1 << v
            masks.append(m)
        out = []
        for c in cells:
            if len(c) == 1:
                out.append(c)
                continue
            sig = {v: tuple(popcount(adj[v] & m) for m in masks) for v in c}
            keys = sorted(set(sig.values()))
            if len(keys) == 1:
                out.append(c)
                continue
            changed = True
            for k in keys:
                out.append([v for v in c if sig[v] == k])
        cells = out
    return cells


def _relabelled_code(adj, n: int, order: list[int]) -> int:
    pos = [0] * n
    for i, v in enumerate(order):
        pos[v] = i
    rows = [0] * n
    for v in range(n):
        r = 0
        for u in bits(adj[v]):
            r |= 1 << pos[u]
        rows[pos[v]] = r
    return upper_code(rows, n)


def canonical_labelling(g: Graph) -> list[int]:
    """Permutation ``perm`` (old -> new) such that ``g.relabel(perm)`` is canonical."""
    n = g.n
    if n == 0:
        return []
    adj = g.adj
    best_code = -1
    best_order: list[int] = list(range(n))

    def search(cells):
        nonlocal best_code, best_order
        cells = _refine(adj, cells)
        if len(cells) == n:
            order = [c[0] for c in cells]
            code = _relabelled_code(adj, n, order)
            if code > best_code:
                best_code = code
                best_order = order
            return
        size = min(len(c) for c in cells if len(c) > 1)
        idx = next(i for i, c in enumerate(cells) if len(c) == size)
        cell = cells[idx]
        tried: list[int] = []
        for v in cell:
            # swapping twins is an automorphism fixing the partition: same subtree
            if any(adj[u] & ~(1 << v) == adj[v] & ~(1 << u) for u in tried):
                continue
            tried.append(v)
            rest = [u for u in cell if u != v]
            search(cells[:idx] + [[v], rest] + cells[idx + 1:])

    search([list(range(n))])
    perm = [0] * n
    for i, v in enumerate(best_order):
        perm[v] = i
    return perm


def canonical_form(g: Graph) -> Graph:
    return g.relabel(canonical_labelling(g))


def canonical_code(g: Graph) -> int:
    return upper_code(canonical_form(g).adj, g.n)


def graph_from_code(n: int, code: int) -> Graph:
    rows = [0] * n
    k = n * (n - 1) // 2 - 1
    for j in range(1, n):
        for i in range(j):
            if code >> k & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k -= 1
    return Graph(n, tuple(rows))


Filter = Callable[[Graph], bool]


def generate_classes(n: int, keep: Optional[Filter] = None, seed: Optional[int] = None) -> list[Graph]:
    """One canonical graph per isomorphism class on ``n`` vertices, by code.

    ``keep`` must be hereditary (closed under vertex deletion): only classes
    passing it are extended. ``seed`` relabels every candidate by a random
    permutation before canonicalising, which must not change the result.
    """
    rng = random.Random(seed) if seed is not None else None
    layer = {0: Graph(0, ())}
    for m in range(1, n + 1):
        nxt: dict[int, Graph] = {}
        rejected: set[int] = set()
        for parent in layer.values():
            for attach in range(1 << (m - 1)):
                rows = list(parent.adj) + [attach]
                for u in bits(attach):
                    rows[u] |= 1 << (m - 1)
                cand = Graph(m, tuple(rows))
                if rng is not None:
                    perm = list(range(m))
                    rng.shuffle(perm)
                    cand = cand.relabel(perm)
                canon = canonical_form(cand)
                code = upper_code(canon.adj, m)
                if code in nxt or code in rejected:
                    continue
                if keep is not None and not keep(canon):
                    rejected.add(code)
                    continue
                nxt[code] = canon
        layer = nxt
    return [layer[c] for c in sorted(layer)]
