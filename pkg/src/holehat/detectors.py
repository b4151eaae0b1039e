"""Exact searches for induced structures: holes, holes-with-hats, forcers,
odd holes/antiholes, maximum cliques and stable sets.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, Optional

from .graph import Graph, bits, complement, lowest, mask_of, popcount


@dataclass(frozen=True)
class HoleWithHat:
    hole: tuple[int, ...]
    hat: int

    @property
    def vertices(self) -> int:
        return mask_of(self.hole) | 1 << self.hat

    def is_valid(self, g: Graph) -> bool:
        hole = self.hole
        k = len(hole)
        if k < 4 or len(set(hole)) != k or self.hat in hole:
            return False
        if not is_induced_cycle(g, hole):
            return False
        hits = [i for i, v in enumerate(hole) if g.has_edge(self.hat, v)]
        if len(hits) != 2:
            return False
        i, j = hits
        return j - i == 1 or (i == 0 and j == k - 1)


@dataclass(frozen=True)
class Forcer:
    path1: tuple[int, int, int, int]
    path2: tuple[int, int, int, int]

    @property
    def vertices(self) -> int:
        return mask_of(self.path1) | mask_of(self.path2)

    @property
    def mask1(self) -> int:
        return mask_of(self.path1)

    @property
    def mask2(self) -> int:
        return mask_of(self.path2)

    def is_valid(self, g: Graph) -> bool:
        verts = self.path1 + self.path2
        if len(set(verts)) != 8 or any(not 0 <= v < g.n for v in verts):
            return False
        if not (is_induced_path(g, self.path1) and is_induced_path(g, self.path2)):
            return False
        m1, m2 = self.mask1, self.mask2
        if any((g.adj[v] & m2) != m2 for v in self.path1):
            return False
        edges = sum(popcount(g.adj[v] & (m1 | m2)) for v in verts) // 2
        return edges == 22


@dataclass(frozen=True)
class PerfectnessWitness:
    verdict: bool
    cycle: Optional[tuple[int, ...]] = None
    # "hole" when the cycle is induced in g, "antihole" when induced in the complement
    side: Optional[str] = None


def is_induced_cycle(g: Graph, cycle: tuple[int, ...]) -> bool:
    k = len(cycle)
    members = mask_of(cycle)
    if popcount(members) != k or k < 3:
        return False
    for i, v in enumerate(cycle):
        want = 1 << cycle[i - 1] | 1 << cycle[(i + 1) % k]
        if g.adj[v] & members != want:
            return False
    return True


def is_induced_path(g: Graph, path: tuple[int, ...]) -> bool:
    k = len(path)
    members = mask_of(path)
    if popcount(members) != k:
        return False
    for i, v in enumerate(path):
        want = 0
        if i > 0:
            want |= 1 << path[i - 1]
        if i < k - 1:
            want |= 1 << path[i + 1]
        if g.adj[v] & members != want:
            return False
    return True


def induced_cycles(g: Graph, min_length: int = 4, within: Optional[int] = None) -> Iterator[tuple[int, ...]]:
    """Every induced cycle of length >= ``min_length``, each exactly once.

    A cycle is reported starting at its smallest vertex, in the direction
    whose second vertex is smaller than its last.
    """
    adj = g.adj
    if within is None:
        within = g.full
    for s in bits(within):
        higher = within & ~((2 << s) - 1)
        for p1 in bits(adj[s] & higher):
            stack = [[s, p1]]
            while stack:
                path = stack.pop()
                last = path[-1]
                used = mask_of(path)
                # x may not touch any interior vertex (p1 .. last-1)
                interior = used & ~(1 << s) & ~(1 << last)
                for x in bits(adj[last] & higher & ~used):
                    if adj[x] & interior:
                        continue
                    if adj[x] >> s & 1:
                        if len(path) + 1 >= max(min_length, 4) and x > p1:
                            yield tuple(path + [x])
                        continue
                    stack.append(path + [x])


def holes(g: Graph) -> list[tuple[int, ...]]:
    """All holes, sorted by (length, sorted vertex set)."""
    found = list(induced_cycles(g, 4))
    found.sort(key=lambda c: (len(c), sorted(c)))
    return found


def hats_of(g: Graph, hole: tuple[int, ...]) -> list[int]:
    members = mask_of(hole)
    out = []
    for v in bits(g.full & ~members):
        hit = g.adj[v] & members
        if popcount(hit) == 2:
            a = lowest(hit)
            b = lowest(hit ^ 1 << a)
            if g.has_edge(a, b):
                out.append(v)
    return out


def find_hole_with_hat(g: Graph) -> Optional[HoleWithHat]:
    for hole in holes(g):
        hats = hats_of(g, hole)
        if hats:
            return HoleWithHat(hole, hats[0])
    return None


def is_hole_with_hat_free(g: Graph) -> bool:
    for hole in induced_cycles(g, 4):
        if hats_of(g, hole):
            return False
    return True


def find_house(g: Graph) -> Optional[HoleWithHat]:
    """Least hole-with-hat whose hole has length four."""
    for hole in holes(g):
        if len(hole) > 4:
            break
        hats = hats_of(g, hole)
        if hats:
            return HoleWithHat(hole, hats[0])
    return None


def induced_p4_sets(g: Graph) -> list[tuple[int, int, int, int]]:
    """Every induced P4, as its lexicographically least path ordering."""
    out = []
    verts = list(range(g.n))
    adj = g.adj
    for quad in combinations(verts, 4):
        m = mask_of(quad)
        degs = [popcount(adj[v] & m) for v in quad]
        if sorted(degs) != [1, 1, 2, 2]:
            continue
        ends = [v for v, d in zip(quad, degs) if d == 1]
        start = min(ends)
        path = [start]
        prev_mask = 1 << start
        while len(path) < 4:
            nxt = adj[path[-1]] & m & ~prev_mask
            if not nxt:
                break
            v = lowest(nxt)
            path.append(v)
            prev_mask |= 1 << v
        if len(path) == 4:
            out.append(tuple(path))
    return out


def forcers(g: Graph) -> Iterator[Forcer]:
    """All forcers, each once, ordered by (sorted vertex set, path tuples)."""
    if g.n < 8:
        return iter(())
    p4s = induced_p4_sets(g)
    found = []
    for i, p in enumerate(p4s):
        mp = mask_of(p)
        common = g.common_neighbours(mp)
        for q in p4s[i + 1:]:
            mq = mask_of(q)
            if mq & ~common:
                continue
            a, b = (p, q) if p < q else (q, p)
            found.append(Forcer(a, b))
    found.sort(key=lambda f: (sorted(f.path1 + f.path2), f.path1, f.path2))
    return iter(found)


def find_forcer(g: Graph) -> Optional[Forcer]:
    return next(forcers(g), None)


def _odd_cycle(g: Graph) -> Optional[tuple[int, ...]]:
    best = None
    for c in induced_cycles(g, 5):
        if len(c) % 2 == 1:
            key = (len(c), sorted(c))
            if best is None or key < best[0]:
                best = (key, c)
    return None if best is None else best[1]


def is_perfect(g: Graph) -> PerfectnessWitness:
    c = _odd_cycle(g)
    if c is not None:
        return PerfectnessWitness(False, c, "hole")
    c = _odd_cycle(complement(g))
    if c is not None:
        return PerfectnessWitness(False, c, "antihole")
    return PerfectnessWitness(True)


def obstructions(g: Graph, within: Optional[int] = None) -> list[int]:
    """Vertex masks of all odd holes and odd antiholes inside ``within``."""
    out = set()
    for h in (g, complement(g)):
        for c in induced_cycles(h, 5, within):
            if len(c) % 2:
                out.add(mask_of(c))
    return sorted(out)


def _max_clique(adj, cand: int, floor: int = 0) -> int:
    """Maximum clique inside ``cand`` (branch and bound, colouring bound).

    Only cliques strictly larger than ``floor`` vertices are searched for;
    returns 0 when none exists.
    """
    best = [0, floor]

    def colour_order(P):
        order = []
        bounds = []
        uncoloured = P
        colour = 0
        while uncoloured:
            colour += 1
            avail = uncoloured
            while avail:
                v = lowest(avail)
                avail &= ~adj[v] & ~(1 << v)
                uncoloured &= ~(1 << v)
                order.append(v)
                bounds.append(colour)
        return order, bounds

    def expand(R, size, P):
        order, bounds = colour_order(P)
        for i in range(len(order) - 1, -1, -1):
            if size + bounds[i] <= best[1]:
                return
            v = order[i]
            newP = P & adj[v]
            if newP:
                expand(R | 1 << v, size + 1, newP)
            elif size + 1 > best[1]:
                best[0] = R | 1 << v
                best[1] = size + 1
            P &= ~(1 << v)

    if cand:
        expand(0, 0, cand)
    return best[0]


def clique_number(g: Graph, within: Optional[int] = None) -> int:
    if within is None:
        within = g.full
    return popcount(_max_clique(g.adj, within))


def extremal_set(g: Graph, kind: str = "clique", within: Optional[int] = None) -> int:
    """Maximum clique or stable set; among maxima, the least bitmask."""
    if kind == "stable":
        h = complement(g)
    elif kind == "clique":
        h = g
    else:
        raise ValueError(f"unknown kind {kind!r}")
    adj = h.adj
    allowed = h.full if within is None else within
    omega = popcount(_max_clique(adj, allowed))
    forced = 0
    for v in reversed(list(bits(allowed))):
        need = omega - popcount(forced)
        if need == 0:
            break
        cand = allowed & ~(1 << v) & ~forced
        for u in bits(forced):
            cand &= adj[u]
        if popcount(_max_clique(adj, cand, need - 1)) >= need:
            allowed &= ~(1 << v)
        else:
            forced |= 1 << v
    return forced


def max_perfect_subsets(g: Graph, restrict: Optional[int] = None) -> list[int]:
    """Inclusion-maximal ``S`` within ``restrict`` with g[S] perfect, by mask order."""
    if restrict is None:
        restrict = g.full
    obs = obstructions(g, restrict)
    if not obs:
        return [restrict]
    members = list(bits(restrict))
    k = len(members)
    perfect = bytearray(1 << k)
    local_obs = []
    for o in obs:
        lm = 0
        for i, v in enumerate(members):
            if o >> v & 1:
                lm |= 1 << i
        local_obs.append(lm)
    for s in range(1 << k):
        perfect[s] = not any(o & s == o for o in local_obs)
    out = []
    for s in range(1 << k):
        if not perfect[s]:
            continue
        if all(not perfect[s | 1 << i] for i in range(k) if not s >> i & 1):
            out.append(mask_of(members[i] for i in range(k) if s >> i & 1))
    out.sort()
    return out
