"""Splits, fractures, the forcer-driven split construction, homogeneous sets.

The weighted notions take the designated big component ``Y`` as an explicit
argument: a *Y-split* is a split whose C has no attachment of the component
Y of g - (C u D), and a *Y-fracture* is built from a Y-split that no strictly
larger Y-split contains. Passing the weighted big component as ``Y``
recovers the weighted definitions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Optional, Sequence

from .coherence import CoherenceError, WeightMap, big_component, check_coherence
from .detectors import Forcer, find_hole_with_hat, forcers
from .graph import (
    Graph,
    attachments,
    bits,
    components,
    is_anticonnected,
    is_complete_to,
    is_connected,
    is_mixed,
    lowest,
    popcount,
)
from .reports import LemmaReport

# optimalize_split only tries multi-vertex supersets below this many free vertices
EXHAUSTIVE_GROWTH_LIMIT = 20


class DecompositionError(ValueError):
    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


@dataclass(frozen=True)
class Split:
    C: int
    D: int


@dataclass(frozen=True)
class Fracture:
    A: int
    C: int
    D: int
    B: int
    Y: int

    @property
    def split(self) -> Split:
        return Split(self.C, self.D)


@dataclass(frozen=True)
class SplitConstruction:
    X1: int
    X2: int
    X3: int
    R1: int
    R2: int
    S1: int
    S2: int
    S3: int

    COMPLETE_PAIRS = (("X1", "X2"), ("X1", "X3"), ("X2", "X3"), ("R1", "X1"), ("R2", "X2"))
    ANTICOMPLETE_PAIRS = (
        ("R1", "X2"), ("R2", "X1"), ("S1", "X2"), ("S2", "X1"), ("S3", "X1"), ("S3", "X2"),
        ("S1", "R2"), ("S2", "R1"), ("S1", "S2"), ("S1", "S3"), ("S2", "S3"),
    )

    def parts(self) -> dict[str, int]:
        return {k: getattr(self, k) for k in ("X1", "X2", "X3", "R1", "R2", "S1", "S2", "S3")}

    def failures(self, g: Graph) -> list[str]:
        """Names of the partition/pair conditions that do not hold in ``g``."""
        out = []
        parts = self.parts()
        seen = 0
        for name, m in parts.items():
            if seen & m:
                out.append(f"{name} overlaps an earlier part")
            seen |= m
        if seen != g.full:
            out.append("parts do not cover V(G)")
        for a, b in self.COMPLETE_PAIRS:
            if not is_complete_to(g, parts[a], parts[b]):
                out.append(f"({a},{b}) not complete")
        for a, b in self.ANTICOMPLETE_PAIRS:
            if g.neighbours(parts[a]) & parts[b]:
                out.append(f"({a},{b}) not anticomplete")
        return out


@dataclass(frozen=True)
class HomogeneousPartition:
    parts: tuple[int, ...]

    @property
    def k(self) -> int:
        return len(self.parts)


def complete_set(g: Graph, C: int) -> int:
    """All vertices outside C complete to C."""
    return g.common_neighbours(C)


def is_connected_and_anticonnected(g: Graph, X: int) -> bool:
    return is_connected(g, X) and is_anticonnected(g, X)


# ---------------------------------------------------------------- splits


def is_split(g: Graph, C: int, D: int) -> bool:
    """The weight-free part of the split definition."""
    return (popcount(C) >= 2 and not C & D and D != 0
            and is_connected_and_anticonnected(g, C) and D == complete_set(g, C))


def is_Y_split(g: Graph, C: int, D: int, Y: int) -> bool:
    if not is_split(g, C, D) or not Y or Y & (C | D):
        return False
    if Y not in components(g, g.full & ~(C | D)):
        return False
    return not attachments(g, Y) & C


def maximal_complete_pair(g: Graph, seed1: int, seed2: int) -> tuple[int, int]:
    """Grow (seed1, seed2) one vertex at a time to a fixpoint.

    Both sides stay connected, anticonnected and complete to each other.
    Vertices are tried smallest first, side 1 before side 2, restarting after
    every addition.
    """
    if seed1 & seed2:
        raise DecompositionError("seeds overlap")
    for name, s in (("seed1", seed1), ("seed2", seed2)):
        if not is_connected_and_anticonnected(g, s):
            raise DecompositionError(f"{name} is not connected and anticonnected")
    if not is_complete_to(g, seed1, seed2):
        raise DecompositionError("seeds are not complete to each other")
    X = [seed1, seed2]
    grown = True
    while grown:
        grown = False
        for side in (0, 1):
            other = X[1 - side]
            for v in bits(g.full & ~(X[0] | X[1]) & complete_set(g, other)):
                cand = X[side] | 1 << v
                if is_connected_and_anticonnected(g, cand):
                    X[side] = cand
                    grown = True
                    break
            if grown:
                break
    return X[0], X[1]


def split_construction(g: Graph, X1: int, X2: int) -> SplitConstruction:
    """The eight-set partition built around a complete pair (X1, X2)."""
    X12 = X1 | X2
    X3 = complete_set(g, X12)
    R = g.full & ~(X12 | X3)
    R1 = R & complete_set(g, X1)
    R2 = R & complete_set(g, X2)
    rest = R & ~(R1 | R2)
    S1 = S2 = 0
    for comp in components(g, rest):
        hits = attachments(g, comp)
        if hits & X1:
            S1 |= comp
        if hits & X2:
            S2 |= comp
    S3 = rest & ~(S1 | S2)
    return SplitConstruction(X1, X2, X3, R1, R2, S1, S2, S3)


def split_from_construction(g: Graph, sc: SplitConstruction, big: int) -> Split:
    """Split around X1 unless ``big`` meets S1, in which case around X2.

    ``big`` stands for the big component of g - (X1 u X2 u X3 u R1 u R2).
    """
    if big & sc.S1:
        return Split(sc.X2, sc.X1 | sc.X3 | sc.R2)
    return Split(sc.X1, sc.X2 | sc.X3 | sc.R1)


def forcer_split(g: Graph, F: Forcer, big: Optional[int] = None) -> tuple[Split, SplitConstruction]:
    """Weight-free core of the forcer-to-split construction.

    ``big`` defaults to the largest-by-size component of g - T, ties to the
    smallest member.
    """
    if not F.is_valid(g):
        raise DecompositionError("forcer is not valid in g", F)
    X1, X2 = maximal_complete_pair(g, F.mask1, F.mask2)
    sc = split_construction(g, X1, X2)
    bad = sc.failures(g)
    if bad:
        raise DecompositionError("split construction inconsistent: " + "; ".join(bad), sc)
    if big is None:
        T = sc.X1 | sc.X2 | sc.X3 | sc.R1 | sc.R2
        comps = components(g, g.full & ~T)
        big = max(comps, key=lambda c: (popcount(c), -lowest(c))) if comps else 0
    return split_from_construction(g, sc, big), sc


def split_from_forcer(g: Graph, w: WeightMap, eps: Fraction, F: Forcer) -> Split:
    eps = Fraction(eps)
    if 5 * eps > 1:
        raise DecompositionError(f"need 5*eps <= 1, got eps = {eps}")
    report = check_coherence(g, w, eps)
    if not report.ok:
        raise DecompositionError(f"weighted graph is not {eps}-coherent", report)
    hwh = find_hole_with_hat(g)
    if hwh is not None:
        raise DecompositionError("graph contains a hole-with-hat", hwh)
    if not F.is_valid(g):
        raise DecompositionError("forcer is not valid in g", F)
    X1, X2 = maximal_complete_pair(g, F.mask1, F.mask2)
    sc = split_construction(g, X1, X2)
    bad = sc.failures(g)
    if bad:
        raise DecompositionError("split construction inconsistent: " + "; ".join(bad), sc)
    T = sc.X1 | sc.X2 | sc.X3 | sc.R1 | sc.R2
    big = big_component(g, w, eps, g.full & ~T, check=False)
    s = split_from_construction(g, sc, big)
    Y = split_big_component(g, w, eps, s)
    if not is_Y_split(g, s.C, s.D, Y):
        raise DecompositionError("constructed pair is not a split", (s, sc))
    return s


def split_big_component(g: Graph, w: WeightMap, eps: Fraction, s: Split) -> int:
    """Big component of g - (C u D) for a split of a coherent weighted graph."""
    return big_component(g, w, eps, g.full & ~(s.C | s.D), check=False)


def _larger_Y_split(g: Graph, C: int, Y: int, exhaustive: bool = True) -> Optional[int]:
    free = g.full & ~C & ~Y
    for v in bits(free):
        cand = C | 1 << v
        if is_Y_split(g, cand, complete_set(g, cand), Y):
            return cand
    if not exhaustive or popcount(free) > EXHAUSTIVE_GROWTH_LIMIT:
        return None
    members = list(bits(free))
    for size in range(2, len(members) + 1):
        for extra in combinations(members, size):
            cand = C
            for v in extra:
                cand |= 1 << v
            if is_Y_split(g, cand, complete_set(g, cand), Y):
                return cand
    return None


def is_Y_optimal(g: Graph, C: int, Y: int) -> bool:
    return _larger_Y_split(g, C, Y) is None


def optimalize_split(g: Graph, C: int, D: int, Y: int) -> Split:
    if not is_Y_split(g, C, D, Y):
        raise DecompositionError("input is not a Y-split")
    while True:
        bigger = _larger_Y_split(g, C, Y)
        if bigger is None:
            return Split(C, complete_set(g, C))
        C = bigger


def fracture_from_split(g: Graph, s: Split, Y: int) -> Fracture:
    if not is_Y_split(g, s.C, s.D, Y):
        raise DecompositionError("input is not a Y-split")
    if not is_Y_optimal(g, s.C, Y):
        raise DecompositionError("split is not optimal for Y")
    A = B = 0
    for comp in components(g, g.full & ~(s.C | s.D)):
        if attachments(g, comp) & s.C:
            A |= comp
        else:
            B |= comp
    return Fracture(A, s.C, s.D, B, Y)


def fracture_failures(g: Graph, fr: Fracture, check_optimal: bool = True) -> list[str]:
    out = []
    parts = (fr.A, fr.C, fr.D, fr.B)
    total = 0
    for p in parts:
        if total & p:
            out.append("parts overlap")
        total |= p
    if total != g.full:
        out.append("parts do not cover V(G)")
    if not is_Y_split(g, fr.C, fr.D, fr.Y):
        out.append("(C, D) is not a Y-split")
    elif check_optimal and not is_Y_optimal(g, fr.C, fr.Y):
        out.append("(C, D) is not optimal for Y")
    if fr.Y & ~fr.B:
        out.append("Y not inside B")
    rest = g.full & ~(fr.C | fr.D)
    want_A = 0
    for comp in components(g, rest):
        if attachments(g, comp) & fr.C:
            want_A |= comp
    if want_A != fr.A or rest & ~want_A != fr.B:
        out.append("A/B do not follow the attachment rule")
    if g.neighbours(fr.A | fr.C) & fr.B:
        out.append("A u C not anticomplete to B")
    return out


def y_splits(g: Graph) -> list[tuple[int, int]]:
    """Every (C, Y) such that (C, complete_set(C)) is a Y-split."""
    out = []
    full = g.full
    for C in range(1, full + 1):
        if popcount(C) < 4:  # connected and anticonnected needs four vertices
            continue
        D = complete_set(g, C)
        if not D or not is_connected_and_anticonnected(g, C):
            continue
        for Y in components(g, full & ~(C | D)):
            if not attachments(g, Y) & C:
                out.append((C, Y))
    return out


def all_y_fractures(g: Graph) -> list[Fracture]:
    """Every Y-fracture of g, ordered by (C, Y)."""
    pairs = y_splits(g)
    by_y: dict[int, list[int]] = {}
    for C, Y in pairs:
        by_y.setdefault(Y, []).append(C)
    out = []
    for C, Y in pairs:
        if any(C2 != C and C2 & C == C for C2 in by_y[Y]):
            continue
        D = complete_set(g, C)
        A = B = 0
        for comp in components(g, g.full & ~(C | D)):
            if attachments(g, comp) & C:
                A |= comp
            else:
                B |= comp
        out.append(Fracture(A, C, D, B, Y))
    return out


# ---------------------------------------------------------------- fracture checks


def check_fracture_properties(g: Graph, fr: Fracture) -> LemmaReport:
    """Per vertex of A: a non-neighbour among the attachments of Y, and no
    anticomponent of g[D] it is mixed on."""
    report = LemmaReport("fracture_props", graphs_checked=1, weight_free_reformulation=True)
    ys = attachments(g, fr.Y)
    anti = components(g, fr.D, "complement")
    for a in bits(fr.A):
        report.configs_checked += 1
        if not ys & ~g.adj[a]:
            report.add(g, bullet=1, a=a, A=fr.A, C=fr.C, D=fr.D, B=fr.B, Y=fr.Y, attachments_of_Y=ys)
        for X in anti:
            if is_mixed(g, a, X):
                report.add(g, bullet=2, a=a, X=X, A=fr.A, C=fr.C, D=fr.D, B=fr.B, Y=fr.Y)
    return report


def _require_valid(g: Graph, fr: Fracture, name: str) -> None:
    bad = fracture_failures(g, fr)
    if bad:
        raise DecompositionError(f"{name} is not a valid Y-fracture: " + "; ".join(bad), fr)


def crossing_check(g: Graph, fr1: Fracture, fr2: Fracture, validate: bool = True) -> LemmaReport:
    """Either every component of g[A1 u A2] lies in A1 or in A2, or Y1 = Y2."""
    if validate:
        _require_valid(g, fr1, "first fracture")
        _require_valid(g, fr2, "second fracture")
    if not fr1.Y & fr2.Y:
        raise DecompositionError("fulcrums do not intersect")
    report = LemmaReport("crossing", graphs_checked=1, weight_free_reformulation=True)
    report.configs_checked = 1
    stray = [Z for Z in components(g, fr1.A | fr2.A) if Z & ~fr1.A and Z & ~fr2.A]
    if stray and fr1.Y != fr2.Y:
        report.add(g, component=stray[0], fracture1=fr1, fracture2=fr2)
    return report


def small_side_components(g: Graph, fractures: Sequence[Fracture], validate: bool = True) -> LemmaReport:
    """Every component of the union of the small sides misses, and has no
    edge to, at least one of the fulcrums."""
    for i, fr in enumerate(fractures):
        if validate:
            _require_valid(g, fr, f"fracture {i}")
        for j in range(i):
            if not fr.Y & fractures[j].Y:
                raise DecompositionError(f"fulcrums of fractures {j} and {i} do not intersect")
    report = LemmaReport("small_side", graphs_checked=1, weight_free_reformulation=True)
    union = 0
    for fr in fractures:
        union |= fr.A
    fulcrums = list(dict.fromkeys(fr.Y for fr in fractures))
    for Z in components(g, union):
        report.configs_checked += 1
        near = g.neighbours(Z) | Z
        if not any(not Y & near for Y in fulcrums):
            report.add(g, component=Z, fulcrums=tuple(fulcrums))
    return report


# ---------------------------------------------------------------- homogeneous sets


def is_homogeneous(g: Graph, X: int, Z: Optional[int] = None) -> bool:
    if Z is None:
        Z = g.full
    for v in bits(Z & ~X):
        if is_mixed(g, v, X):
            return False
    return True


def homogeneous_closure(g: Graph, S: int, Z: Optional[int] = None) -> int:
    """Smallest homogeneous set of g[Z] containing S."""
    if Z is None:
        Z = g.full
    X = S
    while True:
        add = 0
        for v in bits(Z & ~X):
            if is_mixed(g, v, X):
                add |= 1 << v
        if not add:
            return X
        X |= add


def homogeneous_partition(g: Graph, Z: int) -> HomogeneousPartition:
    if popcount(Z) < 2:
        raise DecompositionError("Z needs at least two vertices")
    if not is_connected(g, Z):
        raise DecompositionError("g[Z] is not connected")
    if not is_anticonnected(g, Z):
        raise DecompositionError("g[Z] is not anticonnected")
    parts: list[int] = []
    covered = 0
    for v in bits(Z):
        if covered >> v & 1:
            continue
        W = 1 << v
        for u in bits(Z & ~(1 << v)):
            cl = homogeneous_closure(g, 1 << v | 1 << u, Z)
            if cl != Z:
                W |= cl
        if W == Z or not is_homogeneous(g, W, Z):
            raise DecompositionError("maximal proper homogeneous sets fail to be proper", W)
        if W & covered:
            raise DecompositionError("maximal proper homogeneous sets overlap", W)
        parts.append(W)
        covered |= W
    if covered != Z or len(parts) < 2:
        raise DecompositionError("maximal proper homogeneous sets do not partition Z")
    return HomogeneousPartition(tuple(parts))


def is_guarded(g: Graph) -> tuple[bool, Optional[Forcer]]:
    """(True, None) if every forcer has a constituent path inside a proper
    homogeneous set; otherwise (False, first uncovered forcer)."""
    for F in forcers(g):
        if homogeneous_closure(g, F.mask1) != g.full:
            continue
        if homogeneous_closure(g, F.mask2) != g.full:
            continue
        return False, F
    return True, None


def fracture_pipeline(g: Graph, w: WeightMap, eps: Fraction, F: Forcer) -> tuple[Split, Split, Fracture]:
    """Forcer -> split -> optimal split -> fracture on a coherent instance."""
    s = split_from_forcer(g, w, eps, F)
    Y = split_big_component(g, w, eps, s)
    opt = optimalize_split(g, s.C, s.D, Y)
    Y2 = split_big_component(g, w, eps, opt)
    if Y2 != Y:
        raise CoherenceError("big component moved while optimising the split")
    return s, opt, fracture_from_split(g, opt, Y)
