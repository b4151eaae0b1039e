"""Weighted graphs, the three coherence conditions, and big components.

All weights are exact ``Fraction`` values. Condition 3 is decided by a full
subset scan over the positive-weight vertices, done on integer-scaled
weights so that every comparison stays exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Sequence

import numpy as np

from .graph import Graph, GraphError, bits, components, mask_of

WeightMap = Sequence[Fraction]

VERTEX = "vertex-weight"
NEIGHBOURHOOD = "neighbourhood-weight"
ANTICOMPLETE = "anticomplete-pair"


class CoherenceError(ValueError):
    pass


@dataclass(frozen=True)
class CoherenceViolation:
    condition: str
    sets: tuple[int, ...]


@dataclass
class CoherenceReport:
    eps: Fraction
    violations: list[CoherenceViolation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def weight(w: WeightMap, mask: int) -> Fraction:
    return sum((w[v] for v in bits(mask)), Fraction(0))


def uniform_weights(n: int, support: int | None = None) -> list[Fraction]:
    if support is None:
        support = (1 << n) - 1
    k = bin(support).count("1")
    return [Fraction(1, k) if support >> v & 1 else Fraction(0) for v in range(n)]


def _validate(g: Graph, w: WeightMap, normalized: bool = True) -> None:
    if len(w) != g.n:
        raise CoherenceError(f"weight map has {len(w)} entries for {g.n} vertices")
    if any(x < 0 for x in w):
        raise CoherenceError("negative weight")
    if normalized and sum(w, Fraction(0)) != 1:
        raise CoherenceError(f"weights sum to {sum(w, Fraction(0))}, expected 1")


def anticomplete_violation(g: Graph, w: WeightMap, eps: Fraction, within: int | None = None) -> tuple[int, int] | None:
    """Least-``A`` disjoint anticomplete pair (A, B) inside ``within`` with
    both weights >= eps, or None.

    Only positive-weight vertices matter; ``B`` is taken maximal, i.e. the
    positive-weight part of ``within`` minus A and its neighbours.
    """
    if within is None:
        within = g.full
    support = [v for v in bits(within) if w[v] > 0]
    k = len(support)
    if k == 0:
        return None
    scale = lcm(*(x.denominator for x in w), Fraction(eps).denominator)
    iw = [int(w[v] * scale) for v in support]
    threshold = int(Fraction(eps) * scale)
    if threshold <= 0:
        threshold = 0
    local = {v: i for i, v in enumerate(support)}
    nb = [0] * k
    for i, v in enumerate(support):
        m = 0
        for u in bits(g.adj[v]):
            j = local.get(u)
            if j is not None:
                m |= 1 << j
        nb[i] = m
    dtype = np.int64 if sum(iw) < 2**62 else object
    size = 1 << k
    wsum = np.zeros(size, dtype=dtype)
    nsum = np.zeros(size, dtype=np.int64 if k <= 62 else object)
    for i in range(k):
        lo, hi = 1 << i, 2 << i
        wsum[lo:hi] = wsum[:lo] + iw[i]
        nsum[lo:hi] = nsum[:lo] | nb[i]
    masks = np.arange(size, dtype=nsum.dtype)
    full = size - 1
    rest = full & ~(masks | nsum)
    bad = (wsum >= threshold) & (wsum[rest.astype(np.int64)] >= threshold)
    hits = np.flatnonzero(bad)
    if hits.size == 0:
        return None
    a_local = int(hits[0])
    b_local = int(rest[a_local])
    to_global = lambda m: mask_of(support[i] for i in bits(m))  # noqa: E731
    return to_global(a_local), to_global(b_local)


def check_coherence(g: Graph, w: WeightMap, eps: Fraction) -> CoherenceReport:
    eps = Fraction(eps)
    if eps <= 0:
        raise CoherenceError("eps must be positive")
    _validate(g, w)
    report = CoherenceReport(eps)
    for v in range(g.n):
        if w[v] >= eps:
            report.violations.append(CoherenceViolation(VERTEX, (1 << v,)))
    for v in range(g.n):
        if weight(w, g.adj[v]) >= eps:
            report.violations.append(CoherenceViolation(NEIGHBOURHOOD, (1 << v, g.adj[v])))
    pair = anticomplete_violation(g, w, eps)
    if pair is not None:
        report.violations.append(CoherenceViolation(ANTICOMPLETE, pair))
    return report


def replay_violation(g: Graph, w: WeightMap, eps: Fraction, viol: CoherenceViolation) -> bool:
    """True iff the recorded witness still violates its condition."""
    if viol.condition == VERTEX:
        (vm,) = viol.sets
        return w[vm.bit_length() - 1] >= eps
    if viol.condition == NEIGHBOURHOOD:
        vm, nm = viol.sets
        return g.adj[vm.bit_length() - 1] == nm and weight(w, nm) >= eps
    A, B = viol.sets
    return (not A & B and not g.neighbours(A) & B
            and weight(w, A) >= eps and weight(w, B) >= eps)


def big_component(g: Graph, w: WeightMap, eps: Fraction, X: int | None = None, check: bool = True) -> int:
    """The unique component Y of g[X] with w(Y) > w(X) - eps."""
    eps = Fraction(eps)
    if eps <= 0:
        raise CoherenceError("eps must be positive")
    if X is None:
        X = g.full
    _validate(g, w, normalized=False)
    wx = weight(w, X)
    if wx < 3 * eps:
        raise CoherenceError(f"w(X) = {wx} is below 3*eps = {3 * eps}")
    if check:
        pair = anticomplete_violation(g, w, eps, X)
        if pair is not None:
            raise CoherenceError(
                f"anticomplete pair {pair[0]:#x}, {pair[1]:#x} inside X both weigh at least eps")
    heavy = [Y for Y in components(g, X) if weight(w, Y) > wx - eps]
    if len(heavy) != 1:
        raise GraphError(
            f"found {len(heavy)} components heavier than w(X) - eps; "
            "the anticomplete-pair hypothesis cannot have held")
    return heavy[0]
