"""Exhaustive small-graph verification.

Graphs come from isomorph-free generation (one canonical graph per class);
each lemma checker walks every admissible configuration of one graph and
returns a per-graph :class:`LemmaReport` that the driver merges.
"""

from __future__ import annotations

import logging
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from multiprocessing import Pool
from typing import Callable, Iterable, Iterator, Optional

from . import decomposition as dec
from .canon import generate_classes, upper_code
from .coherence import (
    anticomplete_violation,
    check_coherence,
    uniform_weights,
    weight,
)
from .detectors import (
    clique_number,
    find_forcer,
    find_house,
    is_hole_with_hat_free,
    is_perfect,
)
from .formats import to_graph6
from .graph import (
    Graph,
    GraphError,
    attachments,
    bits,
    build_graph,
    complement,
    components,
    is_anticonnected,
    is_connected,
    lowest,
    popcount,
)
from .reports import LEMMA_IDS, REFORMULATED, VARIANT_IDS, LemmaReport

log = logging.getLogger(__name__)

EXHAUSTIVE_MAX_N = 10

HEREDITARY_FILTERS: dict[str, Callable[[Graph], bool]] = {
    "hole-with-hat-free": is_hole_with_hat_free,
    "forcer-free": lambda g: find_forcer(g) is None,
    "house-free": lambda g: find_house(g) is None,
    "perfect": lambda g: is_perfect(g).verdict,
}
FILTER_ALIASES = {
    "hwh-free": "hole-with-hat-free",
    "hole-with-hat-free": "hole-with-hat-free",
    "forcer-free": "forcer-free",
    "house-free": "house-free",
    "perfect": "perfect",
    "connected": "connected",
}


class HarnessError(ValueError):
    pass


@dataclass(frozen=True)
class EnumSpec:
    n: int
    filters: frozenset = frozenset()
    canonical: bool = True
    # smallest vertex count for cumulative runs; None means exactly n
    min_n: Optional[int] = None

    def __post_init__(self):
        unknown = set(self.filters) - set(FILTER_ALIASES.values())
        if unknown:
            raise HarnessError(f"unknown filters {sorted(unknown)}")

    @classmethod
    def make(cls, n: int, filters: Iterable[str] = (), canonical: bool = True,
             min_n: Optional[int] = None) -> "EnumSpec":
        resolved = set()
        for f in filters:
            if f not in FILTER_ALIASES:
                raise HarnessError(f"unknown filter {f!r}")
            resolved.add(FILTER_ALIASES[f])
        return cls(n, frozenset(resolved), canonical, min_n)

    @property
    def sizes(self) -> range:
        lo = self.n if self.min_n is None else self.min_n
        return range(lo, self.n + 1)


def _keep(filters: frozenset) -> Optional[Callable[[Graph], bool]]:
    checks = [HEREDITARY_FILTERS[f] for f in sorted(filters) if f in HEREDITARY_FILTERS]
    if not checks:
        return None
    return lambda g: all(c(g) for c in checks)


@lru_cache(maxsize=None)
def _classes(n: int, hereditary: frozenset) -> tuple[Graph, ...]:
    return tuple(generate_classes(n, _keep(hereditary)))


def enumerate_graphs(spec: EnumSpec, seed: Optional[int] = None) -> Iterator[Graph]:
    """Graphs on each size in ``spec.sizes`` passing the filters.

    With ``canonical`` one graph per isomorphism class, in canonical-code
    order; otherwise every labelled graph in code order. ``seed`` shuffles
    labels during generation (the output must not depend on it).
    """
    if spec.n > EXHAUSTIVE_MAX_N:
        raise HarnessError(f"exhaustive enumeration is capped at n = {EXHAUSTIVE_MAX_N}")
    hereditary = frozenset(f for f in spec.filters if f in HEREDITARY_FILTERS)
    need_connected = "connected" in spec.filters
    for n in spec.sizes:
        if spec.canonical:
            if seed is None:
                graphs: Iterable[Graph] = _classes(n, hereditary)
            else:
                graphs = generate_classes(n, _keep(hereditary), seed=seed)
        else:
            keep = _keep(hereditary)
            graphs = (g for g in _labelled(n) if keep is None or keep(g))
        for g in graphs:
            if need_connected and n > 0 and not is_connected(g, g.full):
                continue
            yield g


def _labelled(n: int) -> Iterator[Graph]:
    pairs = [(i, j) for j in range(1, n) for i in range(j)]
    m = len(pairs)
    for code in range(1 << m):
        edges = [pairs[k] for k in range(m) if code >> (m - 1 - k) & 1]
        yield build_graph(n, edges)


# ---------------------------------------------------------------- per-graph tables


class Tables:
    """Per-mask connectivity and neighbourhood tables for one small graph."""

    def __init__(self, g: Graph):
        self.g = g
        n = g.n
        size = 1 << n
        full = g.full
        adj = g.adj
        nbr = [0] * size
        common = [full] * size
        for m in range(1, size):
            low = m & -m
            v = low.bit_length() - 1
            nbr[m] = nbr[m ^ low] | adj[v]
            common[m] = common[m ^ low] & adj[v]
        self.nbr = nbr
        # vertices outside m complete to m
        self.cs = [common[m] & ~m for m in range(size)]
        self.conn = bytearray(size)
        self.anti = bytearray(size)
        for m in range(1, size):
            self.conn[m] = is_connected(g, m)
            self.anti[m] = is_anticonnected(g, m)
        self.connected_sets = [m for m in range(1, size) if self.conn[m]]

    def connected_within(self, R: int) -> list[int]:
        return [m for m in self.connected_sets if not m & ~R]


def _submasks_nonempty(mask: int) -> Iterator[int]:
    sub = mask
    while sub:
        yield sub
        sub = (sub - 1) & mask


def _nonadjacent_split(g: Graph, S: int, v: int) -> tuple[int, int]:
    """Nonadjacent s1, s2 in S with v ~ s1 and v !~ s2."""
    ins = S & g.adj[v]
    outs = S & ~g.adj[v]
    for s1 in bits(ins):
        cand = outs & ~g.adj[s1]
        if cand:
            return s1, lowest(cand)
    raise GraphError("no nonadjacent split pair")


def check_wiggly1(g: Graph, t: Tables) -> LemmaReport:
    rep = LemmaReport("wiggly1", graphs_checked=1)
    full = g.full
    for C in range(1, full + 1):
        if not t.anti[C]:
            continue
        for D in _submasks_nonempty(t.cs[C]):
            if lowest(D) < lowest(C) or not t.anti[D]:
                continue
            for v in bits(full & ~(C | D)):
                rep.configs_checked += 1
                hc = g.adj[v] & C
                hd = g.adj[v] & D
                if hc and hc != C and hd and hd != D:
                    c1, c2 = _nonadjacent_split(g, C, v)
                    d1, d2 = _nonadjacent_split(g, D, v)
                    rep.add(g, C=C, D=D, v=v, c1=c1, c2=c2, d1=d1, d2=d2)
    return rep


def _p_sets(g: Graph, t: Tables, C: int) -> list[int]:
    """Connected P avoiding C and everything complete to C, touching N(C)."""
    R = g.full & ~(C | t.cs[C])
    touch = t.nbr[C]
    return [P for P in t.connected_within(R) if P & touch]


def check_wiggly2(g: Graph, t: Tables) -> LemmaReport:
    rep = LemmaReport("wiggly2", graphs_checked=1)
    adj = g.adj
    for C in range(1, g.full + 1):
        if not t.conn[C]:
            continue
        Ps = _p_sets(g, t, C)
        if not Ps:
            continue
        nc = t.nbr[C]
        for D in [0, *_submasks_nonempty(t.cs[C])]:
            for P in Ps:
                mixed = list(bits(P & nc))
                for v in bits(P):
                    rep.configs_checked += 1
                    need = adj[v] & D
                    if not any(need & ~adj[u] == 0 for u in mixed):
                        rep.add(g, C=C, D=D, P=P, v=v)
    return rep


def check_wiggly3(g: Graph, t: Tables, anticonnected_C: bool = False) -> LemmaReport:
    rep = LemmaReport("wiggly3_anticonnected" if anticonnected_C else "wiggly3", graphs_checked=1)
    adj = g.adj
    for C in range(1, g.full + 1):
        if not t.conn[C] or (anticonnected_C and not t.anti[C]):
            continue
        Ps = _p_sets(g, t, C)
        if not Ps:
            continue
        nc = t.nbr[C]
        for D in _submasks_nonempty(t.cs[C]):
            if not t.anti[D]:
                continue
            nd = t.nbr[D]
            for P in Ps:
                rep.configs_checked += 1
                if not P & nd:
                    continue
                if not any(adj[x] & D == D for x in bits(P & nc)):
                    rep.add(g, C=C, D=D, P=P)
    return rep


def check_wiggly4(g: Graph, t: Tables) -> LemmaReport:
    rep = LemmaReport("wiggly4", graphs_checked=1)
    adj = g.adj
    for C in range(1, g.full + 1):
        if not (t.conn[C] and t.anti[C]):
            continue
        Ps = _p_sets(g, t, C)
        if not Ps:
            continue
        for D in _submasks_nonempty(t.cs[C]):
            if not t.anti[D]:
                continue
            for P in Ps:
                rep.configs_checked += 1
                for x in bits(P):
                    hit = adj[x] & D
                    if hit and hit != D:
                        rep.add(g, C=C, D=D, P=P, x=x)
                        break
    return rep


def check_wiggly5(g: Graph, t: Tables) -> LemmaReport:
    rep = LemmaReport("wiggly5", graphs_checked=1)
    full = g.full
    for C in range(1, full + 1):
        if not (t.conn[C] and t.anti[C]):
            continue
        Ps = None
        for D in _submasks_nonempty(t.cs[C]):
            if lowest(D) < lowest(C) or not (t.conn[D] and t.anti[D]):
                continue
            if Ps is None:
                Ps = _p_sets(g, t, C)
            Qs = _p_sets(g, t, D)
            for P in Ps:
                for Q in Qs:
                    rep.configs_checked += 1
                    if P & Q:
                        rep.add(g, C=C, D=D, P=P, Q=Q)
    return rep


def check_fracture_props(g: Graph, t: Tables, attached_only: bool = False) -> LemmaReport:
    name = "fracture_props_attached" if attached_only else "fracture_props"
    rep = LemmaReport(name, graphs_checked=1, weight_free_reformulation=True)
    for fr in dec.all_y_fractures(g):
        if attached_only and not attachments(g, fr.Y):
            continue
        sub = dec.check_fracture_properties(g, fr)
        rep.configs_checked += sub.configs_checked
        rep.violations.extend(sub.violations)
    return rep


def check_crossing(g: Graph, t: Tables) -> LemmaReport:
    rep = LemmaReport("crossing", graphs_checked=1, weight_free_reformulation=True)
    frs = dec.all_y_fractures(g)
    for i, f1 in enumerate(frs):
        for f2 in frs[i:]:
            if not f1.Y & f2.Y:
                continue
            sub = dec.crossing_check(g, f1, f2, validate=False)
            rep.configs_checked += sub.configs_checked
            rep.violations.extend(sub.violations)
    return rep


def check_small_side(g: Graph, t: Tables) -> LemmaReport:
    """Families of Y-fractures whose fulcrums share a vertex y, for each y."""
    rep = LemmaReport("small_side", graphs_checked=1, weight_free_reformulation=True)
    frs = dec.all_y_fractures(g)
    seen = set()
    for y in range(g.n):
        family = tuple(fr for fr in frs if fr.Y >> y & 1)
        if not family or family in seen:
            continue
        seen.add(family)
        sub = dec.small_side_components(g, family, validate=False)
        rep.configs_checked += sub.configs_checked
        rep.violations.extend(sub.violations)
    return rep


def maximal_proper_homogeneous_bruteforce(g: Graph, Z: int) -> list[int]:
    """Subset-enumeration oracle: inclusion-maximal homogeneous X != Z in g[Z]."""
    homog = [X for X in _submasks_nonempty(Z) if X != Z and dec.is_homogeneous(g, X, Z)]
    hs = set(homog)
    out = []
    for X in homog:
        if not any(Y != X and Y & X == X for Y in hs):
            out.append(X)
    return sorted(out)


def check_homog_partition(g: Graph, t: Tables) -> LemmaReport:
    rep = LemmaReport("homog_partition", graphs_checked=1)
    for Z in range(1, g.full + 1):
        if popcount(Z) < 2 or not (t.conn[Z] and t.anti[Z]):
            continue
        rep.configs_checked += 1
        parts = maximal_proper_homogeneous_bruteforce(g, Z)
        union = 0
        disjoint = True
        for X in parts:
            if union & X:
                disjoint = False
            union |= X
        if not disjoint or union != Z or len(parts) < 2:
            rep.add(g, Z=Z, parts=tuple(parts), reason="not a partition")
            continue
        try:
            fast = dec.homogeneous_partition(g, Z)
        except dec.DecompositionError as exc:
            rep.add(g, Z=Z, parts=tuple(parts), reason=f"homogeneous_partition raised: {exc}")
            continue
        if sorted(fast.parts) != parts:
            rep.add(g, Z=Z, parts=tuple(parts), reason="homogeneous_partition disagrees with oracle")
    return rep


BIGCOMP_EPS = (Fraction(1, 3), Fraction(1, 4), Fraction(1, 5), Fraction(1, 6))


def check_bigcomp(g: Graph, t: Tables) -> LemmaReport:
    """Uniform weights; every eps whose anticomplete-pair condition holds."""
    rep = LemmaReport("bigcomp", graphs_checked=1)
    if g.n == 0:
        return rep
    w = uniform_weights(g.n)
    for eps in BIGCOMP_EPS:
        if anticomplete_violation(g, w, eps) is not None:
            continue
        for X in range(1, g.full + 1):
            wx = Fraction(popcount(X), g.n)
            if wx < 3 * eps:
                continue
            rep.configs_checked += 1
            heavy = [Y for Y in components(g, X) if weight(w, Y) > wx - eps]
            if len(heavy) != 1 or weight(w, X & ~heavy[0]) >= eps:
                rep.add(g, X=X, eps=str(eps), heavy=tuple(heavy))
    return rep


NARROW_ALPHAS = (Fraction(1), Fraction(2))


def _critical_pairs(g: Graph, alpha: Fraction):
    from . import narrowness as nar

    if g.n == 0:
        return None
    cert = nar.certify_narrow(g, alpha)
    if cert.verdict is not False:
        return None
    if not all(nar.certify_narrow(g.delete(v)[0], alpha).verdict is True for v in range(g.n)):
        return None
    return cert.argmax


def check_smalldeg(g: Graph, t: Tables) -> LemmaReport:
    from . import narrowness as nar

    rep = LemmaReport("smalldeg", graphs_checked=1)
    for alpha in NARROW_ALPHAS:
        if alpha < 2:
            continue
        f = _critical_pairs(g, alpha)
        if f is None:
            continue
        rep.configs_checked += 1
        sub = nar.critical_consequences(g, f, alpha)
        rep.violations.extend(v for v in sub.violations if v.witness.get("theorem") == "smalldeg")
    return rep


def check_strongEH(g: Graph, t: Tables) -> LemmaReport:
    from . import narrowness as nar

    rep = LemmaReport("strongEH", graphs_checked=1)
    for alpha in NARROW_ALPHAS:
        f = _critical_pairs(g, alpha)
        if f is None:
            continue
        sub = nar.critical_consequences(g, f, alpha)
        rep.configs_checked += sub.configs_checked
        rep.violations.extend(v for v in sub.violations if v.witness.get("theorem") == "strongEH")
    return rep


def check_homog_bound(g: Graph, t: Tables) -> LemmaReport:
    """Good functions: the narrowness argmax and the uniform 1/(max perfect size)."""
    from . import narrowness as nar

    rep = LemmaReport("homog_bound", graphs_checked=1)
    if g.n < 2:
        return rep
    for alpha in NARROW_ALPHAS:
        alpha_prime = Fraction(1)
        if not all(nar.certify_narrow(g.delete(v)[0], alpha).verdict is True for v in range(g.n)):
            continue
        cert = nar.certify_narrow(g, alpha)
        p = max(popcount(S) for S in nar.perfect_constraints(g))
        gfuns = [cert.argmax, tuple(Fraction(1, p) for _ in range(g.n))]
        for Z in range(1, g.full + 1):
            if popcount(Z) < 2 or not t.conn[Z]:
                continue
            sub_g, _ = g.induced(Z)
            if not dec.is_guarded(sub_g)[0]:
                continue
            for gf in gfuns:
                try:
                    sub = nar.homog_bound_check(g, Z, gf, alpha, alpha_prime, check_narrow=False)
                except nar.NarrownessError:
                    rep.notes.append("some configurations skipped: hypothesis not certifiable")
                    continue
                rep.configs_checked += sub.configs_checked
                rep.violations.extend(sub.violations)
    return rep


CHECKERS: dict[str, Callable[[Graph, Tables], LemmaReport]] = {
    "wiggly1": check_wiggly1,
    "wiggly2": check_wiggly2,
    "wiggly3": check_wiggly3,
    "wiggly4": check_wiggly4,
    "wiggly5": check_wiggly5,
    "fracture_props": check_fracture_props,
    "crossing": check_crossing,
    "small_side": check_small_side,
    "homog_partition": check_homog_partition,
    "bigcomp": check_bigcomp,
    "smalldeg": check_smalldeg,
    "strongEH": check_strongEH,
    "homog_bound": check_homog_bound,
    # strengthened hypotheses: C also anticonnected; fulcrum with an attachment
    "wiggly3_anticonnected": lambda g, t: check_wiggly3(g, t, anticonnected_C=True),
    "fracture_props_attached": lambda g, t: check_fracture_props(g, t, attached_only=True),
}
assert set(CHECKERS) == set(LEMMA_IDS) | set(VARIANT_IDS)


def check_graph(lemma_id: str, g: Graph) -> LemmaReport:
    return CHECKERS[lemma_id](g, Tables(g))


def _check_shard(args) -> LemmaReport:
    lemma_id, graphs = args
    rep = LemmaReport(lemma_id)
    for g in graphs:
        rep.merge(check_graph(lemma_id, g))
    return rep


def verify_lemma(lemma_id: str, spec: EnumSpec, jobs: int = 1) -> LemmaReport:
    if lemma_id not in CHECKERS:
        raise HarnessError(
            f"unknown lemma {lemma_id!r}; choose from {', '.join(LEMMA_IDS + VARIANT_IDS)}")
    graphs = list(enumerate_graphs(spec))
    report = LemmaReport(lemma_id, weight_free_reformulation=lemma_id in REFORMULATED)
    if jobs > 1 and len(graphs) > 1:
        shards = [graphs[i::jobs] for i in range(jobs)]
        with Pool(jobs) as pool:
            parts = pool.map(_check_shard, [(lemma_id, s) for s in shards])
        for p in parts:
            report.merge(p)
        # shards interleave; restore enumeration order of violations
        order = {upper_code(g.adj, g.n) + (g.n << 64): i for i, g in enumerate(graphs)}
        report.violations.sort(key=lambda v: order.get(upper_code(v.graph.adj, v.graph.n) + (v.graph.n << 64), 0))
    else:
        for g in graphs:
            report.merge(check_graph(lemma_id, g))
    return report


def replay(lemma_id: str, violation) -> bool:
    """Re-run the per-graph check; True iff the same witness reappears."""
    again = check_graph(lemma_id, violation.graph)
    return any(v.witness == violation.witness for v in again.violations)


# witness fields holding a single vertex index or a counter, printed in decimal
SCALAR_FIELDS = frozenset({"v", "x", "a", "c1", "c2", "d1", "d2", "bullet"})


def _fmt_value(v) -> str:
    if isinstance(v, bool):
        return str(v).lower()
    if isinstance(v, int):
        return f"{v:#x}"
    if isinstance(v, (tuple, list)):
        return "[" + ",".join(_fmt_value(x) for x in v) + "]"
    if isinstance(v, dec.Fracture):
        return "{" + ",".join(f"{k}={getattr(v, k):#x}" for k in "ACDBY") + "}"
    return str(v)


def violation_record(lemma_id: str, violation) -> str:
    """One text line: lemma id, graph6, then key=value fields (vertex sets in hex)."""
    fields = " ".join(f"{k}={v}" if k in SCALAR_FIELDS else f"{k}={_fmt_value(v)}"
                      for k, v in violation.witness.items())
    return f"{lemma_id} {to_graph6(violation.graph)} {fields}"


# ---------------------------------------------------------------- instance search


@dataclass(frozen=True)
class InstanceSearchSpec:
    builder: str = "random-filtered"
    base: Optional[Graph] = None
    part_sizes: tuple[int, ...] = ()
    eps: Fraction = Fraction(1, 5)
    seed: int = 0
    n: int = 16
    attempts: int = 200
    density: float = 0.2
    with_forcer: bool = True


def substitute(base: Graph, sizes: tuple[int, ...], kinds: tuple[str, ...]) -> Graph:
    """Replace vertex v of ``base`` by a clique or stable set of ``sizes[v]`` vertices."""
    offsets = [0]
    for s in sizes:
        offsets.append(offsets[-1] + s)
    n = offsets[-1]
    edges = []
    for v in range(base.n):
        block = range(offsets[v], offsets[v + 1])
        if kinds[v] == "clique":
            edges.extend(combinations(block, 2))
    for u, v in base.edges():
        for a in range(offsets[u], offsets[u + 1]):
            for b in range(offsets[v], offsets[v + 1]):
                edges.append((a, b))
    return build_graph(n, edges)


FORCER_EDGES = [(0, 1), (1, 2), (2, 3), (4, 5), (5, 6), (6, 7)] + [(i, j) for i in range(4) for j in range(4, 8)]


def forcer_graph() -> Graph:
    return build_graph(8, FORCER_EDGES)


def _random_candidate(rng: random.Random, spec: InstanceSearchSpec) -> tuple[Graph, list[Fraction]]:
    """Random triangle-sparse graph carrying the weight, plus a zero-weight
    forcer joined to it by a few random edges."""
    k = spec.n
    edges = []
    for i in range(k):
        for j in range(i + 1, k):
            if rng.random() < spec.density:
                edges.append((i, j))
    n = k
    if spec.with_forcer:
        edges += [(k + a, k + b) for a, b in FORCER_EDGES]
        n = k + 8
        for _ in range(rng.randrange(0, 3)):
            edges.append((rng.randrange(k), k + rng.randrange(8)))
    g = build_graph(n, edges)
    w = [Fraction(1, k) if v < k else Fraction(0) for v in range(n)]
    return g, w


def search_instances(spec: InstanceSearchSpec) -> list[tuple[Graph, list[Fraction], Fraction]]:
    """Candidate coherent hole-with-hat-free weighted graphs, each re-checked exactly."""
    eps = Fraction(spec.eps)
    if 5 * eps > 1:
        raise HarnessError("search needs 5*eps <= 1")
    rng = random.Random(spec.seed)
    out = []
    for _ in range(spec.attempts):
        if spec.builder == "substitution":
            if spec.base is None:
                raise HarnessError("substitution builder needs a base graph")
            sizes = spec.part_sizes or tuple(rng.randint(1, 3) for _ in range(spec.base.n))
            kinds = tuple(rng.choice(("clique", "stable")) for _ in range(spec.base.n))
            g = substitute(spec.base, sizes, kinds)
            w = uniform_weights(g.n)
        elif spec.builder == "random-filtered":
            g, w = _random_candidate(rng, spec)
        else:
            raise HarnessError(f"unknown builder {spec.builder!r}")
        if not is_hole_with_hat_free(g):
            continue
        if not check_coherence(g, w, eps).ok:
            continue
        out.append((g, w, eps))
    return out


# ---------------------------------------------------------------- statistics


@dataclass
class EHStats:
    n: int
    graphs: int
    minimum: int
    argmin: Optional[Graph]
    exponent: float


def eh_statistics(n: int, filters: Iterable[str] = ()) -> EHStats:
    """Min over the class of max(clique number, stability number)."""
    if n > 9:
        raise HarnessError("statistics are capped at n = 9")
    spec = EnumSpec.make(n, filters)
    best = None
    arg = None
    count = 0
    for g in enumerate_graphs(spec):
        count += 1
        val = max(clique_number(g), clique_number(complement(g)))
        if best is None or val < best:
            best, arg = val, g
    if best is None:
        return EHStats(n, 0, 0, None, float("nan"))
    exponent = math.log(best) / math.log(n) if n > 1 else float("nan")
    return EHStats(n, count, best, arg, exponent)
