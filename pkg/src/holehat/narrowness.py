"""Good functions and alpha-narrowness certificates.

The good-function polytope is {f >= 0 : f(S) <= 1 for every maximal perfect
S}. Sum f^alpha is convex for alpha >= 1, so its maximum sits at a vertex;
vertices are enumerated by support. On a support T a vertex is the unique
solution of |T| tight constraints, and only the maximal perfect subsets of
g[T] can be tight there, which keeps the search small.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Optional, Sequence, Union

import mpmath

from . import decomposition as dec
from .detectors import extremal_set, obstructions
from .graph import Graph, bits, is_anticonnected, is_connected, mask_of, popcount
from .reports import LemmaReport

NARROW_MAX_N = 10
TOLERANCE = mpmath.mpf("1e-9")
PRECISION_DIGITS = 50

Number = Union[Fraction, mpmath.mpf]


class NarrownessError(ValueError):
    pass


def _alpha(alpha) -> Fraction:
    a = Fraction(alpha)
    if a < 1:
        raise NarrownessError(f"alpha must be at least 1, got {a}")
    return a


def power(x: Fraction, alpha: Fraction) -> Number:
    """x**alpha, exact when alpha is an integer or x is 0 or 1."""
    if alpha.denominator == 1 or x in (0, 1):
        return x ** alpha.numerator if alpha.denominator == 1 else Fraction(x)
    with mpmath.workdps(PRECISION_DIGITS):
        return mpmath.power(mpmath.mpf(x.numerator) / x.denominator,
                            mpmath.mpf(alpha.numerator) / alpha.denominator)


def power_sum(f: Sequence[Fraction], alpha: Fraction, mask: Optional[int] = None) -> Number:
    idx = range(len(f)) if mask is None else bits(mask)
    total: Number = Fraction(0)
    exact = True
    parts = []
    for v in idx:
        p = power(f[v], alpha)
        if isinstance(p, Fraction):
            total += p
        else:
            exact = False
            parts.append(p)
    if exact:
        return total
    with mpmath.workdps(PRECISION_DIGITS):
        return mpmath.mpf(total.numerator) / total.denominator + mpmath.fsum(parts)


def compare(value: Number, bound: Number) -> Optional[int]:
    """Sign of value - bound; None inside the tolerance band of an inexact value."""
    if isinstance(value, Fraction) and isinstance(bound, Fraction):
        return (value > bound) - (value < bound)
    with mpmath.workdps(PRECISION_DIGITS):
        a = mpmath.mpf(value.numerator) / value.denominator if isinstance(value, Fraction) else value
        b = mpmath.mpf(bound.numerator) / bound.denominator if isinstance(bound, Fraction) else bound
        diff = a - b
        if abs(diff) <= TOLERANCE:
            return None
        return 1 if diff > 0 else -1


def perfect_constraints(g: Graph) -> list[int]:
    from .detectors import max_perfect_subsets

    return max_perfect_subsets(g)


def is_good(g: Graph, f: Sequence[Fraction]) -> tuple[bool, Optional[int]]:
    """(True, None) if f(S) <= 1 on every perfect induced subgraph, else
    (False, a maximal perfect S with f(S) > 1)."""
    if len(f) != g.n:
        raise NarrownessError(f"function has {len(f)} entries for {g.n} vertices")
    if any(Fraction(x) < 0 for x in f):
        raise NarrownessError("good-function candidates must be nonnegative")
    for S in perfect_constraints(g):
        if sum((Fraction(f[v]) for v in bits(S)), Fraction(0)) > 1:
            return False, S
    return True, None


@dataclass
class NarrownessCertificate:
    alpha: Fraction
    max_value: Number
    argmax: tuple[Fraction, ...]
    # True: alpha-narrow; False: not; None: inside the tolerance band
    verdict: Optional[bool]
    vertices_checked: int = 0

    @property
    def inconclusive(self) -> bool:
        return self.verdict is None


def _solve(rows: list[int], cols: list[int]) -> Optional[list[Fraction]]:
    """Solve sum_{c in row} x_c = 1 for each row; None unless unique."""
    k = len(cols)
    mat = [[Fraction(r >> c & 1) for c in cols] + [Fraction(1)] for r in rows]
    for col in range(k):
        piv = next((i for i in range(col, k) if mat[i][col] != 0), None)
        if piv is None:
            return None
        mat[col], mat[piv] = mat[piv], mat[col]
        p = mat[col][col]
        if p != 1:
            mat[col] = [x / p for x in mat[col]]
        for i in range(k):
            if i != col and mat[i][col] != 0:
                factor = mat[i][col]
                mat[i] = [a - factor * b for a, b in zip(mat[i], mat[col])]
    return [mat[i][k] for i in range(k)]


class _PerfectTable:
    def __init__(self, g: Graph):
        self.n = g.n
        obs = obstructions(g)
        size = 1 << g.n
        self.perfect = bytearray(size)
        for s in range(size):
            self.perfect[s] = not any(o & s == o for o in obs)

    def maximal_within(self, T: int) -> list[int]:
        out = []
        members = list(bits(T))
        sub = T
        while True:
            if self.perfect[sub] and all(not self.perfect[sub | 1 << v] for v in members if not sub >> v & 1):
                out.append(sub)
            if sub == 0:
                break
            sub = (sub - 1) & T
        return out


def polytope_vertices(g: Graph) -> list[tuple[Fraction, ...]]:
    """All vertices of the good-function polytope of g."""
    if g.n > NARROW_MAX_N:
        raise NarrownessError(
            f"vertex enumeration is limited to n <= {NARROW_MAX_N}; got n = {g.n}")
    table = _PerfectTable(g)
    constraints = table.maximal_within(g.full)
    zero = Fraction(0)
    found: dict[tuple[Fraction, ...], None] = {tuple([zero] * g.n): None}
    for T in range(1, g.full + 1):
        cols = list(bits(T))
        k = len(cols)
        if k == 1:
            f = [zero] * g.n
            f[cols[0]] = Fraction(1)
            found[tuple(f)] = None
            continue
        if table.perfect[T]:
            continue  # only the row T itself: singular for k >= 2
        rows = table.maximal_within(T)
        if len(rows) < k:
            continue
        for chosen in combinations(rows, k):
            sol = _solve(list(chosen), cols)
            if sol is None or any(x <= 0 for x in sol):
                continue
            f = [zero] * g.n
            for c, x in zip(cols, sol):
                f[c] = x
            if all(sum((f[v] for v in bits(S)), zero) <= 1 for S in constraints):
                found[tuple(f)] = None
    return list(found)


def _support(f: Sequence[Fraction]) -> int:
    return mask_of(i for i, x in enumerate(f) if x)


def certify_narrow(g: Graph, alpha) -> NarrownessCertificate:
    """Maximum of sum f^alpha over good functions, with its maximiser."""
    alpha = _alpha(alpha)
    verts = polytope_vertices(g)
    best_val: Number = Fraction(-1)
    best_f: tuple[Fraction, ...] = verts[0]
    verdict: Optional[bool] = True
    for f in verts:
        val = power_sum(f, alpha)
        side = compare(val, Fraction(1))
        if side == 1:
            verdict = False
        elif side is None and verdict is True:
            verdict = None
        c = compare(val, best_val)
        if c == 1 or (c in (0, None) and _tie_break(f, best_f, val, best_val)):
            best_val, best_f = val, f
    return NarrownessCertificate(alpha, best_val, best_f, verdict, len(verts))


def _tie_break(f, best_f, val, best_val) -> bool:
    # within the band keep the larger numeric value; exact ties go to the least support
    if not (isinstance(val, Fraction) and isinstance(best_val, Fraction)):
        with mpmath.workdps(PRECISION_DIGITS):
            a = mpmath.mpf(val.numerator) / val.denominator if isinstance(val, Fraction) else val
            b = mpmath.mpf(best_val.numerator) / best_val.denominator if isinstance(best_val, Fraction) else best_val
            if a != b:
                return a > b
    return (_support(f), f) < (_support(best_f), best_f)


def narrowness_threshold(g: Graph, lo: float = 1.0, hi: float = 8.0, tol: float = 1e-7) -> float:
    """Bisect the smallest alpha at which g certifies alpha-narrow."""
    if certify_narrow(g, Fraction(lo)).verdict is True:
        return lo
    if certify_narrow(g, Fraction(hi)).verdict is not True:
        raise NarrownessError(f"graph is not {hi}-narrow; widen the bracket")
    while hi - lo > tol:
        mid = (lo + hi) / 2
        v = certify_narrow(g, Fraction(mid)).verdict
        if v is None:
            return mid
        if v:
            hi = mid
        else:
            lo = mid
    return (lo + hi) / 2


def check_critical(g: Graph, f: Sequence[Fraction], alpha) -> bool:
    """Good f with sum f^alpha > 1 on a graph whose one-vertex deletions are alpha-narrow."""
    alpha = _alpha(alpha)
    f = [Fraction(x) for x in f]
    good, _ = is_good(g, f)
    if not good:
        return False
    if compare(power_sum(f, alpha), Fraction(1)) != 1:
        return False
    for v in range(g.n):
        sub, _ = g.delete(v)
        if certify_narrow(sub, alpha).verdict is not True:
            return False
    return True


def _above_half_power(total: Number, alpha: Fraction) -> Optional[bool]:
    """Is total > 2^-alpha?  None when undecidable within tolerance."""
    if isinstance(total, Fraction) and alpha.denominator == 1:
        return total * 2 ** alpha.numerator > 1
    with mpmath.workdps(PRECISION_DIGITS):
        bound = mpmath.power(2, -(mpmath.mpf(alpha.numerator) / alpha.denominator))
    c = compare(total, bound)
    return None if c is None else c == 1


def critical_consequences(g: Graph, f: Sequence[Fraction], alpha) -> LemmaReport:
    """Vertex-weight bound (alpha >= 2) and the complete/anticomplete pair bound."""
    alpha = _alpha(alpha)
    f = [Fraction(x) for x in f]
    if not check_critical(g, f, alpha):
        raise NarrownessError("(g, f) is not an alpha-critical pair")
    report = LemmaReport("critical_consequences", graphs_checked=1)
    p, q = alpha.numerator, alpha.denominator
    if alpha >= 2:
        for v, x in enumerate(f):
            report.configs_checked += 1
            # x < 1 - 4^(-1/alpha)  <=>  4^q (1-x)^p > 1
            if not (x < 1 and 4 ** q * (1 - x) ** p > 1):
                report.add(g, theorem="smalldeg", v=v, value=str(x))
    full = g.full
    adj = g.adj
    size = 1 << g.n
    nbr = [0] * size
    common = [full] * size
    for m in range(1, size):
        low = m & -m
        v = low.bit_length() - 1
        nbr[m] = nbr[m ^ low] | adj[v]
        common[m] = common[m ^ low] & adj[v]
    sums = [power_sum(f, alpha, m) for m in range(size)]
    big = [_above_half_power(sums[m], alpha) for m in range(size)]
    undecided = 0
    for A in range(1, size):
        lowA = A & -A
        for pool in (common[A] & ~A, full & ~(A | nbr[A])):
            B = pool
            while B:
                if (B & -B) > lowA:
                    report.configs_checked += 1
                    if big[A] is None or big[B] is None:
                        undecided += 1
                    elif big[A] and big[B]:
                        report.add(g, theorem="strongEH", A=A, B=B)
                B = (B - 1) & pool
    if undecided:
        report.notes.append(f"{undecided} pairs inside the tolerance band")
    return report


def eh_from_narrow(g: Graph, alpha) -> int:
    """Clique or stable set of size >= n^(1/(2 alpha)) in an alpha-narrow graph."""
    alpha = _alpha(alpha)
    cert = certify_narrow(g, alpha)
    if cert.verdict is not True:
        raise NarrownessError(f"graph is not certified {alpha}-narrow")
    clique = extremal_set(g, "clique")
    stable = extremal_set(g, "stable")
    best = clique if popcount(clique) >= popcount(stable) else stable
    if not meets_eh_bound(popcount(best), g.n, alpha):
        raise NarrownessError("extremal set below n^(1/(2 alpha)); narrowness certificate is wrong")
    return best


def meets_eh_bound(size: int, n: int, alpha: Fraction) -> bool:
    """size >= n^(1/(2 alpha)), decided exactly."""
    alpha = Fraction(alpha)
    return size ** (2 * alpha.numerator) >= n ** alpha.denominator


def homog_bound_check(g: Graph, Z: int, gfun: Sequence[Fraction], alpha, alpha_prime,
                      check_narrow: bool = True) -> LemmaReport:
    """g^alpha(Z) <= max(2d, d^(1 - alpha'/alpha)), d the largest neighbourhood mass in Z.

    The forcer-free narrowness hypothesis is replaced by certifying the
    quotient on one representative per maximal proper homogeneous set.
    """
    alpha = _alpha(alpha)
    alpha_prime = _alpha(alpha_prime)
    if alpha_prime > alpha:
        raise NarrownessError("alpha' must not exceed alpha")
    gfun = [Fraction(x) for x in gfun]
    if popcount(Z) < 2:
        raise NarrownessError("Z needs at least two vertices")
    if not is_connected(g, Z):
        raise NarrownessError("g[Z] is not connected")
    sub, _ = g.induced(Z)
    guarded, forcer = dec.is_guarded(sub)
    if not guarded:
        raise NarrownessError(f"g[Z] is not guarded: {forcer}")
    good, S = is_good(g, gfun)
    if not good:
        raise NarrownessError(f"function is not good: f({S:#x}) > 1")
    if check_narrow:
        for v in range(g.n):
            if certify_narrow(g.delete(v)[0], alpha).verdict is not True:
                raise NarrownessError(f"g - {v} is not certified {alpha}-narrow")
    d = max((power_sum(gfun, alpha, g.adj[v] & Z) for v in bits(Z)), key=_as_mpf)
    if compare(d, Fraction(0)) in (0, None) and _as_mpf(d) == 0:
        raise NarrownessError("d = 0: no vertex of Z has mass in its neighbourhood")
    lhs = power_sum(gfun, alpha, Z)
    report = LemmaReport("homog_bound", graphs_checked=1, configs_checked=1)
    if not is_anticonnected(g, Z):
        bound: Number = 2 * d
        route = "anticomponents"
    else:
        parts = dec.homogeneous_partition(g, Z).parts
        reps = mask_of(min(bits(W)) for W in parts)
        quotient, _ = g.induced(reps)
        if certify_narrow(quotient, alpha_prime).verdict is not True:
            raise NarrownessError(f"quotient graph is not certified {alpha_prime}-narrow")
        exponent = 1 - alpha_prime / alpha
        other = power(d, exponent) if isinstance(d, Fraction) else _mp_pow(d, exponent)
        bound = 2 * d if _as_mpf(2 * d) >= _as_mpf(other) else other
        route = "homogeneous partition"
    side = compare(lhs, bound)
    if side == 1:
        report.add(g, Z=Z, lhs=str(lhs), d=str(d), bound=str(bound), route=route)
    elif side is None:
        report.notes.append("comparison inside the tolerance band")
    report.notes.append(f"{route}: g^a(Z)={_as_mpf(lhs)} d={_as_mpf(d)} bound={_as_mpf(bound)}")
    return report


def _as_mpf(x: Number):
    with mpmath.workdps(PRECISION_DIGITS):
        if isinstance(x, Fraction):
            return mpmath.mpf(x.numerator) / x.denominator
        return mpmath.mpf(x)


def _mp_pow(x, exponent: Fraction):
    with mpmath.workdps(PRECISION_DIGITS):
        return mpmath.power(x, mpmath.mpf(exponent.numerator) / exponent.denominator)
