from fractions import Fraction

import pytest

import oracles
from holehat import harness as hs
from holehat.detectors import find_house, is_hole_with_hat_free
from holehat.formats import from_graph6
from holehat.graph import components, is_anticonnected, is_connected
from holehat.reports import LEMMA_IDS, VARIANT_IDS

SMALL = hs.EnumSpec.make(5, min_n=1)


def _subsets(mask):
    sub = mask
    while sub:
        yield sub
        sub = (sub - 1) & mask


def _complete(g, A, B):
    return all(g.adj[a] & B == B for a in oracles.members(A))


def _mixed(g, v, X):
    hit = g.adj[v] & X
    return bool(hit) and hit != X


def _touches_not_complete(g, P, C):
    return any(g.adj[v] & C for v in oracles.members(P)) and not any(
        g.adj[v] & C == C for v in oracles.members(P))


def naive(lemma, g, anticonnected_C=False):
    """Literal definitional check, returning normalised violation keys."""
    out = set()
    full = g.full
    conn = {X: is_connected(g, X) for X in range(1, full + 1)}
    anti = {X: is_anticonnected(g, X) for X in range(1, full + 1)}
    for C in range(1, full + 1):
        for D in [0, *_subsets(full & ~C)]:
            if D and not _complete(g, C, D):
                continue
            rest = full & ~(C | D)
            if lemma == "wiggly1":
                if D and anti[C] and anti[D]:
                    for v in oracles.members(rest):
                        if _mixed(g, v, C) and _mixed(g, v, D):
                            out.add((min(C, D, key=lambda m: m & -m), max(C, D, key=lambda m: m & -m), v))
                continue
            Ps = [P for P in _subsets(rest) if conn[P] and _touches_not_complete(g, P, C)]
            if lemma == "wiggly2" and conn[C]:
                for P in Ps:
                    mixed = [u for u in oracles.members(P) if _mixed(g, u, C)]
                    for v in oracles.members(P):
                        need = g.adj[v] & D
                        if not any(g.adj[u] & need == need for u in mixed):
                            out.add((C, D, P, v))
            if lemma == "wiggly3" and D and conn[C] and anti[D] and (anti[C] or not anticonnected_C):
                for P in Ps:
                    if any(g.adj[v] & D for v in oracles.members(P)) and not any(
                            _mixed(g, v, C) and g.adj[v] & D == D for v in oracles.members(P)):
                        out.add((C, D, P))
            if lemma == "wiggly4" and D and conn[C] and anti[C] and anti[D]:
                for P in Ps:
                    if any(_mixed(g, v, D) for v in oracles.members(P)):
                        out.add((C, D, P))
    return out


def harness_keys(lemma, g):
    rep = hs.check_graph(lemma, g)
    keys = set()
    for v in rep.violations:
        w = v.witness
        if lemma == "wiggly1":
            keys.add((w["C"], w["D"], w["v"]))
        elif lemma == "wiggly2":
            keys.add((w["C"], w["D"], w["P"], w["v"]))
        else:
            keys.add((w["C"], w["D"], w["P"]))
    return keys


@pytest.mark.parametrize("lemma", ["wiggly1", "wiggly2", "wiggly3", "wiggly4", "wiggly3_anticonnected"])
def test_checkers_match_definitions(lemma):
    base = lemma.split("_")[0]
    for g in hs.enumerate_graphs(SMALL):
        assert harness_keys(lemma, g) == naive(base, g, anticonnected_C=lemma.endswith("anticonnected")), g


def test_every_lemma_runs_small():
    for lemma in LEMMA_IDS + VARIANT_IDS:
        rep = hs.verify_lemma(lemma, hs.EnumSpec.make(5, ["hwh-free"], min_n=1))
        assert rep.graphs_checked == sum(1 for _ in hs.enumerate_graphs(hs.EnumSpec.make(5, ["hwh-free"], min_n=1)))
        if lemma not in ("wiggly3", "fracture_props"):
            assert rep.ok, (lemma, rep.violations[:1])


def test_unknown_lemma_and_filter():
    with pytest.raises(hs.HarnessError):
        hs.verify_lemma("wiggly9", SMALL)
    with pytest.raises(hs.HarnessError):
        hs.EnumSpec.make(5, ["claw-free"])
    with pytest.raises(hs.HarnessError):
        list(hs.enumerate_graphs(hs.EnumSpec.make(11)))


def test_parallel_run_matches_serial():
    spec = hs.EnumSpec.make(6, min_n=1)
    one = hs.verify_lemma("wiggly2", spec, jobs=1)
    two = hs.verify_lemma("wiggly2", spec, jobs=3)
    assert one.summary() == two.summary()
    assert [hs.violation_record("wiggly2", v) for v in one.violations] == \
           [hs.violation_record("wiggly2", v) for v in two.violations]


def test_violations_replay_and_records():
    rep = hs.verify_lemma("wiggly1", SMALL)
    assert rep.violations
    for v in rep.violations:
        assert hs.replay("wiggly1", v)
        rec = hs.violation_record("wiggly1", v)
        lemma, g6, *fields = rec.split()
        assert lemma == "wiggly1" and from_graph6(g6) == v.graph
        values = dict(f.split("=") for f in fields)
        assert values["C"].startswith("0x") and values["v"].isdigit()


def test_wiggly1_witnesses_are_houses():
    rep = hs.verify_lemma("wiggly1", hs.EnumSpec.make(6, min_n=1))
    assert rep.violations
    for v in rep.violations:
        w = v.witness
        five = sum(1 << w[k] for k in ("c1", "c2", "d1", "d2", "v"))
        sub, _ = v.graph.induced(five)
        assert sub.n == 5 and find_house(sub) is not None


def test_reformulated_reports_are_flagged():
    for lemma in ("crossing", "small_side", "fracture_props"):
        assert hs.verify_lemma(lemma, SMALL).weight_free_reformulation
    assert not hs.verify_lemma("wiggly1", SMALL).weight_free_reformulation


def test_fracture_props_failures_have_isolated_fulcrum():
    rep = hs.verify_lemma("fracture_props", hs.EnumSpec.make(7, ["hwh-free"], min_n=1))
    assert rep.violations
    for v in rep.violations:
        w = v.witness
        assert w["bullet"] == 1 and w["attachments_of_Y"] == 0
        assert w["Y"] in components(v.graph, v.graph.full)


def test_wiggly3_failures_have_non_anticonnected_C():
    rep = hs.verify_lemma("wiggly3", hs.EnumSpec.make(6, ["hwh-free"], min_n=1))
    assert rep.violations
    assert all(not is_anticonnected(v.graph, v.witness["C"]) for v in rep.violations)


def test_homog_partition_brute_force_agrees():
    rep = hs.verify_lemma("homog_partition", hs.EnumSpec.make(6, min_n=1))
    assert rep.ok and rep.configs_checked > 0


def test_substitute_and_forcer_graph():
    g = hs.substitute(hs.forcer_graph(), (1,) * 8, ("clique",) * 8)
    assert g == hs.forcer_graph()
    h = hs.substitute(from_graph6("A_"), (2, 3), ("clique", "stable"))
    assert h.n == 5 and h.edge_count() == 1 + 6


def test_search_is_reproducible_and_exact():
    spec = hs.InstanceSearchSpec(attempts=30, seed=5, n=10)
    a = hs.search_instances(spec)
    b = hs.search_instances(spec)
    assert a == b
    for g, w, eps in a:
        assert is_hole_with_hat_free(g)
        assert hs.check_coherence(g, w, eps).ok
    with pytest.raises(hs.HarnessError):
        hs.search_instances(hs.InstanceSearchSpec(eps=Fraction(1, 4)))


def test_eh_statistics():
    st5 = hs.eh_statistics(5)
    assert st5.minimum == 2 and st5.argmin.n == 5
    assert hs.eh_statistics(6).minimum == 3
    assert hs.eh_statistics(4).graphs == 11
