import pytest
from hypothesis import given, strategies as st

from holehat.graph import (
    Graph,
    GraphError,
    SetRelation,
    bits,
    build_graph,
    complement,
    components,
    is_anticonnected,
    is_connected,
    mask_of,
    relation,
    submasks,
)

from conftest import cycle, path


@st.composite
def graphs(draw, max_n=8):
    n = draw(st.integers(0, max_n))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    chosen = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return build_graph(n, [p for p, c in zip(pairs, chosen) if c])


def test_build_rejects_bad_input():
    with pytest.raises(GraphError):
        build_graph(3, [(0, 3)])
    with pytest.raises(GraphError):
        build_graph(3, [(1, 1)])
    with pytest.raises(GraphError):
        Graph(2, (0b10, 0))
    with pytest.raises(GraphError):
        build_graph(65, [])


def test_masks():
    assert list(bits(0b10110)) == [1, 2, 4]
    assert mask_of([0, 3]) == 0b1001
    assert sorted(submasks(0b101)) == [0, 1, 4, 5]


def test_components_and_anticomponents():
    g = build_graph(5, [(0, 1), (2, 3)])
    assert components(g, g.full) == [0b11, 0b1100, 0b10000]
    # complement of P4 is P4: connected both ways
    p4 = path(4)
    assert is_connected(p4, p4.full) and is_anticonnected(p4, p4.full)
    c4 = cycle(4)
    assert not is_anticonnected(c4, c4.full)
    assert components(c4, c4.full, "complement") == [0b101, 0b1010]
    assert not is_connected(c4, 0)


def test_relation():
    c4 = cycle(4)
    assert relation(c4, 0b1, 0b1010) is SetRelation.COMPLETE
    assert relation(c4, 0b1, 0b100) is SetRelation.ANTICOMPLETE
    assert relation(c4, 0b1, 0b110) is SetRelation.MIXED
    with pytest.raises(GraphError):
        relation(c4, 0b11, 0b10)


@given(graphs())
def test_complement_involution(g):
    assert complement(complement(g)) == g
    assert g.edge_count() + complement(g).edge_count() == g.n * (g.n - 1) // 2


@given(graphs(), st.data())
def test_induced_and_relabel(g, data):
    perm = data.draw(st.permutations(list(range(g.n))))
    h = g.relabel(list(perm))
    assert h.edge_count() == g.edge_count()
    for u, v in g.edges():
        assert h.has_edge(perm[u], perm[v])
    if g.n:
        sub, labels = g.delete(0)
        assert labels == list(range(1, g.n))
        assert sub.edge_count() == g.edge_count() - g.degree(0)
