from fractions import Fraction

import pytest
from hypothesis import given

from holehat.formats import (
    FormatError,
    format_weights,
    from_edge_list,
    from_graph6,
    parse_weights,
    read_graphs,
    to_edge_list,
    to_graph6,
)
from holehat.graph import build_graph

from test_graph import graphs


def test_known_graph6_strings(house, c5):
    # reference strings from the standard encoding
    assert to_graph6(build_graph(0, [])) == "?"
    assert to_graph6(build_graph(2, [(0, 1)])) == "A_"
    assert to_graph6(c5) == "Dhc"
    assert from_graph6("Dhc") == c5
    assert from_graph6(to_graph6(house)) == house


@given(graphs(max_n=12))
def test_roundtrip(g):
    assert from_graph6(to_graph6(g)) == g
    assert from_edge_list(to_edge_list(g)) == g


def test_long_header_roundtrip():
    g = build_graph(64, [(i, (i * 7 + 3) % 64) for i in range(64) if i != (i * 7 + 3) % 64])
    text = to_graph6(g)
    assert text.startswith("~")
    assert from_graph6(text) == g


@pytest.mark.parametrize("text, line, col", [
    ("Dx", 1, 3),      # too short
    ("D\x01cc", 1, 2),  # unprintable byte
    ("Dhd", 1, 3),     # nonzero padding
])
def test_graph6_errors(text, line, col):
    with pytest.raises(FormatError) as exc:
        from_graph6(text)
    assert (exc.value.line, exc.value.column) == (line, col)


def test_edge_list_errors():
    with pytest.raises(FormatError) as exc:
        from_edge_list("3 2\n0 1\n1 3\n")
    assert exc.value.line == 3
    with pytest.raises(FormatError):
        from_edge_list("3 2\n0 1\n")
    with pytest.raises(FormatError):
        from_edge_list("three 0\n")


def test_read_graphs(tmp_path, c5, house):
    p = tmp_path / "many.g6"
    p.write_text(to_graph6(c5) + "\n\n" + to_graph6(house) + "\n")
    assert read_graphs(p) == [c5, house]
    q = tmp_path / "one.txt"
    q.write_text(to_edge_list(house))
    assert read_graphs(q) == [house]


def test_weights():
    w = [Fraction(1, 2), Fraction(1, 3), Fraction(1, 6)]
    assert parse_weights(format_weights(w)) == w
    with pytest.raises(FormatError):
        parse_weights("n=2\n0 1/2\n1 1/3\n")
    assert parse_weights("n=2\n0 1/2\n1 1/3\n", normalized=False)[1] == Fraction(1, 3)
    with pytest.raises(FormatError) as exc:
        parse_weights("n=2\n0 1/2\n1 x\n")
    assert exc.value.line == 3
    with pytest.raises(FormatError):
        parse_weights("n=2\n0 1\n0 0\n")


@given(graphs(max_n=10))
def test_graph6_agrees_with_networkx(g):
    nx = pytest.importorskip("networkx")
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    assert nx.to_graph6_bytes(h, header=False).decode().strip() == to_graph6(g)
