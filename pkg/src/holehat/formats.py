"""graph6, plain edge-list and weight-file readers/writers."""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path

from .graph import Graph, GraphError, build_graph


class FormatError(ValueError):
    """Parse failure; carries the 1-based line and column when known."""

    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.line = line
        self.column = column
        where = f"line {line}, column {column}: " if line else ""
        super().__init__(where + message)


def to_graph6(g: Graph) -> str:
    n = g.n
    if n <= 62:
        out = [chr(n + 63)]
    else:
        out = ["~", chr((n >> 12 & 63) + 63), chr((n >> 6 & 63) + 63), chr((n & 63) + 63)]
    bitstream = []
    for j in range(1, n):
        row = g.adj[j]
        for i in range(j):
            bitstream.append(row >> i & 1)
    while len(bitstream) % 6:
        bitstream.append(0)
    for k in range(0, len(bitstream), 6):
        val = 0
        for b in bitstream[k:k + 6]:
            val = val << 1 | b
        out.append(chr(val + 63))
    return "".join(out)


def from_graph6(text: str, line: int = 1) -> Graph:
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[10:]
    if not s:
        raise FormatError("empty graph6 string", line, 1)
    for col, ch in enumerate(s, 1):
        if not 63 <= ord(ch) <= 126:
            raise FormatError(f"byte {ch!r} outside graph6 range", line, col)
    if s[0] == "~":
        if len(s) < 4 or s[1] == "~":
            raise FormatError("unsupported graph6 size header", line, 1)
        n = (ord(s[1]) - 63) << 12 | (ord(s[2]) - 63) << 6 | (ord(s[3]) - 63)
        body = s[4:]
        offset = 4
    else:
        n = ord(s[0]) - 63
        body = s[1:]
        offset = 1
    need = n * (n - 1) // 2
    nbytes = (need + 5) // 6
    if len(body) != nbytes:
        raise FormatError(f"expected {nbytes} data bytes for n={n}, got {len(body)}",
                          line, offset + min(len(body), nbytes) + 1)
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            byte = ord(body[k // 6]) - 63
            if byte >> (5 - k % 6) & 1:
                edges.append((i, j))
            k += 1
    for k2 in range(need, nbytes * 6):
        if (ord(body[k2 // 6]) - 63) >> (5 - k2 % 6) & 1:
            raise FormatError("nonzero padding bits", line, offset + k2 // 6 + 1)
    try:
        return build_graph(n, edges)
    except GraphError as exc:
        raise FormatError(str(exc), line, 1) from exc


def to_edge_list(g: Graph) -> str:
    edges = g.edges()
    lines = [f"{g.n} {len(edges)}"] + [f"{u} {v}" for u, v in edges]
    return "\n".join(lines) + "\n"


def from_edge_list(text: str) -> Graph:
    rows = [(i, ln) for i, ln in enumerate(text.splitlines(), 1) if ln.strip() and not ln.lstrip().startswith("#")]
    if not rows:
        raise FormatError("empty edge list", 1, 1)
    head_line, head = rows[0]
    parts = head.split()
    if len(parts) != 2 or not all(p.isdigit() for p in parts):
        raise FormatError("header must be 'n m'", head_line, 1)
    n, m = int(parts[0]), int(parts[1])
    if len(rows) - 1 != m:
        raise FormatError(f"header promises {m} edges, found {len(rows) - 1}", head_line, len(parts[0]) + 2)
    edges = []
    for lineno, ln in rows[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise FormatError("edge line must be 'u v'", lineno, 1)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise FormatError("non-integer endpoint", lineno, 1) from None
        if not (0 <= u < n and 0 <= v < n) or u == v:
            col = 1 if not 0 <= u < n or u == v else len(parts[0]) + 2
            raise FormatError(f"bad edge ({u}, {v}) for n={n}", lineno, col)
        edges.append((u, v))
    return build_graph(n, edges)


def read_graphs(path: str | Path) -> list[Graph]:
    """Read a graph file: edge list if the first line is 'n m', else graph6 per line."""
    text = Path(path).read_text()
    first = next((ln for ln in text.splitlines() if ln.strip()), "")
    if len(first.split()) == 2:
        return [from_edge_list(text)]
    out = []
    for i, ln in enumerate(text.splitlines(), 1):
        if ln.strip():
            out.append(from_graph6(ln, i))
    if not out:
        raise FormatError("no graphs in file", 1, 1)
    return out


def format_weights(weights: list[Fraction]) -> str:
    lines = [f"n={len(weights)}"]
    for i, w in enumerate(weights):
        lines.append(f"{i} {w.numerator}/{w.denominator}")
    return "\n".join(lines) + "\n"


def parse_weights(text: str, normalized: bool = True) -> list[Fraction]:
    lines = [(i, ln.strip()) for i, ln in enumerate(text.splitlines(), 1) if ln.strip()]
    if not lines or not lines[0][1].startswith("n="):
        raise FormatError("missing 'n=<count>' header", lines[0][0] if lines else 1, 1)
    try:
        n = int(lines[0][1][2:])
    except ValueError:
        raise FormatError("bad vertex count", lines[0][0], 3) from None
    weights: list[Fraction | None] = [None] * n
    for lineno, ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise FormatError("weight line must be 'index numerator/denominator'", lineno, 1)
        try:
            idx = int(parts[0])
        except ValueError:
            raise FormatError("bad vertex index", lineno, 1) from None
        if not 0 <= idx < n:
            raise FormatError(f"vertex index {idx} out of range", lineno, 1)
        if weights[idx] is not None:
            raise FormatError(f"duplicate weight for vertex {idx}", lineno, 1)
        try:
            w = Fraction(parts[1])
        except (ValueError, ZeroDivisionError):
            raise FormatError(f"bad rational {parts[1]!r}", lineno, len(parts[0]) + 2) from None
        if w < 0:
            raise FormatError("negative weight", lineno, len(parts[0]) + 2)
        weights[idx] = w
    missing = [i for i, w in enumerate(weights) if w is None]
    if missing:
        raise FormatError(f"no weight for vertices {missing}", lines[-1][0], 1)
    if normalized and sum(weights) != 1:
        raise FormatError(f"weights sum to {sum(weights)}, expected 1", lines[0][0], 1)
    return weights  # type: ignore[return-value]
