"""Line-oriented graph and payoff file formats.

Graph files::

    # comment
    digraph <vertex_count>
    edge <src> <dst> [label <symbol>]
    alphabet <s1> <s2> ...

Edge order in the file is the edge id order.  Edges without a label get
the placeholder symbol ``_`` (labels are irrelevant for plain game
graphs).  The alphabet line is optional and defaults to the labels in
first-occurrence order.

Payoff files hold one line ``P <g_edge_id> <h_edge_id> <integer>`` per
pair and must cover every pair exactly once.
"""

from __future__ import annotations

from .graphs import Digraph, LabeledDigraph

PLACEHOLDER_LABEL = "_"


class GraphParseError(ValueError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


class PayoffParseError(ValueError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


def _tokens(text: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line.split()


def parse_graph(text: str) -> LabeledDigraph:
    vertex_count = None
    header_line = 0
    edges: list[tuple[int, int]] = []
    labels: list[str] = []
    alphabet: list[str] | None = None
    alphabet_line = 0
    for lineno, toks in _tokens(text):
        kind = toks[0]
        if kind == "digraph":
            if vertex_count is not None:
                raise GraphParseError(lineno, "duplicate digraph header")
            if len(toks) != 2:
                raise GraphParseError(lineno, "expected: digraph <vertex_count>")
            try:
                vertex_count = int(toks[1])
            except ValueError:
                raise GraphParseError(lineno, f"bad vertex count {toks[1]!r}") from None
            if vertex_count < 0:
                raise GraphParseError(lineno, "vertex count must be non-negative")
            header_line = lineno
        elif kind == "edge":
            if vertex_count is None:
                raise GraphParseError(lineno, "edge before digraph header")
            if len(toks) == 3:
                label = PLACEHOLDER_LABEL
            elif len(toks) == 5 and toks[3] == "label":
                label = toks[4]
            else:
                raise GraphParseError(lineno, "expected: edge <src> <dst> [label <symbol>]")
            try:
                s, t = int(toks[1]), int(toks[2])
            except ValueError:
                raise GraphParseError(lineno, "edge endpoints must be integers") from None
            if not (0 <= s < vertex_count) or not (0 <= t < vertex_count):
                raise GraphParseError(
                    lineno, f"edge ({s},{t}) out of range for {vertex_count} vertices"
                )
            edges.append((s, t))
            labels.append(label)
        elif kind == "alphabet":
            if alphabet is not None:
                raise GraphParseError(lineno, "duplicate alphabet line")
            if len(toks) < 2:
                raise GraphParseError(lineno, "alphabet line lists at least one symbol")
            alphabet = toks[1:]
            if len(set(alphabet)) != len(alphabet):
                raise GraphParseError(lineno, "alphabet contains duplicate symbols")
            alphabet_line = lineno
        else:
            raise GraphParseError(lineno, f"unknown directive {kind!r}")
    if vertex_count is None:
        raise GraphParseError(header_line or 1, "missing digraph header")
    if alphabet is not None:
        missing = sorted(set(labels) - set(alphabet))
        if missing:
            raise GraphParseError(alphabet_line, f"labels {missing} not in alphabet")
    graph = Digraph(vertex_count, tuple(edges))
    return LabeledDigraph.build(graph, tuple(labels), alphabet)


def serialize_graph(g: LabeledDigraph) -> str:
    lines = [f"digraph {g.graph.vertex_count}"]
    for (s, t), label in zip(g.graph.edges, g.labels):
        lines.append(f"edge {s} {t} label {label}")
    lines.append("alphabet " + " ".join(g.alphabet))
    return "\n".join(lines) + "\n"


def parse_payoff(text: str, g_edges: int, h_edges: int) -> tuple[tuple[int, ...], ...]:
    table: list[list[int | None]] = [[None] * h_edges for _ in range(g_edges)]
    last_line = 0
    for lineno, toks in _tokens(text):
        last_line = lineno
        if toks[0] != "P" or len(toks) != 4:
            raise PayoffParseError(lineno, "expected: P <g_edge_id> <h_edge_id> <integer>")
        try:
            ge, he, val = int(toks[1]), int(toks[2]), int(toks[3])
        except ValueError:
            raise PayoffParseError(lineno, "payoff fields must be integers") from None
        if not (0 <= ge < g_edges):
            raise PayoffParseError(lineno, f"G-edge id {ge} out of range (have {g_edges})")
        if not (0 <= he < h_edges):
            raise PayoffParseError(lineno, f"H-edge id {he} out of range (have {h_edges})")
        if table[ge][he] is not None:
            raise PayoffParseError(lineno, f"duplicate payoff for pair ({ge},{he})")
        table[ge][he] = val
    for ge in range(g_edges):
        for he in range(h_edges):
            if table[ge][he] is None:
                raise PayoffParseError(last_line, f"missing payoff for pair ({ge},{he})")
    return tuple(tuple(row) for row in table)  # type: ignore[arg-type]


def serialize_payoff(payoff: tuple[tuple[int, ...], ...]) -> str:
    lines = [
        f"P {ge} {he} {val}"
        for ge, row in enumerate(payoff)
        for he, val in enumerate(row)
    ]
    return "\n".join(lines) + "\n"
