import pytest

from shiftcover import Digraph, LabeledDigraph
from shiftcover.formats import (
    GraphParseError,
    PayoffParseError,
    parse_graph,
    parse_payoff,
    serialize_graph,
    serialize_payoff,
)

FULL2 = "digraph 1\nedge 0 0 label 0\nedge 0 0 label 1\n"
GOLDEN = "digraph 2\nedge 0 0 label 0\nedge 0 1 label 1\nedge 1 0 label 0\n"


def test_parse_graph_examples():
    g = parse_graph(FULL2)
    assert g.graph == Digraph(1, ((0, 0), (0, 0)))
    assert g.labels == ("0", "1")
    assert g.alphabet == ("0", "1")
    g = parse_graph(GOLDEN)
    assert g.graph == Digraph(2, ((0, 0), (0, 1), (1, 0)))
    assert g.labels == ("0", "1", "0")
    assert g.alphabet == ("0", "1")  # first-occurrence order


def test_parse_graph_alphabet_and_comments():
    text = "# a presentation\n\ndigraph 1\nedge 0 0 label x  # loop\nalphabet x y z\n"
    g = parse_graph(text)
    assert g.alphabet == ("x", "y", "z")
    assert g.labels == ("x",)


def test_parse_graph_unlabeled_edges_get_placeholder():
    g = parse_graph("digraph 2\nedge 0 1\nedge 1 0\n")
    assert g.labels == ("_", "_")
    assert g.alphabet == ("_",)


def test_parse_graph_errors():
    with pytest.raises(GraphParseError) as exc:
        parse_graph("digraph 2\nedge 0 2 label a\n")
    assert exc.value.lineno == 2
    with pytest.raises(GraphParseError):
        parse_graph("edge 0 0\ndigraph 1\n")
    with pytest.raises(GraphParseError):
        parse_graph("digraph 1\ndigraph 1\n")
    with pytest.raises(GraphParseError):
        parse_graph("digraph 1\nedge 0 0 tag x\n")
    with pytest.raises(GraphParseError):
        parse_graph("digraph one\n")
    with pytest.raises(GraphParseError):
        parse_graph("digraph 1\nfrobnicate\n")
    with pytest.raises(GraphParseError) as exc:
        parse_graph("digraph 1\nedge 0 0 label q\nalphabet a b\n")
    assert exc.value.lineno == 3
    with pytest.raises(GraphParseError):
        parse_graph("")


def test_graph_roundtrip():
    for text in (FULL2, GOLDEN):
        parsed = parse_graph(text)
        canon = serialize_graph(parsed)
        again = parse_graph(canon)
        assert again == parsed
        assert serialize_graph(again) == canon


def test_parse_payoff():
    text = "P 0 0 0\nP 0 1 1\nP 1 0 -1\nP 1 1 0\n"
    table = parse_payoff(text, 2, 2)
    assert table == ((0, 1), (-1, 0))
    assert parse_payoff(serialize_payoff(table), 2, 2) == table


def test_parse_payoff_errors():
    with pytest.raises(PayoffParseError):
        parse_payoff("P 0 0 1\nP 0 0 2\n", 1, 1)  # duplicate
    with pytest.raises(PayoffParseError):
        parse_payoff("P 0 0 1\n", 2, 1)  # missing pair
    with pytest.raises(PayoffParseError):
        parse_payoff("P 5 0 1\n", 1, 1)  # out of range
    with pytest.raises(PayoffParseError):
        parse_payoff("P 0 0 x\n", 1, 1)
    with pytest.raises(PayoffParseError):
        parse_payoff("Q 0 0 1\n", 1, 1)


def test_serialize_graph_writes_all_labels():
    g = LabeledDigraph.build(Digraph(1, ((0, 0),)), ("0",), ("0", "1"))
    text = serialize_graph(g)
    assert "label 0" in text and text.endswith("alphabet 0 1\n")
