import random

import pytest

from shiftcover import (
    Digraph,
    EnumerationGuardError,
    Walk,
    WalkError,
    concat,
    enumerate_walks,
    is_irreducible,
    is_primitive,
    period,
    primitivity_index,
)
from conftest import random_primitive_digraph

LOOP = Digraph(1, ((0, 0),))
TWO_CYCLE = Digraph(2, ((0, 1), (1, 0)))
GOLDEN = Digraph(2, ((0, 0), (0, 1), (1, 0)))
TWO_LOOPS = Digraph(1, ((0, 0), (0, 0)))


def test_digraph_validation():
    with pytest.raises(ValueError):
        Digraph(2, ((0, 2),))
    with pytest.raises(ValueError):
        Digraph(-1, ())
    g = Digraph(3, ((0, 1), (0, 2), (1, 0)))
    assert g.out_edges(0) == (0, 1)
    assert g.src(2) == 1 and g.dst(2) == 0


def test_is_irreducible():
    assert is_irreducible(LOOP)
    assert is_irreducible(TWO_CYCLE)
    assert not is_irreducible(Digraph(2, ((0, 1),)))
    assert not is_irreducible(Digraph(1, ()))  # no length->=1 walk from v to v
    assert not is_irreducible(Digraph(0, ()))


def test_period():
    assert period(TWO_CYCLE) == 2
    assert period(GOLDEN) == 1
    assert period(LOOP) == 1
    with pytest.raises(ValueError):
        period(Digraph(2, ((0, 1),)))


def test_period_divides_enumerated_cycle_lengths():
    rng = random.Random(2024)
    for _ in range(20):
        g = random_primitive_digraph(rng, 3, 5, 500, 6)
        # primitive graphs are a special case; also test a periodic one below
        d = period(g)
        for n in range(1, 6):
            for v in range(g.vertex_count):
                for w in enumerate_walks(g, n, src=v, dst=v):
                    assert w.length % d == 0
    assert all(w.length % 2 == 0 for n in (2, 4) for w in enumerate_walks(TWO_CYCLE, n, 0, 0))


def test_is_primitive():
    assert is_primitive(GOLDEN)
    assert not is_primitive(TWO_CYCLE)
    assert is_primitive(TWO_LOOPS)
    assert not is_primitive(Digraph(0, ()))


def test_primitivity_index():
    assert primitivity_index(LOOP) == 1
    assert primitivity_index(TWO_LOOPS) == 1
    # golden mean: adjacency squared is the first all-positive boolean power
    assert primitivity_index(GOLDEN) == 2
    with pytest.raises(ValueError):
        primitivity_index(TWO_CYCLE)


def test_primitivity_index_means_walks_of_every_length():
    rng = random.Random(7)
    for _ in range(15):
        g = random_primitive_digraph(rng, 3, 5, 500, 6)
        n0 = primitivity_index(g)
        for n in range(n0, min(n0 + 3, 9)):
            for v in range(g.vertex_count):
                for w in range(g.vertex_count):
                    assert any(True for _ in enumerate_walks(g, n, src=v, dst=w))


def test_enumerate_walks_examples():
    walks = [w.edges for w in enumerate_walks(GOLDEN, 2, src=0, dst=0)]
    assert walks == [(0, 0), (1, 2)]
    assert [w.edges for w in enumerate_walks(GOLDEN, 1)] == [(0,), (1,), (2,)]
    assert len(list(enumerate_walks(TWO_LOOPS, 3))) == 8


def test_enumerate_walks_order_and_guard():
    seen = [w.edges for w in enumerate_walks(GOLDEN, 3)]
    assert seen == sorted(seen)  # lexicographic by edge ids
    with pytest.raises(EnumerationGuardError):
        list(enumerate_walks(LOOP, 25))
    with pytest.raises(ValueError):
        list(enumerate_walks(LOOP, 0))


def test_walk_validation():
    with pytest.raises(WalkError):
        Walk(GOLDEN, ())
    with pytest.raises(WalkError):
        Walk(GOLDEN, (1, 1))  # edge 1 ends at B, edge 1 starts at A
    w = Walk(GOLDEN, (1, 2, 0))
    assert (w.start, w.end, w.length) == (0, 0, 3)
    assert w.subwalk(1, 3).edges == (2, 0)


def test_concat():
    p = Walk(GOLDEN, (1,))
    q = Walk(GOLDEN, (2,))
    assert concat(p, q).edges == (1, 2)
    loop = Walk(LOOP, (0,))
    assert concat(loop, loop).edges == (0, 0)
    with pytest.raises(WalkError):
        concat(q, q)  # q ends at A=0, q starts at B=1
    a, b, c = Walk(GOLDEN, (1,)), Walk(GOLDEN, (2,)), Walk(GOLDEN, (0,))
    assert concat(concat(a, b), c) == concat(a, concat(b, c))
    assert concat(a, b).length == a.length + b.length
