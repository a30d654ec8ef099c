"""Shared fixtures: named presentations and seeded random instance generators.

Generators reject non-primitive draws and also cap walk counts so the
double-enumeration oracles stay within their time budget; the caps bound
enumeration size, not the structure of the graphs.
"""

from __future__ import annotations

import random

import pytest

from shiftcover import (
    CoveringProblem,
    Digraph,
    GameInstance,
    LabeledDigraph,
    LimitExceededError,
    SolveLimits,
    is_primitive,
    solve,
)


def walk_count(g: Digraph, n: int) -> int:
    ways = [1] * g.vertex_count
    for _ in range(n):
        nxt = [0] * g.vertex_count
        for s, t in g.edges:
            nxt[s] += ways[t]
        ways = nxt
    return sum(ways)


def random_primitive_digraph(
    rng: random.Random, max_v: int, max_e: int, cap: int, cap_len: int = 8
) -> Digraph:
    while True:
        nv = rng.randint(1, max_v)
        ne = rng.randint(1, max_e)
        g = Digraph(nv, tuple((rng.randrange(nv), rng.randrange(nv)) for _ in range(ne)))
        if is_primitive(g) and walk_count(g, cap_len) <= cap:
            return g


def random_game(
    rng: random.Random,
    max_v: int = 3,
    max_e: int = 6,
    pay: int = 3,
    cap: int = 1200,
    cap_len: int = 8,
) -> GameInstance:
    g = random_primitive_digraph(rng, max_v, max_e, cap, cap_len)
    h = random_primitive_digraph(rng, max_v, max_e, cap, cap_len)
    payoff = tuple(
        tuple(rng.randint(-pay, pay) for _ in range(h.edge_count))
        for _ in range(g.edge_count)
    )
    return GameInstance(g, h, payoff)


def random_covering_problem(
    rng: random.Random, max_v: int = 3, max_e: int = 5, max_sym: int = 3, cap: int = 3000
) -> CoveringProblem:
    g = random_primitive_digraph(rng, max_v, max_e, cap)
    alphabet = tuple("abc"[: rng.randint(1, max_sym)])
    labels = tuple(rng.choice(alphabet) for _ in range(g.edge_count))
    return CoveringProblem.build(LabeledDigraph.build(g, labels, alphabet), alphabet)


def random_automaton_instance(rng: random.Random, max_horizon: int = 14, max_walks: int = 20000):
    """A solved game small enough that the language cross-check is enumerable.

    Resamples until the certificate horizon n1 + 4k and the Alice walk
    count at that horizon are within enumeration reach.
    """
    budget = SolveLimits(max_len=80, max_set_size=400)
    while True:
        g = random_primitive_digraph(rng, 2, 4, 400)
        h = random_primitive_digraph(rng, 2, 4, 400)
        payoff = tuple(
            tuple(rng.randint(-2, 2) for _ in range(h.edge_count))
            for _ in range(g.edge_count)
        )
        game = GameInstance(g, h, payoff)
        try:
            report = solve(game, budget)
        except LimitExceededError:
            continue
        horizon = report.n1 + 4 * report.k
        if horizon <= max_horizon and walk_count(h, horizon) <= max_walks:
            return game, report


def full2_problem() -> CoveringProblem:
    """Full binary shift: one vertex, loops labeled 0 and 1."""
    pres = LabeledDigraph.build(Digraph(1, ((0, 0), (0, 0))), ("0", "1"))
    return CoveringProblem.build(pres)


def loop0_problem() -> CoveringProblem:
    """Single loop labeled 0 inside ambient alphabet {0, 1}."""
    pres = LabeledDigraph.build(Digraph(1, ((0, 0),)), ("0",), ("0", "1"))
    return CoveringProblem.build(pres)


def golden_mean_problem() -> CoveringProblem:
    """No-consecutive-ones shift: A -0-> A, A -1-> B, B -0-> A."""
    pres = LabeledDigraph.build(Digraph(2, ((0, 0), (0, 1), (1, 0))), ("0", "1", "0"))
    return CoveringProblem.build(pres)


@pytest.fixture
def golden_problem() -> CoveringProblem:
    return golden_mean_problem()


@pytest.fixture
def named_problems() -> list[CoveringProblem]:
    return [full2_problem(), loop0_problem(), golden_mean_problem()]
