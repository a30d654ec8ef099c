import random
from fractions import Fraction
from itertools import product
from math import gcd

import pytest

from shiftcover import (
    CoveringProblem,
    Digraph,
    LabeledDigraph,
    NotPrimitiveError,
    brute_covering_radius_n,
    brute_value_n,
    build_hamming_game,
    code_words,
    covering_radius,
    hamming_distance,
    vn_table,
)
from conftest import (
    full2_problem,
    golden_mean_problem,
    loop0_problem,
    random_covering_problem,
)


def test_problem_validation():
    two_cycle = LabeledDigraph.build(Digraph(2, ((0, 1), (1, 0))), ("0", "1"))
    with pytest.raises(NotPrimitiveError):
        CoveringProblem.build(two_cycle)
    pres = LabeledDigraph.build(Digraph(1, ((0, 0),)), ("z",))
    with pytest.raises(ValueError):
        CoveringProblem(pres, ("0", "1"))  # label outside ambient alphabet
    with pytest.raises(ValueError):
        CoveringProblem(pres, ("z", "z"))


def test_hamming_distance():
    assert hamming_distance("0101", "0101") == 0
    assert hamming_distance("1111", "1010") == 2
    assert hamming_distance("abc", "abd") == 1
    with pytest.raises(ValueError):
        hamming_distance("ab", "abc")


def test_build_hamming_game():
    game = build_hamming_game(full2_problem())
    assert game.h.edges == ((0, 0), (0, 0))
    assert game.payoff == ((0, 1), (1, 0))
    assert build_hamming_game(loop0_problem()).payoff == ((0, 1),)
    golden = build_hamming_game(golden_mean_problem())
    assert golden.payoff == ((0, 1), (1, 0), (0, 1))


def test_code_words():
    golden = golden_mean_problem()
    assert code_words(golden, 2) == {("0", "0"), ("0", "1"), ("1", "0")}
    assert len(code_words(full2_problem(), 3)) == 8
    assert code_words(loop0_problem(), 4) == {("0",) * 4}


def brute_radius_reference(problem, n):
    """Straight-line reimplementation over hamming_distance, for cross-checking."""
    words = code_words(problem, n)
    return max(
        min(hamming_distance(v, w) for w in words)
        for v in product(problem.alphabet, repeat=n)
    )


def test_brute_covering_radius():
    golden = golden_mean_problem()
    assert brute_covering_radius_n(golden, 2) == 1
    assert brute_covering_radius_n(golden, 4) == 2
    assert all(brute_covering_radius_n(full2_problem(), n) == 0 for n in range(1, 7))
    rng = random.Random(42)
    for _ in range(10):
        problem = random_covering_problem(rng, cap=500)
        for n in range(1, 5):
            assert brute_covering_radius_n(problem, n) == brute_radius_reference(problem, n)


def test_known_covering_radii():
    assert covering_radius(full2_problem()).value == Fraction(0, 1)
    assert covering_radius(loop0_problem()).value == Fraction(1, 1)
    report = covering_radius(golden_mean_problem())
    assert report.value == Fraction(1, 2)
    assert report.value.denominator > 0
    assert gcd(report.value.numerator, report.value.denominator) == 1


def test_ambient_alphabet_matters():
    pres = LabeledDigraph.build(Digraph(1, ((0, 0),)), ("0",))
    tight = CoveringProblem.build(pres)  # ambient alphabet {0}
    assert covering_radius(tight).value == 0
    wide = CoveringProblem.build(pres, ("0", "1"))
    assert covering_radius(wide).value == 1


def test_reduction_equivalence_named():
    for problem in (full2_problem(), loop0_problem(), golden_mean_problem()):
        game = build_hamming_game(problem)
        table = vn_table(game, 10)
        for n in range(1, 11):
            radius = brute_covering_radius_n(problem, n)
            assert radius == table[n - 1]
            if n <= 7:
                assert radius == brute_value_n(game, n)


def test_reduction_equivalence_random():
    rng = random.Random(43)
    for _ in range(10):
        problem = random_covering_problem(rng, cap=800)
        game = build_hamming_game(problem)
        table = vn_table(game, 6)
        for n in range(1, 7):
            assert brute_covering_radius_n(problem, n) == table[n - 1]
