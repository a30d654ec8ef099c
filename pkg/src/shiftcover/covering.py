"""Covering radius of a primitive sofic shift, via a mean-payoff game.

A labeled-graph presentation is reduced to a game in which Alice spells an
arbitrary word over the ambient alphabet (a one-vertex graph with one loop
per symbol) and Bob answers with a walk of the presentation; the payoff is
the Hamming mismatch per position.  The n-round value of that game equals
the covering radius of the length-n code, so the solver's exact rational
is the covering radius of the shift.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .engine import GameInstance, NotPrimitiveError, SolveLimits, SolveReport, solve
from .graphs import (
    DEFAULT_ENUM_GUARD,
    Digraph,
    EnumerationGuardError,
    LabeledDigraph,
    enumerate_walks,
    is_primitive,
)

DEFAULT_TARGET_GUARD = 300_000

Word = tuple[str, ...]


@dataclass(frozen=True)
class CoveringProblem:
    """A primitive labeled presentation plus the ambient alphabet.

    The ambient alphabet may strictly contain the labels in use; targets
    range over all its words, so the covering radius genuinely depends
    on it.
    """

    presentation: LabeledDigraph
    alphabet: tuple[str, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "alphabet", tuple(str(s) for s in self.alphabet))
        if len(set(self.alphabet)) != len(self.alphabet):
            raise ValueError("ambient alphabet contains duplicates")
        if not set(self.presentation.labels) <= set(self.alphabet):
            raise ValueError("presentation uses labels outside the ambient alphabet")
        if not is_primitive(self.presentation.graph):
            raise NotPrimitiveError("presentation")

    @classmethod
    def build(
        cls, presentation: LabeledDigraph, alphabet: Optional[Sequence[str]] = None
    ) -> "CoveringProblem":
        """Default the ambient alphabet to the presentation's own."""
        if alphabet is None:
            alphabet = presentation.alphabet
        return cls(presentation, tuple(alphabet))


def hamming_distance(u: Sequence, v: Sequence) -> int:
    """Number of positions where two equal-length words differ."""
    if len(u) != len(v):
        raise ValueError(f"length mismatch: {len(u)} vs {len(v)}")
    return sum(1 for a, b in zip(u, v) if a != b)


def build_hamming_game(problem: CoveringProblem) -> GameInstance:
    """The game whose n-round value is the covering radius of the length-n code.

    Alice's graph is one vertex with a self-loop per ambient symbol, in
    alphabet order; the payoff charges 1 per label mismatch.
    """
    h = Digraph(1, tuple((0, 0) for _ in problem.alphabet))
    labels = problem.presentation.labels
    payoff = tuple(
        tuple(0 if labels[ge] == a else 1 for a in problem.alphabet)
        for ge in range(problem.presentation.graph.edge_count)
    )
    return GameInstance(problem.presentation.graph, h, payoff)


def covering_radius(
    problem: CoveringProblem, limits: Optional[SolveLimits] = None
) -> SolveReport:
    """Exact covering radius of the presented shift, with certificate."""
    return solve(build_hamming_game(problem), limits)


def code_words(problem: CoveringProblem, n: int, guard: int = DEFAULT_ENUM_GUARD) -> set[Word]:
    """Deduplicated label words of all length-n walks of the presentation."""
    pres = problem.presentation
    return {pres.word(w) for w in enumerate_walks(pres.graph, n, guard=guard)}


def brute_covering_radius_n(
    problem: CoveringProblem, n: int, max_targets: int = DEFAULT_TARGET_GUARD
) -> int:
    """Covering radius of the length-n code by full enumeration.

    Walks every target word over the ambient alphabet against every code
    word; independent of the game solver.
    """
    n_sym = len(problem.alphabet)
    targets = n_sym**n
    if targets > max_targets:
        raise EnumerationGuardError(f"{targets} target words exceed guard {max_targets}")
    index = {a: i for i, a in enumerate(problem.alphabet)}
    words = sorted(code_words(problem, n))
    code = np.asarray([[index[a] for a in w] for w in words], dtype=np.int8)  # (C, n)
    chunk = max(64, 8_000_000 // max(1, code.shape[0] * n))
    best = 0
    buf: list[tuple[int, ...]] = []

    def flush() -> None:
        nonlocal best
        ta = np.asarray(buf, dtype=np.int8)  # (T, n)
        dists = (ta[:, None, :] != code[None, :, :]).sum(axis=2)  # (T, C)
        best = max(best, int(dists.min(axis=1).max()))
        buf.clear()

    for tgt in itertools.product(range(n_sym), repeat=n):
        buf.append(tgt)
        if len(buf) >= chunk:
            flush()
    if buf:
        flush()
    return best
