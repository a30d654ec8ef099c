"""Exact solver for non-alternating mean-payoff games on primitive graphs.

Alice commits to a length-n walk in H; Bob, seeing it, answers with a
length-n walk in G and pays Alice the summed payoff.  The n-round value
V_n is computed from families of pairwise-maximal cost matrices (one set
per ordered pair of H-vertices), which evolve by a min-plus product with
the single-edge family.  After subtracting V_n, the family takes finitely
many values, so it eventually repeats: a repeat at lengths n1 < n2 proves
V_{n+k} = V_n + V# for k = n2 - n1 and V# = V_{n2} - V_{n1}, and the
per-round value is exactly the rational V#/k.

``solve`` returns that rational together with the periodicity certificate;
``brute_value_n`` is the independent double-enumeration oracle.
"""

from __future__ import annotations

import hashlib
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional, Sequence

import numpy as np

from .graphs import (
    DEFAULT_ENUM_GUARD,
    Digraph,
    Walk,
    enumerate_walks,
    is_primitive,
    primitivity_index,
)
from .tropical import MatrixSet, TropMatrix, pareto_front


class NotPrimitiveError(ValueError):
    """A graph required to be primitive is not."""

    def __init__(self, which: str):
        super().__init__(f"graph {which} is not primitive")
        self.which = which


class MissingPayoffError(ValueError):
    """The payoff table does not cover every (G-edge, H-edge) pair exactly once."""


class AllInfiniteError(RuntimeError):
    """Every entry of every family matrix is +infinity (no finite value exists)."""


class LimitExceededError(RuntimeError):
    """Solving hit a resource limit; carries the partial value table."""

    def __init__(self, message: str, v_table: list[int]):
        super().__init__(message)
        self.v_table = v_table


@dataclass(frozen=True)
class SolveLimits:
    max_len: int = 10_000
    max_set_size: int = 100_000


@dataclass(frozen=True)
class GameInstance:
    """A validated game: primitive graphs ``g`` (Bob) and ``h`` (Alice), total payoff.

    ``payoff[g_edge][h_edge]`` is the integer Bob pays when the two edges
    are matched for one round.  Construction validates everything and
    records both primitivity indices.
    """

    g: Digraph
    h: Digraph
    payoff: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        payoff = tuple(tuple(row) for row in self.payoff)
        object.__setattr__(self, "payoff", payoff)
        if self.g.edge_count == 0:
            raise NotPrimitiveError("G")
        if self.h.edge_count == 0:
            raise NotPrimitiveError("H")
        if not is_primitive(self.g):
            raise NotPrimitiveError("G")
        if not is_primitive(self.h):
            raise NotPrimitiveError("H")
        if len(payoff) != self.g.edge_count:
            raise MissingPayoffError(
                f"payoff table has {len(payoff)} rows, need one per G-edge ({self.g.edge_count})"
            )
        for ge, row in enumerate(payoff):
            if len(row) != self.h.edge_count:
                raise MissingPayoffError(
                    f"payoff row for G-edge {ge} has {len(row)} entries, "
                    f"need one per H-edge ({self.h.edge_count})"
                )
            for he, x in enumerate(row):
                if isinstance(x, bool) or not isinstance(x, int):
                    raise MissingPayoffError(f"payoff({ge},{he}) must be an integer, got {x!r}")
        object.__setattr__(self, "_n0_g", primitivity_index(self.g))
        object.__setattr__(self, "_n0_h", primitivity_index(self.h))

    @property
    def n0_g(self) -> int:
        return self._n0_g  # type: ignore[attr-defined]

    @property
    def n0_h(self) -> int:
        return self._n0_h  # type: ignore[attr-defined]

    @property
    def payoff_norm(self) -> int:
        return max(abs(x) for row in self.payoff for x in row)


def validate(g: Digraph, h: Digraph, payoff: Sequence[Sequence[int]]) -> GameInstance:
    """Build a validated instance (primitivity + total payoff)."""
    return GameInstance(g, h, tuple(tuple(row) for row in payoff))


def edge_matrix(game: GameInstance, h_edge: int) -> TropMatrix:
    """Cheapest one-round response costs: entry (a,b) = min payoff over G-edges a->b."""
    d = game.g.vertex_count
    rows: list[list[Optional[int]]] = [[None] * d for _ in range(d)]
    for ge, (a, b) in enumerate(game.g.edges):
        cost = game.payoff[ge][h_edge]
        cur = rows[a][b]
        if cur is None or cost < cur:
            rows[a][b] = cost
    return TropMatrix(tuple(tuple(row) for row in rows))


def walk_matrix(game: GameInstance, p: Walk) -> TropMatrix:
    """Cost matrix of an Alice walk: the min-plus product of its edge matrices."""
    if p.graph != game.h:
        raise ValueError("walk does not live in the Alice graph H")
    out = edge_matrix(game, p.edges[0])
    for e in p.edges[1:]:
        out = out.mul(edge_matrix(game, e))
    return out


@dataclass
class DaggerFamily:
    """Per (start, end) H-vertex pair, the set of retained cost matrices at length n.

    Below the finiteness threshold n0(G) the sets are only deduplicated;
    from n0(G) on every matrix is finite and each set is pruned to its
    pairwise-maximal elements.
    """

    n: int
    sets: dict[tuple[int, int], MatrixSet]

    def pairs(self) -> list[tuple[int, int]]:
        return sorted(self.sets)

    def total_matrices(self) -> int:
        return sum(len(s) for s in self.sets.values())

    def all_nonempty(self) -> bool:
        return all(not s.is_empty for s in self.sets.values())

    def all_finite(self) -> bool:
        return all(s.all_finite() for s in self.sets.values())

    def normalized(self, offset: int) -> "DaggerFamily":
        """Subtract ``offset`` from every finite entry of every matrix."""
        return DaggerFamily(self.n, {k: s.shift(-offset) for k, s in self.sets.items()})

    def canonical(self) -> str:
        return " ".join(f"{u}>{v}={self.sets[(u, v)].canonical()}" for u, v in self.pairs())


@dataclass(frozen=True)
class Profile:
    """Value-normalized family, keyed by a collision-resistant digest.

    Equality is structural; the digest only buckets candidates, it never
    substitutes for the full comparison.
    """

    pairs: tuple[tuple[tuple[int, int], MatrixSet], ...]

    @classmethod
    def of(cls, normalized: DaggerFamily) -> "Profile":
        return cls(tuple((k, normalized.sets[k]) for k in normalized.pairs()))

    @property
    def digest(self) -> bytes:
        text = " ".join(f"{u}>{v}={s.canonical()}" for (u, v), s in self.pairs)
        return hashlib.sha256(text.encode("ascii")).digest()


def initial_family(game: GameInstance) -> DaggerFamily:
    """Length-1 family: deduplicated edge matrices grouped by H-edge endpoints."""
    groups: dict[tuple[int, int], list[TropMatrix]] = {
        (u, v): [] for u in range(game.h.vertex_count) for v in range(game.h.vertex_count)
    }
    for he, (u, v) in enumerate(game.h.edges):
        groups[(u, v)].append(edge_matrix(game, he))
    sets = {k: MatrixSet.of(ms) for k, ms in groups.items()}
    if 1 >= game.n0_g:
        sets = {k: s.dagger() for k, s in sets.items()}
    return DaggerFamily(1, sets)


def step_family(game: GameInstance, fam: DaggerFamily) -> DaggerFamily:
    """Advance the family one length step via min-plus products with length 1.

    Pruning to maximal elements is sound once every product is finite,
    i.e. from length n0(G) on; before that only duplicates are merged.
    Products feed a running maximal front so the unpruned pairwise union
    is never materialized.
    """
    init = initial_family(game)
    nv = game.h.vertex_count
    n_next = fam.n + 1
    use_dagger = n_next >= game.n0_g
    sets: dict[tuple[int, int], MatrixSet] = {}
    for u in range(nv):
        for w in range(nv):
            products = (
                f.mul(g)
                for v in range(nv)
                for f in fam.sets[(u, v)]
                for g in init.sets[(v, w)]
            )
            if use_dagger:
                sets[(u, w)] = MatrixSet.of(pareto_front(products))
            else:
                sets[(u, w)] = MatrixSet.of(products)
    return DaggerFamily(n_next, sets)


def iter_families(game: GameInstance) -> Iterator[DaggerFamily]:
    """Families at lengths 1, 2, 3, ... (unbounded; callers slice)."""
    fam = initial_family(game)
    while True:
        yield fam
        fam = step_family(game, fam)


def value_n(fam: DaggerFamily) -> int:
    """n-round value from the family: max over sets and matrices of the least entry."""
    if all(s.is_empty for s in fam.sets.values()):
        raise ValueError("family has no matrices at all")
    best: Optional[int] = None
    for key in fam.pairs():
        for m in fam.sets[key]:
            mn = m.min_entry()
            if mn is not None and (best is None or mn > best):
                best = mn
    if best is None:
        raise AllInfiniteError("every matrix entry is +infinity")
    return best


@dataclass
class SolveReport:
    """Exact game value with its periodicity certificate.

    ``value`` equals ``Fraction(v_dagger, k)`` where the value-normalized
    family at length ``n1`` first reappears at ``n2 = n1 + k`` and
    ``v_dagger = V_{n2} - V_{n1}``.  ``v_table[i]`` is V_{i+1} for lengths
    up to ``n2``.
    """

    value: Fraction
    n1: int
    n2: int
    k: int
    v_dagger: int
    v_table: list[int]
    n0_g: int
    n0_h: int
    iterations: int
    elapsed_ns: int

    def __post_init__(self) -> None:
        assert self.k == self.n2 - self.n1
        assert self.value == Fraction(self.v_dagger, self.k)
        for n in range(self.n1, self.n2 - self.k + 1):
            assert self.v_table[n + self.k - 1] == self.v_table[n - 1] + self.v_dagger

    def to_json_dict(self) -> dict:
        return {
            "value": {"num": self.value.numerator, "den": self.value.denominator},
            "k": self.k,
            "v_dagger": self.v_dagger,
            "n1": self.n1,
            "n2": self.n2,
            "n0_g": self.n0_g,
            "n0_h": self.n0_h,
            "v_table": list(self.v_table),
        }


def solve(game: GameInstance, limits: Optional[SolveLimits] = None) -> SolveReport:
    """Iterate the family until the value-normalized profile repeats.

    Profiles are recorded once the length reaches both primitivity indices
    (all sets nonempty, all matrices finite).  The first repeat, scanning
    lengths upward, yields the certificate; the limits guard memory and
    time against that search running away on hostile inputs.
    """
    limits = limits or SolveLimits()
    started = time.monotonic_ns()
    regime_start = max(game.n0_g, game.n0_h)
    v_table: list[int] = []
    seen: dict[bytes, list[tuple[int, Profile]]] = {}
    fam = initial_family(game)
    while True:
        n = fam.n
        if n > limits.max_len:
            raise LimitExceededError(f"no profile repeat within {limits.max_len} steps", v_table)
        if fam.total_matrices() > limits.max_set_size:
            raise LimitExceededError(
                f"family grew past {limits.max_set_size} matrices at length {n}", v_table
            )
        v_n = value_n(fam)
        v_table.append(v_n)
        if n >= regime_start:
            if not (fam.all_nonempty() and fam.all_finite()):
                raise RuntimeError("family not finite/nonempty past both primitivity indices (bug)")
            profile = Profile.of(fam.normalized(v_n))
            bucket = seen.setdefault(profile.digest, [])
            for n1, earlier in bucket:
                if earlier == profile:
                    k = n - n1
                    v_dagger = v_table[n - 1] - v_table[n1 - 1]
                    return SolveReport(
                        value=Fraction(v_dagger, k),
                        n1=n1,
                        n2=n,
                        k=k,
                        v_dagger=v_dagger,
                        v_table=v_table,
                        n0_g=game.n0_g,
                        n0_h=game.n0_h,
                        iterations=n,
                        elapsed_ns=time.monotonic_ns() - started,
                    )
            bucket.append((n, profile))
        fam = step_family(game, fam)


def vn_table(game: GameInstance, n_max: int) -> list[int]:
    """V_n for n = 1..n_max via the family recursion."""
    out = []
    fams = iter_families(game)
    for _ in range(n_max):
        out.append(value_n(next(fams)))
    return out


def brute_value_n(game: GameInstance, n: int, guard: int = DEFAULT_ENUM_GUARD) -> int:
    """n-round value by double walk enumeration.

    Exponential-cost oracle: enumerates every Alice walk and every Bob walk
    and takes max-of-min of the summed payoffs directly, sharing nothing
    with the family recursion.
    """
    walks_h = [w.edges for w in enumerate_walks(game.h, n, guard=guard)]
    walks_g = [w.edges for w in enumerate_walks(game.g, n, guard=guard)]
    if not walks_h or not walks_g:
        raise RuntimeError("primitive graphs must have walks of every length (bug)")
    pay = np.asarray(game.payoff, dtype=np.int64)
    qa = np.asarray(walks_g, dtype=np.intp)  # (Q, n)
    best: Optional[int] = None
    chunk = max(1, 262_144 // len(walks_g))
    for lo in range(0, len(walks_h), chunk):
        pa = np.asarray(walks_h[lo : lo + chunk], dtype=np.intp)  # (C, n)
        totals = np.zeros((qa.shape[0], pa.shape[0]), dtype=np.int64)
        for i in range(n):
            totals += pay[qa[:, i][:, None], pa[:, i][None, :]]
        m = int(totals.min(axis=0).max())
        best = m if best is None else max(best, m)
    assert best is not None
    return best
