"""Finite directed multigraphs, labeled graphs, and walks.

Edge identity is positional: edge ``i`` is ``edges[i]``.  Every
deterministic tie-break in this package (walk enumeration order, argmin
backtracking, witness cycles) is by ascending edge id, so the edge order
of a graph is part of its identity.

All types here are immutable after construction and safe to share.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterator, Optional, Sequence

DEFAULT_ENUM_GUARD = 20


class WalkError(ValueError):
    """A walk whose edges do not chain, or concatenation endpoints that differ."""


class EnumerationGuardError(RuntimeError):
    """A walk enumeration was asked to exceed its configured length guard."""


@dataclass(frozen=True)
class Digraph:
    """Directed multigraph; parallel edges and self-loops are allowed.

    ``edges[i] == (src, dst)`` and the position ``i`` is the edge id.
    """

    vertex_count: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        edges = tuple((int(s), int(t)) for s, t in self.edges)
        object.__setattr__(self, "edges", edges)
        if self.vertex_count < 0:
            raise ValueError("vertex_count must be non-negative")
        for i, (s, t) in enumerate(edges):
            if not (0 <= s < self.vertex_count) or not (0 <= t < self.vertex_count):
                raise ValueError(
                    f"edge {i}=({s},{t}) out of range for {self.vertex_count} vertices"
                )
        out: list[list[int]] = [[] for _ in range(self.vertex_count)]
        for i, (s, _) in enumerate(edges):
            out[s].append(i)
        object.__setattr__(self, "_out", tuple(tuple(es) for es in out))

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def src(self, e: int) -> int:
        return self.edges[e][0]

    def dst(self, e: int) -> int:
        return self.edges[e][1]

    def out_edges(self, v: int) -> tuple[int, ...]:
        """Edge ids leaving ``v``, ascending."""
        return self._out[v]  # type: ignore[attr-defined]


@dataclass(frozen=True)
class Walk:
    """Nonempty edge sequence with matching endpoints (length >= 1)."""

    graph: Digraph
    edges: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "edges", tuple(int(e) for e in self.edges))
        if not self.edges:
            raise WalkError("walks must contain at least one edge")
        g = self.graph
        for e in self.edges:
            if not (0 <= e < g.edge_count):
                raise WalkError(f"edge id {e} out of range")
        for a, b in zip(self.edges, self.edges[1:]):
            if g.dst(a) != g.src(b):
                raise WalkError(f"edges {a} and {b} do not chain")

    @property
    def length(self) -> int:
        return len(self.edges)

    @property
    def start(self) -> int:
        return self.graph.src(self.edges[0])

    @property
    def end(self) -> int:
        return self.graph.dst(self.edges[-1])

    def subwalk(self, i: int, j: int) -> "Walk":
        """Contiguous subwalk ``edges[i:j]`` (must be nonempty)."""
        return Walk(self.graph, self.edges[i:j])


def concat(p: Walk, q: Walk) -> Walk:
    """Concatenate two walks; the end of ``p`` must be the start of ``q``."""
    if p.graph != q.graph:
        raise WalkError("walks live in different graphs")
    if p.end != q.start:
        raise WalkError(f"cannot concatenate: walk ends at {p.end}, next starts at {q.start}")
    return Walk(p.graph, p.edges + q.edges)


@dataclass(frozen=True)
class LabeledDigraph:
    """A digraph with one symbol per edge, over an ordered ambient alphabet."""

    graph: Digraph
    labels: tuple[str, ...]
    alphabet: tuple[str, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "labels", tuple(str(s) for s in self.labels))
        object.__setattr__(self, "alphabet", tuple(str(s) for s in self.alphabet))
        if len(self.labels) != self.graph.edge_count:
            raise ValueError("need exactly one label per edge")
        if len(set(self.alphabet)) != len(self.alphabet):
            raise ValueError("alphabet contains duplicate symbols")
        missing = [s for s in self.labels if s not in set(self.alphabet)]
        if missing:
            raise ValueError(f"labels {sorted(set(missing))} not in alphabet")

    @classmethod
    def build(
        cls,
        graph: Digraph,
        labels: Sequence[str],
        alphabet: Optional[Sequence[str]] = None,
    ) -> "LabeledDigraph":
        """Construct, defaulting the alphabet to labels in first-occurrence order."""
        labels = tuple(str(s) for s in labels)
        if alphabet is None:
            seen: dict[str, None] = {}
            for s in labels:
                seen.setdefault(s, None)
            alphabet = tuple(seen)
        return cls(graph, labels, tuple(alphabet))

    def word(self, walk: Walk) -> tuple[str, ...]:
        """The label sequence read along a walk."""
        return tuple(self.labels[e] for e in walk.edges)


def is_irreducible(g: Digraph) -> bool:
    """True iff every ordered vertex pair is joined by a walk of length >= 1.

    Equivalently: the whole graph is one strongly connected component and
    there is at least one edge.  A single vertex without a loop fails.
    """
    if g.vertex_count == 0 or g.edge_count == 0:
        return False
    fwd = _reachable(g, 0, forward=True)
    bwd = _reachable(g, 0, forward=False)
    return len(fwd) == g.vertex_count and len(bwd) == g.vertex_count


def _reachable(g: Digraph, root: int, forward: bool) -> set[int]:
    seen = {root}
    stack = [root]
    while stack:
        v = stack.pop()
        for i, (s, t) in enumerate(g.edges):
            a, b = (s, t) if forward else (t, s)
            if a == v and b not in seen:
                seen.add(b)
                stack.append(b)
    return seen


def period(g: Digraph) -> int:
    """The gcd of all cycle lengths of an irreducible graph.

    Computed from a BFS layering rooted at vertex 0: the gcd of
    ``level(u) + 1 - level(v)`` over all edges ``u -> v``.
    """
    if not is_irreducible(g):
        raise ValueError("period is defined for irreducible graphs only")
    level = {0: 0}
    frontier = [0]
    while frontier:
        nxt = []
        for v in frontier:
            for e in g.out_edges(v):
                w = g.dst(e)
                if w not in level:
                    level[w] = level[v] + 1
                    nxt.append(w)
        frontier = nxt
    d = 0
    for s, t in g.edges:
        d = gcd(d, level[s] + 1 - level[t])
    assert d >= 1, "irreducible graph must have a cycle"
    return d


def is_primitive(g: Digraph) -> bool:
    """Irreducible with cycle-length gcd 1."""
    if g.vertex_count == 0 or not is_irreducible(g):
        return False
    return period(g) == 1


def primitivity_index(g: Digraph) -> int:
    """Least n0 such that every ordered pair is joined by walks of every length >= n0.

    Found by boolean adjacency powering: once some power is all-positive it
    stays all-positive, so the first all-positive power is the index.  The
    search is capped at the Wielandt bound (|V|-1)^2 + 1, which primitive
    graphs cannot exceed; hitting the cap therefore signals a bug.
    """
    if not is_primitive(g):
        raise ValueError("primitivity index is defined for primitive graphs only")
    nv = g.vertex_count
    rows = [0] * nv
    for s, t in g.edges:
        rows[s] |= 1 << t
    full = (1 << nv) - 1
    cap = (nv - 1) * (nv - 1) + 1
    power = list(rows)
    n = 1
    while any(r != full for r in power):
        n += 1
        if n > cap:
            raise RuntimeError("primitivity index exceeded the Wielandt bound (bug)")
        power = [_bitrow_mul(power[v], rows, nv) for v in range(nv)]
    return n


def _bitrow_mul(row: int, rows: list[int], nv: int) -> int:
    out = 0
    for u in range(nv):
        if row >> u & 1:
            out |= rows[u]
    return out


def enumerate_walks(
    g: Digraph,
    n: int,
    src: Optional[int] = None,
    dst: Optional[int] = None,
    guard: int = DEFAULT_ENUM_GUARD,
) -> Iterator[Walk]:
    """Yield all length-``n`` walks matching the endpoint filters.

    Walks come out in lexicographic edge-id order.  The cost is exponential
    in ``n``; the guard refuses accidental blowups (oracle use only).
    """
    if n < 1:
        raise ValueError("walks have length >= 1")
    if n > guard:
        raise EnumerationGuardError(f"walk length {n} exceeds guard {guard}")

    def extend(prefix: tuple[int, ...], at: int, remaining: int) -> Iterator[Walk]:
        if remaining == 0:
            if dst is None or at == dst:
                yield Walk(g, prefix)
            return
        for e in g.out_edges(at):
            yield from extend(prefix + (e,), g.dst(e), remaining - 1)

    for e in range(g.edge_count):
        if src is not None and g.src(e) != src:
            continue
        yield from extend((e,), g.dst(e), n - 1)
