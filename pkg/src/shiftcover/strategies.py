"""Optimal-strategy objects: non-improvable walks, best responses, and
periodic equilibrium pairs.

An Alice walk is *non-improvable* when its cost matrix is maximal (not
entry-wise strictly dominated) among walks with the same endpoints and
length.  Once the solver has certified periodicity, those walks are the
paths of a finite automaton whose states track the value-normalized cost
matrix, the walk endpoints, and the length residue mod k; trimming the
automaton to bi-extendable states leaves a presentation of the shift of
everywhere-non-improvable sequences.  A shortest cycle in that automaton
and a minimum-mean response cycle against it form a periodic pair whose
per-round average equals the game value exactly.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional, Sequence

from .engine import GameInstance, SolveReport, edge_matrix, iter_families
from .graphs import DEFAULT_ENUM_GUARD, Digraph, EnumerationGuardError, Walk
from .tropical import Entry, MatrixSet, TropMatrix, ext_add


class InfeasibleResponseError(ValueError):
    """No Bob walk exists between the requested endpoints (infinite cost)."""


class EmptyAutomatonError(RuntimeError):
    """Trimming removed every state; the non-improvable shift is never empty, so this is a bug."""


class MeanMismatchError(RuntimeError):
    """The extracted periodic pair does not achieve the solver value (bug)."""


class AcyclicError(ValueError):
    """Minimum cycle mean is undefined on a graph without cycles."""


State = tuple[int, int, int, TropMatrix]  # (start vertex, end vertex, residue, matrix)


def _walks_with_matrices(
    game: GameInstance, n: int, guard: int
) -> list[tuple[tuple[int, ...], TropMatrix]]:
    """All length-n Alice walks with their cost matrices, lexicographic by edge ids.

    Built incrementally, one edge-matrix product per extension, which is
    equivalent to folding the walk's edge matrices left to right.
    """
    if n < 1:
        raise ValueError("walks have length >= 1")
    if n > guard:
        raise EnumerationGuardError(f"walk length {n} exceeds guard {guard}")
    h = game.h
    mats = [edge_matrix(game, e) for e in range(h.edge_count)]
    level = [((e,), mats[e]) for e in range(h.edge_count)]
    for _ in range(n - 1):
        nxt = []
        for edges, m in level:
            for e in h.out_edges(h.dst(edges[-1])):
                nxt.append((edges + (e,), m.mul(mats[e])))
        level = nxt
    return level


def non_improvable_with_matrices(
    game: GameInstance, n: int, guard: int = DEFAULT_ENUM_GUARD
) -> list[tuple[Walk, TropMatrix]]:
    """Length-n walks whose matrix is maximal within their endpoint class."""
    by_pair: dict[tuple[int, int], list[tuple[tuple[int, ...], TropMatrix]]] = {}
    for edges, m in _walks_with_matrices(game, n, guard):
        u = game.h.src(edges[0])
        v = game.h.dst(edges[-1])
        by_pair.setdefault((u, v), []).append((edges, m))
    out = []
    for pair in sorted(by_pair):
        entries = by_pair[pair]
        kept = MatrixSet.of(m for _, m in entries).dagger()
        out.extend((Walk(game.h, edges), m) for edges, m in entries if m in kept)
    out.sort(key=lambda wm: wm[0].edges)
    return out


def non_improvable_walks(game: GameInstance, n: int, guard: int = DEFAULT_ENUM_GUARD) -> list[Walk]:
    return [w for w, _ in non_improvable_with_matrices(game, n, guard)]


def best_responses(
    game: GameInstance,
    p: Walk,
    v: int,
    w: int,
    all_responses: bool = True,
) -> list[Walk]:
    """Bob walks v -> w achieving the optimal cost against Alice's walk ``p``.

    With ``all_responses=False`` only the canonical optimum is returned:
    the greedy choice of the least viable edge id at every step, i.e. the
    lexicographically least optimal response.
    """
    if p.graph != game.h:
        raise ValueError("walk does not live in the Alice graph H")
    g = game.g
    n = p.length
    fwd: list[list[Entry]] = [[None] * g.vertex_count for _ in range(n + 1)]
    fwd[0][v] = 0
    for j, he in enumerate(p.edges):
        for ge, (a, b) in enumerate(g.edges):
            c = ext_add(fwd[j][a], game.payoff[ge][he])
            if c is not None and (fwd[j + 1][b] is None or c < fwd[j + 1][b]):
                fwd[j + 1][b] = c
    opt = fwd[n][w]
    if opt is None:
        raise InfeasibleResponseError(f"no response walk {v} -> {w} of length {n}")
    bwd: list[list[Entry]] = [[None] * g.vertex_count for _ in range(n + 1)]
    bwd[n][w] = 0
    for j in range(n - 1, -1, -1):
        he = p.edges[j]
        for ge, (a, b) in enumerate(g.edges):
            c = ext_add(bwd[j + 1][b], game.payoff[ge][he])
            if c is not None and (bwd[j][a] is None or c < bwd[j][a]):
                bwd[j][a] = c

    def viable(j: int, acc: int, a: int) -> Iterator[tuple[int, int]]:
        he = p.edges[j]
        for ge in g.out_edges(a):
            cost = acc + game.payoff[ge][he]
            rest = bwd[j + 1][g.dst(ge)]
            if rest is not None and cost + rest == opt:
                yield ge, cost

    results: list[Walk] = []

    def collect(j: int, acc: int, a: int, prefix: tuple[int, ...]) -> bool:
        if j == n:
            results.append(Walk(g, prefix))
            return not all_responses
        for ge, cost in viable(j, acc, a):
            if collect(j + 1, cost, g.dst(ge), prefix + (ge,)):
                return True
        return False

    collect(0, 0, v, ())
    return results


@dataclass(frozen=True)
class ProfileAutomaton:
    """Finite presentation of the everywhere-non-improvable Alice sequences.

    States are (walk start, walk end, length residue mod k, normalized
    matrix); reading H-edge ``e`` maps the matrix through a min-plus
    product with the edge matrix, shifted down by the per-residue value
    increment.  Only trimmed (bi-extendable) states are kept.
    """

    h: Digraph
    states: tuple[State, ...]
    transitions: dict[tuple[State, int], State]
    increments: tuple[int, ...]
    n1: int
    k: int

    def successors(self, s: State) -> list[tuple[int, State]]:
        return [
            (e, self.transitions[(s, e)])
            for e in self.h.out_edges(s[1])
            if (s, e) in self.transitions
        ]

    def language(self, n: int, guard: int = DEFAULT_ENUM_GUARD) -> set[tuple[int, ...]]:
        """All length-n H-edge sequences readable somewhere in the automaton."""
        if n > guard:
            raise EnumerationGuardError(f"language length {n} exceeds guard {guard}")
        memo: dict[tuple[State, int], frozenset[tuple[int, ...]]] = {}

        def suffixes(s: State, m: int) -> frozenset[tuple[int, ...]]:
            if m == 0:
                return frozenset({()})
            key = (s, m)
            if key not in memo:
                acc = set()
                for e, t in self.successors(s):
                    for rest in suffixes(t, m - 1):
                        acc.add((e,) + rest)
                memo[key] = frozenset(acc)
            return memo[key]

        out: set[tuple[int, ...]] = set()
        for s in self.states:
            out |= suffixes(s, n)
        return out

    def to_json_dict(self) -> dict:
        index = {s: i for i, s in enumerate(self.states)}
        return {
            "n1": self.n1,
            "k": self.k,
            "increments": list(self.increments),
            "states": [
                {
                    "id": i,
                    "start_vertex": s[0],
                    "end_vertex": s[1],
                    "residue": s[2],
                    "matrix": s[3].to_json(),
                }
                for i, s in enumerate(self.states)
            ],
            "transitions": sorted(
                (
                    {"from": index[s], "edge": e, "to": index[t]}
                    for (s, e), t in self.transitions.items()
                ),
                key=lambda d: (d["from"], d["edge"]),
            ),
        }


def _state_key(s: State) -> tuple:
    return (s[0], s[1], s[2], s[3].sort_key())


def build_dagger_automaton(game: GameInstance, report: SolveReport) -> ProfileAutomaton:
    """Construct and trim the profile automaton from a solved game.

    Seeds are the normalized maximal-matrix families at length n1; closure
    follows single H-edges, keeping only targets whose matrix belongs to
    the family at the next residue; trimming then deletes states without a
    predecessor or successor until stable.
    """
    k, n1, n2 = report.k, report.n1, report.n2
    fams = []
    it = iter_families(game)
    for _ in range(n2):
        fams.append(next(it))
    norm: dict[int, dict[tuple[int, int], MatrixSet]] = {}
    incr = [0] * k
    for n in range(n1, n2):
        fam = fams[n - 1].normalized(report.v_table[n - 1])
        norm[n % k] = fam.sets
        incr[n % k] = report.v_table[n] - report.v_table[n - 1]

    h = game.h
    mats = [edge_matrix(game, e) for e in range(h.edge_count)]
    r1 = n1 % k
    seeds = [
        (u, v, r1, m)
        for (u, v) in sorted(norm[r1])
        for m in norm[r1][(u, v)]
    ]
    states: set[State] = set(seeds)
    transitions: dict[tuple[State, int], State] = {}
    queue = deque(sorted(seeds, key=_state_key))
    while queue:
        s = queue.popleft()
        u, v, r, m = s
        r2 = (r + 1) % k
        for e in h.out_edges(v):
            w = h.dst(e)
            m2 = m.mul(mats[e]).shift(-incr[r])
            if m2 in norm[r2][(u, w)]:
                t: State = (u, w, r2, m2)
                transitions[(s, e)] = t
                if t not in states:
                    states.add(t)
                    queue.append(t)

    # Trim to bi-extendable states.
    while True:
        has_out = {s for (s, _), t in transitions.items() if t in states}
        has_in = {t for (s, _), t in transitions.items() if s in states}
        keep = {s for s in states if s in has_out and s in has_in}
        if keep == states:
            break
        states = keep
        transitions = {
            (s, e): t for (s, e), t in transitions.items() if s in states and t in states
        }
    if not states:
        raise EmptyAutomatonError("profile automaton trimmed to nothing")
    return ProfileAutomaton(
        h=h,
        states=tuple(sorted(states, key=_state_key)),
        transitions=transitions,
        increments=tuple(incr),
        n1=n1,
        k=k,
    )


def languages_agree(
    game: GameInstance,
    automaton: ProfileAutomaton,
    n: int,
    guard: int = DEFAULT_ENUM_GUARD,
) -> bool:
    """Check the automaton's length-n language against enumeration.

    The reference set is the length-n window with k of slack on each side
    of every non-improvable walk of length n + 2k; the flanks stand in
    for bi-infinite extendability (windows hugging an end may be dead
    ends, e.g. a final burst that no longer walk can continue).
    """
    lang = automaton.language(n, guard=guard)
    slack = automaton.k
    windows: set[tuple[int, ...]] = set()
    for w in non_improvable_walks(game, n + 2 * slack, guard=guard + 2 * slack):
        windows.add(w.edges[slack : slack + n])
    return lang == windows


def min_cycle_mean(g: Digraph, weights: Sequence[int]) -> tuple[Fraction, Walk]:
    """Exact minimum mean weight over all directed cycles, with a witness.

    Karp's dynamic program per strongly connected component gives the
    optimum; the witness is recovered as a cycle of the edges made tight
    by shortest-path potentials for the reduced weights, searched from the
    least vertex with ascending edge ids (deterministic).
    """
    if len(weights) != g.edge_count:
        raise ValueError("need exactly one weight per edge")
    best: Optional[Fraction] = None
    best_scc: Optional[list[int]] = None
    for scc in _strongly_connected_components(g):
        members = set(scc)
        internal = [e for e in range(g.edge_count) if g.src(e) in members and g.dst(e) in members]
        if not internal:
            continue
        mu = _karp_mean(g, weights, scc, internal)
        if best is None or mu < best:
            best, best_scc = mu, scc
    if best is None or best_scc is None:
        raise AcyclicError("graph has no cycle")
    cycle = _tight_cycle(g, weights, best_scc, best)
    return best, cycle


def _strongly_connected_components(g: Digraph) -> list[list[int]]:
    """Kosaraju with explicit stacks; components sorted by least vertex."""
    order: list[int] = []
    seen = [False] * g.vertex_count
    for root in range(g.vertex_count):
        if seen[root]:
            continue
        stack: list[tuple[int, int]] = [(root, 0)]
        seen[root] = True
        while stack:
            v, i = stack.pop()
            outs = g.out_edges(v)
            while i < len(outs) and seen[g.dst(outs[i])]:
                i += 1
            if i < len(outs):
                stack.append((v, i + 1))
                w = g.dst(outs[i])
                seen[w] = True
                stack.append((w, 0))
            else:
                order.append(v)
    preds: list[list[int]] = [[] for _ in range(g.vertex_count)]
    for s, t in g.edges:
        preds[t].append(s)
    comp = [-1] * g.vertex_count
    comps: list[list[int]] = []
    for root in reversed(order):
        if comp[root] != -1:
            continue
        cid = len(comps)
        comp[root] = cid
        members = [root]
        work = [root]
        while work:
            v = work.pop()
            for u in preds[v]:
                if comp[u] == -1:
                    comp[u] = cid
                    members.append(u)
                    work.append(u)
        comps.append(sorted(members))
    return sorted(comps, key=lambda c: c[0])


def _karp_mean(g: Digraph, weights: Sequence[int], scc: list[int], internal: list[int]) -> Fraction:
    index = {v: i for i, v in enumerate(scc)}
    size = len(scc)
    dist: list[list[Entry]] = [[None] * size for _ in range(size + 1)]
    dist[0][0] = 0  # source = least vertex of the component
    for step in range(1, size + 1):
        row = dist[step]
        prev = dist[step - 1]
        for e in internal:
            a, b = index[g.src(e)], index[g.dst(e)]
            c = ext_add(prev[a], weights[e])
            if c is not None and (row[b] is None or c < row[b]):
                row[b] = c
    best: Optional[Fraction] = None
    for v in range(size):
        dn = dist[size][v]
        if dn is None:
            continue
        worst: Optional[Fraction] = None
        for kk in range(size):
            dk = dist[kk][v]
            if dk is None:
                continue
            val = Fraction(dn - dk, size - kk)
            if worst is None or val > worst:
                worst = val
        assert worst is not None  # a simple path of < size edges reaches v
        if best is None or worst < best:
            best = worst
    assert best is not None
    return best


def _tight_cycle(g: Digraph, weights: Sequence[int], scc: list[int], mu: Fraction) -> Walk:
    members = set(scc)
    internal = [e for e in range(g.edge_count) if g.src(e) in members and g.dst(e) in members]
    num, den = mu.numerator, mu.denominator
    reduced = {e: den * weights[e] - num for e in internal}
    pot: dict[int, Entry] = {v: None for v in scc}
    pot[scc[0]] = 0
    for _ in range(len(scc) - 1):
        changed = False
        for e in internal:
            c = ext_add(pot[g.src(e)], reduced[e])
            if c is not None and (pot[g.dst(e)] is None or c < pot[g.dst(e)]):
                pot[g.dst(e)] = c
                changed = True
        if not changed:
            break
    tight = [
        e
        for e in internal
        if pot[g.src(e)] is not None and ext_add(pot[g.src(e)], reduced[e]) == pot[g.dst(e)]
    ]
    tight_out: dict[int, list[int]] = {v: [] for v in scc}
    for e in tight:
        tight_out[g.src(e)].append(e)
    for start in scc:
        # BFS over tight edges; first return to start = shortest tight cycle.
        parent: dict[int, tuple[int, int]] = {}
        frontier = deque([start])
        visited = {start}
        found: Optional[int] = None
        while frontier and found is None:
            v = frontier.popleft()
            for e in tight_out[v]:
                w = g.dst(e)
                if w == start:
                    parent[-1] = (v, e)  # sentinel for the closing edge
                    found = e
                    break
                if w not in visited:
                    visited.add(w)
                    parent[w] = (v, e)
                    frontier.append(w)
        if found is None:
            continue
        edges = [found]
        v = parent[-1][0]
        while v != start:
            pv, pe = parent[v]
            edges.append(pe)
            v = pv
        edges.reverse()
        cycle = Walk(g, tuple(edges))
        assert sum(reduced[e] for e in cycle.edges) == 0
        return cycle
    raise AssertionError("tight subgraph of an optimal component must contain a cycle")


@dataclass(frozen=True)
class PeriodicPair:
    """Aligned periodic strategies: Bob's cycle length is a multiple of Alice's."""

    p_cycle: Walk
    q_cycle: Walk
    mean: Fraction

    def __post_init__(self) -> None:
        if self.p_cycle.start != self.p_cycle.end:
            raise ValueError("Alice cycle does not close up")
        if self.q_cycle.start != self.q_cycle.end:
            raise ValueError("Bob cycle does not close up")
        if self.q_cycle.length % self.p_cycle.length != 0:
            raise ValueError("Bob cycle length must be a multiple of Alice's")

    def to_json_dict(self) -> dict:
        return {
            "p_cycle": list(self.p_cycle.edges),
            "q_cycle": list(self.q_cycle.edges),
            "mean": {"num": self.mean.numerator, "den": self.mean.denominator},
        }


def response_product(game: GameInstance, p_cycle: Walk) -> tuple[Digraph, tuple[int, ...], tuple[int, ...]]:
    """Bob's response graph against a periodic Alice cycle of length L.

    Node ``i*|V_G| + a`` is (G-vertex a, phase i); each G-edge a->b gives an
    arc to phase i+1 weighted by its payoff against Alice's i-th edge.
    Returns (graph, weights, product-edge -> G-edge map).
    """
    ell = p_cycle.length
    nv = game.g.vertex_count
    edges = []
    wts = []
    gmap = []
    for i in range(ell):
        he = p_cycle.edges[i]
        for ge, (a, b) in enumerate(game.g.edges):
            edges.append((i * nv + a, ((i + 1) % ell) * nv + b))
            wts.append(game.payoff[ge][he])
            gmap.append(ge)
    return Digraph(ell * nv, tuple(edges)), tuple(wts), tuple(gmap)


def _shortest_cycle_through(automaton: ProfileAutomaton, start: State) -> tuple[int, ...]:
    """BFS with ascending edge ids; first closure is the shortest cycle."""
    parent: dict[State, tuple[State, int]] = {}
    frontier = deque([start])
    visited = {start}
    closing: Optional[tuple[State, int]] = None
    while frontier and closing is None:
        s = frontier.popleft()
        for e, t in automaton.successors(s):
            if t == start:
                closing = (s, e)
                break
            if t not in visited:
                visited.add(t)
                parent[t] = (s, e)
                frontier.append(t)
    if closing is None:
        raise EmptyAutomatonError("trimmed automaton state has no cycle through it")
    edges = [closing[1]]
    s = closing[0]
    while s != start:
        ps, pe = parent[s]
        edges.append(pe)
        s = ps
    edges.reverse()
    return tuple(edges)


def periodic_optimal_pair(
    game: GameInstance, report: SolveReport, automaton: ProfileAutomaton
) -> PeriodicPair:
    """A periodic Alice cycle and a best periodic Bob response achieving the value.

    Alice's cycle is the shortest automaton cycle through the least state;
    Bob's is the minimum-mean cycle of the response product graph, which
    minimizes over all periodic responses.  The pair's per-round average
    must equal the solver value exactly.
    """
    if not automaton.states:
        raise EmptyAutomatonError("automaton has no states")
    start = min(automaton.states, key=_state_key)
    p_edges = _shortest_cycle_through(automaton, start)
    p_cycle = Walk(game.h, p_edges)
    prod, wts, gmap = response_product(game, p_cycle)
    mean, prod_cycle = min_cycle_mean(prod, wts)
    nv = game.g.vertex_count
    phase0 = prod.src(prod_cycle.edges[0]) // nv
    ell = p_cycle.length
    rotated = Walk(game.h, tuple(p_edges[(phase0 + j) % ell] for j in range(ell)))
    q_cycle = Walk(game.g, tuple(gmap[e] for e in prod_cycle.edges))
    total = sum(
        game.payoff[q_cycle.edges[j]][rotated.edges[j % ell]] for j in range(q_cycle.length)
    )
    if Fraction(total, q_cycle.length) != mean:
        raise MeanMismatchError("cycle payoff average disagrees with the cycle mean (bug)")
    if mean != report.value:
        raise MeanMismatchError(f"periodic pair mean {mean} != solver value {report.value}")
    return PeriodicPair(p_cycle=rotated, q_cycle=q_cycle, mean=mean)
