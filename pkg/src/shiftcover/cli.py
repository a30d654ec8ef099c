"""Command-line driver.

Subcommands take either one graph file (a covering problem) or three
files G H P (a game).  Values are printed as exact ``num/den`` fractions;
``--json`` emits the report schema with integers only.  Exit codes:
0 success, 1 oracle mismatch, 2 input error, 3 resource limit.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

from .covering import (
    CoveringProblem,
    brute_covering_radius_n,
    build_hamming_game,
    covering_radius,
)
from .engine import (
    GameInstance,
    LimitExceededError,
    MissingPayoffError,
    NotPrimitiveError,
    SolveLimits,
    brute_value_n,
    solve,
    vn_table,
)
from .formats import GraphParseError, PayoffParseError, parse_graph, parse_payoff
from .strategies import build_dagger_automaton, periodic_optimal_pair

INPUT_ERRORS = (
    GraphParseError,
    PayoffParseError,
    NotPrimitiveError,
    MissingPayoffError,
    ValueError,
    OSError,
)


def _frac(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


def _limits(args: argparse.Namespace) -> SolveLimits:
    return SolveLimits(max_len=args.max_len, max_set_size=args.max_set_size)


def _load_inputs(args: argparse.Namespace) -> tuple[Optional[CoveringProblem], GameInstance]:
    """One input file = covering problem; three = explicit game."""
    paths = args.inputs
    if len(paths) == 1:
        presentation = parse_graph(Path(paths[0]).read_text())
        alphabet = tuple(args.alphabet) if args.alphabet else None
        problem = CoveringProblem.build(presentation, alphabet)
        return problem, build_hamming_game(problem)
    if len(paths) == 3:
        g = parse_graph(Path(paths[0]).read_text()).graph
        h = parse_graph(Path(paths[1]).read_text()).graph
        payoff = parse_payoff(Path(paths[2]).read_text(), g.edge_count, h.edge_count)
        return None, GameInstance(g, h, payoff)
    raise ValueError("expected one graph file (covering) or three files G H P (game)")


def cmd_covering_radius(args: argparse.Namespace) -> int:
    problem, _ = _load_inputs(args)
    if problem is None:
        raise ValueError("covering-radius takes a single labeled graph file")
    report = covering_radius(problem, _limits(args))
    if args.json:
        print(json.dumps(report.to_json_dict()))
    else:
        print(_frac(report.value))
    return 0


def cmd_game_value(args: argparse.Namespace) -> int:
    _, game = _load_inputs(args)
    report = solve(game, _limits(args))
    if args.json:
        print(json.dumps(report.to_json_dict()))
    else:
        print(_frac(report.value))
    return 0


def cmd_vn_table(args: argparse.Namespace) -> int:
    _, game = _load_inputs(args)
    table = vn_table(game, args.n)
    if args.json:
        print(json.dumps({"v_table": table}))
    else:
        for n, v in enumerate(table, 1):
            print(f"{n} {v}")
    return 0


def cmd_oracle(args: argparse.Namespace) -> int:
    problem, game = _load_inputs(args)
    table = vn_table(game, args.n)
    mismatch = False
    header = "n solver brute" + (" radius" if problem is not None else "")
    print(header)
    for n in range(1, args.n + 1):
        solver_v = table[n - 1]
        brute_v = brute_value_n(game, n)
        row = f"{n} {solver_v} {brute_v}"
        ok = solver_v == brute_v
        if problem is not None:
            radius = brute_covering_radius_n(problem, n)
            row += f" {radius}"
            ok = ok and radius == solver_v
        if not ok:
            row += "  MISMATCH"
            mismatch = True
        print(row)
    return 1 if mismatch else 0


def cmd_strategies(args: argparse.Namespace) -> int:
    _, game = _load_inputs(args)
    report = solve(game, _limits(args))
    automaton = build_dagger_automaton(game, report)
    pair = periodic_optimal_pair(game, report, automaton) if args.periodic_pair else None
    if args.automaton:
        Path(args.automaton).write_text(json.dumps(automaton.to_json_dict(), indent=2) + "\n")
    if args.json:
        payload = {"report": report.to_json_dict(), "automaton": automaton.to_json_dict()}
        if pair is not None:
            payload["periodic_pair"] = pair.to_json_dict()
        print(json.dumps(payload))
    else:
        print(f"value {_frac(report.value)}")
        print(f"automaton states {len(automaton.states)} transitions {len(automaton.transitions)}")
        if pair is not None:
            print(f"alice cycle {' '.join(map(str, pair.p_cycle.edges))}")
            print(f"bob cycle {' '.join(map(str, pair.q_cycle.edges))}")
            print(f"mean {_frac(pair.mean)}")
    return 0


def _add_common(sub: argparse.ArgumentParser, n_flag: bool = False) -> None:
    sub.add_argument("inputs", nargs="+", help="GRAPH (covering) or G H P (game)")
    sub.add_argument("--alphabet", nargs="+", help="ambient alphabet override (covering only)")
    sub.add_argument("--json", action="store_true", help="emit JSON instead of text")
    sub.add_argument("--max-len", type=int, default=SolveLimits.max_len)
    sub.add_argument("--max-set-size", type=int, default=SolveLimits.max_set_size)
    if n_flag:
        sub.add_argument("--n", type=int, required=True, help="table length")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="shiftcover",
        description="Exact mean-payoff game values and sofic-shift covering radii.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    s = subs.add_parser("covering-radius", help="covering radius of a labeled presentation")
    _add_common(s)
    s.set_defaults(func=cmd_covering_radius)

    s = subs.add_parser("game-value", help="value of a two-graph game")
    _add_common(s)
    s.set_defaults(func=cmd_game_value)

    s = subs.add_parser("vn-table", help="n-round values V_1..V_N")
    _add_common(s, n_flag=True)
    s.set_defaults(func=cmd_vn_table)

    s = subs.add_parser("oracle", help="solver vs brute-force cross check (exit 1 on mismatch)")
    _add_common(s, n_flag=True)
    s.set_defaults(func=cmd_oracle)

    s = subs.add_parser("strategies", help="profile automaton and periodic equilibrium pair")
    _add_common(s)
    s.add_argument("--automaton", help="write the automaton as JSON to this path")
    s.add_argument("--periodic-pair", action="store_true", help="extract a periodic pair")
    s.set_defaults(func=cmd_strategies)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except LimitExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except INPUT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
