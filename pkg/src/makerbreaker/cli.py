"""Command-line entry point: ``makerbreaker <subcommand> ...``.

Exit codes: 0 success, 1 internal error, 2 usage error, 3 refused
computation (solver size or state budget).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from typing import Optional, Sequence

from . import analysis
from .boxgame import (
    BoxConfig,
    SizeGuardExceeded,
    boxmaker_wins_sufficient,
    canonical_sizes,
    potential_f,
    scripted_boxmaker_beats_all,
    solve_boxgame_exact,
)
from .engine import GameConfig, WinCondition, play_match
from .policies import BREAKER_POLICIES, MAKER_POLICIES, POLICY_IDS, UnknownPolicy, policy_side
from .solver import SolverRefused, best_response, enumerate_threshold, solve_exact

JOBS_ENV = "MAKERBREAKER_JOBS"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# -- argument grammar ----------------------------------------------------------


def parse_int_list(text: str) -> list[int]:
    """Comma-separated items, each an int or a ``start:stop[:step]`` range."""
    values: list[int] = []
    for token in text.split(","):
        token = token.strip()
        if not token:
            continue
        try:
            if ":" in token:
                parts = [int(p) for p in token.split(":")]
                if len(parts) not in (2, 3) or (len(parts) == 3 and parts[2] == 0):
                    raise ValueError
                values.extend(range(*parts))
            else:
                values.append(int(token))
        except ValueError:
            raise UsageError(f"malformed range or list item {token!r}") from None
    return values


def parse_seed(text: str) -> int:
    try:
        seed = int(text, 0)
    except ValueError:
        raise UsageError(f"malformed seed {text!r}") from None
    if not 0 <= seed < 2**64:
        raise UsageError(f"seed {text!r} is outside [0, 2^64)")
    return seed


def check_policy(policy_id: str, side: str) -> str:
    known = MAKER_POLICIES if side == "maker" else BREAKER_POLICIES
    if policy_id not in known:
        raise UsageError(f"unknown {side} policy {policy_id!r}; known: {', '.join(known)}")
    return policy_id


def parse_pairings(text: Optional[str]) -> tuple[tuple[str, str], ...]:
    if not text:
        return analysis.DEFAULT_PAIRINGS
    pairs = []
    for token in text.split(","):
        maker, sep, breaker = token.strip().partition(":")
        if not sep:
            raise UsageError(f"pairing {token!r} must read maker.X:breaker.Y")
        pairs.append((check_policy(maker, "maker"), check_policy(breaker, "breaker")))
    return tuple(pairs)


def parse_boxgame(text: str) -> tuple[list[int], int, int]:
    """``k,t,a,b`` (canonical boxes) or ``s1,s2,...;a=A;b=B`` (explicit sizes)."""
    try:
        if ";" in text:
            head, *opts = text.split(";")
            sizes = [int(s) for s in head.split(",")]
            kv = dict(o.split("=", 1) for o in opts)
            return sizes, int(kv["a"]), int(kv["b"])
        k, t, a, b = (int(x) for x in text.split(","))
        return canonical_sizes(k, t), a, b
    except (ValueError, KeyError):
        raise UsageError(f"malformed box game {text!r}; use k,t,a,b or s1,s2;a=A;b=B") from None


# -- output --------------------------------------------------------------------


def _json_default(x):
    return str(x)


def render(records: list[dict], fmt: str, columns: Optional[list[str]] = None, single: bool = False) -> str:
    if fmt == "json":
        body = records[0] if single and len(records) == 1 else records
        return json.dumps(body, default=_json_default, indent=2) + "\n"
    if fmt == "csv":
        out = io.StringIO()
        cols = columns or (list(records[0]) if records else [])
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(cols)
        for r in records:
            writer.writerow([analysis.csv_cell(r.get(c)) for c in cols])
        return out.getvalue()
    # human: the same records, one key per line
    blocks = []
    for r in records:
        width = max((len(k) for k in r), default=0)
        blocks.append("\n".join(f"{k:<{width}}  {analysis.csv_cell(v)}" for k, v in r.items()))
    return "\n\n".join(blocks) + "\n"


# -- subcommands ---------------------------------------------------------------


def _game_config(args, b: Optional[int] = None) -> GameConfig:
    wc = WinCondition.POSITIVE_MIN_DEGREE if args.pmd else WinCondition.CONNECTIVITY
    try:
        return GameConfig(args.n, args.a, args.b if b is None else b, wc)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_play(args) -> list[dict]:
    cfg = _game_config(args)
    maker = check_policy(args.maker, "maker")
    breaker = check_policy(args.breaker, "breaker")
    record = play_match(cfg, breaker, maker, args.seed)
    d = record.to_dict()
    if record.outcome.detail:
        d["detail"] = record.outcome.detail
    return [d]


def cmd_boxgame(args) -> list[dict]:
    if args.game:
        sizes, a, b = parse_boxgame(args.game)
    else:
        if None in (args.k, args.t, args.maker_bias, args.breaker_bias):
            raise UsageError("boxgame needs GAME or all of --k --t --maker-bias --breaker-bias")
        try:
            BoxConfig(args.k, args.t, args.maker_bias, args.breaker_bias)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        sizes, a, b = canonical_sizes(args.k, args.t), args.maker_bias, args.breaker_bias
    if not sizes or min(sizes) < 1 or a < 1 or b < 1:
        raise UsageError("box sizes and biases must be positive")
    k, t = len(sizes), sum(sizes)
    canonical = sorted(sizes) == canonical_sizes(k, t)
    f = potential_f(k, a, b)
    out = {
        "k": k,
        "t": t,
        "maker_bias": a,
        "breaker_bias": b,
        "sizes": sorted(sizes),
        "canonical": canonical,
        "f": f,
        "sufficient": canonical and boxmaker_wins_sufficient(BoxConfig(k, t, a, b)),
    }
    try:
        out["exact_winner"] = solve_boxgame_exact(sizes, a, b, max_elements=args.max_elements).value
        out["scripted_boxmaker_wins"] = scripted_boxmaker_beats_all(sizes, a, b)
    except SizeGuardExceeded as exc:
        if args.require_exact:
            raise SolverRefused(str(exc)) from None
        out["exact_winner"] = None
        out["scripted_boxmaker_wins"] = None
    return [out]


def cmd_solve(args) -> list[dict]:
    if args.threshold:
        wc = WinCondition.POSITIVE_MIN_DEGREE if args.pmd else WinCondition.CONNECTIVITY
        if args.n > 6 or (args.n == 6 and not args.allow_n6):
            raise SolverRefused(f"exact solving is limited to n <= 5 (n = 6 with --allow-n6), got n={args.n}")
        rows = []
        for a in parse_int_list(args.a_list or str(args.a)):
            th = enumerate_threshold(args.n, a, wc, args.allow_n6)
            rows.append({
                "n": th.n,
                "a": th.a,
                "b0": th.b0,
                "degenerate": th.degenerate,
                "winners": {str(b): str(w) for b, w in th.winners.items()},
            })
        return rows
    if args.b is None:
        raise UsageError("solve needs --b (or --threshold)")
    cfg = _game_config(args)
    if args.fixed:
        if args.fixed not in POLICY_IDS:
            raise UsageError(f"unknown policy {args.fixed!r}; known: {', '.join(POLICY_IDS)}")
        res = best_response(cfg, args.fixed, seed=args.seed, allow_n6=args.allow_n6, max_states=args.max_states)
        return [{
            "n": cfg.n, "a": cfg.a, "b": cfg.b,
            "win_condition": cfg.win_condition.value,
            "fixed": args.fixed,
            "fixed_side": str(policy_side(args.fixed)),
            "winner": str(res.winner),
            "fixed_policy_wins_every_line": res.winner is policy_side(args.fixed),
            "refutation": res.principal_variation,
            "states_visited": res.states_visited,
        }]
    res = solve_exact(cfg, args.allow_n6, max_states=args.max_states, with_pv=args.pv)
    out = {
        "n": cfg.n, "a": cfg.a, "b": cfg.b,
        "win_condition": cfg.win_condition.value,
        "winner": str(res.winner),
        "states_visited": res.states_visited,
    }
    if args.pv:
        out["principal_variation"] = res.principal_variation
    return [out]


def cmd_sweep(args) -> tuple[list[dict], list[str]]:
    pairings = parse_pairings(args.pairings)
    rows = analysis.sweep(
        args.n, parse_int_list(args.a), parse_int_list(args.b), pairings, args.trials, args.seed, args.jobs
    )
    return [analysis.sweep_record(r, pairings) for r in rows], analysis.sweep_columns(pairings)


def cmd_random(args) -> list[dict]:
    out = []
    for b in parse_int_list(args.b):
        if b < 1:
            raise UsageError(f"bias b must be positive, got {b}")
        r = analysis.random_game(args.n, args.a, b, args.trials, args.seed)
        out.append({
            "n": r.n, "a": r.a, "b": r.b, "trials": r.trials,
            "maker_edges": r.maker_edges,
            "maker_edges_over_nlnn": round(r.maker_edges / (r.n * math.log(r.n)), 6),
            "maker_wins": r.maker_wins,
            "frequency": r.frequency,
            "wilson_low": round(r.low, 6),
            "wilson_high": round(r.high, 6),
        })
    return out


def cmd_bounds(args) -> list[dict]:
    out = []
    for a in parse_int_list(args.a):
        try:
            out.append(analysis.corollary_bounds(args.n, a).to_dict())
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    return out


# -- parser --------------------------------------------------------------------


def _default_jobs() -> int:
    raw = os.environ.get(JOBS_ENV, "1")
    try:
        return max(1, int(raw))
    except ValueError:
        raise UsageError(f"{JOBS_ENV}={raw!r} is not an integer") from None


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "human"), default=None)
    common.add_argument("--out", help="write to this file instead of stdout")
    common.add_argument("--seed", type=parse_seed, default=0)

    def game(p, b_required=True):
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--a", type=int, default=1)
        p.add_argument("--b", type=int, required=b_required)
        p.add_argument("--pmd", action="store_true", help="Positive Minimum Degree instead of Connectivity")

    parser = _Parser(prog="makerbreaker", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("play", parents=[common], help="play one seeded match")
    game(p)
    p.add_argument("--maker", default="maker.thm4")
    p.add_argument("--breaker", default="breaker.greedy-isolate")

    p = sub.add_parser("boxgame", parents=[common], help="potential, certificate and exact winner of a box game")
    p.add_argument("game", nargs="?", help="k,t,a,b or s1,s2,...;a=A;b=B")
    p.add_argument("--k", type=int)
    p.add_argument("--t", type=int)
    p.add_argument("--maker-bias", type=int)
    p.add_argument("--breaker-bias", type=int)
    p.add_argument("--max-elements", type=int, default=24)
    p.add_argument("--require-exact", action="store_true", help="exit 3 instead of skipping the exact solve")

    p = sub.add_parser("solve", parents=[common], help="exact minimax on K_n, n <= 5")
    game(p, b_required=False)
    p.add_argument("--a-list", help="bias list for --threshold")
    p.add_argument("--threshold", action="store_true", help="scan every b and report b0(a)")
    p.add_argument("--fixed", help="policy id whose side plays scripted (best response for the other side)")
    p.add_argument("--allow-n6", action="store_true")
    p.add_argument("--max-states", type=int, default=10_000_000)
    p.add_argument("--pv", action="store_true", help="include a principal variation")

    p = sub.add_parser("sweep", parents=[common], help="certificates, bounds and simulations over an (a, b) grid")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--a", required=True, help="list or start:stop:step")
    p.add_argument("--b", required=True, help="list or start:stop:step")
    p.add_argument("--pairings", help="comma-separated maker.X:breaker.Y")
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--jobs", type=int, default=None)

    p = sub.add_parser("random", parents=[common], help="Random Connectivity game Monte Carlo")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--a", type=int, default=1)
    p.add_argument("--b", required=True, help="list or start:stop:step")
    p.add_argument("--trials", type=int, default=200)

    p = sub.add_parser("bounds", parents=[common], help="threshold-bias bound band at concrete n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--a", required=True, help="list or start:stop:step")
    return parser


def _is_scalar(token: Optional[str]) -> bool:
    return token is not None and "," not in token and ":" not in token


def _single_record(args) -> bool:
    """JSON shape follows the argument grammar: one object unless a list or range was asked for."""
    if args.command in ("play", "boxgame"):
        return True
    if args.command == "solve":
        return not args.threshold or _is_scalar(args.a_list or str(args.a))
    if args.command == "bounds":
        return _is_scalar(args.a)
    if args.command == "random":
        return _is_scalar(args.b)
    return False


COMMANDS = {
    "play": cmd_play,
    "boxgame": cmd_boxgame,
    "solve": cmd_solve,
    "sweep": cmd_sweep,
    "random": cmd_random,
    "bounds": cmd_bounds,
}


def run(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if args.command == "sweep" and args.jobs is None:
            args.jobs = _default_jobs()
        result = COMMANDS[args.command](args)
        records, columns = result if isinstance(result, tuple) else (result, None)
        fmt = args.format or ("csv" if args.command == "sweep" else "json")
        text = render(records, fmt, columns, _single_record(args))
    except UsageError as exc:
        print(f"makerbreaker: usage error: {exc}", file=sys.stderr)
        return 2
    except UnknownPolicy as exc:
        print(f"makerbreaker: usage error: {exc}", file=sys.stderr)
        return 2
    except (SolverRefused, SizeGuardExceeded) as exc:
        print(f"makerbreaker: refused: {exc}", file=sys.stderr)
        return 3
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    except Exception as exc:
        print(f"makerbreaker: internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
