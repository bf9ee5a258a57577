"""Exhaustive minimax for tiny boards.

Positions are pairs of edge bitmasks (Maker's, Breaker's). Within a move the
claims are explored as ascending edge sequences, so each unordered set of
claims is visited once; the lowest admissible next edge is part of the key.
"""

from __future__ import annotations

import copy
import itertools
from dataclasses import dataclass, field
from typing import Optional

from .engine import (
    GameConfig,
    GameState,
    Player,
    WinCondition,
    _play_move,
    detect_outcome,
    edge_arrays,
    policy_rng,
)

MAX_GUARANTEED_N = 5
DEFAULT_MAX_STATES = 10_000_000


class SolverRefused(Exception):
    """The instance is outside the solver's size or state budget."""


@dataclass
class SolveResult:
    winner: Player
    principal_variation: list[int] = field(default_factory=list)
    states_visited: int = 0


class MaskBoard:
    """Bitmask rules for K_n, n <= 6."""

    def __init__(self, cfg: GameConfig):
        self.cfg = cfg
        n = cfg.n
        us, vs = edge_arrays(n)
        self.num_edges = len(us)
        self.full = (1 << self.num_edges) - 1
        self.ends = [(int(u), int(v)) for u, v in zip(us, vs)]
        self.incident = [0] * n
        self.neighbours = [[] for _ in range(n)]
        for e, (u, v) in enumerate(self.ends):
            self.incident[u] |= 1 << e
            self.incident[v] |= 1 << e
            self.neighbours[u].append((1 << e, v))
            self.neighbours[v].append((1 << e, u))
        self.all_vertices = (1 << n) - 1
        self._conn: dict[int, bool] = {}

    def connected(self, mask: int) -> bool:
        hit = self._conn.get(mask)
        if hit is not None:
            return hit
        reach, stack = 1, [0]
        while stack:
            x = stack.pop()
            for bit, y in self.neighbours[x]:
                if mask & bit and not reach >> y & 1:
                    reach |= 1 << y
                    stack.append(y)
        result = reach == self.all_vertices
        self._conn[mask] = result
        return result

    def winner(self, maker: int, breaker: int) -> Optional[Player]:
        if self.cfg.win_condition is WinCondition.CONNECTIVITY:
            if self.connected(maker):
                return Player.MAKER
            if not self.connected(self.full & ~breaker):
                return Player.BREAKER
            return None
        if all(maker & inc for inc in self.incident):
            return Player.MAKER
        if any(breaker & inc == inc for inc in self.incident):
            return Player.BREAKER
        return None

    def state_masks(self, state: GameState) -> tuple[int, int]:
        maker = breaker = 0
        for player, e in state.history:
            if player is Player.MAKER:
                maker |= 1 << e
            else:
                breaker |= 1 << e
        return maker, breaker


class ExactSolver:
    def __init__(self, cfg: GameConfig, memoize: bool = True, max_states: int = DEFAULT_MAX_STATES):
        self.cfg = cfg
        self.board = MaskBoard(cfg)
        self.memoize = memoize
        self.max_states = max_states
        self.memo: dict[tuple, bool] = {}
        self.visited = 0

    def _children(self, maker, breaker, turn, picks, lo):
        """Yield ``(edge, child_key_or_None, decided_winner_or_None)``."""
        board = self.board
        free = board.full & ~(maker | breaker)
        free_count = bin(free).count("1")
        higher = bin(free >> lo).count("1")
        for e in range(lo, board.num_edges):
            bit = 1 << e
            if not free & bit:
                continue
            higher -= 1
            if higher < picks - 1:
                break
            if turn is Player.MAKER:
                m2, b2 = maker | bit, breaker
            else:
                m2, b2 = maker, breaker | bit
            decided = board.winner(m2, b2)
            if decided is not None:
                yield e, None, decided
                continue
            if picks > 1:
                yield e, (m2, b2, turn, picks - 1, e + 1), None
            else:
                nxt = turn.opponent
                yield e, (m2, b2, nxt, min(self.cfg.bias(nxt), free_count - 1), 0), None

    def maker_wins(self, key) -> bool:
        if self.memoize:
            hit = self.memo.get(key)
            if hit is not None:
                return hit
        self.visited += 1
        if self.visited > self.max_states:
            raise SolverRefused(f"state budget of {self.max_states} exceeded")
        maker, breaker, turn, picks, lo = key
        want = turn is Player.MAKER
        result = not want
        for _, child, decided in self._children(maker, breaker, turn, picks, lo):
            value = (decided is Player.MAKER) if child is None else self.maker_wins(child)
            if value == want:
                result = want
                break
        if self.memoize:
            self.memo[key] = result
        return result

    def root(self):
        cfg = self.cfg
        return (0, 0, Player.BREAKER, min(cfg.b, self.board.num_edges), 0)

    def principal_variation(self, key) -> list[int]:
        line = []
        while key is not None:
            maker, breaker, turn, picks, lo = key
            want = turn is Player.MAKER
            chosen = None
            for e, child, decided in self._children(maker, breaker, turn, picks, lo):
                value = (decided is Player.MAKER) if child is None else self.maker_wins(child)
                if chosen is None or value == want:
                    chosen = (e, child)
                if value == want:
                    break
            if chosen is None:
                break
            line.append(chosen[0])
            key = chosen[1]
        return line


def _check_size(cfg: GameConfig, allow_n6: bool) -> None:
    if cfg.n > 6 or (cfg.n == 6 and not allow_n6):
        raise SolverRefused(f"exact solving is limited to n <= {MAX_GUARANTEED_N} (n = 6 with allow_n6)")


def solve_exact(
    cfg: GameConfig,
    allow_n6: bool = False,
    memoize: bool = True,
    max_states: int = DEFAULT_MAX_STATES,
    with_pv: bool = False,
) -> SolveResult:
    """Winner of the game under optimal play by both sides."""
    _check_size(cfg, allow_n6)
    solver = ExactSolver(cfg, memoize, max_states)
    root = solver.root()
    if solver.board.winner(0, 0) is not None:
        return SolveResult(solver.board.winner(0, 0), [], 0)
    win = solver.maker_wins(root)
    pv = solver.principal_variation(root) if with_pv else []
    return SolveResult(Player.MAKER if win else Player.BREAKER, pv, solver.visited)


@dataclass
class Threshold:
    n: int
    a: int
    b0: int
    degenerate: bool
    winners: dict[int, Player]


def enumerate_threshold(n: int, a: int, win_condition=WinCondition.CONNECTIVITY, allow_n6: bool = False) -> Threshold:
    """Largest b for which Maker wins, scanning every b up to the board size.

    Raises AssertionError if the scan contradicts bias monotonicity.
    """
    num_edges = n * (n - 1) // 2
    winners = {}
    for b in range(1, num_edges + 1):
        winners[b] = solve_exact(GameConfig(n, a, b, win_condition), allow_n6).winner
    b0 = 0
    seen_breaker = False
    for b, w in winners.items():
        if w is Player.MAKER:
            if seen_breaker:
                raise AssertionError(f"bias monotonicity violated at n={n}, a={a}, b={b}")
            b0 = b
        else:
            seen_breaker = True
    return Threshold(n, a, b0, b0 == 0, winners)


# -- scripted policy against an exhaustive opponent -----------------------------


def best_response(
    cfg: GameConfig,
    fixed_policy: str,
    fixed_side: Optional[Player] = None,
    seed: int = 0,
    allow_n6: bool = False,
    max_states: int = DEFAULT_MAX_STATES,
) -> SolveResult:
    """Minimax over the free side only; the fixed side follows ``fixed_policy``.

    ``winner == fixed_side`` means the scripted policy beats every opponent.
    A forfeit by the scripted policy loses that line.
    """
    from .policies import make_policy, policy_side

    _check_size(cfg, allow_n6)
    side = fixed_side or policy_side(fixed_policy)
    policy = make_policy(fixed_policy, cfg, policy_rng(seed, side))
    search = _BestResponse(cfg, side, max_states)
    fixed_wins = search.fixed_wins(GameState(cfg), policy)
    winner = side if fixed_wins else side.opponent
    return SolveResult(winner, search.refutation if not fixed_wins else [], search.visited)


class _BestResponse:
    def __init__(self, cfg, side, max_states):
        self.cfg = cfg
        self.side = side
        self.max_states = max_states
        self.visited = 0
        self.refutation: list[int] = []

    def fixed_wins(self, state: GameState, policy) -> bool:
        self.visited += 1
        if self.visited > self.max_states:
            raise SolverRefused(f"state budget of {self.max_states} exceeded")
        decided = detect_outcome(state)
        if decided is not None:
            return decided.winner is self.side
        if state.turn is self.side:
            policy = copy.deepcopy(policy)
            nxt = state.copy()
            decided = _play_move(nxt, self.side, policy) or detect_outcome(nxt)
            if decided is not None:
                if decided.winner is not self.side:
                    self.refutation = [e for _, e in nxt.history]
                return decided.winner is self.side
            return self.fixed_wins(nxt, policy)
        free = [int(e) for e in state.free_edges()]
        for combo in itertools.combinations(free, state.picks_left):
            nxt = state.copy()
            for e in combo:
                nxt.claim(nxt.turn, e)
                if nxt.maker_won():
                    break
            if not self.fixed_wins(nxt, policy):
                if not self.refutation:
                    self.refutation = [e for _, e in nxt.history]
                return False
        return True
