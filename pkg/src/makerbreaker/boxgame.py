"""The (a:b) Box Game B(k, t, a, b) with BoxMaker moving first.

BoxMaker claims ``maker_bias`` elements per move and wins by fully claiming a
box; BoxBreaker claims ``breaker_bias`` elements per move and kills a box by
claiming any one of its elements. All arithmetic here is exact.
"""

from __future__ import annotations

import enum
import heapq
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence


class BoxPlayer(str, enum.Enum):
    BOXMAKER = "BoxMaker"
    BOXBREAKER = "BoxBreaker"


class BoxMakerLost(Exception):
    """No alive box remains, so BoxMaker can no longer win."""


class SizeGuardExceeded(Exception):
    """The exact solver refuses boards above its size guard."""


@dataclass(frozen=True)
class BoxConfig:
    k: int
    t: int
    maker_bias: int
    breaker_bias: int

    def __post_init__(self):
        if self.k < 1 or self.t < self.k or self.maker_bias < 1 or self.breaker_bias < 1:
            raise ValueError(f"invalid box game {self}")

    def sizes(self) -> list[int]:
        return canonical_sizes(self.k, self.t)


@dataclass
class BoxState:
    """Free element counts per box; a box is dead once BoxBreaker touches it."""

    free: list[int]
    alive: list[bool]
    turn: BoxPlayer = BoxPlayer.BOXMAKER
    dead_free: int = 0

    @classmethod
    def fresh(cls, sizes: Sequence[int]) -> "BoxState":
        return cls(list(sizes), [True] * len(sizes))

    def alive_free(self) -> list[int]:
        return [f for f, ok in zip(self.free, self.alive) if ok]

    def maker_won(self) -> bool:
        return any(ok and f == 0 for f, ok in zip(self.free, self.alive))

    def copy(self) -> "BoxState":
        return BoxState(self.free[:], self.alive[:], self.turn, self.dead_free)


@dataclass(frozen=True)
class BoxOutcome:
    winner: BoxPlayer
    moves: int


def canonical_sizes(k: int, t: int) -> list[int]:
    """Sorted sizes of the canonical hypergraph of type (k, t)."""
    if k < 1 or t < k:
        raise ValueError(f"canonical boxes need k >= 1 and t >= k, got k={k}, t={t}")
    q, r = divmod(t, k)
    return [q] * (k - r) + [q + 1] * r


@lru_cache(maxsize=None)
def potential_f(k: int, a: int, b: int) -> int:
    """The potential f(k; a, b) certifying BoxMaker wins when t <= f + a."""
    if k < 1 or a < 1 or b < 1:
        raise ValueError("k, a, b must be positive")
    if k <= b:
        return (k - 1) * (a + 1)
    chain = []
    while k > 2 * b:
        chain.append(k)
        k -= b
    value = k * a
    for kk in reversed(chain):
        value = kk * (value + a - b) // (kk - b)
    return value


def harmonic_tail(m: int) -> Fraction:
    """sum_{j=2}^{m} 1/j as an exact fraction (0 when m < 2)."""
    return sum((Fraction(1, j) for j in range(2, m + 1)), Fraction(0))


def lemma1_lower_bound(k: int, a: int, b: int) -> Fraction:
    """Closed-form lower bound on potential_f, valid for k > b and a >= b + 1."""
    if not (k > b and a - b - 1 >= 0 and b >= 1):
        raise ValueError(f"lower bound needs k > b and a >= b + 1, got k={k}, a={a}, b={b}")
    m = -(-k // b) - 1
    return k * a - 1 + Fraction(k * (a - b - 1), b) * harmonic_tail(m)


def boxmaker_wins_sufficient(cfg: BoxConfig) -> bool:
    return cfg.t <= potential_f(cfg.k, cfg.maker_bias, cfg.breaker_bias) + cfg.maker_bias


# -- scripted BoxMaker -------------------------------------------------------


def boxmaker_move(state: BoxState, maker_bias: int) -> list[int]:
    """BoxMaker's move as a list of box indices, one entry per claimed element.

    Completes a box outright when one is within reach, otherwise takes
    elements from a currently largest alive box one at a time (lowest index
    on ties), which keeps the alive free counts within one of each other.
    Does not modify ``state``.
    """
    alive = [i for i, ok in enumerate(state.alive) if ok]
    if not alive:
        raise BoxMakerLost("every box has been touched by BoxBreaker")
    free = state.free[:]
    picks: list[int] = []
    target = min(alive, key=lambda i: (free[i], i))
    if free[target] <= maker_bias:
        picks.extend([target] * free[target])
        free[target] = 0
    heap = [(-free[i], i) for i in alive if free[i] > 0]
    heapq.heapify(heap)
    while len(picks) < maker_bias and heap:
        neg, i = heapq.heappop(heap)
        picks.append(i)
        if neg + 1 < 0:
            heapq.heappush(heap, (neg + 1, i))
    return picks


def apply_boxmaker(state: BoxState, picks: Sequence[int]) -> None:
    for i in picks:
        if state.free[i] <= 0:
            raise ValueError(f"box {i} has no free element")
        state.free[i] -= 1
    state.turn = BoxPlayer.BOXBREAKER


def prune_after_boxbreaker(state: BoxState, touched: Sequence[int]) -> BoxState:
    """Kill every box BoxBreaker touched; untouched boxes all stay alive."""
    nxt = state.copy()
    for i in set(touched):
        if nxt.alive[i]:
            nxt.alive[i] = False
            nxt.dead_free += nxt.free[i]
    nxt.turn = BoxPlayer.BOXMAKER
    return nxt


def play_scripted_vs(sizes: Sequence[int], maker_bias: int, breaker_bias: int, breaker) -> BoxOutcome:
    """Run the scripted BoxMaker against ``breaker(state) -> touched box indices``."""
    state = BoxState.fresh(sizes)
    moves = 0
    while True:
        moves += 1
        try:
            picks = boxmaker_move(state, maker_bias)
        except BoxMakerLost:
            return BoxOutcome(BoxPlayer.BOXBREAKER, moves)
        apply_boxmaker(state, picks)
        if state.maker_won():
            return BoxOutcome(BoxPlayer.BOXMAKER, moves)
        state = prune_after_boxbreaker(state, breaker(state))
        if not any(state.alive):
            return BoxOutcome(BoxPlayer.BOXBREAKER, moves)


def _breaker_replies(state: BoxState, breaker_bias: int):
    """Yield ``(touched, claimed)`` for every legal BoxBreaker move.

    BoxBreaker claims ``min(bias, free elements)`` elements; those beyond the
    first one in each touched box land in touched or already dead boxes.
    """
    alive = [i for i, ok in enumerate(state.alive) if ok]
    total = sum(state.free[i] for i in alive) + state.dead_free
    need = min(breaker_bias, total)
    for r in range(0, min(need, len(alive)) + 1):
        for combo in itertools.combinations(alive, r):
            if sum(state.free[i] for i in combo) + state.dead_free >= need:
                yield combo, need


def scripted_boxmaker_beats_all(sizes: Sequence[int], maker_bias: int, breaker_bias: int) -> bool:
    """True iff the scripted BoxMaker wins against every legal BoxBreaker line."""
    return _scripted_wins(BoxState.fresh(sizes), maker_bias, breaker_bias)


def _scripted_wins(state: BoxState, a: int, b: int) -> bool:
    try:
        picks = boxmaker_move(state, a)
    except BoxMakerLost:
        return False
    state = state.copy()
    apply_boxmaker(state, picks)
    if state.maker_won():
        return True
    for touched, claimed in _breaker_replies(state, b):
        nxt = prune_after_boxbreaker(state, touched)
        nxt.dead_free -= claimed
        if not any(nxt.alive):
            return False
        if not _scripted_wins(nxt, a, b):
            return False
    return True


# -- exact solver ------------------------------------------------------------


@dataclass
class BoxSolver:
    """Memoized minimax for tiny Box Games, BoxMaker first.

    Dead boxes are dropped from the position, and each BoxBreaker pick kills
    one alive box (picking a dead element instead is never better).
    """

    maker_bias: int
    breaker_bias: int
    memo: dict = field(default_factory=dict)

    def maker_wins(self, alive: tuple, maker_turn: bool, picks_left: int) -> bool:
        key = (alive, maker_turn, picks_left)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        if maker_turn:
            result = False
            for idx, size in enumerate(alive):
                if idx and alive[idx - 1] == size:
                    continue
                if size == 1:
                    result = True
                    break
                child = tuple(sorted(alive[:idx] + (size - 1,) + alive[idx + 1:]))
                if picks_left > 1:
                    win = self.maker_wins(child, True, picks_left - 1)
                else:
                    win = self.maker_wins(child, False, self.breaker_bias)
                if win:
                    result = True
                    break
        else:
            result = True
            for idx, size in enumerate(alive):
                if idx and alive[idx - 1] == size:
                    continue
                child = alive[:idx] + alive[idx + 1:]
                if not child:
                    result = False
                    break
                if picks_left > 1:
                    win = self.maker_wins(child, False, picks_left - 1)
                else:
                    win = self.maker_wins(child, True, self.maker_bias)
                if not win:
                    result = False
                    break
        self.memo[key] = result
        return result


def solve_boxgame_exact(
    sizes: Sequence[int], maker_bias: int, breaker_bias: int, max_elements: int = 24
) -> BoxPlayer:
    """Exact winner of the Box Game on the given box sizes, BoxMaker first."""
    sizes = [int(s) for s in sizes]
    if not sizes or min(sizes) < 1:
        raise ValueError("box sizes must be positive")
    if sum(sizes) > max_elements:
        raise SizeGuardExceeded(f"{sum(sizes)} elements exceeds the guard of {max_elements}")
    solver = BoxSolver(maker_bias, breaker_bias)
    win = solver.maker_wins(tuple(sorted(sizes)), True, maker_bias)
    return BoxPlayer.BOXMAKER if win else BoxPlayer.BOXBREAKER

