"""Scripted Breaker strategies and exact evaluators of their win conditions.

* :class:`CliqueThenBoxBreaker` builds a clique of Maker-untouched vertices,
  then isolates one of them by playing BoxMaker on their stars.
* :class:`StarBoxBreaker` plays BoxMaker in B(n, n(n-1), b, 2a) whose boxes
  are the vertex stars.
* :class:`MatchingBreaker` covers every vertex with its first move and
  isolates a Maker-untouched vertex with its second.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Optional

import mpmath
import numpy as np

from .boxgame import BoxMakerLost, BoxState, boxmaker_move, potential_f
from .engine import (
    FREE,
    Forfeit,
    GameConfig,
    GameState,
    Player,
    Policy,
    edge_arrays,
    edge_endpoints,
    edge_index,
    fill_free_edges,
)
from .harmonic import harmonic, harmonic_exact

_DPS = 40


def _ceil_div(x: int, y: int) -> int:
    return -(-x // y)


# -- clique phase, then Box Game on the clique's stars ------------------------


@dataclass(frozen=True)
class Thm1Plan:
    k_target: int
    min_b: int

    def feasible(self, b: int) -> bool:
        """Whether every clique-building move can add at least one vertex."""
        return b >= self.min_b


def thm1_parameters(n: int, a: int) -> Thm1Plan:
    """Clique size ceil(an / ((a+1) ln(an))) and the bias needed to build it."""
    if a < 1 or n < 3 or a * n <= 1:
        raise ValueError(f"need a >= 1 and n >= 3, got n={n}, a={a}")
    with mpmath.workdps(_DPS):
        x = mpmath.mpf(a * n) / ((a + 1) * mpmath.log(a * n))
        k = int(mpmath.ceil(x))
    k = max(1, min(k, n - 1))
    return Thm1Plan(k, comb(a + 1, 2) + (a + 1) * (k - 1))


def clique_step_size(a: int, b: int, clique_size: int) -> int:
    """Largest l with C(a+l, 2) + (a+l)|C| <= b, or -1 if even l = 0 fails."""
    ell = -1
    while comb(a + ell + 1, 2) + (a + ell + 1) * clique_size <= b:
        ell += 1
    return ell


class Phase(enum.Enum):
    CLIQUE_BUILDING = "CliqueBuilding"
    ISOLATING = "Isolating"


class CliqueThenBoxBreaker(Policy):
    id = "breaker.thm1"
    side = Player.BREAKER

    def __init__(self, cfg: GameConfig, rng=None, random_fill: bool = False):
        super().__init__(cfg, rng)
        self.plan = thm1_parameters(cfg.n, cfg.a)
        self.k_target = self.plan.k_target
        self.phase = Phase.CLIQUE_BUILDING
        self.clique: list[int] = []
        self.random_fill = random_fill
        # (clique size before the move, l used, clique size after the move)
        self.trace: list[tuple[int, int, int]] = []

    def choose(self, state: GameState) -> list[int]:
        md = state.maker_deg
        self.clique = [v for v in self.clique if md[v] == 0]
        if self.phase is Phase.CLIQUE_BUILDING and len(self.clique) >= self.k_target:
            self.phase = Phase.ISOLATING
        if self.phase is Phase.CLIQUE_BUILDING:
            claims = self._grow_clique(state)
        else:
            claims = self._isolate(state)
        return fill_free_edges(
            state, claims, state.picks_left, self.rng if self.random_fill else None, self._fill_avoid(state)
        )

    def _grow_clique(self, state: GameState) -> list[int]:
        n, a = self.cfg.n, self.cfg.a
        size = len(self.clique)
        ell = clique_step_size(a, state.picks_left, size)
        if ell < 1:
            raise Forfeit(f"bias {state.picks_left} cannot extend a clique of size {size}")
        in_clique = np.zeros(n, dtype=bool)
        in_clique[self.clique] = True
        candidates = np.flatnonzero((state.maker_deg == 0) & ~in_clique)
        if len(candidates) < a + ell:
            raise Forfeit(f"only {len(candidates)} Maker-isolated vertices outside the clique, need {a + ell}")
        new = [int(v) for v in candidates[: a + ell]]
        claims = []
        owner = state.owner
        for i, u in enumerate(new):
            for w in new[i + 1:] + self.clique:
                if owner[u, w] == FREE:
                    claims.append(edge_index(u, w, n))
        self.clique = self.clique + new
        self.trace.append((size, ell, len(self.clique)))
        return claims

    def _isolate(self, state: GameState) -> list[int]:
        owner = state.owner
        free_rows = owner[self.clique] == FREE
        boxes = BoxState([int(c) for c in free_rows.sum(axis=1)], [bool(state.maker_deg[v] == 0) for v in self.clique])
        try:
            picks = boxmaker_move(boxes, state.picks_left)
        except BoxMakerLost:
            raise Forfeit("Maker has touched every clique vertex") from None
        n = self.cfg.n
        cursor = {}
        claims = []
        for i in picks:
            v = self.clique[i]
            row = np.flatnonzero(free_rows[i])
            j = cursor.get(i, 0)
            if j < len(row):
                claims.append(edge_index(v, int(row[j]), n))
                cursor[i] = j + 1
        return claims

    def _fill_avoid(self, state: GameState) -> Optional[np.ndarray]:
        # keep spare edges away from untouched vertices the clique may still need
        if self.phase is not Phase.CLIQUE_BUILDING:
            return None
        outside = state.maker_deg == 0
        outside[self.clique] = False
        us, vs = edge_arrays(self.cfg.n)
        return outside[us] | outside[vs]


def thm1_condition_exact(n: int, a: int, b: int) -> bool:
    """Concrete certificate for the clique-then-box strategy at (n, a, b).

    Checks that the clique can be grown (every move adds a vertex and enough
    Maker-untouched vertices remain) and that BoxMaker wins
    B(k, k(n-k), b, a) by the closed-form potential bound.

    Not monotone in b: the phase-1 vertex count bound grows linearly in b.
    See :func:`thm1_certificate` for the monotone version.
    """
    return b > a and _thm1_phase1(n, a, b) and _thm1_phase2(n, a, b)


def _thm1_phase1(n: int, a: int, b: int) -> bool:
    if not thm1_parameters(n, a).feasible(b):
        return False
    touched = (
        Fraction(b * (2 * a + 3), 3 * (a + 3))
        + Fraction(b * (2 * a + 2), 2 * (a + 2) * (a + 3))
        + Fraction(b * (2 * a + 1), (a + 1) * (a + 2))
    )
    return touched <= n


def _thm1_phase2(n: int, a: int, b: int) -> bool:
    k = thm1_parameters(n, a).k_target
    m = _ceil_div(k, a) - 1
    lhs = k * (n - k)
    base = k * b - 1 + b
    coeff = Fraction(k * (b - a - 1), a)
    return _compare_with_harmonic(lhs - base, coeff, m)


def thm1_min_b(n: int, a: int) -> Optional[int]:
    """Smallest b with :func:`thm1_condition_exact` true, or None.

    Feasibility and the box-game inequality only get easier as b grows and the
    phase-1 count only gets harder, so the valid b form an interval.
    """
    lo, hi = max(a + 1, thm1_parameters(n, a).min_b), n * (n - 1) // 2
    if not _thm1_phase2(n, a, hi):
        return None
    while lo < hi:
        mid = (lo + hi) // 2
        if _thm1_phase2(n, a, mid):
            hi = mid
        else:
            lo = mid + 1
    return lo if _thm1_phase1(n, a, lo) else None


def thm1_certificate(n: int, a: int, b: int) -> bool:
    """Breaker wins (a:b): the clique strategy is certified at some b' <= b.

    Bias monotonicity carries the win from b' up to b.
    """
    b_min = thm1_min_b(n, a)
    return b_min is not None and b >= b_min


def _compare_with_harmonic(target, coeff: Fraction, m: int) -> bool:
    """Decide ``target <= coeff * sum_{i=2}^{m} 1/i``."""
    if m < 2 or coeff == 0:
        return target <= 0
    h = harmonic(m)
    if isinstance(h, Fraction):
        return target <= coeff * (h - 1)
    with mpmath.workdps(_DPS):
        rhs = mpmath.mpf(coeff.numerator) / coeff.denominator * (h - 1)
        diff = rhs - target
        if abs(diff) > mpmath.mpf(10) ** -9 * max(1, abs(rhs)):
            return bool(diff >= 0)
    return target <= coeff * (harmonic_exact(m) - 1)


# -- Box Game on vertex stars ---------------------------------------------------


class StarBoxBreaker(Policy):
    id = "breaker.thm2"
    side = Player.BREAKER

    def __init__(self, cfg: GameConfig, rng=None, random_fill: bool = False):
        super().__init__(cfg, rng)
        n = cfg.n
        self.box_free = [n - 1] * n
        self.alive = [True] * n
        self.cursor = [0] * n
        self.seen = 0
        self.random_fill = random_fill

    def observe(self, state: GameState) -> None:
        """Hand BoxBreaker one element of each star touched by a Maker edge."""
        n = self.cfg.n
        for player, e in state.history[self.seen:]:
            if player is Player.MAKER:
                for x in edge_endpoints(e, n):
                    if self.box_free[x] > 0:
                        self.box_free[x] -= 1
                    self.alive[x] = False
        self.seen = len(state.history)

    def choose(self, state: GameState) -> list[int]:
        self.observe(state)
        try:
            picks = boxmaker_move(BoxState(self.box_free[:], self.alive[:]), state.picks_left)
        except BoxMakerLost:
            raise Forfeit("every vertex star has been touched by Maker") from None
        owner = state.owner
        n = self.cfg.n
        taken: set[int] = set()
        claims = []
        for i in picks:
            self.box_free[i] -= 1
            e = self._star_edge(owner, i, taken)
            if e is None:
                e = self._any_edge(state, taken)
            if e is None:
                break
            taken.add(e)
            claims.append(e)
        self.seen = len(state.history)
        return fill_free_edges(state, claims, state.picks_left, self.rng if self.random_fill else None)

    def _star_edge(self, owner, i: int, taken: set) -> Optional[int]:
        n = self.cfg.n
        j = self.cursor[i]
        while j < n:
            if j != i and owner[i, j] == FREE:
                e = edge_index(i, j, n)
                if e not in taken:
                    self.cursor[i] = j
                    return e
            j += 1
        self.cursor[i] = n
        return None

    def _any_edge(self, state: GameState, taken: set) -> Optional[int]:
        free = np.flatnonzero(state.ownership == FREE)
        for e in free:
            if int(e) not in taken:
                return int(e)
        return None


def thm2_condition(n: int, a: int, b: int) -> bool:
    """The closed-form bias bound for the star Box Game strategy."""
    with mpmath.workdps(_DPS):
        lg = mpmath.log(_ceil_div(n, 2 * a))
        extra = lg - 1 + mpmath.mpf(2 * a) / n
        rhs = (2 * a * (n - 2 + lg) + extra) / (2 * a + extra)
        return bool(b >= rhs)


def thm2_f_test(n: int, a: int, b: int) -> bool:
    """Exact sufficient test n(n-1) <= f(n; b, 2a) + b."""
    return n * (n - 1) <= potential_f(n, b, 2 * a) + b


def thm2_min_b(n: int, a: int) -> int:
    """Smallest b passing :func:`thm2_f_test` (the test is monotone in b)."""
    lo, hi = 1, n * (n - 1)
    while lo < hi:
        mid = (lo + hi) // 2
        if thm2_f_test(n, a, mid):
            hi = mid
        else:
            lo = mid + 1
    return lo


# -- matching, then isolation --------------------------------------------------


class MatchingBreaker(Policy):
    id = "breaker.thm3"
    side = Player.BREAKER

    def __init__(self, cfg: GameConfig, rng=None, random_fill: bool = False):
        super().__init__(cfg, rng)
        self.random_fill = random_fill

    def choose(self, state: GameState) -> list[int]:
        n = self.cfg.n
        picks = state.picks_left
        owner = state.owner
        claims: list[int] = []

        def take(u, v):
            if len(claims) < picks and owner[u, v] == FREE:
                e = edge_index(u, v, n)
                if e not in claims:
                    claims.append(e)

        if state.round == 1:
            for u in range(0, n - 1, 2):
                take(u, u + 1)
            if n % 2:
                x = next((x for x in range(n - 1) if owner[n - 1, x] == FREE), None)
                if x is not None:
                    take(n - 1, x)
        else:
            untouched = np.flatnonzero(state.maker_deg == 0)
            if len(untouched) == 0:
                raise Forfeit("Maker has touched every vertex")
            free_deg = (owner[untouched] == FREE).sum(axis=1)
            w = int(untouched[int(np.argmin(free_deg))])
            for x in range(n):
                if x != w:
                    take(w, x)
        return fill_free_edges(state, claims, picks, self.rng if self.random_fill else None)


def thm3_condition(n: int, a: int, b: int) -> bool:
    return 2 * a < n and b >= n - 2
