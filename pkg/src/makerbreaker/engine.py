"""Board, rules and match loop for the biased (a:b) game on the edges of K_n.

Breaker moves first and claims ``b`` edges per move, then Maker claims ``a``.
Edges are addressed by their rank in the lexicographic order of vertex pairs
``(u, v)`` with ``u < v``; that integer is the only edge identifier that ever
leaves this module (histories, JSON records, policy output).
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional, Sequence, Union

import numpy as np

from .unionfind import UnionFind

FREE = 0
NO_EDGE = -1  # diagonal of the owner matrix


class Player(enum.IntEnum):
    MAKER = 1
    BREAKER = 2

    @property
    def opponent(self) -> "Player":
        return Player.BREAKER if self is Player.MAKER else Player.MAKER

    def __str__(self):
        return self.name.capitalize()


class WinCondition(str, enum.Enum):
    CONNECTIVITY = "Connectivity"
    POSITIVE_MIN_DEGREE = "PositiveMinDegree"


class Cause(str, enum.Enum):
    SPANNING_CONNECTED = "SpanningConnected"
    ALL_VERTICES_TOUCHED = "AllVerticesTouched"
    ISOLATED_VERTEX = "IsolatedVertexForBreaker"
    CUT_SEALED = "CutSealed"
    BOARD_EXHAUSTED = "BoardExhausted"
    FORFEIT = "Forfeit"


class GameError(Exception):
    """Base class for rule violations."""


class IllegalMove(GameError):
    pass


class WrongTurn(GameError):
    pass


class Forfeit(Exception):
    """Raised by a scripted policy that cannot follow its prescription."""


@dataclass(frozen=True)
class GameConfig:
    n: int
    a: int
    b: int
    win_condition: WinCondition = WinCondition.CONNECTIVITY

    def __post_init__(self):
        if self.n < 2 or self.a < 1 or self.b < 1:
            raise ValueError(f"need n >= 2, a >= 1, b >= 1; got n={self.n}, a={self.a}, b={self.b}")
        object.__setattr__(self, "win_condition", WinCondition(self.win_condition))

    @property
    def num_edges(self) -> int:
        return self.n * (self.n - 1) // 2

    def bias(self, player: Player) -> int:
        return self.a if player is Player.MAKER else self.b


@dataclass(frozen=True)
class Outcome:
    winner: Player
    cause: Cause
    forfeiting_player: Optional[Player] = None
    detail: str = ""


# -- edge indexing ---------------------------------------------------------


def edge_index(u: int, v: int, n: int) -> int:
    """Rank of the unordered pair ``{u, v}`` in lexicographic order."""
    if not (0 <= u < n and 0 <= v < n) or u == v:
        raise ValueError(f"invalid vertex pair ({u}, {v}) for n={n}")
    if u > v:
        u, v = v, u
    return u * (2 * n - u - 1) // 2 + (v - u - 1)


@lru_cache(maxsize=32)
def edge_arrays(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Endpoint arrays ``(us, vs)`` indexed by edge id. Read-only."""
    us, vs = np.triu_indices(n, 1)
    us.setflags(write=False)
    vs.setflags(write=False)
    return us, vs


def edge_endpoints(e: int, n: int) -> tuple[int, int]:
    if not 0 <= e < n * (n - 1) // 2:
        raise ValueError(f"edge id {e} out of range for n={n}")
    us, vs = edge_arrays(n)
    return int(us[e]), int(vs[e])


@lru_cache(maxsize=32)
def edge_id_matrix(n: int) -> np.ndarray:
    """Symmetric ``n x n`` matrix of edge ids, -1 on the diagonal."""
    ids = -np.ones((n, n), dtype=np.int64)
    us, vs = edge_arrays(n)
    e = np.arange(len(us))
    ids[us, vs] = e
    ids[vs, us] = e
    ids.setflags(write=False)
    return ids


# -- state -----------------------------------------------------------------


class GameState:
    """Mutable game position. Use :meth:`copy` for value semantics.

    ``owner`` is a symmetric ``n x n`` int8 matrix holding ``FREE``,
    ``Player.MAKER`` or ``Player.BREAKER`` per vertex pair and ``NO_EDGE`` on
    the diagonal.
    """

    def __init__(self, cfg: GameConfig):
        n = cfg.n
        self.cfg = cfg
        self.owner = np.zeros((n, n), dtype=np.int8)
        np.fill_diagonal(self.owner, NO_EDGE)
        self.turn = Player.BREAKER
        self.picks_left = min(cfg.b, cfg.num_edges)
        self.round = 1
        self.history: list[tuple[Player, int]] = []
        self.n_free = cfg.num_edges
        self.maker_deg = np.zeros(n, dtype=np.int64)
        self.breaker_deg = np.zeros(n, dtype=np.int64)
        self.maker_uf = UnionFind(n)
        self.untouched = n

    def copy(self) -> "GameState":
        other = GameState.__new__(GameState)
        other.cfg = self.cfg
        other.owner = self.owner.copy()
        other.turn = self.turn
        other.picks_left = self.picks_left
        other.round = self.round
        other.history = self.history[:]
        other.n_free = self.n_free
        other.maker_deg = self.maker_deg.copy()
        other.breaker_deg = self.breaker_deg.copy()
        other.maker_uf = self.maker_uf.copy()
        other.untouched = self.untouched
        return other

    @property
    def ownership(self) -> np.ndarray:
        """Owner code per edge id."""
        us, vs = edge_arrays(self.cfg.n)
        return self.owner[us, vs]

    @property
    def exhausted(self) -> bool:
        return self.n_free == 0

    def count(self, who: int) -> int:
        return int(np.count_nonzero(self.ownership == who))

    def is_free(self, e: int) -> bool:
        u, v = edge_endpoints(e, self.cfg.n)
        return self.owner[u, v] == FREE

    def free_edges(self) -> np.ndarray:
        """Free edge ids in ascending order."""
        return np.flatnonzero(self.ownership == FREE)

    def claim(self, player: Player, e: int) -> None:
        if player is not self.turn:
            raise WrongTurn(f"{player} tried to claim during {self.turn}'s move")
        if self.picks_left < 1:
            raise IllegalMove("no picks left in this move")
        u, v = edge_endpoints(e, self.cfg.n)
        if self.owner[u, v] != FREE:
            raise IllegalMove(f"edge {e} ({u},{v}) is already claimed")
        self.owner[u, v] = self.owner[v, u] = player
        self.history.append((player, e))
        self.n_free -= 1
        if player is Player.MAKER:
            for x in (u, v):
                if self.maker_deg[x] == 0:
                    self.untouched -= 1
                self.maker_deg[x] += 1
            self.maker_uf.union(u, v)
        else:
            self.breaker_deg[u] += 1
            self.breaker_deg[v] += 1
        self.picks_left -= 1
        if self.picks_left == 0 or self.n_free == 0:
            self._end_move()

    def _end_move(self):
        self.turn = self.turn.opponent
        if self.turn is Player.BREAKER:
            self.round += 1
        # a move shrinks to whatever is left of the board
        self.picks_left = min(self.cfg.bias(self.turn), self.n_free)

    def maker_won(self) -> bool:
        """Cheap check used after each Maker claim."""
        if self.cfg.win_condition is WinCondition.CONNECTIVITY:
            return self.maker_uf.count == 1
        return self.untouched == 0


def apply_claim(state: GameState, player: Player, e: int) -> GameState:
    """Return a new state with ``e`` claimed by ``player``."""
    nxt = state.copy()
    nxt.claim(player, e)
    return nxt


def _is_connected(adj: np.ndarray) -> bool:
    n = adj.shape[0]
    seen = np.zeros(n, dtype=bool)
    seen[0] = True
    frontier = seen.copy()
    while frontier.any():
        nxt = adj[frontier].any(axis=0) & ~seen
        seen |= nxt
        frontier = nxt
    return bool(seen.all())


def detect_outcome(state: GameState, cfg: Optional[GameConfig] = None) -> Optional[Outcome]:
    """Decide the game if it is already decided, else return None.

    Breaker is declared the winner as soon as Maker can no longer complete a
    winning set, which is permanent because claims are never undone.
    """
    cfg = cfg or state.cfg
    n = cfg.n
    if cfg.win_condition is WinCondition.CONNECTIVITY:
        if state.maker_uf.count == 1:
            return Outcome(Player.MAKER, Cause.SPANNING_CONNECTED)
        if np.any(state.breaker_deg == n - 1):
            return Outcome(Player.BREAKER, Cause.CUT_SEALED)
        open_graph = state.owner != Player.BREAKER
        np.fill_diagonal(open_graph, False)
        if not _is_connected(open_graph):
            return Outcome(Player.BREAKER, Cause.CUT_SEALED)
        return None
    if state.untouched == 0:
        return Outcome(Player.MAKER, Cause.ALL_VERTICES_TOUCHED)
    if np.any(state.breaker_deg == n - 1):
        return Outcome(Player.BREAKER, Cause.ISOLATED_VERTEX)
    return None


# -- policies and matches ----------------------------------------------------


class Policy:
    """Move generator for one side.

    ``choose`` returns the edge ids for the whole current move, exactly
    ``state.picks_left`` of them. Raise :class:`Forfeit` when the scripted
    prescription cannot be followed.
    """

    id = "policy"
    side = Player.MAKER

    def __init__(self, cfg: GameConfig, rng: Optional[np.random.Generator] = None):
        self.cfg = cfg
        self.rng = rng if rng is not None else np.random.default_rng(0)

    def choose(self, state: GameState) -> list[int]:
        raise NotImplementedError


@dataclass
class MatchRecord:
    config: GameConfig
    maker_policy_id: str
    breaker_policy_id: str
    seed: int
    outcome: Outcome
    rounds_played: int
    history: list[int] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "n": self.config.n,
            "a": self.config.a,
            "b": self.config.b,
            "win_condition": self.config.win_condition.value,
            "maker": self.maker_policy_id,
            "breaker": self.breaker_policy_id,
            "seed": self.seed,
            "winner": str(self.outcome.winner),
            "cause": self.outcome.cause.value,
            "rounds": self.rounds_played,
            "history": list(self.history),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_json(cls, line: str) -> "MatchRecord":
        d = json.loads(line)
        cfg = GameConfig(d["n"], d["a"], d["b"], WinCondition(d["win_condition"]))
        winner = Player[d["winner"].upper()]
        cause = Cause(d["cause"])
        outcome = Outcome(winner, cause, winner.opponent if cause is Cause.FORFEIT else None)
        return cls(cfg, d["maker"], d["breaker"], d["seed"], outcome, d["rounds"], list(d["history"]))


def policy_rng(seed: int, side: Player) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([seed & (2**64 - 1), int(side)]))


def replay(cfg: GameConfig, history: Sequence[int]) -> GameState:
    """Rebuild the position reached by a history of edge ids."""
    state = GameState(cfg)
    for e in history:
        state.claim(state.turn, int(e))
    return state


def play_match(
    cfg: GameConfig,
    breaker: Union[str, Policy],
    maker: Union[str, Policy],
    seed: int = 0,
) -> MatchRecord:
    """Play one match to its first decided outcome.

    Policies may be given as registry ids (see :mod:`makerbreaker.policies`),
    in which case they are seeded deterministically from ``seed``.
    """
    from .policies import make_policy

    if isinstance(breaker, str):
        breaker = make_policy(breaker, cfg, policy_rng(seed, Player.BREAKER))
    if isinstance(maker, str):
        maker = make_policy(maker, cfg, policy_rng(seed, Player.MAKER))
    policies = {Player.BREAKER: breaker, Player.MAKER: maker}

    state = GameState(cfg)
    outcome = detect_outcome(state)
    while outcome is None:
        player = state.turn
        outcome = _play_move(state, player, policies[player])
        if outcome is None:
            outcome = detect_outcome(state)
        if outcome is None and state.exhausted:
            raise AssertionError("exhausted board must be decided")
    rounds = state.round if state.turn is Player.MAKER or not state.history else state.round - 1
    if outcome.cause is Cause.FORFEIT:
        rounds = state.round
    return MatchRecord(
        cfg, maker.id, breaker.id, seed, outcome, rounds, [e for _, e in state.history]
    )


def _forfeit(player: Player, detail: str) -> Outcome:
    return Outcome(player.opponent, Cause.FORFEIT, player, detail)


def _play_move(state: GameState, player: Player, policy: Policy) -> Optional[Outcome]:
    need = state.picks_left
    try:
        claims = [int(e) for e in policy.choose(state)]
    except Forfeit as exc:
        return _forfeit(player, str(exc))
    except Exception as exc:  # policy bugs count against the policy
        return _forfeit(player, f"{type(exc).__name__}: {exc}")
    if len(claims) > need:
        return _forfeit(player, f"{policy.id} returned {len(claims)} claims, move allows {need}")
    for e in claims:
        try:
            state.claim(player, e)
        except GameError as exc:
            return _forfeit(player, f"{policy.id}: {exc}")
        if player is Player.MAKER and state.maker_won():
            return detect_outcome(state)
    if len(claims) < need:
        decided = detect_outcome(state)
        return decided or _forfeit(player, f"{policy.id} returned {len(claims)} claims, move needs {need}")
    return None


def fill_free_edges(
    state: GameState,
    claims: list[int],
    count: int,
    rng: Optional[np.random.Generator] = None,
    avoid: Optional[np.ndarray] = None,
) -> list[int]:
    """Extend ``claims`` to ``count`` distinct free edges.

    Picks lowest ids first, or uniformly at random when ``rng`` is given.
    Edges with ``avoid[e]`` set are used only once nothing else is left.
    """
    missing = count - len(claims)
    if missing <= 0:
        return claims
    free = state.ownership == FREE
    free[claims] = False
    pools = [np.flatnonzero(free)]
    if avoid is not None:
        pools = [np.flatnonzero(free & ~avoid), np.flatnonzero(free & avoid)]
    for pool in pools:
        if missing <= 0:
            break
        if rng is not None:
            pool = rng.permutation(pool)
        take = pool[:missing]
        claims.extend(int(e) for e in take)
        missing -= len(take)
    return claims
