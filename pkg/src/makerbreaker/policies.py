"""Baseline policies and the id -> policy registry."""

from __future__ import annotations

from typing import Optional

import numpy as np

from .breaker import CliqueThenBoxBreaker, MatchingBreaker, StarBoxBreaker
from .engine import FREE, GameConfig, GameState, Player, Policy, edge_endpoints, edge_id_matrix, edge_index, fill_free_edges
from .maker import DangerMaker


class UnknownPolicy(ValueError):
    pass


class LowestFree(Policy):
    """Claims the lowest-numbered free edges."""

    def __init__(self, cfg, rng=None, side=Player.MAKER):
        super().__init__(cfg, rng)
        self.side = side
        self.id = f"{'maker' if side is Player.MAKER else 'breaker'}.lowest"

    def choose(self, state):
        return fill_free_edges(state, [], state.picks_left)


class RandomPolicy(Policy):
    """Uniformly random free edges, without replacement."""

    def __init__(self, cfg, rng=None, side=Player.MAKER):
        super().__init__(cfg, rng)
        self.side = side
        self.id = f"{'maker' if side is Player.MAKER else 'breaker'}.random"

    def choose(self, state):
        free = state.free_edges()
        return [int(e) for e in self.rng.choice(free, size=state.picks_left, replace=False)]


class GreedyConnect(Policy):
    """Maker baseline: join the two largest components that can still be joined."""

    id = "maker.greedy-connect"
    side = Player.MAKER

    def choose(self, state: GameState) -> list[int]:
        owner = state.owner.copy()
        uf = state.maker_uf.copy()
        ids = edge_id_matrix(self.cfg.n)
        claims: list[int] = []
        while len(claims) < state.picks_left and uf.count > 1:
            e = self._best_join(owner, uf, ids)
            if e is None:
                break
            x, y = edge_endpoints(e, self.cfg.n)
            owner[x, y] = owner[y, x] = Player.MAKER
            uf.union(int(x), int(y))
            claims.append(e)
        return fill_free_edges(state, claims, state.picks_left)

    @staticmethod
    def _best_join(owner, uf, ids) -> Optional[int]:
        roots = uf.roots()
        comps = sorted(set(roots.tolist()), key=lambda r: (-uf.size[r], r))
        masks = {r: roots == r for r in comps}
        for i, r in enumerate(comps):
            for s in comps[i + 1:]:
                block = np.ix_(masks[r], masks[s])
                free = owner[block] == FREE
                if free.any():
                    return int(ids[block][free].min())
        return None


class GreedyCut(Policy):
    """Breaker baseline: attack the Maker component with the fewest free
    edges leaving it (ties: smaller component, then lower vertex)."""

    id = "breaker.greedy-cut"
    side = Player.BREAKER

    def choose(self, state: GameState) -> list[int]:
        n = self.cfg.n
        owner = state.owner.copy()
        roots = state.maker_uf.roots()
        same = roots[:, None] == roots[None, :]
        free = owner == FREE
        exits = (free & ~same).sum(axis=1)
        comps = np.unique(roots)
        cut = dict(zip(comps.tolist(), np.bincount(roots, weights=exits, minlength=n)[comps].astype(int).tolist()))
        size = np.bincount(roots, minlength=n)
        ids = edge_id_matrix(n)
        claims: list[int] = []
        while len(claims) < state.picks_left:
            open_comps = [r for r, c in cut.items() if c > 0]
            if not open_comps:
                break
            r = min(open_comps, key=lambda r: (cut[r], size[r], r))
            block = np.ix_(roots == r, roots != r)
            avail = owner[block] == FREE
            e = int(ids[block][avail].min())
            x, y = edge_endpoints(e, self.cfg.n)
            owner[x, y] = owner[y, x] = Player.BREAKER
            cut[int(roots[x])] -= 1
            cut[int(roots[y])] -= 1
            claims.append(e)
        return fill_free_edges(state, claims, state.picks_left)


class GreedyIsolate(Policy):
    """Breaker baseline: raise the minimum Breaker degree over Maker-isolated
    vertices, one edge at a time.

    Each pick goes to the isolated vertex of least Breaker degree that still
    has a free edge; its partner is another such vertex of least degree when
    one is free, so a single edge can lift two minima.
    """

    id = "breaker.greedy-isolate"
    side = Player.BREAKER

    def choose(self, state: GameState) -> list[int]:
        n = self.cfg.n
        free = state.owner == FREE
        deg = state.breaker_deg.astype(np.int64).copy()
        isolated = state.maker_deg == 0
        claims: list[int] = []
        while len(claims) < state.picks_left:
            cand = np.flatnonzero(isolated & free.any(axis=1))
            if len(cand) == 0:
                break
            v = int(cand[np.argmin(deg[cand])])
            row = np.flatnonzero(free[v])
            partners = row[isolated[row]]
            if len(partners):
                w = int(partners[np.argmin(deg[partners])])
            else:
                w = int(row[0])
            free[v, w] = free[w, v] = False
            deg[v] += 1
            deg[w] += 1
            claims.append(edge_index(v, w, n))
        return fill_free_edges(state, claims, state.picks_left)


_REGISTRY = {
    "maker.thm4": lambda cfg, rng: DangerMaker(cfg, rng),
    "maker.random": lambda cfg, rng: RandomPolicy(cfg, rng, Player.MAKER),
    "maker.greedy-connect": lambda cfg, rng: GreedyConnect(cfg, rng),
    "maker.lowest": lambda cfg, rng: LowestFree(cfg, rng, Player.MAKER),
    "breaker.thm1": lambda cfg, rng: CliqueThenBoxBreaker(cfg, rng),
    "breaker.thm2": lambda cfg, rng: StarBoxBreaker(cfg, rng),
    "breaker.thm3": lambda cfg, rng: MatchingBreaker(cfg, rng),
    "breaker.random": lambda cfg, rng: RandomPolicy(cfg, rng, Player.BREAKER),
    "breaker.greedy-isolate": lambda cfg, rng: GreedyIsolate(cfg, rng),
    "breaker.greedy-cut": lambda cfg, rng: GreedyCut(cfg, rng),
    "breaker.lowest": lambda cfg, rng: LowestFree(cfg, rng, Player.BREAKER),
}

POLICY_IDS = tuple(_REGISTRY)
MAKER_POLICIES = tuple(p for p in POLICY_IDS if p.startswith("maker."))
BREAKER_POLICIES = tuple(p for p in POLICY_IDS if p.startswith("breaker."))


def make_policy(policy_id: str, cfg: GameConfig, rng: Optional[np.random.Generator] = None) -> Policy:
    try:
        factory = _REGISTRY[policy_id]
    except KeyError:
        raise UnknownPolicy(f"unknown policy id {policy_id!r}; known: {', '.join(POLICY_IDS)}") from None
    return factory(cfg, rng if rng is not None else np.random.default_rng(0))


def policy_side(policy_id: str) -> Player:
    if policy_id not in _REGISTRY:
        raise UnknownPolicy(f"unknown policy id {policy_id!r}")
    return Player.MAKER if policy_id.startswith("maker.") else Player.BREAKER
