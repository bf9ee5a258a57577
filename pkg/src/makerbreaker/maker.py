"""Maker's danger-driven spanning tree strategy.

Maker keeps one active vertex per component of his graph. Each step he takes
the active vertex of maximum danger, joins its component to another one by a
free edge, and deactivates it. A component is dangerous while it has at most
``2b/a`` vertices; the danger of a vertex in a dangerous component is its
Breaker degree, and -1 otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass

import mpmath
import numpy as np

from .engine import FREE, Forfeit, GameConfig, GameState, Player, Policy, edge_endpoints, edge_id_matrix, fill_free_edges
from .unionfind import UnionFind

NOT_DANGEROUS = -1


@dataclass
class ComponentView:
    """Maker's components, Breaker degrees and the active-vertex flags."""

    uf: UnionFind
    breaker_deg: np.ndarray
    active: np.ndarray

    @classmethod
    def fresh(cls, n: int) -> "ComponentView":
        return cls(UnionFind(n), np.zeros(n, dtype=np.int64), np.ones(n, dtype=bool))

    def roots(self) -> np.ndarray:
        return self.uf.roots()

    def component_sizes(self) -> np.ndarray:
        """Size of each vertex's component."""
        roots = self.roots()
        return np.bincount(roots, minlength=len(roots))[roots]

    def check(self) -> None:
        """Assert one active vertex per component and a forest of n - count edges."""
        roots = self.roots()
        per_root = np.bincount(roots[self.active], minlength=len(roots))
        comps = np.unique(roots)
        if not np.all(per_root[comps] == 1) or per_root.sum() != len(comps):
            raise AssertionError("every Maker component must hold exactly one active vertex")
        if int(self.active.sum()) != self.uf.count:
            raise AssertionError("active set size must equal the component count")


def danger(v: int, view: ComponentView, cfg: GameConfig) -> int:
    if cfg.a * view.uf.component_size(v) <= 2 * cfg.b:
        return int(view.breaker_deg[v])
    return NOT_DANGEROUS


def dangers(view: ComponentView, cfg: GameConfig) -> np.ndarray:
    dangerous = cfg.a * view.component_sizes() <= 2 * cfg.b
    return np.where(dangerous, view.breaker_deg, NOT_DANGEROUS)


def maker_step(owner: np.ndarray, view: ComponentView, cfg: GameConfig) -> int:
    """Pick the edge for one step and update ``view`` as if it were claimed.

    ``owner`` is the working copy of the owner matrix and is updated too.
    """
    if view.uf.count == 1:
        raise ValueError("Maker's graph already spans K_n")
    active = np.flatnonzero(view.active)
    d = dangers(view, cfg)[active]
    v = int(active[int(np.argmax(d))])
    roots = view.roots()
    inside = roots == roots[v]
    cut = owner[np.ix_(inside, ~inside)] == FREE
    if not cut.any():
        raise Forfeit(f"the component of vertex {v} has no free edge leaving it")
    ids = edge_id_matrix(cfg.n)[np.ix_(inside, ~inside)]
    e = int(ids[cut].min())
    x, y = edge_endpoints(e, cfg.n)
    owner[x, y] = owner[y, x] = Player.MAKER
    view.uf.union(x, y)
    view.active[v] = False
    return e


def maker_move(state: GameState, view: ComponentView, cfg: GameConfig, check: bool = False) -> list[int]:
    """All of Maker's claims for the current move; mutates ``view``."""
    owner = state.owner.copy()
    view.breaker_deg = state.breaker_deg.copy()
    claims: list[int] = []
    while len(claims) < state.picks_left and view.uf.count > 1:
        claims.append(maker_step(owner, view, cfg))
        if check:
            view.check()
    return fill_free_edges(state, claims, state.picks_left)


class DangerMaker(Policy):
    id = "maker.thm4"
    side = Player.MAKER

    def __init__(self, cfg: GameConfig, rng=None, check: bool = False):
        super().__init__(cfg, rng)
        self.view = ComponentView.fresh(cfg.n)
        self.check = check

    def choose(self, state: GameState) -> list[int]:
        # Maker's own graph is the source of truth for components
        self.view.uf = state.maker_uf.copy()
        return maker_move(state, self.view, self.cfg, self.check)


def thm4_split(n: int) -> float:
    """The bias a around which the two Maker bounds trade places."""
    return float(mpmath.sqrt(mpmath.mpf(n) / mpmath.log(n)))


def thm4_condition(n: int, a: int, b: int) -> tuple[bool, int]:
    """Evaluate Maker's sufficient bias bound; returns ``(holds, branch)``."""
    if n < 3:
        raise ValueError("n must be at least 3")
    with mpmath.workdps(40):
        ln = mpmath.log(n)
        if a < mpmath.sqrt(n / ln):
            top = a * (n - n / (a * ln) + mpmath.mpf(a - 1) / 2 * mpmath.log(n / (a * a * ln)))
            rhs = top / (ln + a + mpmath.log(ln) + 4)
            return bool(b < rhs), 1
        if 2 * a > n - 1:
            return False, 2
        rhs = mpmath.mpf(a * n) / (a + 2 * ln - 2 * mpmath.log(a) + 4)
        return bool(b < rhs), 2
