import math

import numpy as np
import pytest

from makerbreaker.boxgame import potential_f
from makerbreaker.breaker import (
    CliqueThenBoxBreaker,
    MatchingBreaker,
    Phase,
    StarBoxBreaker,
    clique_step_size,
    thm1_condition_exact,
    thm1_parameters,
    thm2_condition,
    thm2_f_test,
    thm2_min_b,
    thm3_condition,
)
from makerbreaker.engine import Cause, Forfeit, GameConfig, GameState, Player, edge_index, play_match, replay
from makerbreaker.policies import MAKER_POLICIES


def test_thm1_parameters():
    plan = thm1_parameters(10**6, 1)
    assert plan.k_target == 36192
    assert plan.min_b == 1 + 2 * (36192 - 1)
    assert thm1_parameters(16, 1).k_target >= 1
    assert not plan.feasible(plan.min_b - 1) and plan.feasible(plan.min_b)


def test_clique_step_size():
    assert clique_step_size(1, 9, 0) == 3  # C(4,2) = 6 <= 9 < C(5,2)
    assert clique_step_size(2, 2, 0) == 0
    assert clique_step_size(2, 2, 1) == -1
    assert clique_step_size(1, 9, 2) == 2  # C(3,2) + 3*2 = 9 <= 9 < C(4,2) + 4*2


def test_thm1_first_move_builds_clique():
    cfg = GameConfig(30, 1, 9)
    pol = CliqueThenBoxBreaker(cfg)
    claims = pol.choose(GameState(cfg))
    quad = [edge_index(u, v, 30) for u in range(4) for v in range(u + 1, 4)]
    assert claims[:6] == quad
    assert len(claims) == 9 and len(set(claims)) == 9
    assert pol.clique == [0, 1, 2, 3]


def test_thm1_isolating_takes_last_free_edge():
    n = 8
    cfg = GameConfig(n, 1, 3)
    pol = CliqueThenBoxBreaker(cfg)
    pol.k_target = 2
    pol.clique = [0, 1]
    pol.phase = Phase.ISOLATING
    s = GameState(cfg)
    owner_hist = [edge_index(0, 1, n)] + [edge_index(0, v, n) for v in range(2, n - 1)]
    # hand-build a position: Breaker owns the clique edge and all but one edge at vertex 0
    for e in owner_hist:
        s.owner[tuple(_ends(e, n))] = Player.BREAKER
        s.owner[tuple(_ends(e, n))[::-1]] = Player.BREAKER
    claims = pol.choose(s)
    assert edge_index(0, n - 1, n) in claims


def _ends(e, n):
    from makerbreaker.engine import edge_endpoints

    return edge_endpoints(e, n)


def test_thm1_forfeits_when_outside_is_touched():
    n = 10
    cfg = GameConfig(n, 2, 20)
    s = GameState(cfg)
    s.maker_deg[:] = 1
    with pytest.raises(Forfeit):
        CliqueThenBoxBreaker(cfg).choose(s)


@pytest.mark.parametrize("maker", MAKER_POLICIES)
def test_thm1_clique_growth_and_purity(maker):
    cfg = GameConfig(60, 1, 40)
    for seed in range(3):
        pol = CliqueThenBoxBreaker(cfg)
        play_match(cfg, pol, maker, seed)
        for (before, ell, _), (nxt, _, _) in zip(pol.trace, pol.trace[1:]):
            assert nxt >= before + ell


def test_thm1_clique_is_breaker_complete_and_untouched():
    cfg = GameConfig(60, 1, 40)
    pol = CliqueThenBoxBreaker(cfg)
    s = GameState(cfg)
    rng = np.random.default_rng(3)
    for _ in range(4):
        for e in pol.choose(s):
            s.claim(Player.BREAKER, e)
        c = pol.clique
        assert np.all(s.maker_deg[c] == 0)
        sub = s.owner[np.ix_(c, c)]
        assert np.all(sub[~np.eye(len(c), dtype=bool)] == Player.BREAKER)
        while s.turn is Player.MAKER:
            s.claim(Player.MAKER, int(rng.choice(s.free_edges())))
        pol.clique = [v for v in pol.clique if s.maker_deg[v] == 0]


def test_thm1_condition_examples():
    assert not thm1_condition_exact(100, 1, 1)
    assert not thm1_condition_exact(100, 2, 2)  # b must exceed a


def test_thm1_condition_implies_asymptotic_form():
    for n in (10**4, 10**5, 10**6):
        for a in (1, 2, 3):
            lo, hi = a + 1, n
            while lo < hi:
                mid = (lo + hi) // 2
                if thm1_condition_exact(n, a, mid):
                    hi = mid
                else:
                    lo = mid + 1
            eps = lo * math.log(a * n) / (a * n) - 1
            assert eps > 0


def test_thm2_first_move_maps_to_star():
    cfg = GameConfig(4, 1, 2)
    claims = StarBoxBreaker(cfg).choose(GameState(cfg))
    assert claims == [edge_index(0, 1, 4), edge_index(0, 2, 4)] or claims == [edge_index(0, 1, 4), edge_index(1, 2, 4)]


def test_thm2_double_decrement():
    n = 7
    cfg = GameConfig(n, 1, 3)
    pol = StarBoxBreaker(cfg)
    s = GameState(cfg)
    for e in pol.choose(s):
        s.claim(Player.BREAKER, e)
    before = sum(pol.box_free)
    e = int(s.free_edges()[-1])
    s.claim(Player.MAKER, e)
    pol.observe(s)
    assert sum(pol.box_free) == before - 2
    u, v = _ends(e, n)
    assert not pol.alive[u] and not pol.alive[v]


def test_thm2_fallback_still_decrements():
    n = 4
    cfg = GameConfig(n, 1, 2)
    pol = StarBoxBreaker(cfg)
    s = replay(cfg, [])
    # vertex 0's star is gone, but box 0 is the fullest in the model
    for v in range(1, n):
        s.owner[0, v] = s.owner[v, 0] = Player.MAKER
    claims = pol.choose(s)
    # box 0 maps to the lowest free edge anywhere, box 1 to its own star
    assert claims == [edge_index(1, 2, n), edge_index(1, 3, n)]
    assert pol.box_free[:2] == [2, 2]


def test_thm2_condition_examples():
    assert potential_f(100, 99, 10) + 99 >= 9900
    assert thm2_f_test(100, 5, 99)
    assert not thm2_condition(100, 5, 1)
    assert not thm2_f_test(100, 5, 1)


@pytest.mark.parametrize("n,a", [(50, 2), (100, 5), (200, 10)])
def test_thm2_monotone_in_b(n, a):
    f_vals = [thm2_f_test(n, a, b) for b in range(1, n + 5)]
    c_vals = [thm2_condition(n, a, b) for b in range(1, n + 5)]
    for vals in (f_vals, c_vals):
        first = vals.index(True) if True in vals else len(vals)
        assert all(vals[first:])
    assert thm2_min_b(n, a) == f_vals.index(True) + 1


def test_thm3_moves():
    cfg = GameConfig(5, 2, 3)
    pol = MatchingBreaker(cfg)
    first = pol.choose(GameState(cfg))
    assert first == [edge_index(0, 1, 5), edge_index(2, 3, 5), edge_index(0, 4, 5)]
    cfg = GameConfig(4, 1, 2)
    assert MatchingBreaker(cfg).choose(GameState(cfg)) == [edge_index(0, 1, 4), edge_index(2, 3, 4)]


def test_thm3_forfeits_without_untouched_vertex():
    cfg = GameConfig(6, 3, 4)
    # Breaker: matching plus one fill; Maker: 03, 14, 25 touch all six vertices
    s = replay(cfg, [0, 9, 14, 1, edge_index(0, 3, 6), edge_index(1, 4, 6), edge_index(2, 5, 6)])
    assert s.round == 2 and np.all(s.maker_deg > 0)
    with pytest.raises(Forfeit):
        MatchingBreaker(cfg).choose(s)


def test_thm3_condition():
    assert thm3_condition(5, 2, 3)
    assert not thm3_condition(6, 3, 4)
    assert not thm3_condition(10, 1, 7)


@pytest.mark.parametrize("breaker", ["breaker.thm1", "breaker.thm2", "breaker.thm3"])
def test_policies_are_legal(breaker):
    # forfeits for infeasibility are fine; illegal claims are not
    for n, a, b in [(12, 1, 10), (20, 2, 19), (9, 1, 7)]:
        cfg = GameConfig(n, a, b)
        for maker in MAKER_POLICIES:
            rec = play_match(cfg, breaker, maker, seed=5)
            if rec.outcome.cause is Cause.FORFEIT:
                assert "already claimed" not in rec.outcome.detail
                assert "returned" not in rec.outcome.detail
