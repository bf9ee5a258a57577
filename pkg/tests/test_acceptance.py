"""Acceptance criteria, one test per criterion, each reporting a PASS/FAIL line.

Run alone with ``pytest tests/test_acceptance.py -v``; the summary lines are
printed at the end of the session.
"""

import itertools
import math
import subprocess
import sys
import time
from math import comb

from joblib import Parallel, delayed

from makerbreaker.analysis import (
    classify_regime,
    corollary_bounds,
    harmonic_bound_failures,
    minimal_harmonic_threshold,
    random_game,
)
from makerbreaker.boxgame import (
    BoxConfig,
    BoxPlayer,
    boxmaker_wins_sufficient,
    canonical_sizes,
    lemma1_lower_bound,
    potential_f,
    scripted_boxmaker_beats_all,
    solve_boxgame_exact,
)
from makerbreaker.breaker import thm2_f_test, thm2_min_b
from makerbreaker.engine import Cause, GameConfig, Player, play_match
from makerbreaker.maker import thm4_condition, thm4_split
from makerbreaker.policies import BREAKER_POLICIES
from makerbreaker.solver import best_response, solve_exact

JOBS = -1


def test_box_potential_dominates_lower_bound(report):
    t0 = time.perf_counter()
    checked = violations = 0
    for a in range(2, 13):
        for b in range(1, a):
            for k in range(b + 1, 61):
                checked += 1
                violations += potential_f(k, a, b) < lemma1_lower_bound(k, a, b)
    elapsed = time.perf_counter() - t0
    report(1, violations == 0 and elapsed < 5, f"{checked} triples, {violations} violations, {elapsed:.2f}s (< 5s)")


def test_scripted_boxmaker_soundness(report):
    t0 = time.perf_counter()
    certified = unsound = contradictions = 0
    for k, a, b in itertools.product(range(1, 5), range(1, 4), range(1, 4)):
        for t in range(k, 17):
            sizes = canonical_sizes(k, t)
            sufficient = boxmaker_wins_sufficient(BoxConfig(k, t, a, b))
            if sufficient:
                certified += 1
                unsound += not scripted_boxmaker_beats_all(sizes, a, b)
            if solve_boxgame_exact(sizes, a, b) is BoxPlayer.BOXBREAKER and sufficient:
                contradictions += 1
    elapsed = time.perf_counter() - t0
    ok = unsound == 0 and contradictions == 0 and elapsed < 120
    report(2, ok, f"{certified} certified games, {unsound} lost lines, {contradictions} contradictions, {elapsed:.2f}s (< 120s)")


def test_connectivity_oracle_fixtures(report):
    t0 = time.perf_counter()
    k3 = solve_exact(GameConfig(3, 1, 1)).winner
    k4 = solve_exact(GameConfig(4, 1, 1)).winner
    k4_12 = solve_exact(GameConfig(4, 1, 2)).winner
    grid = {(a, b): solve_exact(GameConfig(5, a, b)).winner for a in range(1, 5) for b in range(1, 5)}
    broken = []
    for (a, b), w in grid.items():
        if w is Player.BREAKER and (a, b + 1) in grid and grid[(a, b + 1)] is not Player.BREAKER:
            broken.append((a, b, "b+1"))
        if w is Player.MAKER and (a + 1, b) in grid and grid[(a + 1, b)] is not Player.MAKER:
            broken.append((a, b, "a+1"))
    elapsed = time.perf_counter() - t0
    b0 = {a: max([b for b in range(1, 5) if grid[(a, b)] is Player.MAKER], default=0) for a in range(1, 5)}
    ok = k3 is Player.BREAKER and k4 is Player.MAKER and not broken and elapsed < 600
    report(
        3, ok,
        f"K3(1:1) {k3}, K4(1:1) {k4}, K4(1:2) {k4_12}, K5 grid b0 by a {b0}, "
        f"{len(broken)} monotonicity breaks, {elapsed:.2f}s (< 600s)",
    )


def test_matching_breaker_beats_every_line(report):
    results = {cfg: best_response(GameConfig(*cfg), "breaker.thm3").winner for cfg in [(5, 2, 3), (4, 1, 2)]}
    ok = all(w is Player.BREAKER for w in results.values())
    report(4, ok, ", ".join(f"(n,a,b)={c}: {w}" for c, w in results.items()))


def _breaker_wins(n, a, b, maker, seeds):
    cfg = GameConfig(n, a, b)
    return sum(play_match(cfg, "breaker.thm2", maker, s).outcome.winner is Player.BREAKER for s in seeds)


def test_star_breaker_certificate_coherence(report):
    makers = ("maker.thm4", "maker.greedy-connect", "maker.random")
    cells = []
    for n in (50, 100, 200):
        for a in range(2, n // 6 + 1):
            b = thm2_min_b(n, a)
            assert thm2_f_test(n, a, b)
            cells += [(n, a, b, m) for m in makers]
    wins = Parallel(n_jobs=JOBS)(delayed(_breaker_wins)(*c, range(50)) for c in cells)
    failed = [(c, w) for c, w in zip(cells, wins) if w != 50]
    report(
        5, not failed,
        f"{len(cells)} cells at the smallest certified b, 50 matches each, "
        f"{len(failed)} cells below 100%" + (f" e.g. {failed[:3]}" if failed else ""),
    )


def _maker_record(n, a, b, breaker, seed):
    out = play_match(GameConfig(n, a, b), breaker, "maker.thm4", seed).outcome
    return out.winner is Player.MAKER, out.cause is Cause.FORFEIT and out.forfeiting_player is Player.MAKER


def _vitality_grid():
    cells = []
    for n in (50, 100, 200):
        split = thm4_split(n)
        for a in sorted({1, 2, 4, 8, int(split) + 1, n // 4}):
            bs = [b for b in range(1, 2 * n) if thm4_condition(n, a, b)[0]]
            step = max(1, len(bs) // 6)
            for b in bs[::step] + bs[-1:]:
                cells.append((n, a, b))
    return sorted(set(cells))


def test_danger_maker_vitality(report):
    n, a = 200, 1
    b = int(0.5 * n / math.log(n))
    rates = {}
    for breaker in ("breaker.greedy-isolate", "breaker.random"):
        res = Parallel(n_jobs=JOBS)(delayed(_maker_record)(n, a, b, breaker, s) for s in range(200))
        rates[breaker] = sum(w for w, _ in res) / 200
    grid = _vitality_grid()
    jobs = [(*cell, br, s) for cell in grid for br in BREAKER_POLICIES for s in range(3)]
    res = Parallel(n_jobs=JOBS)(delayed(_maker_record)(*j) for j in jobs)
    forfeits = [j for j, (_, f) in zip(jobs, res) if f]
    ok = all(r >= 0.95 for r in rates.values()) and not forfeits
    report(
        6, ok,
        f"n=200 a=1 b={b}: win rate {', '.join(f'{k} {v:.3f}' for k, v in rates.items())} (>= 0.95); "
        f"{len(jobs)} matches on {len(grid)} certified cells, {len(forfeits)} Maker forfeits",
    )


def test_random_game_straddle(report):
    t0 = time.perf_counter()
    n = 1024
    edges, nlnn = comb(n, 2), n * math.log(n)
    b_hi = max(b for b in range(1, 1000) if edges // (b + 1) >= 0.8 * nlnn)
    b_lo = min(b for b in range(1, 1000) if edges // (b + 1) <= 0.3 * nlnn)
    dense = random_game(n, 1, b_hi, 200, seed=2024)
    sparse = random_game(n, 1, b_lo, 200, seed=2025)
    elapsed = time.perf_counter() - t0
    ok = dense.frequency >= 0.8 - 0.1 and sparse.frequency <= 0.2 + 0.1 and elapsed < 300
    report(
        7, ok,
        f"b={b_hi}: {dense.frequency:.3f} [{dense.low:.3f}, {dense.high:.3f}] (>= 0.8 +/- 0.1); "
        f"b={b_lo}: {sparse.frequency:.3f} [{sparse.low:.3f}, {sparse.high:.3f}] (<= 0.2 +/- 0.1); {elapsed:.1f}s (< 300s)",
    )


def test_harmonic_bounds(report):
    j0 = minimal_harmonic_threshold(100_000)
    late = [j for j in harmonic_bound_failures(100_000) if j >= j0]
    report(8, j0 == 6 and not late, f"minimal threshold j0={j0} (pinned 6), {len(late)} failures on [j0, 10^5]")


def test_bound_band_sanity(report):
    n = 10**6
    ln = math.log(n)
    listed = [2, 5, int(ln), int(10 * ln), int(math.sqrt(n / ln)), n // 100, n // 8, n // 3]
    extra = [int(2 * ln)]  # the listed points never land in (iii) under the documented cutoffs
    bands = [corollary_bounds(n, a) for a in listed + extra]
    unordered = [(b.a, b.lower, b.upper) for b in bands if not b.ordered]
    covered = {b.regime for b in bands}
    missing = {"i", "ii", "iii", "iv", "v", "vi", "vii"} - covered
    regime_map = ", ".join(f"{b.a}:{b.regime}" for b in bands)
    ok = not unordered and not missing and all(b.dropped_terms for b in bands)
    report(
        9, ok,
        f"n=10^6 a->regime {regime_map}; {len(unordered)} inverted bands; missing regimes {sorted(missing) or 'none'}; "
        f"o(1) terms dropped and flagged",
    )


CLI_RUNS = [
    ["play", "--n", "30", "--a", "2", "--b", "5", "--maker", "maker.random", "--breaker", "breaker.random", "--seed", "17"],
    ["play", "--n", "5", "--a", "2", "--b", "3", "--maker", "maker.thm4", "--breaker", "breaker.thm3", "--seed", "1"],
    ["boxgame", "--k", "2", "--t", "4", "--maker-bias", "2", "--breaker-bias", "1"],
    ["boxgame", "2,2,3;a=2;b=1", "--format", "csv"],
    ["solve", "--n", "4", "--a", "1", "--b", "1", "--pv"],
    ["solve", "--n", "4", "--threshold", "--a-list", "1:4", "--format", "csv"],
    ["sweep", "--n", "20", "--a", "1,2", "--b", "2:12:3", "--trials", "4", "--seed", "7", "--jobs", "2"],
    ["random", "--n", "200", "--b", "5,20", "--trials", "20", "--seed", "7"],
    ["bounds", "--n", "1000000", "--a", "2,13,27,138", "--format", "human"],
]


def _cli(argv):
    return subprocess.run([sys.executable, "-m", "makerbreaker.cli", *argv], capture_output=True, check=False)


def test_cli_determinism(report):
    mismatched, failed = [], []
    for argv in CLI_RUNS:
        first, second = _cli(argv), _cli(argv)
        if first.returncode or second.returncode:
            failed.append(argv[0])
        if first.stdout != second.stdout or not first.stdout:
            mismatched.append(" ".join(argv[:1]))
    subs = sorted({argv[0] for argv in CLI_RUNS})
    report(
        10, not mismatched and not failed,
        f"{len(CLI_RUNS)} invocations over {', '.join(subs)} run twice; {len(mismatched)} differ, {len(failed)} nonzero exits",
    )


if __name__ == "__main__":
    import pytest

    sys.exit(pytest.main([__file__, "-v"]))
