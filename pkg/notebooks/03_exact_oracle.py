"""
Exact solutions on tiny boards
==============================

The bitmask minimax solves every (a:b) game up to K_5 and reports the
largest Breaker bias Maker can still beat.
"""

from makerbreaker import GameConfig, WinCondition
from makerbreaker.solver import best_response, enumerate_threshold, solve_exact

print("K4 (1:1):", solve_exact(GameConfig(4, 1, 1), with_pv=True))

for n in (4, 5):
    for a in (1, 2, 3):
        conn = enumerate_threshold(n, a).b0
        pmd = enumerate_threshold(n, a, WinCondition.POSITIVE_MIN_DEGREE).b0
        print(f"n={n} a={a}: threshold b0={conn} (min degree game: {pmd})")

# the scripted matching Breaker against every Maker line
print("matching Breaker on (5,2,3):", best_response(GameConfig(5, 2, 3), "breaker.thm3").winner.name)
