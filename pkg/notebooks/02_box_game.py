"""
The Box Game
============

BoxMaker (bias a, moving first) claims elements of disjoint boxes; BoxBreaker
(bias b) wins by filling a whole box. The potential f(k, a, b) gives a
sufficient test: BoxBreaker wins all k boxes of total size t whenever
t <= f + a.
"""

from makerbreaker import (
    BoxConfig,
    boxmaker_wins_sufficient,
    canonical_sizes,
    lemma1_lower_bound,
    potential_f,
    solve_boxgame_exact,
)

a, b = 3, 2
for k in (3, 10, 30, 60):
    print(f"k={k:3d}  f={potential_f(k, a, b):5d}  lower bound={float(lemma1_lower_bound(k, a, b)):9.2f}")

# compare the sufficient test with the exact solver on small games
k, a, b = 3, 2, 2
for t in range(k, 13):
    sizes = canonical_sizes(k, t)
    test = boxmaker_wins_sufficient(BoxConfig(k, t, a, b))
    print(t, sizes, "test:", test, "exact:", solve_boxgame_exact(sizes, a, b).value)
