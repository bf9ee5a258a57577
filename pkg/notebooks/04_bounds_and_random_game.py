"""
Threshold bounds and the random game
====================================

For fixed n the threshold bias b0(a) sits in a band whose form depends on
how large a is. The random game, where both players claim uniformly random
edges, gives a contrast: its threshold is set by how many edges Maker gets.
"""

import math

from makerbreaker.analysis import corollary_bounds, minimal_harmonic_threshold, random_game

print("harmonic bounds hold from j =", minimal_harmonic_threshold(10_000))

n = 10**6
ln = math.log(n)
for a in (2, 13, 27, 138, 10_000, 125_000, 333_333):
    band = corollary_bounds(n, a)
    print(f"a={a:7d} regime {band.regime:>6s}: {band.lower:14.1f} <= b0 <= {band.upper:14.1f}")

n = 1024
for b in (91, 245):
    res = random_game(n, 1, b, trials=50, seed=0)
    share = res.maker_edges / (n * math.log(n))
    print(f"b={b}: Maker keeps {share:.2f} n ln n edges, wins {res.frequency:.2f} [{res.low:.2f}, {res.high:.2f}]")
