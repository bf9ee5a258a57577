"""
Sweeping the bias grid
======================

A sweep evaluates every certificate, simulates strategy pairings and, on
tiny boards, the exact oracle for each (a, b) cell. Seeds are derived per
cell, so the table does not depend on scheduling.
"""

from makerbreaker.analysis import sweep, sweep_csv

rows = sweep(40, [1, 2], [2, 6, 10, 14], trials=10, seed=0)
print(sweep_csv(rows))
for r in rows:
    if r.conflict:
        print("conflicting certificates at", (r.n, r.a, r.b))
