"""
Playing a biased Connectivity game
==================================

Breaker moves first and claims b edges per turn, Maker answers with a.
Maker wins by owning a spanning tree of K_n; Breaker wins once Maker can
no longer do so.
"""

from makerbreaker import GameConfig, play_match, replay, detect_outcome

# a small board where the matching Breaker is known to hold
cfg = GameConfig(n=5, a=2, b=3)
rec = play_match(cfg, "breaker.thm3", "maker.thm4", seed=1)
print(rec.outcome.winner.name, rec.outcome.cause.value, "after", rec.rounds_played, "rounds")

# records are plain JSON and replay to the same position
again = replay(cfg, rec.history)
print("replayed outcome:", detect_outcome(again).winner.name)

# on a larger board with a light Breaker bias the danger-driven Maker wins
big = GameConfig(n=200, a=1, b=18)
for breaker in ("breaker.greedy-isolate", "breaker.random"):
    wins = sum(play_match(big, breaker, "maker.thm4", s).outcome.winner.name == "MAKER" for s in range(10))
    print(f"{breaker:24s} Maker won {wins}/10")
