"""Biased Maker-Breaker Connectivity games on K_n: engine, strategies, oracles."""

from .boxgame import (
    BoxConfig,
    BoxPlayer,
    BoxState,
    boxmaker_move,
    boxmaker_wins_sufficient,
    canonical_sizes,
    lemma1_lower_bound,
    potential_f,
    prune_after_boxbreaker,
    solve_boxgame_exact,
)
from .engine import (
    Cause,
    Forfeit,
    GameConfig,
    GameState,
    IllegalMove,
    MatchRecord,
    Outcome,
    Player,
    Policy,
    WinCondition,
    WrongTurn,
    apply_claim,
    detect_outcome,
    edge_endpoints,
    edge_index,
    play_match,
    replay,
)
from .analysis import corollary_bounds, minimal_harmonic_threshold, random_game, sweep, sweep_csv
from .breaker import thm1_certificate, thm1_condition_exact, thm2_f_test, thm2_min_b, thm3_condition
from .maker import thm4_condition
from .policies import POLICY_IDS, UnknownPolicy, make_policy
from .solver import SolverRefused, best_response, enumerate_threshold, solve_exact

__version__ = "0.1.0"
