"""Threshold-bias bound bands, random play, and parameter sweeps."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import mpmath
import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components
from statsmodels.stats.proportion import proportion_confint

from .breaker import thm1_certificate, thm1_condition_exact, thm2_condition, thm2_f_test, thm3_condition
from .engine import Cause, GameConfig, Player, edge_arrays, play_match
from .harmonic import EXACT_LIMIT, harmonic, harmonic_fractions
from .maker import thm4_condition

REGIMES = ("i", "ii", "iii", "iv", "v", "vi", "vii")


# -- harmonic bounds -----------------------------------------------------------


def harmonic_bounds_hold(j: int, h) -> tuple[bool, bool]:
    """Whether ln j + 1/2 < H_j and H_j < ln j + 2/3."""
    with mpmath.workdps(40):
        if not isinstance(h, mpmath.mpf):
            h = mpmath.mpf(h.numerator) / h.denominator
        ln = mpmath.log(j)
        return bool(ln + mpmath.mpf(1) / 2 < h), bool(h < ln + mpmath.mpf(2) / 3)


def harmonic_bound_failures(jmax: int) -> list[int]:
    """Every j <= jmax at which one of the two harmonic bounds fails.

    Exact H_j is used up to ``EXACT_LIMIT``; beyond it H_j is accumulated in
    40-digit arithmetic from the last exact value.
    """
    failures = []
    h = mpmath.mpf(0)
    with mpmath.workdps(40):
        for j, num, den in harmonic_fractions(min(jmax, EXACT_LIMIT)):
            h = mpmath.mpf(num) / den
            if not all(harmonic_bounds_hold(j, h)):
                failures.append(j)
        for j in range(EXACT_LIMIT + 1, jmax + 1):
            h += mpmath.mpf(1) / j
            if not all(harmonic_bounds_hold(j, h)):
                failures.append(j)
    return failures


def minimal_harmonic_threshold(jmax: int = 100_000) -> int:
    """Smallest j0 such that both bounds hold for every j in [j0, jmax]."""
    failures = harmonic_bound_failures(jmax)
    return max(failures) + 1 if failures else 1


# -- bound bands ---------------------------------------------------------------


@dataclass
class BoundBand:
    n: int
    a: int
    regime: str
    lower: float
    upper: float
    formulas_used: tuple[str, ...]
    dropped_terms: bool = True
    c: Optional[float] = None
    warnings: list[str] = field(default_factory=list)

    @property
    def ordered(self) -> bool:
        return self.lower < self.upper

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "a": self.a,
            "regime": self.regime,
            "c": self.c,
            "lower": self.lower,
            "upper": self.upper,
            "formulas_used": list(self.formulas_used),
            "dropped_terms": self.dropped_terms,
            "ordered": self.ordered,
            "warnings": self.warnings,
        }


def classify_regime(n: int, a: int) -> tuple[str, Optional[float]]:
    """Regime label and its constant c (where the regime has one).

    Cutoffs: a <= ln n/ln ln n is (i); up to ln n * ln ln n the regime is
    (ii) or (iii) with c = a/ln n; up to sqrt(n/ln n) is (iv); up to n/ln n
    is (v); beyond that c = a/n picks (vi) or (vii), and a >= n/2 is
    reported as "beyond".
    """
    ln = math.log(n)
    lnln = math.log(ln)
    if a <= ln / lnln:
        return "i", None
    if a <= ln * lnln:
        c = a / ln
        return ("ii" if c <= 1 else "iii"), c
    if a <= math.sqrt(n / ln):
        return "iv", None
    if a <= n / ln:
        return "v", None
    c = a / n
    if c < 1 / (2 * math.e):
        return "vi", c
    if c < 0.5:
        return "vii", c
    return "beyond", c


def corollary_bounds(n: int, a: int) -> BoundBand:
    """Lower and upper threshold-bias bounds at concrete n, o(1) terms set to 0."""
    if n < 3 or a < 1:
        raise ValueError("need n >= 3 and a >= 1")
    regime, c = classify_regime(n, a)
    ln = math.log(n)
    lnln = math.log(ln)
    if regime == "i":
        lower = a * n / ln - a * n * (lnln + a) / ln**2
        upper = a * n / ln - a * n * math.log(a) / ln**2
        used = ("maker-danger", "breaker-clique")
    elif regime == "ii":
        lower = c * n / (c + 1)
        upper = min(c * n, 2 * n / 3)
        used = ("maker-danger", "breaker-clique", "breaker-stars")
    elif regime == "iii":
        lower = c * n / (c + 1)
        upper = 2 * c * n / (2 * c + 1)
        used = ("maker-danger", "breaker-stars")
    elif regime == "iv":
        lower = n - n * ln / a
        upper = n - n * math.log(n / a) / (2 * a)
        used = ("maker-danger", "breaker-stars")
    elif regime == "v":
        lower = n - 2 * n * math.log(n / a) / a
        upper = n - n * math.log(n / a) / (2 * a)
        used = ("maker-danger", "breaker-stars")
    elif regime == "vi":
        lower = n - (2 * math.log(1 / c) + 4) / c
        upper = n - 2 - (1 - 2 * c) / (2 * c) * (math.log(1 / (2 * c)) - 1)
        used = ("maker-danger", "breaker-stars")
    elif regime == "vii":
        lower = n - (2 * math.log(1 / c) + 4) / c
        upper = n - 2
        used = ("maker-danger", "breaker-matching")
    else:
        # monotone in a: reuse the (vii) lower bound at the largest a below n/2
        c_ref = ((n - 1) // 2) / n
        lower = n - (2 * math.log(1 / c_ref) + 4) / c_ref
        upper = n - 1
        used = ("maker-danger", "trivial")
    band = BoundBand(n, a, regime, lower, upper, used, dropped_terms=regime != "beyond", c=c)
    if not band.ordered:
        band.warnings.append(f"lower {lower:.6g} >= upper {upper:.6g} at n={n}, a={a} with o(1) terms dropped")
    return band


# -- random play ---------------------------------------------------------------


@dataclass
class RandomGameResult:
    n: int
    a: int
    b: int
    trials: int
    maker_wins: int
    maker_edges: int
    low: float
    high: float

    @property
    def frequency(self) -> float:
        return self.maker_wins / self.trials


def maker_edge_count(num_edges: int, a: int, b: int) -> int:
    """Edges Maker ends with when both sides play to exhaustion."""
    rounds, rest = divmod(num_edges, a + b)
    return rounds * a + max(0, rest - b)


def random_game(n: int, a: int, b: int, trials: int, seed: int = 0) -> RandomGameResult:
    """Maker win frequency when both players claim uniformly random free edges."""
    if trials < 1:
        raise ValueError("trials must be positive")
    us, vs = edge_arrays(n)
    num_edges = len(us)
    slot = np.arange(num_edges) % (a + b) >= b
    rng = np.random.default_rng(np.random.SeedSequence([seed & (2**64 - 1), n, a, b]))
    wins = 0
    for _ in range(trials):
        order = rng.permutation(num_edges)
        mine = order[slot]
        graph = coo_matrix((np.ones(len(mine), dtype=np.int8), (us[mine], vs[mine])), shape=(n, n))
        count, _ = connected_components(graph, directed=False)
        wins += count == 1
    low, high = proportion_confint(wins, trials, alpha=0.05, method="wilson")
    return RandomGameResult(n, a, b, trials, int(wins), int(slot.sum()), float(low), float(high))


# -- sweeps --------------------------------------------------------------------

SWEEP_SCHEMA_VERSION = 1
DEFAULT_PAIRINGS = (
    ("maker.thm4", "breaker.greedy-isolate"),
    ("maker.thm4", "breaker.random"),
)


@dataclass
class SweepRow:
    n: int
    a: int
    b: int
    band: Optional[BoundBand]
    cert_thm1: bool
    cert_thm1_monotone: bool
    cert_thm2: bool
    cert_thm2_formula: bool
    cert_thm3: bool
    cert_thm4: bool
    oracle_winner: Optional[Player]
    sim: dict = field(default_factory=dict)
    errors: list[str] = field(default_factory=list)

    @property
    def conflict(self) -> bool:
        return self.cert_thm4 and (self.cert_thm1_monotone or self.cert_thm2 or self.cert_thm3)


def pairing_key(maker: str, breaker: str) -> str:
    return f"{maker.split('.', 1)[1]}_vs_{breaker.split('.', 1)[1]}"


def cell_seed(seed: int, n: int, a: int, b: int, pairing: int) -> int:
    ss = np.random.SeedSequence([seed & (2**64 - 1), n, a, b, pairing])
    return int(ss.generate_state(1, dtype=np.uint64)[0])


def certificates(n: int, a: int, b: int) -> dict:
    return {
        "cert_thm1": n >= 3 and thm1_condition_exact(n, a, b),
        "cert_thm1_monotone": n >= 3 and thm1_certificate(n, a, b),
        "cert_thm2": thm2_f_test(n, a, b),
        "cert_thm2_formula": thm2_condition(n, a, b) and a < n / (2 * math.e),
        "cert_thm3": thm3_condition(n, a, b),
        "cert_thm4": n >= 3 and thm4_condition(n, a, b)[0],
    }


def sweep_cell(
    n: int, a: int, b: int, pairings: Sequence[tuple[str, str]], trials: int, seed: int, oracle: bool = True
) -> SweepRow:
    errors: list[str] = []
    try:
        certs = certificates(n, a, b)
    except Exception as exc:  # recorded in the row, the sweep goes on
        certs = dict.fromkeys(("cert_thm1", "cert_thm1_monotone", "cert_thm2", "cert_thm2_formula", "cert_thm3", "cert_thm4"), False)
        errors.append(f"certificates: {exc}")
    band = None
    try:
        band = corollary_bounds(n, a)
    except Exception as exc:
        errors.append(f"bounds: {exc}")
    winner = None
    if oracle and n <= 5:
        from .solver import solve_exact

        try:
            winner = solve_exact(GameConfig(n, a, b)).winner
        except Exception as exc:
            errors.append(f"oracle: {exc}")
    sim = {}
    for idx, (maker, breaker) in enumerate(pairings):
        key = pairing_key(maker, breaker)
        wins = 0
        forfeits = {Player.MAKER: 0, Player.BREAKER: 0}
        try:
            cfg = GameConfig(n, a, b)
            base = cell_seed(seed, n, a, b, idx)
            for t in range(trials):
                out = play_match(cfg, breaker, maker, (base + t) % 2**64).outcome
                wins += out.winner is Player.MAKER
                if out.cause is Cause.FORFEIT:
                    forfeits[out.forfeiting_player] += 1
            sim[key] = (wins / trials if trials else float("nan"), forfeits[Player.MAKER], forfeits[Player.BREAKER])
        except Exception as exc:
            errors.append(f"{key}: {exc}")
            sim[key] = (float("nan"), -1, -1)
    return SweepRow(n, a, b, band, oracle_winner=winner, sim=sim, errors=errors, **certs)


def sweep(
    n: int,
    a_list: Iterable[int],
    b_grid: Iterable[int],
    pairings: Sequence[tuple[str, str]] = DEFAULT_PAIRINGS,
    trials: int = 20,
    seed: int = 0,
    jobs: int = 1,
) -> list[SweepRow]:
    """Certificates, bound band, oracle and simulations for every (a, b) cell.

    Cells are independent; their RNG streams depend only on the cell key, so
    ``jobs`` changes wall time and nothing else.
    """
    cells = [(n, a, b) for a in a_list for b in b_grid]
    if jobs == 1 or len(cells) < 2:
        return [sweep_cell(*c, pairings, trials, seed) for c in cells]
    from joblib import Parallel, delayed

    return Parallel(n_jobs=jobs)(delayed(sweep_cell)(*c, pairings, trials, seed) for c in cells)


def sweep_columns(pairings: Sequence[tuple[str, str]]) -> list[str]:
    cols = [
        "n", "a", "b", "regime", "lower", "upper",
        "cert_thm1", "cert_thm2", "cert_thm3", "cert_thm4",
        "cert_thm1_monotone", "cert_thm2_formula", "conflict", "oracle_winner",
    ]
    for maker, breaker in pairings:
        key = pairing_key(maker, breaker)
        cols += [f"sim_{key}_maker_winrate", f"sim_{key}_maker_forfeits", f"sim_{key}_breaker_forfeits"]
    return cols + ["errors"]


def sweep_record(row: SweepRow, pairings: Sequence[tuple[str, str]] = DEFAULT_PAIRINGS) -> dict:
    """One row as an ordered dict keyed by :func:`sweep_columns`."""
    band = row.band
    values = [
        row.n, row.a, row.b,
        band.regime if band else None,
        round(band.lower, 6) if band else None,
        round(band.upper, 6) if band else None,
        row.cert_thm1, row.cert_thm2, row.cert_thm3, row.cert_thm4,
        row.cert_thm1_monotone, row.cert_thm2_formula, row.conflict,
        str(row.oracle_winner) if row.oracle_winner else None,
    ]
    for maker, breaker in pairings:
        values += list(row.sim.get(pairing_key(maker, breaker), (float("nan"), -1, -1)))
    values.append("; ".join(row.errors))
    return dict(zip(sweep_columns(pairings), values))


def csv_cell(x) -> str:
    if isinstance(x, (list, tuple, dict)):
        return json.dumps(x, default=str, separators=(",", ":"))
    if x is None:
        return ""
    if isinstance(x, bool):
        return str(int(x))
    if isinstance(x, float):
        return f"{x:.6f}"
    return str(x)


def sweep_csv(rows: Sequence[SweepRow], pairings: Sequence[tuple[str, str]] = DEFAULT_PAIRINGS) -> str:
    """Header plus one line per row; the column order is fixed by ``SWEEP_SCHEMA_VERSION``."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(sweep_columns(pairings))
    for r in rows:
        writer.writerow([csv_cell(x) for x in sweep_record(r, pairings).values()])
    return out.getvalue()
