"""Bootstrap Monte Carlo simulation of matches from serve pools.

One simulated point: draw a serve from the current server's first-serve
pool; on a fault, draw again from their second-serve pool.  If the
decisive record is an unforced error by player A, the reduction policy
may strike it, in which case the point is re-resolved from the
touch-indexed counterfactual table.  Matches are replayed point by
point through the scoring engine, and replicate summaries carry
bootstrap standard errors.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .counterfactual import (
    ReductionPolicy,
    TouchWinTable,
    default_table,
    resolve_removed_ufe,
    should_remove_ufe,
)
from .pools import PoolScope, ServePoolSet, sample, select_pool
from .records import Role, TerminalKind
from .rng import replicate_stream
from .scoring import MatchFormat, apply_point, new_match, other_player

FIRST_SERVER_POLICIES = ("alternate", "fixed_A", "fixed_B", "random")


def scenario_label(x: float) -> str:
    if x == 0.0:
        return "historic"
    if x == 1.0:
        return "eliminate"
    return f"reduce({x:g})"


def parse_scenario(token: str) -> float:
    """Turn a scenario token into a reduction fraction.

    Accepted forms: 'historic', 'eliminate', 'reduce:0.1', 'reduce=0.1'.
    """
    t = token.strip().lower()
    if t == "historic":
        return 0.0
    if t == "eliminate":
        return 1.0
    for sep in (":", "="):
        if t.startswith("reduce" + sep):
            try:
                x = float(t.split(sep, 1)[1])
            except ValueError:
                raise ValueError(f"bad reduction fraction in scenario {token!r}") from None
            if not 0.0 <= x <= 1.0:
                raise ValueError(f"reduction fraction must be in [0,1], got {x}")
            return x
    raise ValueError(
        f"unknown scenario {token!r}; expected historic, eliminate, or reduce:<x>"
    )


@dataclass(frozen=True, slots=True)
class SimulationConfig:
    """Everything one run needs besides the pools and the table.

    reduction_x canonicalizes the scenario: 0 is the historic replay,
    1 removes every sampled unforced error by A, values between are the
    partial-reduction what-ifs.
    """

    n_matches: int = 3000
    seed: int = 20177
    reduction_x: float = 0.0
    format: MatchFormat = MatchFormat()
    first_server_policy: str = "alternate"
    pool_scope: PoolScope = PoolScope.HEAD_TO_HEAD

    def __post_init__(self) -> None:
        if self.n_matches < 1:
            raise ValueError("n_matches must be positive")
        if not 0.0 <= self.reduction_x <= 1.0:
            raise ValueError(f"reduction_x must be in [0,1], got {self.reduction_x}")
        if self.first_server_policy not in FIRST_SERVER_POLICIES:
            raise ValueError(
                f"first_server_policy must be one of {FIRST_SERVER_POLICIES}, "
                f"got {self.first_server_policy!r}"
            )

    @property
    def scenario(self) -> str:
        return scenario_label(self.reduction_x)


class PointOutcome(NamedTuple):
    winner: str
    serve_number: int
    ufe_by_a: bool
    ufe_removed: bool


@dataclass(frozen=True, slots=True)
class MatchResult:
    points_won: tuple[int, int]
    games_won: tuple[int, int]
    sets_won: tuple[int, int]
    set_scores: tuple[tuple[int, int], ...]
    match_winner: str
    ufes_kept: int
    ufes_removed: int


@dataclass(frozen=True, slots=True)
class SimulationSummary:
    scenario: str
    n_matches: int
    pct_points_won_a: float
    pct_games_won_a: float
    pct_sets_won_a: float
    pct_matches_won_a: float
    se_points: float
    se_games: float
    se_sets: float
    se_matches: float

    def to_dict(self) -> dict:
        return {
            "scenario": self.scenario,
            "n_matches": self.n_matches,
            "pct_points_won_a": self.pct_points_won_a,
            "pct_games_won_a": self.pct_games_won_a,
            "pct_sets_won_a": self.pct_sets_won_a,
            "pct_matches_won_a": self.pct_matches_won_a,
            "se_points": self.se_points,
            "se_games": self.se_games,
            "se_sets": self.se_sets,
            "se_matches": self.se_matches,
        }


def simulate_point(
    pools: ServePoolSet,
    server: str,
    table: TouchWinTable,
    policy: ReductionPolicy,
    rng,
) -> PointOutcome:
    """Play one point with `server` ('A' or 'B') serving."""
    record = sample(pools, select_pool(server, 1), rng)
    serve_number = 1
    if record.is_first_serve_fault:
        record = sample(pools, select_pool(server, 2), rng)
        serve_number = 2

    ufe_by_a = False
    if record.terminal_kind is TerminalKind.UNFORCED_ERROR:
        committer = server if record.error_committer is Role.SERVER else other_player(server)
        if committer == "A":
            ufe_by_a = True
            # The removal draw happens for every sampled A error, whatever
            # x is, so scenarios with the same seed walk the same stream.
            if should_remove_ufe(policy, rng):
                winner = resolve_removed_ufe(table, record.terminal_touch, rng)
                return PointOutcome(winner, serve_number, True, True)

    winner = server if record.point_winner is Role.SERVER else other_player(server)
    return PointOutcome(winner, serve_number, ufe_by_a, False)


def first_server_for(config: SimulationConfig, replicate_index: int, rng) -> str:
    policy = config.first_server_policy
    if policy == "alternate":
        return "A" if replicate_index % 2 == 0 else "B"
    if policy == "fixed_A":
        return "A"
    if policy == "fixed_B":
        return "B"
    return "A" if rng.random() < 0.5 else "B"


def simulate_match(
    config: SimulationConfig,
    pools: ServePoolSet,
    table: TouchWinTable,
    rng,
    replicate_index: int = 0,
) -> MatchResult:
    """Play one full match and tally its counters."""
    policy = ReductionPolicy(x=config.reduction_x)
    score = new_match(config.format, first_server_for(config, replicate_index, rng))
    kept = removed = 0
    while not score.match_over:
        outcome = simulate_point(pools, score.current_server, table, policy, rng)
        if outcome.ufe_by_a:
            if outcome.ufe_removed:
                removed += 1
            else:
                kept += 1
        apply_point(score, outcome.winner)
    assert score.match_winner is not None
    return MatchResult(
        points_won=tuple(score.cumulative_points_won),
        games_won=tuple(score.cumulative_games_won),
        sets_won=tuple(score.sets_won),
        set_scores=tuple(score.completed_set_scores),
        match_winner=score.match_winner,
        ufes_kept=kept,
        ufes_removed=removed,
    )


def _run_replicate(
    config: SimulationConfig,
    pools: ServePoolSet,
    table: TouchWinTable,
    index: int,
) -> MatchResult:
    rng = replicate_stream(config.seed, index)
    return simulate_match(config, pools, table, rng, replicate_index=index)


def binomial_se_pct(p_hat: float, n: int) -> float:
    """Standard error of a proportion, in percentage points."""
    return math.sqrt(p_hat * (1.0 - p_hat) / n) * 100.0


def _pct_share(pair: tuple[int, int]) -> float:
    total = pair[0] + pair[1]
    return 100.0 * pair[0] / total if total else 0.0


def summarize(results: Sequence[MatchResult], scenario: str) -> SimulationSummary:
    """Average per-match percentages and attach bootstrap SEs."""
    n = len(results)
    if n < 1:
        raise ValueError("cannot summarize zero matches")
    pts = np.array([_pct_share(r.points_won) for r in results])
    gms = np.array([_pct_share(r.games_won) for r in results])
    sts = np.array([_pct_share(r.sets_won) for r in results])
    wins = np.array([1.0 if r.match_winner == "A" else 0.0 for r in results])

    def se(arr: np.ndarray) -> float:
        return float(arr.std(ddof=1) / math.sqrt(n)) if n > 1 else 0.0

    p_hat = float(wins.mean())
    return SimulationSummary(
        scenario=scenario,
        n_matches=n,
        pct_points_won_a=float(pts.mean()),
        pct_games_won_a=float(gms.mean()),
        pct_sets_won_a=float(sts.mean()),
        pct_matches_won_a=100.0 * p_hat,
        se_points=se(pts),
        se_games=se(gms),
        se_sets=se(sts),
        se_matches=binomial_se_pct(p_hat, n),
    )


def run_simulation(
    config: SimulationConfig,
    pools: ServePoolSet,
    table: TouchWinTable | None = None,
    n_jobs: int = 1,
) -> SimulationSummary:
    """Run config.n_matches independent replicates and summarize.

    Each replicate owns a random stream derived from (seed, index), so
    the summary is identical for any n_jobs and any execution order.
    """
    if table is None:
        table = default_table()
    indices = range(config.n_matches)
    if n_jobs <= 1:
        results = [_run_replicate(config, pools, table, i) for i in indices]
    else:
        with ThreadPoolExecutor(max_workers=n_jobs) as executor:
            results = list(
                executor.map(lambda i: _run_replicate(config, pools, table, i), indices)
            )
    return summarize(results, config.scenario)


@dataclass(frozen=True, slots=True)
class ScenarioDelta:
    """Metric differences of one scenario against a baseline.

    SEs combine the two runs' standard errors in quadrature, which is
    right for independently seeded replicate sets.
    """

    baseline: str
    variant: str
    d_points: float
    d_games: float
    d_sets: float
    d_matches: float
    se_points: float
    se_games: float
    se_sets: float
    se_matches: float

    def to_dict(self) -> dict:
        return {
            "baseline": self.baseline,
            "variant": self.variant,
            "d_points": self.d_points,
            "d_games": self.d_games,
            "d_sets": self.d_sets,
            "d_matches": self.d_matches,
            "se_points": self.se_points,
            "se_games": self.se_games,
            "se_sets": self.se_sets,
            "se_matches": self.se_matches,
        }


@dataclass(frozen=True, slots=True)
class ScenarioComparison:
    summaries: tuple[SimulationSummary, ...]
    deltas: tuple[ScenarioDelta, ...]


def compare_scenarios(
    configs: Sequence[SimulationConfig],
    pools: ServePoolSet,
    table: TouchWinTable | None = None,
    n_jobs: int = 1,
) -> ScenarioComparison:
    """Run several scenarios over the same pools and difference them.

    Configs should differ only in reduction_x so the comparison is a
    clean what-if; every unordered pair gets a delta row.
    """
    summaries = tuple(run_simulation(cfg, pools, table, n_jobs=n_jobs) for cfg in configs)
    deltas = []
    for i in range(len(summaries)):
        for j in range(i + 1, len(summaries)):
            a, b = summaries[i], summaries[j]
            deltas.append(
                ScenarioDelta(
                    baseline=a.scenario,
                    variant=b.scenario,
                    d_points=b.pct_points_won_a - a.pct_points_won_a,
                    d_games=b.pct_games_won_a - a.pct_games_won_a,
                    d_sets=b.pct_sets_won_a - a.pct_sets_won_a,
                    d_matches=b.pct_matches_won_a - a.pct_matches_won_a,
                    se_points=math.hypot(a.se_points, b.se_points),
                    se_games=math.hypot(a.se_games, b.se_games),
                    se_sets=math.hypot(a.se_sets, b.se_sets),
                    se_matches=math.hypot(a.se_matches, b.se_matches),
                )
            )
    return ScenarioComparison(summaries=summaries, deltas=tuple(deltas))


def _cell(value: float, se: float) -> str:
    return f"{value:.1f} ({se:.2f})"


def format_summary_table(summaries: Sequence[SimulationSummary]) -> str:
    """Aligned text table: one scenario per row, SEs in parentheses."""
    headers = ["Scenario", "Points Won", "Games Won", "Sets Won", "Matches Won"]
    rows = [headers]
    for s in summaries:
        rows.append(
            [
                s.scenario,
                _cell(s.pct_points_won_a, s.se_points),
                _cell(s.pct_games_won_a, s.se_games),
                _cell(s.pct_sets_won_a, s.se_sets),
                _cell(s.pct_matches_won_a, s.se_matches),
            ]
        )
    widths = [max(len(r[c]) for r in rows) for c in range(len(headers))]
    lines = []
    for r in rows:
        lines.append("  ".join(cell.ljust(w) for cell, w in zip(r, widths)).rstrip())
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


def format_comparison(comparison: ScenarioComparison) -> str:
    lines = [format_summary_table(comparison.summaries)]
    if comparison.deltas:
        lines.append("")
        lines.append("Differences (variant - baseline):")
        for d in comparison.deltas:
            lines.append(
                f"  {d.variant} vs {d.baseline}: "
                f"points {d.d_points:+.1f} ({d.se_points:.2f}), "
                f"games {d.d_games:+.1f} ({d.se_games:.2f}), "
                f"sets {d.d_sets:+.1f} ({d.se_sets:.2f}), "
                f"matches {d.d_matches:+.1f} ({d.se_matches:.2f})"
            )
    return "\n".join(lines)
