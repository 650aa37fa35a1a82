"""ufesim: what do unforced errors cost a tennis player?

Charted serve-by-serve records are resampled into simulated matches;
a what-if policy strikes some share of one player's unforced errors
and re-resolves those points from a touch-indexed win-probability
table, so the gap between scenarios prices the errors in expected
points, games, sets, and matches.
"""
from __future__ import annotations

__version__ = "0.1.0"

from .analytics import (
    PlayerUfeProfile,
    TouchExposure,
    collect_profiles,
    histogram_bins,
    player_ufe_rate,
    rate_rankings,
    touch_exposure,
    tour_ufe_rate,
    ufe_rate_by_touch,
    ufe_rate_by_year,
    ufe_termination_share,
)
from .counterfactual import (
    ELIMINATE,
    HISTORIC,
    ReductionPolicy,
    TouchWinTable,
    default_table,
    load_table,
    prob_win_if_no_ufe,
    resolve_removed_ufe,
    should_remove_ufe,
)
from .errors import (
    CsvFormatError,
    DuplicatePointError,
    EmptyPoolError,
    MatchOverError,
    NotationError,
    PlayerNotFoundError,
    TableFormatError,
    TouchRangeError,
    UfesimError,
)
from .ingest import (
    IngestReport,
    clean_rows,
    explode_to_serves,
    ingest_files,
    parse_match_id,
    parse_points_file,
)
from .notation import ParsedPoint, parse_shot_notation
from .pools import (
    PoolId,
    PoolScope,
    ServePoolSet,
    build_pools,
    pool_summary,
    sample,
    select_pool,
)
from .records import (
    RawPointRow,
    Role,
    ServeRecord,
    TerminalKind,
    read_records_csv,
    write_records_csv,
)
from .rng import derive_seed, replicate_stream
from .scoring import (
    MatchFormat,
    MatchScore,
    apply_point,
    current_server,
    new_match,
    render_point_score,
    render_set_scores,
)
from .simulate import (
    MatchResult,
    PointOutcome,
    ScenarioComparison,
    ScenarioDelta,
    SimulationConfig,
    SimulationSummary,
    binomial_se_pct,
    compare_scenarios,
    format_comparison,
    format_summary_table,
    parse_scenario,
    run_simulation,
    simulate_match,
    simulate_point,
    summarize,
)

__all__ = [
    "__version__",
    "CsvFormatError",
    "DuplicatePointError",
    "ELIMINATE",
    "EmptyPoolError",
    "HISTORIC",
    "IngestReport",
    "MatchFormat",
    "MatchOverError",
    "MatchResult",
    "MatchScore",
    "NotationError",
    "ParsedPoint",
    "PlayerNotFoundError",
    "PlayerUfeProfile",
    "PointOutcome",
    "PoolId",
    "PoolScope",
    "RawPointRow",
    "ReductionPolicy",
    "Role",
    "ScenarioComparison",
    "ScenarioDelta",
    "ServePoolSet",
    "ServeRecord",
    "SimulationConfig",
    "SimulationSummary",
    "TableFormatError",
    "TerminalKind",
    "TouchExposure",
    "TouchRangeError",
    "TouchWinTable",
    "UfesimError",
    "apply_point",
    "binomial_se_pct",
    "build_pools",
    "clean_rows",
    "collect_profiles",
    "compare_scenarios",
    "current_server",
    "default_table",
    "derive_seed",
    "explode_to_serves",
    "format_comparison",
    "format_summary_table",
    "histogram_bins",
    "ingest_files",
    "load_table",
    "new_match",
    "parse_match_id",
    "parse_points_file",
    "parse_scenario",
    "parse_shot_notation",
    "player_ufe_rate",
    "pool_summary",
    "prob_win_if_no_ufe",
    "rate_rankings",
    "read_records_csv",
    "render_point_score",
    "render_set_scores",
    "replicate_stream",
    "resolve_removed_ufe",
    "run_simulation",
    "sample",
    "select_pool",
    "should_remove_ufe",
    "simulate_match",
    "simulate_point",
    "summarize",
    "touch_exposure",
    "tour_ufe_rate",
    "ufe_rate_by_touch",
    "ufe_rate_by_year",
    "ufe_termination_share",
    "write_records_csv",
]
