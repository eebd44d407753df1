"""Sim on K6: game mechanics, the second player's rule-based strategy, and
exhaustive verification that the strategy wins."""

from .board import (
    EMPTY,
    GameStatus,
    Player,
    Position,
    allowed_moves,
    apply_move,
    edge_id,
    edge_name,
    endpoints,
    format_position,
    is_allowed_set,
    parse_move,
    parse_position,
    replay,
    support,
)
from .strategy import (
    MiniBoard,
    StrategyDecision,
    canonical_mini_board,
    engine_move,
    max_allowed_sets_on,
    minimal_mini_boards,
    strategy_decision,
    strategy_moves_all,
)
from .symmetry import (
    apply_permutation,
    canonical_key,
    canonical_position,
    colored_isomorphic,
)
from .verifier import (
    GameValue,
    Mode,
    Outcome,
    TieBreak,
    VerificationReport,
    audit_mini_boards,
    cross_check_strategy_vs_minimax,
    ramsey_check,
    run_verification,
    solve_minimax,
    verify_strategy,
)

__all__ = [
    "EMPTY",
    "GameStatus",
    "GameValue",
    "MiniBoard",
    "Mode",
    "Outcome",
    "Player",
    "Position",
    "StrategyDecision",
    "TieBreak",
    "VerificationReport",
    "allowed_moves",
    "apply_move",
    "apply_permutation",
    "audit_mini_boards",
    "canonical_key",
    "canonical_mini_board",
    "canonical_position",
    "colored_isomorphic",
    "cross_check_strategy_vs_minimax",
    "edge_id",
    "edge_name",
    "endpoints",
    "engine_move",
    "format_position",
    "is_allowed_set",
    "max_allowed_sets_on",
    "minimal_mini_boards",
    "parse_move",
    "parse_position",
    "ramsey_check",
    "replay",
    "run_verification",
    "solve_minimax",
    "strategy_decision",
    "strategy_moves_all",
    "support",
    "verify_strategy",
]
