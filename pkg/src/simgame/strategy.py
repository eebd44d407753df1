"""The second player's rule-based move selection.

A mini-board of a position is an inclusion-minimal complete subgraph that
contains every coloured edge and at least one move P2 could safely make
inside it.  On a fixed mini-board, P2's reply is filtered hierarchically:

  rule 1  keep the P2-allowed moves on the board;
  rule 2  keep those lying in the most maximum P2-allowed sets on the board;
  rule 3  keep those lying in the most maximum P1-allowed sets on the board.

Anything still tied after rule 3 is claimed to be equally winning; the play
engine determinises by lowest edge id, while the verifier checks every
survivor.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .board import (
    INDUCED_EDGES,
    N_VERTICES,
    TRIANGLES_THROUGH,
    InvariantViolation,
    Player,
    Position,
    SimError,
    allowed_moves,
    contains_triangle,
    edge_name,
    edges_in,
    support,
    vertices_in,
)


class NoMiniBoardError(SimError):
    """Raised when a position has no P2-allowed move, hence no mini-board."""


@dataclass(frozen=True)
class MiniBoard:
    """A mini-board, identified by its 6-bit vertex mask."""

    vertices: int

    @property
    def edges(self) -> int:
        return INDUCED_EDGES[self.vertices]

    def uncolored_edges(self, p: Position) -> int:
        return self.edges & p.uncolored

    def vertex_list(self) -> list[int]:
        return list(vertices_in(self.vertices))

    def __str__(self) -> str:
        return "{" + ",".join(str(v) for v in self.vertex_list()) + "}"


@dataclass(frozen=True)
class StrategyDecision:
    """One board's rule-by-rule filtering, with per-move counts as the trace.

    rule2_counts/rule3_counts record, for every rule-1 survivor, how many
    maximum P2- respectively P1-allowed sets on the board contain the move.
    """

    mini_board: MiniBoard
    rule1_moves: int
    rule2_counts: dict[int, int]
    rule2_moves: int
    rule3_counts: dict[int, int]
    final_moves: int

    def to_doc(self) -> dict:
        """JSON-ready explanation document."""
        return {
            "mini_board_vertices": self.mini_board.vertex_list(),
            "rule1_moves": [edge_name(e) for e in edges_in(self.rule1_moves)],
            "rule2_counts": {edge_name(e): n for e, n in sorted(self.rule2_counts.items())},
            "rule3_counts": {edge_name(e): n for e, n in sorted(self.rule3_counts.items())},
            "final_moves": [edge_name(e) for e in edges_in(self.final_moves)],
        }


@lru_cache(maxsize=None)
def minimal_mini_boards(p: Position) -> tuple[MiniBoard, ...]:
    """All inclusion-minimal mini-boards, sorted by vertex mask.

    Enumerates the 64 vertex subsets, keeps those whose induced subgraph
    contains every coloured edge and a P2-allowed move, then drops any with
    a smaller qualifying subset.
    """
    colored = p.red | p.blue
    p2_ok = allowed_moves(p, Player.P2)
    if p2_ok == 0:
        raise NoMiniBoardError("position has no P2-allowed move")

    qualifying = [
        s
        for s in range(1 << N_VERTICES)
        if colored & ~INDUCED_EDGES[s] == 0 and INDUCED_EDGES[s] & p2_ok
    ]
    minimal = [
        s
        for s in qualifying
        if not any(t != s and t & s == t for t in qualifying)
    ]
    boards = tuple(MiniBoard(s) for s in sorted(minimal))

    _check_structure(p, boards, colored)
    return boards


def _check_structure(p: Position, boards, colored: int) -> None:
    # All minimal boards share a vertex count, and once anything is coloured
    # they sit at the support or one vertex above it.
    sizes = {b.vertices.bit_count() for b in boards}
    if len(sizes) != 1:
        raise InvariantViolation(f"mini-boards of unequal size: {boards}")
    if colored:
        sup = support(p)
        for b in boards:
            if b.vertices & sup != sup:
                raise InvariantViolation(f"mini-board {b} misses the support")
            if b.vertices.bit_count() - sup.bit_count() > 1:
                raise InvariantViolation(f"mini-board {b} exceeds support+1")


def canonical_mini_board(p: Position) -> MiniBoard:
    """The minimal mini-board with the smallest vertex mask (deterministic pick)."""
    return minimal_mini_boards(p)[0]


@lru_cache(maxsize=None)
def max_allowed_sets_on(p: Position, m: MiniBoard, player: Player) -> tuple[int, ...]:
    """All maximum-cardinality subsets of the board's uncoloured edges that are
    allowed for the player (triangle-free together with the player's edges).

    Depth-first over include/exclude choices with a size bound; the empty set
    qualifies whenever the player's own edges are triangle-free, so the result
    is non-empty on any live position.  Masks are returned ascending.
    """
    base = p.colorset(player)
    if contains_triangle(base):
        return ()
    avail = list(edges_in(m.uncolored_edges(p)))
    n = len(avail)
    best_size = 0
    best: list[int] = []

    def grow(i: int, chosen: int, count: int) -> None:
        nonlocal best_size, best
        if count + (n - i) < best_size:
            return
        if i == n:
            if count > best_size:
                best_size = count
                best = [chosen]
            elif count == best_size:
                best.append(chosen)
            return
        e = avail[i]
        ext = chosen | (1 << e)
        # Only triangles through e can newly close.
        full = base | ext
        if not any(t & full == t for t in TRIANGLES_THROUGH[e]):
            grow(i + 1, ext, count + 1)
        grow(i + 1, chosen, count)

    grow(0, 0, 0)
    return tuple(sorted(best))


@lru_cache(maxsize=None)
def strategy_decision(p: Position, m: MiniBoard) -> StrategyDecision:
    """Apply rules 1-3 on one mini-board and record the full trace.

    Requires P2 on turn and m a minimal mini-board of p.  Counts for rules
    2 and 3 are static membership counts in the maximum sets of the current
    position; no lookahead.
    """
    if p.to_move() is not Player.P2:
        raise ValueError("the move-selection rules apply on P2's turn")

    rule1 = allowed_moves(p, Player.P2) & m.uncolored_edges(p)
    if rule1 == 0:
        raise InvariantViolation("mini-board without a P2-allowed move")

    p2_sets = max_allowed_sets_on(p, m, Player.P2)
    rule2_counts = {
        e: sum(1 for s in p2_sets if s >> e & 1) for e in edges_in(rule1)
    }
    top2 = max(rule2_counts.values())
    rule2 = 0
    for e, c in rule2_counts.items():
        if c == top2:
            rule2 |= 1 << e

    p1_sets = max_allowed_sets_on(p, m, Player.P1)
    rule3_counts = {
        e: sum(1 for s in p1_sets if s >> e & 1) for e in edges_in(rule1)
    }
    top3 = max(rule3_counts[e] for e in edges_in(rule2))
    final = 0
    for e in edges_in(rule2):
        if rule3_counts[e] == top3:
            final |= 1 << e

    return StrategyDecision(
        mini_board=m,
        rule1_moves=rule1,
        rule2_counts=rule2_counts,
        rule2_moves=rule2,
        rule3_counts=rule3_counts,
        final_moves=final,
    )


@lru_cache(maxsize=None)
def strategy_moves_all(p: Position) -> int:
    """Union of the rule-3 survivors over every minimal mini-board.

    This is the strongest reading of the strategy: any mini-board may be
    fixed and any surviving move picked, so the verifier checks them all.
    """
    out = 0
    for m in minimal_mini_boards(p):
        out |= strategy_decision(p, m).final_moves
    return out


def engine_move(p: Position) -> tuple[int, StrategyDecision]:
    """Deterministic play-mode pick: canonical board, lowest surviving edge id."""
    decision = strategy_decision(p, canonical_mini_board(p))
    lowest = (decision.final_moves & -decision.final_moves).bit_length() - 1
    return lowest, decision
