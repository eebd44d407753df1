"""Machine checks of the game's headline facts.

Four independent checks live here:

* verify_strategy: walk the whole game tree with P1 playing every uncoloured
  edge (suicides included) and P2 restricted to the rule-based candidates,
  confirming every line ends with P1 completing a red triangle.
* solve_minimax: an exact game-value oracle under optimal play by both
  sides, memoised on canonical keys.
* ramsey_check: every 2-colouring of K6's edges contains a monochromatic
  triangle (so the game cannot tie); the same loop on K5 finds the classic
  counterexample.
* audit_mini_boards / cross_check_strategy_vs_minimax: piggyback on the
  verification traversal to confirm mini-board uniqueness up to isomorphism
  and that every strategy move is minimax-winning.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations
from typing import Callable

import numpy as np

from .board import (
    ALL_EDGES,
    EMPTY,
    GameStatus,
    Player,
    Position,
    allowed_moves,
    completes_triangle,
    edge_name,
    edges_in,
    format_position,
)
from .strategy import (
    canonical_mini_board,
    minimal_mini_boards,
    strategy_decision,
    strategy_moves_all,
)
from .symmetry import canonical_key_masks, colored_isomorphic


class Mode(str, Enum):
    EXHAUSTIVE = "exhaustive"  # branch over every mini-board's survivors
    CANONICAL = "canonical"    # fix the lowest-mask mini-board each turn


class TieBreak(str, Enum):
    ALL = "all"      # branch over every candidate reply
    FIRST = "first"  # play only the lowest candidate edge


class Outcome(str, Enum):
    VERIFIED = "verified"
    REFUTED = "refuted"


class GameValue(str, Enum):
    P1_WINS = "p1_wins"
    P2_WINS = "p2_wins"


Policy = Callable[[Position], int]


@dataclass
class VerificationReport:
    result: Outcome
    refutation_line: tuple[str, ...] | None
    p1_nodes_expanded: int
    p2_nodes_expanded: int
    memo_hits: int
    distinct_canonical_positions: int
    max_game_length: int | None
    min_p1_loss_length: int | None
    mode: Mode
    tie_break: TieBreak

    def to_doc(self) -> dict:
        return {
            "result": self.result.value,
            "refutation_line": " ".join(self.refutation_line)
            if self.refutation_line is not None
            else None,
            "p1_nodes_expanded": self.p1_nodes_expanded,
            "p2_nodes_expanded": self.p2_nodes_expanded,
            "memo_hits": self.memo_hits,
            "distinct_canonical_positions": self.distinct_canonical_positions,
            "max_game_length": self.max_game_length,
            "min_p1_loss_length": self.min_p1_loss_length,
            "mode": self.mode.value,
            "tie_break": self.tie_break.value,
        }

    def format_text(self) -> str:
        lines = [
            f"result: {self.result.value}",
            f"mode: {self.mode.value}, tie_break: {self.tie_break.value}",
            f"p1 nodes expanded: {self.p1_nodes_expanded}",
            f"p2 nodes expanded: {self.p2_nodes_expanded}",
            f"memo hits: {self.memo_hits}",
            f"distinct canonical positions: {self.distinct_canonical_positions}",
            f"max game length: {self.max_game_length}",
            f"min p1 loss length: {self.min_p1_loss_length}",
        ]
        if self.refutation_line is not None:
            lines.append("refutation line: " + " ".join(self.refutation_line))
        return "\n".join(lines)


@dataclass
class MiniBoardAudit:
    positions_audited: int = 0
    violations: list[str] = field(default_factory=list)

    def to_doc(self) -> dict:
        return {
            "positions_audited": self.positions_audited,
            "violations": list(self.violations),
        }


@dataclass
class CrossCheckReport:
    nodes_checked: int = 0
    mismatches: list[tuple[str, str]] = field(default_factory=list)

    def to_doc(self) -> dict:
        return {
            "nodes_checked": self.nodes_checked,
            "mismatches": [{"position": p, "move": m} for p, m in self.mismatches],
        }


@dataclass
class VerificationRun:
    report: VerificationReport
    audit: MiniBoardAudit | None = None
    cross_check: CrossCheckReport | None = None


def exhaustive_policy(p: Position) -> int:
    """Candidate replies: rule-3 survivors unioned over every mini-board."""
    return strategy_moves_all(p)


def canonical_policy(p: Position) -> int:
    """Candidate replies: rule-3 survivors on the canonical mini-board only."""
    return strategy_decision(p, canonical_mini_board(p)).final_moves


def rule1_lowest_policy(p: Position) -> int:
    """Deliberately crippled policy for negative-path tests: skip rules 2-3
    and play the lowest P2-allowed move on the canonical mini-board."""
    rule1 = strategy_decision(p, canonical_mini_board(p)).rule1_moves
    return rule1 & -rule1


def lowest_uncolored_policy(p: Position) -> int:
    """Worst-possible baseline: always claim the lowest uncoloured edge,
    suicidal or not."""
    u = p.uncolored
    return u & -u


class _Traversal:
    """Depth-first walk of the game tree under a P2 reply policy.

    P1 nodes branch over every uncoloured edge.  Verified P1-node verdicts
    are memoised by canonical key; the verified predicate is carried across
    isomorphs, which is sound because the candidate sets are equivariant
    under vertex relabelling.
    """

    def __init__(
        self,
        policy: Policy,
        tie_break: TieBreak,
        memo: bool,
        audit: MiniBoardAudit | None = None,
        cross_check: CrossCheckReport | None = None,
    ):
        self.policy = policy
        self.tie_break = tie_break
        self.memo = memo
        self.audit = audit
        self.cross = cross_check
        self.verified: set[tuple[int, int]] = set()
        self.memo_hits = 0
        self.p1_expanded = 0
        self.p2_expanded = 0
        self.max_length: int | None = None
        self.min_p1_loss: int | None = None
        self._audited: set[tuple[int, int]] = set()
        self._cross_checked: set[tuple[int, int]] = set()

    def run(self, start: Position) -> list[int] | None:
        if start.status() is not GameStatus.ONGOING:
            raise ValueError("verification must start from a live position")
        if start.to_move() is Player.P1:
            return self._p1_node(start.red, start.blue)
        return self._p2_node(start.red, start.blue)

    def _record_end(self, red: int, blue: int, p1_lost: bool) -> None:
        length = (red | blue).bit_count()
        if self.max_length is None or length > self.max_length:
            self.max_length = length
        if p1_lost and (self.min_p1_loss is None or length < self.min_p1_loss):
            self.min_p1_loss = length

    def _p1_node(self, red: int, blue: int) -> list[int] | None:
        if self.memo:
            key = canonical_key_masks(red, blue)
            if key in self.verified:
                self.memo_hits += 1
                return None
        self.p1_expanded += 1
        uncolored = ALL_EDGES ^ red ^ blue
        for e in edges_in(uncolored):
            if completes_triangle(red, e):
                # P1 closed a red triangle: P2 wins this line.
                self._record_end(red | (1 << e), blue, p1_lost=True)
                continue
            refutation = self._p2_node(red | (1 << e), blue)
            if refutation is not None:
                refutation.insert(0, e)
                return refutation
        if self.memo:
            self.verified.add(key)
        return None

    def _p2_node(self, red: int, blue: int) -> list[int] | None:
        self.p2_expanded += 1
        p = Position(red, blue)
        if allowed_moves(p, Player.P2) == 0:
            # Every reply would close a blue triangle; the strategy has lost.
            self._record_end(red, blue, p1_lost=False)
            return []
        candidates = self.policy(p)
        if candidates == 0:
            raise RuntimeError("reply policy returned no candidate move")
        if self.audit is not None:
            self._audit_position(p)
        if self.cross is not None:
            # Under the default exhaustive policy the candidate set is exactly
            # the union of rule-3 survivors over all mini-boards.
            self._cross_check_position(p, candidates)
        if self.tie_break is TieBreak.FIRST:
            candidates &= -candidates
        for e in edges_in(candidates):
            if completes_triangle(blue, e):
                # The policy itself picked a suicidal move.
                self._record_end(red, blue | (1 << e), p1_lost=False)
                return [e]
            refutation = self._p1_node(red, blue | (1 << e))
            if refutation is not None:
                refutation.insert(0, e)
                return refutation
        return None

    def _audit_position(self, p: Position) -> None:
        if (p.red, p.blue) in self._audited:
            return
        self._audited.add((p.red, p.blue))
        self.audit.positions_audited += 1
        boards = minimal_mini_boards(p)
        sizes = {b.vertices.bit_count() for b in boards}
        pairwise_ok = all(
            colored_isomorphic(p, a.vertices, b.vertices)
            for a, b in combinations(boards, 2)
        )
        if len(sizes) != 1 or not pairwise_ok:
            self.audit.violations.append(format_position(p))

    def _cross_check_position(self, p: Position, candidates: int) -> None:
        if (p.red, p.blue) in self._cross_checked:
            return
        self._cross_checked.add((p.red, p.blue))
        self.cross.nodes_checked += 1
        for e in edges_in(candidates):
            if completes_triangle(p.blue, e):
                # Suicidal reply: immediately lost, trivially not P2-winning.
                self.cross.mismatches.append((format_position(p), edge_name(e)))
            elif _mover_wins(p.red, p.blue | (1 << e)):
                # P1 to move and winning: this reply loses.
                self.cross.mismatches.append((format_position(p), edge_name(e)))


def run_verification(
    mode: Mode = Mode.EXHAUSTIVE,
    tie_break: TieBreak = TieBreak.ALL,
    memo: bool = True,
    audit: bool = False,
    cross_check: bool = False,
    start: Position = EMPTY,
    policy: Policy | None = None,
) -> VerificationRun:
    """Traverse the game tree once, optionally collecting the mini-board audit
    and the strategy-vs-minimax cross-check along the way.

    ``start`` and ``policy`` generalise the default whole-game check: tests
    replay sub-trees and deliberately sabotaged reply policies through the
    same machinery.
    """
    mode = Mode(mode)
    tie_break = TieBreak(tie_break)
    if policy is None:
        policy = exhaustive_policy if mode is Mode.EXHAUSTIVE else canonical_policy
    audit_report = MiniBoardAudit() if audit else None
    cross_report = CrossCheckReport() if cross_check else None
    traversal = _Traversal(policy, tie_break, memo, audit_report, cross_report)
    refutation = traversal.run(start)
    report = VerificationReport(
        result=Outcome.VERIFIED if refutation is None else Outcome.REFUTED,
        refutation_line=tuple(edge_name(e) for e in refutation)
        if refutation is not None
        else None,
        p1_nodes_expanded=traversal.p1_expanded,
        p2_nodes_expanded=traversal.p2_expanded,
        memo_hits=traversal.memo_hits,
        distinct_canonical_positions=len(traversal.verified),
        max_game_length=traversal.max_length,
        min_p1_loss_length=traversal.min_p1_loss,
        mode=mode,
        tie_break=tie_break,
    )
    return VerificationRun(report, audit_report, cross_report)


def verify_strategy(
    mode: Mode = Mode.EXHAUSTIVE,
    tie_break: TieBreak = TieBreak.ALL,
    memo: bool = True,
    start: Position = EMPTY,
    policy: Policy | None = None,
) -> VerificationReport:
    """Check that the reply policy wins against all P1 play; see run_verification."""
    return run_verification(
        mode=mode, tie_break=tie_break, memo=memo, start=start, policy=policy
    ).report


def audit_mini_boards() -> MiniBoardAudit:
    """Check mini-board uniqueness up to isomorphism at every P2 node of the
    exhaustive verification traversal."""
    return run_verification(audit=True).audit


def cross_check_strategy_vs_minimax() -> CrossCheckReport:
    """Check that every strategy reply at every visited P2 node leads to a
    position whose exact game value is a P2 win."""
    return run_verification(cross_check=True).cross_check


# --- exact game value -------------------------------------------------------

_minimax_memo: dict[tuple[int, int], bool] = {}


def _mover_wins(red: int, blue: int) -> bool:
    """True iff the player on turn wins with optimal play (memoised)."""
    key = canonical_key_masks(red, blue)
    cached = _minimax_memo.get(key)
    if cached is not None:
        return cached
    mover_is_p1 = (red | blue).bit_count() % 2 == 0
    own = red if mover_is_p1 else blue
    win = False
    for e in edges_in(ALL_EDGES ^ red ^ blue):
        if completes_triangle(own, e):
            continue  # immediate loss, never preferable
        if mover_is_p1:
            child_wins = _mover_wins(red | (1 << e), blue)
        else:
            child_wins = _mover_wins(red, blue | (1 << e))
        if not child_wins:
            win = True
            break
    # No branch helps: every move is suicidal or hands the opponent the win.
    _minimax_memo[key] = win
    return win


def solve_minimax(p: Position) -> GameValue:
    """Exact value of a live position under optimal play by both sides."""
    if p.status() is not GameStatus.ONGOING:
        raise ValueError("terminal position has no game value")
    mover = p.to_move()
    if _mover_wins(p.red, p.blue):
        return GameValue.P1_WINS if mover is Player.P1 else GameValue.P2_WINS
    return GameValue.P2_WINS if mover is Player.P1 else GameValue.P1_WINS


def clear_minimax_memo() -> None:
    """Drop the shared minimax table (for benchmarks and tests)."""
    _minimax_memo.clear()


# --- no-tie fact ------------------------------------------------------------

def ramsey_check(vertices: int = 6) -> bool:
    """True iff every red/blue colouring of the complete graph's edges contains
    a monochromatic triangle.  At six vertices this is what rules out ties;
    at five it is False (pentagon vs pentagram).
    """
    pairs = [(u, v) for u in range(vertices) for v in range(u + 1, vertices)]
    index = {uv: i for i, uv in enumerate(pairs)}
    tris = np.array(
        [
            (1 << index[(a, b)]) | (1 << index[(a, c)]) | (1 << index[(b, c)])
            for a, b, c in combinations(range(vertices), 3)
        ],
        dtype=np.int64,
    )
    n_edges = len(pairs)
    masks = np.arange(1 << n_edges, dtype=np.int64)
    red_has = np.zeros(len(masks), dtype=bool)
    blue_has = np.zeros(len(masks), dtype=bool)
    full = (1 << n_edges) - 1
    for t in tris:
        red_has |= (masks & t) == t
        blue_has |= ((full ^ masks) & t) == t
    return bool((red_has | blue_has).all())
