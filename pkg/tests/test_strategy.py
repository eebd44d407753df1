import random

import pytest

import oracles
from simgame.board import (
    Player,
    Position,
    allowed_moves,
    edge_id,
    edges_in,
    parse_position,
    replay,
    support,
    vertices_in,
)
from simgame.strategy import (
    MiniBoard,
    NoMiniBoardError,
    canonical_mini_board,
    engine_move,
    max_allowed_sets_on,
    minimal_mini_boards,
    strategy_decision,
    strategy_moves_all,
)
from simgame.symmetry import apply_permutation, permute_edge_mask


def mask(*pairs) -> int:
    out = 0
    for u, v in pairs:
        out |= 1 << edge_id(u, v)
    return out


def vset(*vs) -> int:
    return sum(1 << v for v in vs)


def board_vertex_sets(p):
    return [frozenset(vertices_in(m.vertices)) for m in minimal_mini_boards(p)]


# A position reached by crippled P2 play where P2 has no allowed move left
# (the refutation line of the rule-1-only policy).
NO_ALLOWED_MOVE_LINE = "01 02 03 12 04 13 05 14 23 15 24".split()


class TestMiniBoards:
    def test_single_red_edge(self):
        p = Position(red=mask((0, 1)))
        assert board_vertex_sets(p) == [
            frozenset({0, 1, 2}),
            frozenset({0, 1, 3}),
            frozenset({0, 1, 4}),
            frozenset({0, 1, 5}),
        ]

    def test_wedge_has_unique_board(self):
        p = Position(red=mask((0, 1)), blue=mask((0, 2)))
        assert board_vertex_sets(p) == [frozenset({0, 1, 2})]

    def test_empty_position_all_two_vertex_boards(self):
        boards = board_vertex_sets(Position())
        assert len(boards) == 15
        assert all(len(b) == 2 for b in boards)

    def test_matches_literal_oracle(self):
        for p in oracles.random_p2_turn_positions(51, 150):
            expect = oracles.mini_boards(
                oracles.mask_to_pairs(p.red), oracles.mask_to_pairs(p.blue)
            )
            assert board_vertex_sets(p) == [frozenset(b) for b in expect]

    def test_no_allowed_move_raises(self):
        p, _ = replay(NO_ALLOWED_MOVE_LINE)
        assert p.to_move() is Player.P2
        assert allowed_moves(p, Player.P2) == 0
        with pytest.raises(NoMiniBoardError):
            minimal_mini_boards(p)

    def test_support_plus_one_structure(self):
        for p in oracles.random_p2_turn_positions(52, 200):
            boards = minimal_mini_boards(p)
            sup = support(p)
            sizes = {m.vertices.bit_count() for m in boards}
            assert len(sizes) == 1
            for m in boards:
                assert m.vertices & sup == sup
                assert m.vertices.bit_count() - sup.bit_count() in (0, 1)


class TestCanonicalMiniBoard:
    def test_examples(self):
        assert canonical_mini_board(Position(red=mask((0, 1)))).vertices == vset(0, 1, 2)
        p = Position(red=mask((0, 1)), blue=mask((0, 2)))
        assert canonical_mini_board(p).vertices == vset(0, 1, 2)

    def test_deterministic(self):
        p = Position(red=mask((0, 1)))
        assert canonical_mini_board(p) == canonical_mini_board(Position(red=mask((0, 1))))


class TestMaxAllowedSets:
    def test_first_move_board(self):
        p = Position(red=mask((0, 1)))
        m = MiniBoard(vset(0, 1, 2))
        assert max_allowed_sets_on(p, m, Player.P2) == (mask((0, 2), (1, 2)),)
        assert max_allowed_sets_on(p, m, Player.P1) == (
            mask((0, 2)),
            mask((1, 2)),
        )

    def test_fully_coloured_board(self):
        p = Position(red=mask((0, 1)))
        m = MiniBoard(vset(0, 1))
        assert max_allowed_sets_on(p, m, Player.P1) == (0,)
        assert max_allowed_sets_on(p, m, Player.P2) == (0,)

    def test_matches_literal_oracle(self):
        for p in oracles.random_p2_turn_positions(53, 80):
            red = oracles.mask_to_pairs(p.red)
            blue = oracles.mask_to_pairs(p.blue)
            for m in minimal_mini_boards(p):
                board_vs = list(vertices_in(m.vertices))
                for player, own in [(Player.P1, red), (Player.P2, blue)]:
                    got = sorted(max_allowed_sets_on(p, m, player))
                    expect = sorted(
                        oracles.pairs_to_mask(s)
                        for s in oracles.max_allowed_sets(red, blue, board_vs, own)
                    )
                    assert got == expect


class TestStrategyDecision:
    def test_first_move_full_trace(self):
        p = Position(red=mask((0, 1)))
        d = strategy_decision(p, MiniBoard(vset(0, 1, 2)))
        both = mask((0, 2), (1, 2))
        assert d.rule1_moves == both
        assert d.rule2_counts == {edge_id(0, 2): 1, edge_id(1, 2): 1}
        assert d.rule2_moves == both
        assert d.rule3_counts == {edge_id(0, 2): 1, edge_id(1, 2): 1}
        assert d.final_moves == both

    def test_singleton_rule1_short_circuits(self):
        # Frozen witness found by scanning random games: the full board is the
        # only mini-board and exactly one P2-allowed move remains on it.
        p = parse_position("RRB...RRB.BRBBR")
        boards = minimal_mini_boards(p)
        singles = [
            strategy_decision(p, m)
            for m in boards
            if strategy_decision(p, m).rule1_moves.bit_count() == 1
        ]
        assert singles, "witness position lost its singleton rule-1 board"
        for d in singles:
            assert d.final_moves == d.rule1_moves

    def test_requires_p2_turn(self):
        with pytest.raises(ValueError):
            strategy_decision(Position(), MiniBoard(vset(0, 1)))

    def test_counts_recount_against_listed_sets(self):
        for p in oracles.random_p2_turn_positions(54, 60):
            for m in minimal_mini_boards(p):
                d = strategy_decision(p, m)
                p2_sets = max_allowed_sets_on(p, m, Player.P2)
                p1_sets = max_allowed_sets_on(p, m, Player.P1)
                for e in edges_in(d.rule1_moves):
                    assert d.rule2_counts[e] == sum(1 for s in p2_sets if s >> e & 1)
                    assert d.rule2_counts[e] <= len(p2_sets)
                    assert d.rule3_counts[e] == sum(1 for s in p1_sets if s >> e & 1)
                    assert d.rule3_counts[e] <= len(p1_sets)

    def test_filter_chain_nesting(self):
        for p in oracles.random_p2_turn_positions(55, 60):
            for m in minimal_mini_boards(p):
                d = strategy_decision(p, m)
                board_uncolored = m.uncolored_edges(p)
                assert d.final_moves != 0
                assert d.final_moves & ~d.rule2_moves == 0
                assert d.rule2_moves & ~d.rule1_moves == 0
                assert d.rule1_moves & ~board_uncolored == 0


class TestStrategyMovesAll:
    def test_first_move_eight_edges(self):
        p = Position(red=mask((0, 1)))
        expect = mask(
            (0, 2), (0, 3), (0, 4), (0, 5), (1, 2), (1, 3), (1, 4), (1, 5)
        )
        assert strategy_moves_all(p) == expect

    def test_unique_board_equals_its_decision(self):
        # 3 coloured edges put P2 on turn; the support spans the only board.
        p = Position(red=mask((0, 1), (2, 3)), blue=mask((0, 2)))
        boards = minimal_mini_boards(p)
        assert len(boards) == 1
        assert strategy_moves_all(p) == strategy_decision(p, boards[0]).final_moves

    def test_every_move_is_p2_allowed(self):
        for p in oracles.random_p2_turn_positions(56, 100):
            assert strategy_moves_all(p) & ~allowed_moves(p, Player.P2) == 0

    def test_equivariance(self):
        rng = random.Random(57)
        for p in oracles.random_p2_turn_positions(58, 60):
            sigma = tuple(rng.sample(range(6), 6))
            q = apply_permutation(p, sigma)
            assert strategy_moves_all(q) == permute_edge_mask(
                strategy_moves_all(p), sigma
            )

    def test_decision_equivariance_instance(self):
        p = Position(red=mask((0, 1)))
        sigma = (2, 4, 0, 1, 5, 3)
        m = MiniBoard(vset(0, 1, 2))
        image_board = MiniBoard(vset(sigma[0], sigma[1], sigma[2]))
        q = apply_permutation(p, sigma)
        assert strategy_decision(q, image_board).final_moves == permute_edge_mask(
            strategy_decision(p, m).final_moves, sigma
        )

    def test_matches_literal_oracle(self):
        for p in oracles.random_p2_turn_positions(59, 300):
            expect = oracles.pairs_to_mask(
                oracles.strategy_moves_all(
                    oracles.mask_to_pairs(p.red), oracles.mask_to_pairs(p.blue)
                )
            )
            assert strategy_moves_all(p) == expect


class TestEngineMove:
    def test_first_reply_is_lowest_final_move(self):
        p = Position(red=mask((0, 1)))
        e, decision = engine_move(p)
        assert e == edge_id(0, 2)
        assert decision.mini_board.vertices == vset(0, 1, 2)

    def test_explanation_doc_shape(self):
        p = Position(red=mask((0, 1)))
        doc = engine_move(p)[1].to_doc()
        assert doc["mini_board_vertices"] == [0, 1, 2]
        assert doc["rule1_moves"] == ["02", "12"]
        assert doc["rule2_counts"] == {"02": 1, "12": 1}
        assert doc["rule3_counts"] == {"02": 1, "12": 1}
        assert doc["final_moves"] == ["02", "12"]
