"""Command-line interface.

Exit codes: 0 success (Verified / true), 1 Refuted or false, 2 usage or
parse errors, 3 end-of-input in the middle of an interactive game.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import board
from .board import (
    GameStatus,
    Player,
    Position,
    apply_move,
    edge_name,
    edges_in,
    format_position,
    parse_position,
    triangle_in,
)
from .strategy import (
    NoMiniBoardError,
    canonical_mini_board,
    engine_move,
    minimal_mini_boards,
    strategy_decision,
    strategy_moves_all,
)
from .verifier import (
    GameValue,
    Mode,
    Outcome,
    TieBreak,
    ramsey_check,
    run_verification,
    solve_minimax,
)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_ABORTED = 3


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="simgame",
        description="Sim on K6: play, analyse and verify the second player's strategy.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", help="check the strategy against all P1 play")
    verify.add_argument("--mode", choices=["exhaustive", "canonical"], default="exhaustive")
    verify.add_argument("--tie-break", choices=["all", "first"], default="all")
    verify.add_argument("--no-memo", action="store_true", help="disable the canonical-key memo")
    verify.add_argument("--audit", action="store_true", help="audit mini-board uniqueness")
    verify.add_argument("--cross-check", action="store_true", help="cross-check replies against minimax")
    verify.add_argument("--json", action="store_true", help="emit the report as JSON")

    solve = sub.add_parser("solve", help="exact game value under optimal play")
    solve.add_argument("position", nargs="?", default="." * board.N_EDGES)

    analyze = sub.add_parser("analyze", help="mini-boards and rule-by-rule move selection")
    analyze.add_argument("position")
    analyze.add_argument("--json", action="store_true", help="emit the analysis as JSON")

    sub.add_parser("ramsey", help="confirm every 2-colouring of K6 has a monochromatic triangle")

    play = sub.add_parser("play", help="play as P1 against the engine on stdin/stdout")
    play.add_argument("--human", choices=["p1"], default="p1")

    serve = sub.add_parser("serve", help="run the HTTP API (and optionally the web UI)")
    serve.add_argument("--port", type=int, default=8080)
    serve.add_argument("--static-dir", default=None)
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument(
        "--session-ttl", type=float, default=3600.0,
        help="idle seconds before a game session expires",
    )

    return parser


def _usage_error(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return EXIT_USAGE


def _cmd_verify(args) -> int:
    run = run_verification(
        mode=Mode(args.mode),
        tie_break=TieBreak(args.tie_break.lower()),
        memo=not args.no_memo,
        audit=args.audit,
        cross_check=args.cross_check,
    )
    ok = run.report.result is Outcome.VERIFIED
    if args.audit and run.audit.violations:
        ok = False
    if args.cross_check and run.cross_check.mismatches:
        ok = False
    if args.json:
        doc = run.report.to_doc()
        if run.audit is not None:
            doc["audit"] = run.audit.to_doc()
        if run.cross_check is not None:
            doc["cross_check"] = run.cross_check.to_doc()
        print(json.dumps(doc, indent=2))
    else:
        print(run.report.format_text())
        if run.audit is not None:
            print(
                f"mini-board audit: {run.audit.positions_audited} positions, "
                f"{len(run.audit.violations)} violations"
            )
            for text in run.audit.violations:
                print(f"  violation: {text}")
        if run.cross_check is not None:
            print(
                f"minimax cross-check: {run.cross_check.nodes_checked} nodes, "
                f"{len(run.cross_check.mismatches)} mismatches"
            )
            for pos_text, move in run.cross_check.mismatches:
                print(f"  mismatch: {move} at {pos_text}")
    return EXIT_OK if ok else EXIT_FAILED


def _cmd_solve(args) -> int:
    try:
        p = parse_position(args.position)
    except ValueError as exc:
        return _usage_error(f"invalid position: {exc}")
    if p.status() is not GameStatus.ONGOING:
        return _usage_error("position is terminal; nothing to solve")
    value = solve_minimax(p)
    winner = "P1" if value is GameValue.P1_WINS else "P2"
    print(f"{winner} wins with optimal play from {format_position(p)}")
    return EXIT_OK


def _edge_names(mask: int) -> str:
    return " ".join(edge_name(e) for e in edges_in(mask))


def analysis_doc(p: Position) -> dict:
    """Machine-readable analysis of a position (shared by --json and tests)."""
    doc: dict = {
        "position": format_position(p),
        "status": p.status().value,
        "to_move": p.to_move().name.lower() if p.status() is GameStatus.ONGOING else None,
    }
    if p.status() is not GameStatus.ONGOING:
        return doc
    try:
        boards = minimal_mini_boards(p)
    except NoMiniBoardError:
        doc["mini_boards"] = []
        return doc
    doc["mini_boards"] = [m.vertex_list() for m in boards]
    if p.to_move() is Player.P2:
        doc["decisions"] = [strategy_decision(p, m).to_doc() for m in boards]
        doc["strategy_moves"] = [edge_name(e) for e in edges_in(strategy_moves_all(p))]
        doc["engine_move"] = edge_name(engine_move(p)[0])
    return doc


def format_analysis(p: Position) -> str:
    """Human-readable analysis; byte-stable for a fixed position."""
    lines = [f"position: {format_position(p)}"]
    status = p.status()
    if status is not GameStatus.ONGOING:
        lines.append(f"game over: {status.value}")
        return "\n".join(lines)
    lines.append(f"to move: {p.to_move().name}")
    try:
        boards = minimal_mini_boards(p)
    except NoMiniBoardError:
        lines.append("no mini-board: P2 has no allowed move")
        return "\n".join(lines)
    lines.append("mini-boards: " + " ".join(str(m) for m in boards))
    if p.to_move() is not Player.P2:
        lines.append("(strategy rules apply on P2's turn)")
        return "\n".join(lines)
    canonical = canonical_mini_board(p)
    for m in boards:
        d = strategy_decision(p, m)
        tag = " (canonical)" if m == canonical else ""
        lines.append(f"board {m}{tag}")
        lines.append(f"  rule 1 candidates: {_edge_names(d.rule1_moves)}")
        counts2 = " ".join(
            f"{edge_name(e)}={d.rule2_counts[e]}" for e in edges_in(d.rule1_moves)
        )
        lines.append(f"  rule 2 counts: {counts2} -> {_edge_names(d.rule2_moves)}")
        counts3 = " ".join(
            f"{edge_name(e)}={d.rule3_counts[e]}" for e in edges_in(d.rule1_moves)
        )
        lines.append(f"  rule 3 counts: {counts3} -> {_edge_names(d.final_moves)}")
        lines.append(f"  final moves: {_edge_names(d.final_moves)}")
    lines.append(f"strategy moves (all boards): {_edge_names(strategy_moves_all(p))}")
    lines.append(f"engine move: {edge_name(engine_move(p)[0])}")
    return "\n".join(lines)


def _cmd_analyze(args) -> int:
    try:
        p = parse_position(args.position)
    except ValueError as exc:
        return _usage_error(f"invalid position: {exc}")
    if args.json:
        print(json.dumps(analysis_doc(p), indent=2))
    else:
        print(format_analysis(p))
    return EXIT_OK


def _cmd_ramsey(args) -> int:
    if ramsey_check():
        print("all 32768 colorings contain a monochromatic triangle")
        return EXIT_OK
    print("found a triangle-free 2-coloring of K6 (should be impossible)")
    return EXIT_FAILED


def _describe_loss(p: Position, status: GameStatus) -> str:
    loser_color = p.red if status is GameStatus.P1_LOST else p.blue
    tri = triangle_in(loser_color)
    edges = _edge_names(tri) if tri is not None else "?"
    loser = "P1" if status is GameStatus.P1_LOST else "P2"
    return f"{loser} loses with triangle {edges}"


def play_loop(instream, outstream) -> GameStatus:
    """Line-oriented game: the human plays P1, the engine replies as P2.

    Raises EOFError if the input ends while the game is still running.
    """
    p = Position()
    status = GameStatus.ONGOING

    def say(text: str) -> None:
        print(text, file=outstream)
        outstream.flush()

    say("you are P1 (red); enter moves as two digits, e.g. 02")
    while status is GameStatus.ONGOING:
        say(f"position {format_position(p)}; your move:")
        line = instream.readline()
        if line == "":
            raise EOFError("input ended mid-game")
        text = line.strip()
        try:
            e = board.parse_move(text)
        except ValueError as exc:
            say(f"illegal move: {exc}")
            continue
        if not p.uncolored >> e & 1:
            say(f"illegal move: edge {text} is already coloured")
            continue
        p, status = apply_move(p, e)
        if status is not GameStatus.ONGOING:
            say(_describe_loss(p, status))
            break
        reply, decision = engine_move(p)
        p, status = apply_move(p, reply)
        say(
            f"engine plays {edge_name(reply)}  "
            f"[board {decision.mini_board}; rule1 {_edge_names(decision.rule1_moves)}; "
            f"rule2 {_edge_names(decision.rule2_moves)}; final {_edge_names(decision.final_moves)}]"
        )
        if status is not GameStatus.ONGOING:
            say(_describe_loss(p, status))
    say(f"final position {format_position(p)}")
    return status


def _cmd_play(args) -> int:
    try:
        play_loop(sys.stdin, sys.stdout)
    except EOFError:
        print("aborted: input ended mid-game", file=sys.stderr)
        return EXIT_ABORTED
    return EXIT_OK


def _cmd_serve(args) -> int:
    import uvicorn

    from .server import create_app

    app = create_app(static_dir=args.static_dir, idle_ttl=args.session_ttl)
    uvicorn.run(app, host=args.host, port=args.port)
    return EXIT_OK


_HANDLERS = {
    "verify": _cmd_verify,
    "solve": _cmd_solve,
    "analyze": _cmd_analyze,
    "ramsey": _cmd_ramsey,
    "play": _cmd_play,
    "serve": _cmd_serve,
}


def run_cli(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    return _HANDLERS[args.command](args)


def main(argv=None) -> int:
    try:
        return run_cli(argv)
    except SystemExit as exc:
        code = exc.code
        if code is None:
            return EXIT_OK
        return code if isinstance(code, int) else EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
