"""Board mechanics for Sim on K6.

Sim is a misere avoidance game: two players alternately claim edges of the
complete graph on six vertices, P1 colouring red and P2 blue, and whoever
completes a triangle in their own colour loses.  Edge sets are 15-bit
integer masks; vertex sets are 6-bit masks.  Everything here is a pure
function on immutable values.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from itertools import combinations

N_VERTICES = 6
N_EDGES = 15
ALL_EDGES = (1 << N_EDGES) - 1
ALL_VERTICES = (1 << N_VERTICES) - 1

# Edge ids follow the lexicographic order of their endpoint pairs:
# 0=(0,1), 1=(0,2), ... 4=(0,5), 5=(1,2), ... 14=(4,5).
EDGE_ENDPOINTS = tuple(
    (u, v) for u in range(N_VERTICES) for v in range(u + 1, N_VERTICES)
)
_EDGE_ID = {pair: e for e, pair in enumerate(EDGE_ENDPOINTS)}

# The 20 vertex triples of K6 as 3-edge masks, and the triangles through
# each edge (all that can newly close when that edge is claimed).
TRIANGLE_MASKS = tuple(
    (1 << _EDGE_ID[(a, b)]) | (1 << _EDGE_ID[(a, c)]) | (1 << _EDGE_ID[(b, c)])
    for a, b, c in combinations(range(N_VERTICES), 3)
)
TRIANGLES_THROUGH = tuple(
    tuple(t for t in TRIANGLE_MASKS if t >> e & 1) for e in range(N_EDGES)
)


class SimError(Exception):
    """Base class for game-rule errors."""


class IllegalMoveError(SimError):
    """Move targets an edge that is not claimable."""


class GameOverError(SimError):
    """Move submitted to a finished game."""


class PositionParseError(SimError, ValueError):
    """Position text is malformed; ``index`` is the offending character."""

    def __init__(self, message: str, index: int | None = None):
        super().__init__(message)
        self.index = index


class InvariantViolation(SimError):
    """A should-be-impossible internal state was observed."""


class Player(Enum):
    P1 = 1
    P2 = 2

    @property
    def other(self) -> "Player":
        return Player.P2 if self is Player.P1 else Player.P1


class GameStatus(Enum):
    ONGOING = "ongoing"
    P1_LOST = "p1_lost"
    P2_LOST = "p2_lost"


def edge_id(u: int, v: int) -> int:
    """Edge id for the unordered vertex pair {u, v}."""
    if not (0 <= u < N_VERTICES and 0 <= v < N_VERTICES):
        raise ValueError(f"vertex out of range: ({u}, {v})")
    if u == v:
        raise ValueError(f"an edge needs two distinct vertices, got ({u}, {v})")
    return _EDGE_ID[(u, v) if u < v else (v, u)]


def endpoints(e: int) -> tuple[int, int]:
    """Vertex pair (u, v) with u < v for an edge id."""
    if not 0 <= e < N_EDGES:
        raise ValueError(f"edge id out of range: {e}")
    return EDGE_ENDPOINTS[e]


def edge_name(e: int) -> str:
    """Two-digit move notation, e.g. edge (0,2) -> \"02\"."""
    u, v = endpoints(e)
    return f"{u}{v}"


def parse_move(text: str) -> int:
    """Parse \"uv\" move notation into an edge id."""
    if len(text) != 2 or not text.isdigit():
        raise ValueError(f"moves are two digits 'uv', got {text!r}")
    return edge_id(int(text[0]), int(text[1]))


def edges_in(mask: int):
    """Iterate the edge ids of a mask in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def vertices_in(mask: int):
    """Iterate the vertices of a 6-bit vertex mask in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def contains_triangle(edge_mask: int) -> bool:
    """True iff some vertex triple has all three connecting edges in the mask."""
    for t in TRIANGLE_MASKS:
        if t & edge_mask == t:
            return True
    return False


def completes_triangle(color_mask: int, e: int) -> bool:
    """True iff adding edge e to a triangle-free colour mask closes a triangle."""
    m = color_mask | (1 << e)
    for t in TRIANGLES_THROUGH[e]:
        if t & m == t:
            return True
    return False


def triangle_in(edge_mask: int) -> int | None:
    """A 3-edge triangle mask contained in edge_mask, or None."""
    for t in TRIANGLE_MASKS:
        if t & edge_mask == t:
            return t
    return None


def induced_edges(vertex_mask: int) -> int:
    """Edge mask of the complete subgraph spanned by a vertex set."""
    out = 0
    for e, (u, v) in enumerate(EDGE_ENDPOINTS):
        if vertex_mask >> u & 1 and vertex_mask >> v & 1:
            out |= 1 << e
    return out


# induced_edges is pure over 64 inputs; table it once.
INDUCED_EDGES = tuple(induced_edges(s) for s in range(1 << N_VERTICES))


@dataclass(frozen=True)
class Position:
    """A game position: disjoint red (P1) and blue (P2) edge masks.

    The player to move is derived from parity (P1 moves on even counts),
    and the status from which colour, if any, contains a triangle.
    """

    red: int = 0
    blue: int = 0

    def __post_init__(self):
        if not 0 <= self.red <= ALL_EDGES or not 0 <= self.blue <= ALL_EDGES:
            raise ValueError("edge mask out of range")
        if self.red & self.blue:
            raise ValueError("red and blue edge sets overlap")

    @property
    def uncolored(self) -> int:
        return ALL_EDGES ^ self.red ^ self.blue

    @property
    def move_count(self) -> int:
        return (self.red | self.blue).bit_count()

    def to_move(self) -> Player:
        return Player.P1 if self.move_count % 2 == 0 else Player.P2

    def colorset(self, player: Player) -> int:
        return self.red if player is Player.P1 else self.blue

    def status(self) -> GameStatus:
        if contains_triangle(self.red):
            return GameStatus.P1_LOST
        if contains_triangle(self.blue):
            return GameStatus.P2_LOST
        return GameStatus.ONGOING


EMPTY = Position()


def support(p: Position) -> int:
    """Vertex mask of all vertices touching at least one coloured edge."""
    out = 0
    for e in edges_in(p.red | p.blue):
        u, v = EDGE_ENDPOINTS[e]
        out |= (1 << u) | (1 << v)
    return out


def allowed_moves(p: Position, player: Player) -> int:
    """Uncoloured edges the player could claim without an own-colour triangle
    in the result.  Empty when the player's edges already hold one."""
    color = p.colorset(player)
    if contains_triangle(color):
        return 0
    out = 0
    for e in edges_in(p.uncolored):
        if not completes_triangle(color, e):
            out |= 1 << e
    return out


def is_allowed_set(p: Position, edge_mask: int, player: Player) -> bool:
    """True iff the set is uncoloured and unions triangle-free with the player's edges."""
    if edge_mask & ~p.uncolored:
        return False
    return not contains_triangle(edge_mask | p.colorset(player))


def apply_move(p: Position, e: int) -> tuple[Position, GameStatus]:
    """Claim edge e for the player on turn; returns the new position and status.

    Suicidal moves are legal: completing a triangle in your own colour ends
    the game with that player losing.
    """
    if not 0 <= e < N_EDGES:
        raise IllegalMoveError(f"edge id out of range: {e}")
    if p.status() is not GameStatus.ONGOING:
        raise GameOverError("game is already over")
    if not p.uncolored >> e & 1:
        raise IllegalMoveError(f"edge {edge_name(e)} is already coloured")
    mover = p.to_move()
    if mover is Player.P1:
        nxt = Position(p.red | (1 << e), p.blue)
        lost = completes_triangle(p.red, e)
        return nxt, GameStatus.P1_LOST if lost else GameStatus.ONGOING
    nxt = Position(p.red, p.blue | (1 << e))
    lost = completes_triangle(p.blue, e)
    return nxt, GameStatus.P2_LOST if lost else GameStatus.ONGOING


_POSITION_CHARS = {"R", "B", "."}


def parse_position(text: str) -> Position:
    """Parse the 15-character position text (R/B/. per edge id, ascending)."""
    if len(text) != N_EDGES:
        raise PositionParseError(
            f"position text must be {N_EDGES} characters, got {len(text)}"
        )
    red = blue = 0
    for i, ch in enumerate(text):
        if ch == "R":
            red |= 1 << i
        elif ch == "B":
            blue |= 1 << i
        elif ch != ".":
            raise PositionParseError(
                f"bad character {ch!r} at index {i} (expected R, B or .)", index=i
            )
    return Position(red, blue)


def format_position(p: Position) -> str:
    """Inverse of parse_position."""
    return "".join(
        "R" if p.red >> e & 1 else "B" if p.blue >> e & 1 else "."
        for e in range(N_EDGES)
    )


def replay(moves, start: Position = EMPTY) -> tuple[Position, GameStatus]:
    """Apply a sequence of \"uv\" moves from a starting position."""
    p, status = start, start.status()
    for text in moves:
        p, status = apply_move(p, parse_move(text))
    return p, status
