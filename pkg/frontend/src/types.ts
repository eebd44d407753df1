// Wire types mirroring the server's JSON documents.

export interface Explanation {
  mini_board_vertices: number[];
  rule1_moves: string[];
  rule2_counts: Record<string, number>;
  rule3_counts: Record<string, number>;
  final_moves: string[];
}

export type GameStatus = "ongoing" | "p1_lost" | "p2_lost";

export interface StateDoc {
  id: string;
  position: string;
  status: GameStatus;
  turn: "p1" | "p2" | null;
  transcript: string[];
  engine_move: string | null;
  explanation: Explanation | null;
  losing_triangle?: string[] | null;
}

/** Returns a human-readable problem description, or null when valid. */
export function validateState(doc: unknown): string | null {
  if (typeof doc !== "object" || doc === null) return "state is not an object";
  const d = doc as Record<string, unknown>;
  if (typeof d.position !== "string" || !/^[RB.]{15}$/.test(d.position)) {
    return "bad position string";
  }
  if (d.status !== "ongoing" && d.status !== "p1_lost" && d.status !== "p2_lost") {
    return "bad status";
  }
  if (!Array.isArray(d.transcript)) return "bad transcript";
  if (typeof d.id !== "string" || d.id.length === 0) return "missing game id";
  return null;
}
