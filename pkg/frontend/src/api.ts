import { StateDoc } from "./types.js";

export type MoveResult =
  | { kind: "ok"; state: StateDoc }
  | { kind: "rejected"; status: number; message: string }
  | { kind: "network"; message: string };

async function errorMessage(resp: Response): Promise<string> {
  try {
    const body = await resp.json();
    if (body && typeof body.error === "string") return body.error;
  } catch {
    // fall through to the status line
  }
  return `request failed with status ${resp.status}`;
}

export class GameClient {
  constructor(private baseUrl: string = "") {}

  async createGame(): Promise<StateDoc> {
    const resp = await fetch(`${this.baseUrl}/games`, { method: "POST" });
    if (!resp.ok) throw new Error(await errorMessage(resp));
    return resp.json();
  }

  async getState(id: string): Promise<StateDoc> {
    const resp = await fetch(`${this.baseUrl}/games/${id}`);
    if (!resp.ok) throw new Error(await errorMessage(resp));
    return resp.json();
  }

  /** Rejections (4xx) and network failures are results, not exceptions:
   * the caller shows the diagnostic and leaves the board untouched. */
  async submitMove(id: string, move: string): Promise<MoveResult> {
    let resp: Response;
    try {
      resp = await fetch(`${this.baseUrl}/games/${id}/moves`, {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify({ move }),
      });
    } catch (err) {
      return { kind: "network", message: err instanceof Error ? err.message : String(err) };
    }
    if (!resp.ok) {
      return { kind: "rejected", status: resp.status, message: await errorMessage(resp) };
    }
    return { kind: "ok", state: await resp.json() };
  }
}
