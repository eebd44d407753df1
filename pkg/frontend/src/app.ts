import { GameClient } from "./api.js";
import { BoardView } from "./board.js";
import { EDGE_NAMES } from "./geometry.js";
import { StateDoc, validateState } from "./types.js";

/** Wires the board to the server: one in-flight move at a time, explanations
 * togglable, errors surfaced in a banner without touching the board. */
export class App {
  readonly board: BoardView;
  state: StateDoc | null = null;
  showExplanations = true;

  private inFlight = false;
  private pending: Promise<void> = Promise.resolve();
  private lastFailedMove: string | null = null;

  private statusEl: HTMLElement;
  private bannerEl: HTMLElement;
  private retryBtn: HTMLButtonElement;
  private toggleEl: HTMLInputElement;

  constructor(
    private root: HTMLElement,
    private client: GameClient,
    doc: Document = root.ownerDocument,
  ) {
    this.board = new BoardView(doc);
    this.board.onEdgeClick = (edge) => {
      // start immediately (ignored while a move is in flight); whenIdle()
      // resolves only once every started handler has settled
      const task = this.handleEdgeClick(edge);
      this.pending = this.pending.then(() => task);
    };

    this.statusEl = doc.createElement("p");
    this.statusEl.className = "status";

    this.bannerEl = doc.createElement("p");
    this.bannerEl.className = "banner hidden";

    this.retryBtn = doc.createElement("button");
    this.retryBtn.className = "retry hidden";
    this.retryBtn.textContent = "retry";
    this.retryBtn.addEventListener("click", () => {
      const task = this.retry();
      this.pending = this.pending.then(() => task);
    });

    const toggleLabel = doc.createElement("label");
    toggleLabel.className = "toggle";
    this.toggleEl = doc.createElement("input");
    this.toggleEl.type = "checkbox";
    this.toggleEl.checked = true;
    this.toggleEl.addEventListener("change", () => {
      this.setExplanations(this.toggleEl.checked);
    });
    toggleLabel.appendChild(this.toggleEl);
    toggleLabel.appendChild(doc.createTextNode(" show engine explanations"));

    root.appendChild(this.statusEl);
    root.appendChild(this.board.svg);
    root.appendChild(this.bannerEl);
    root.appendChild(this.retryBtn);
    root.appendChild(toggleLabel);
  }

  whenIdle(): Promise<void> {
    return this.pending;
  }

  async start(): Promise<void> {
    try {
      this.apply(await this.client.createGame());
    } catch (err) {
      this.showError(`could not start a game: ${asMessage(err)}`);
    }
  }

  /** Re-fetch the current state; the server is the single source of truth. */
  async refresh(): Promise<void> {
    if (this.state === null) return;
    try {
      this.apply(await this.client.getState(this.state.id));
    } catch (err) {
      this.showError(`could not refresh: ${asMessage(err)}`);
    }
  }

  setExplanations(on: boolean): void {
    this.showExplanations = on;
    this.toggleEl.checked = on;
    if (this.state !== null) this.board.render(this.state, on);
  }

  async handleEdgeClick(edge: string): Promise<void> {
    if (!this.canClick(edge)) return;
    await this.submit(edge);
  }

  private canClick(edge: string): boolean {
    if (this.state === null || this.inFlight) return false;
    if (this.state.status !== "ongoing") return false;
    const i = EDGE_NAMES.indexOf(edge);
    return i >= 0 && this.state.position[i] === ".";
  }

  private async retry(): Promise<void> {
    const move = this.lastFailedMove;
    if (move === null || this.inFlight || this.state === null) return;
    await this.submit(move);
  }

  private async submit(edge: string): Promise<void> {
    if (this.state === null) return;
    this.inFlight = true;
    this.root.classList.add("locked");
    try {
      const result = await this.client.submitMove(this.state.id, edge);
      switch (result.kind) {
        case "ok":
          this.lastFailedMove = null;
          this.hideBanner();
          this.apply(result.state);
          break;
        case "rejected":
          // board unchanged; just surface the server's diagnostic
          this.lastFailedMove = null;
          this.showError(result.message);
          break;
        case "network":
          this.lastFailedMove = edge;
          this.showError(`network failure: ${result.message}`);
          this.retryBtn.className = "retry";
          break;
      }
    } finally {
      this.inFlight = false;
      this.root.classList.remove("locked");
    }
  }

  private apply(doc: StateDoc): void {
    const problem = validateState(doc);
    if (problem !== null) {
      this.state = null;
      this.showError(`malformed state document: ${problem}`);
      return;
    }
    this.state = doc;
    this.board.render(doc, this.showExplanations);
    this.statusEl.textContent = statusLine(doc);
    if (doc.status !== "ongoing") {
      const triangle = (doc.losing_triangle ?? []).join(" ");
      const loser = doc.status === "p1_lost" ? "P1" : "P2";
      this.showBanner(`${loser} loses (triangle ${triangle})`);
    }
  }

  private showError(message: string): void {
    this.bannerEl.className = "banner error";
    this.bannerEl.textContent = message;
  }

  private showBanner(message: string): void {
    this.bannerEl.className = "banner";
    this.bannerEl.textContent = message;
  }

  private hideBanner(): void {
    this.bannerEl.className = "banner hidden";
    this.retryBtn.className = "retry hidden";
  }
}

function statusLine(doc: StateDoc): string {
  if (doc.status !== "ongoing") return `game over after ${doc.transcript.length} moves`;
  const engine = doc.engine_move ? `engine played ${doc.engine_move}; ` : "";
  return `${engine}your move (you are red)`;
}

function asMessage(err: unknown): string {
  return err instanceof Error ? err.message : String(err);
}
