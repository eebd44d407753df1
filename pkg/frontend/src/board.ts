import {
  EDGE_NAMES,
  badgePoint,
  edgeEndpoints,
  vertexPoint,
} from "./geometry.js";
import { StateDoc } from "./types.js";

const SVG_NS = "http://www.w3.org/2000/svg";
const SIZE = 420;
const CENTRE = SIZE / 2;
const RADIUS = 160;

/** The clickable K6 board.  Everything rendered derives from the latest
 * server state document; the view holds no game logic of its own. */
export class BoardView {
  readonly svg: SVGSVGElement;
  onEdgeClick: (edge: string) => void = () => {};

  private edgeLines = new Map<string, SVGLineElement>();
  private hitLines = new Map<string, SVGLineElement>();
  private badges = new Map<string, SVGTextElement>();
  private vertexCircles: SVGCircleElement[] = [];

  constructor(doc: Document) {
    this.svg = doc.createElementNS(SVG_NS, "svg") as SVGSVGElement;
    this.svg.setAttribute("viewBox", `0 0 ${SIZE} ${SIZE}`);
    this.svg.setAttribute("class", "board");

    for (const name of EDGE_NAMES) {
      const [u, v] = edgeEndpoints(name);
      const a = vertexPoint(u, CENTRE, CENTRE, RADIUS);
      const b = vertexPoint(v, CENTRE, CENTRE, RADIUS);

      const line = doc.createElementNS(SVG_NS, "line") as SVGLineElement;
      line.setAttribute("x1", String(a.x));
      line.setAttribute("y1", String(a.y));
      line.setAttribute("x2", String(b.x));
      line.setAttribute("y2", String(b.y));
      line.setAttribute("class", "edge uncolored");
      line.setAttribute("data-edge", name);
      this.svg.appendChild(line);
      this.edgeLines.set(name, line);
    }
    // hit-regions above the visible strokes
    for (const name of EDGE_NAMES) {
      const [u, v] = edgeEndpoints(name);
      const a = vertexPoint(u, CENTRE, CENTRE, RADIUS);
      const b = vertexPoint(v, CENTRE, CENTRE, RADIUS);
      const hit = doc.createElementNS(SVG_NS, "line") as SVGLineElement;
      hit.setAttribute("x1", String(a.x));
      hit.setAttribute("y1", String(a.y));
      hit.setAttribute("x2", String(b.x));
      hit.setAttribute("y2", String(b.y));
      hit.setAttribute("class", "hit");
      hit.setAttribute("data-edge", name);
      hit.addEventListener("click", () => this.onEdgeClick(name));
      this.svg.appendChild(hit);
      this.hitLines.set(name, hit);
    }

    for (let v = 0; v < 6; v++) {
      const p = vertexPoint(v, CENTRE, CENTRE, RADIUS);
      const circle = doc.createElementNS(SVG_NS, "circle") as SVGCircleElement;
      circle.setAttribute("cx", String(p.x));
      circle.setAttribute("cy", String(p.y));
      circle.setAttribute("r", "13");
      circle.setAttribute("class", "vertex");
      circle.setAttribute("data-vertex", String(v));
      this.svg.appendChild(circle);
      this.vertexCircles.push(circle);

      // players see labels 1-6; the wire format stays 0-based
      const label = doc.createElementNS(SVG_NS, "text") as SVGTextElement;
      label.setAttribute("x", String(p.x));
      label.setAttribute("y", String(p.y + 4));
      label.setAttribute("class", "vertex-label");
      label.textContent = String(v + 1);
      this.svg.appendChild(label);
    }

    for (const name of EDGE_NAMES) {
      const p = badgePoint(name, CENTRE, CENTRE, RADIUS);
      const badge = doc.createElementNS(SVG_NS, "text") as SVGTextElement;
      badge.setAttribute("x", String(p.x));
      badge.setAttribute("y", String(p.y));
      badge.setAttribute("class", "badge hidden");
      badge.setAttribute("data-edge", name);
      this.svg.appendChild(badge);
      this.badges.set(name, badge);
    }
  }

  render(state: StateDoc, showExplanations: boolean): void {
    const explanation = state.explanation;
    const boardVertices = new Set(
      showExplanations && explanation ? explanation.mini_board_vertices : [],
    );
    const finals = new Set(
      showExplanations && explanation ? explanation.final_moves : [],
    );
    const losing = new Set(state.losing_triangle ?? []);

    // latest exchange: the last transcript entry, plus the human move under
    // it when the engine reply closed the exchange
    const lastMoves = new Set<string>();
    const n = state.transcript.length;
    if (n > 0) {
      lastMoves.add(state.transcript[n - 1]);
      if (state.engine_move !== null && state.engine_move === state.transcript[n - 1] && n > 1) {
        lastMoves.add(state.transcript[n - 2]);
      }
    }

    for (let i = 0; i < EDGE_NAMES.length; i++) {
      const name = EDGE_NAMES[i];
      const ch = state.position[i];
      const classes = ["edge", ch === "R" ? "red" : ch === "B" ? "blue" : "uncolored"];
      if (lastMoves.has(name)) classes.push("last-move");
      if (losing.has(name)) classes.push("losing-triangle");
      const [u, v] = edgeEndpoints(name);
      if (boardVertices.has(u) && boardVertices.has(v)) {
        classes.push("mini-board-member");
      }
      if (finals.has(name)) classes.push("candidate-final-move");
      this.edgeLines.get(name)!.setAttribute("class", classes.join(" "));

      const clickable = state.status === "ongoing" && ch === ".";
      this.hitLines.get(name)!.setAttribute("class", clickable ? "hit" : "hit disabled");

      const badge = this.badges.get(name)!;
      const counts =
        showExplanations && explanation && explanation.rule1_moves.includes(name)
          ? `${explanation.rule2_counts[name]}/${explanation.rule3_counts[name]}`
          : null;
      if (counts === null) {
        badge.setAttribute("class", "badge hidden");
        badge.textContent = "";
      } else {
        badge.setAttribute("class", "badge");
        badge.textContent = counts;
      }
    }

    for (let v = 0; v < 6; v++) {
      this.vertexCircles[v].setAttribute(
        "class",
        boardVertices.has(v) ? "vertex mini-board-vertex" : "vertex",
      );
    }
  }

  edgeClasses(name: string): string[] {
    return (this.edgeLines.get(name)!.getAttribute("class") ?? "").split(" ");
  }

  isClickable(name: string): boolean {
    return !this.hitLines.get(name)!.getAttribute("class")!.includes("disabled");
  }

  badgeText(name: string): string | null {
    const badge = this.badges.get(name)!;
    if (badge.getAttribute("class")!.includes("hidden")) return null;
    return badge.textContent;
  }

  hitRegion(name: string): SVGLineElement {
    return this.hitLines.get(name)!;
  }
}
