// Board geometry: the six vertices sit on a regular hexagon and the 15
// edges follow the server's lexicographic id order ("01", "02", ... "45").
// The wire format is 0-based; vertex LABELS shown to the player are 1-6.

export interface Point {
  x: number;
  y: number;
}

export const EDGE_NAMES: string[] = (() => {
  const names: string[] = [];
  for (let u = 0; u < 6; u++) {
    for (let v = u + 1; v < 6; v++) {
      names.push(`${u}${v}`);
    }
  }
  return names;
})();

export function edgeEndpoints(name: string): [number, number] {
  return [Number(name[0]), Number(name[1])];
}

/** Vertex 0 at the top, continuing clockwise. */
export function vertexPoint(v: number, cx: number, cy: number, radius: number): Point {
  const angle = -Math.PI / 2 + (v * Math.PI) / 3;
  return { x: cx + radius * Math.cos(angle), y: cy + radius * Math.sin(angle) };
}

export function edgeMidpoint(name: string, cx: number, cy: number, radius: number): Point {
  const [u, v] = edgeEndpoints(name);
  const a = vertexPoint(u, cx, cy, radius);
  const b = vertexPoint(v, cx, cy, radius);
  return { x: (a.x + b.x) / 2, y: (a.y + b.y) / 2 };
}

/** Badge anchor: the edge midpoint nudged off the stroke.  Most edges nudge
 * toward the board centre; the three long diagonals pass through the centre
 * itself, so those shift perpendicular to the edge instead (a different
 * direction for each, keeping the labels apart). */
export function badgePoint(name: string, cx: number, cy: number, radius: number): Point {
  const mid = edgeMidpoint(name, cx, cy, radius);
  const nudge = 14;
  let dir = { x: cx - mid.x, y: cy - mid.y };
  let len = Math.hypot(dir.x, dir.y);
  if (len < 1e-9) {
    const [u, v] = edgeEndpoints(name);
    const a = vertexPoint(u, cx, cy, radius);
    const b = vertexPoint(v, cx, cy, radius);
    dir = { x: -(b.y - a.y), y: b.x - a.x };
    len = Math.hypot(dir.x, dir.y);
  }
  return { x: mid.x + (dir.x / len) * nudge, y: mid.y + (dir.y / len) * nudge };
}
