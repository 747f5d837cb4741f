export interface CardGeometry {
  width: number;
  height: number;
  hGap: number;
  vGap: number;
  padding: number;
}

export const CARD: CardGeometry = {
  width: 124,
  height: 248,
  hGap: 90,
  vGap: 30,
  padding: 40,
};

export interface Point {
  x: number;
  y: number;
}

/** Deterministic layered placement for the transition graph.
 *
 *  Layers are breadth-first depths from the first node in document order
 *  (additional BFS roots are taken in document order for anything
 *  unreachable), so repeated loads of the same document always produce the
 *  same picture; there is no force simulation and no randomness. */
export function computePositions(
  nodeIds: string[],
  edges: [string, string][],
  card: CardGeometry = CARD,
): Map<string, Point> {
  const outgoing = new Map<string, string[]>();
  for (const id of nodeIds) {
    outgoing.set(id, []);
  }
  for (const [source, target] of edges) {
    if (outgoing.has(source) && outgoing.has(target) && source !== target) {
      outgoing.get(source)!.push(target);
    }
  }

  const layerOf = new Map<string, number>();
  for (const root of nodeIds) {
    if (layerOf.has(root)) {
      continue;
    }
    layerOf.set(root, 0);
    const queue = [root];
    while (queue.length > 0) {
      const current = queue.shift()!;
      const depth = layerOf.get(current)!;
      for (const next of outgoing.get(current)!) {
        if (!layerOf.has(next)) {
          layerOf.set(next, depth + 1);
          queue.push(next);
        }
      }
    }
  }

  const layers = new Map<number, string[]>();
  for (const id of nodeIds) {
    const layer = layerOf.get(id)!;
    if (!layers.has(layer)) {
      layers.set(layer, []);
    }
    layers.get(layer)!.push(id);
  }

  const positions = new Map<string, Point>();
  for (const [layer, members] of layers) {
    members.forEach((id, row) => {
      positions.set(id, {
        x: card.padding + layer * (card.width + card.hGap),
        y: card.padding + row * (card.height + card.vGap),
      });
    });
  }
  return positions;
}

/** Point on the border of a card-sized rectangle centred at (cx, cy), along
 *  the ray toward (towardX, towardY). Used to stop edge arrows at the card
 *  outline instead of under it. */
export function borderPoint(
  cx: number,
  cy: number,
  towardX: number,
  towardY: number,
  card: CardGeometry = CARD,
): Point {
  const dx = towardX - cx;
  const dy = towardY - cy;
  if (dx === 0 && dy === 0) {
    return { x: cx, y: cy };
  }
  const halfW = card.width / 2;
  const halfH = card.height / 2;
  const tx = dx === 0 ? Infinity : halfW / Math.abs(dx);
  const ty = dy === 0 ? Infinity : halfH / Math.abs(dy);
  const t = Math.min(tx, ty);
  return { x: cx + dx * t, y: cy + dy * t };
}
