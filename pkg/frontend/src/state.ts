// Client mirror of a game session. The server permutation is the one source
// of truth: the counter map is recomputed from it after every request, and
// the diff between consecutive maps is exactly the set of board positions
// whose occupant changed (the support of the applied move, 2*lambda + 2).

import type { ServerState } from "./api.js";

export interface BoardState {
  n: number;
  hole: number;
  start: number;
  counters: Map<number, number>; // position -> counter label; hole has none
  history: number[];
  closed: boolean;
  isIdentity: boolean;
  displacedCount: number;
  cycleNotation: string;
  inHoleStabilizer: boolean | null;
}

export function countersFromPermutation(
  permutation: number[],
  start: number,
): Map<number, number> {
  const counters = new Map<number, number>();
  for (let label = 0; label < permutation.length; label++) {
    if (label !== start) counters.set(permutation[label], label);
  }
  return counters;
}

export function cycleNotation(permutation: number[]): string {
  const seen = new Set<number>();
  const parts: string[] = [];
  for (let i = 0; i < permutation.length; i++) {
    if (seen.has(i) || permutation[i] === i) continue;
    const cycle = [i];
    let j = permutation[i];
    while (j !== i) {
      seen.add(j);
      cycle.push(j);
      j = permutation[j];
    }
    parts.push(`(${cycle.join(" ")})`);
  }
  return parts.length ? parts.join("") : "()";
}

export function boardStateFrom(server: ServerState, n: number): BoardState {
  if (server.permutation.length !== n) {
    throw new Error(`permutation length ${server.permutation.length} != n=${n}`);
  }
  if (server.permutation[server.start] !== server.hole) {
    // the hole always sits at the image of the start point
    throw new Error("server state inconsistent: hole is not the image of start");
  }
  return {
    n,
    hole: server.hole,
    start: server.start,
    counters: countersFromPermutation(server.permutation, server.start),
    history: server.history.slice(),
    closed: server.closed,
    isIdentity: server.is_identity,
    displacedCount: server.displaced,
    cycleNotation: cycleNotation(server.permutation),
    inHoleStabilizer: server.in_hole_stabilizer,
  };
}

/** Board positions whose occupant changed (counter moved, appeared, or left). */
export function counterDiff(
  before: Map<number, number>,
  after: Map<number, number>,
): Set<number> {
  const changed = new Set<number>();
  for (const [pos, label] of before) {
    if (after.get(pos) !== label) changed.add(pos);
  }
  for (const [pos, label] of after) {
    if (before.get(pos) !== label) changed.add(pos);
  }
  return changed;
}

export function badgeText(state: BoardState): string {
  if (!state.closed) return "";
  return state.inHoleStabilizer ? "closed — in hole stabilizer" : "closed";
}
