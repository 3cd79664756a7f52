// Page wiring: one session per tab, requests serialized by a busy flag,
// the counter map reconciled against the server permutation after every
// response (a mismatch forces a clean re-fetch of the session).

import { ApiClient, ApiError } from "./api.js";
import { Board } from "./board.js";
import {
  badgeText,
  boardStateFrom,
  counterDiff,
  countersFromPermutation,
  type BoardState,
} from "./state.js";

const api = new ApiClient();

async function boot(): Promise<void> {
  const app = document.getElementById("app")!;
  const status = document.getElementById("status")!;
  const badge = document.getElementById("badge")!;
  const designLabel = document.getElementById("design-label")!;

  const design = await api.design();
  designLabel.textContent = `${design.name} — ${design.n} points, λ=${design.lambda ?? "?"}`;
  const sessionId = await api.createSession();
  let state = boardStateFrom(await api.state(sessionId), design.n);
  let busy = false;

  const board = new Board(app, design.name, design.n, (point) => {
    void act(() => api.move(sessionId, point));
  });

  function show(next: BoardState, animate: Iterable<number>): void {
    state = next;
    board.render(state, animate);
    status.textContent =
      `hole at ${state.hole} · ${state.history.length} moves · ` +
      `${state.displacedCount} displaced · ${state.cycleNotation}`;
    badge.textContent = badgeText(state);
    badge.classList.toggle("on", state.closed);
  }

  async function act(call: () => Promise<import("./api.js").ServerState>): Promise<void> {
    if (busy) return;
    busy = true;
    try {
      const server = await call();
      let next = boardStateFrom(server, design.n);
      const expected = countersFromPermutation(server.permutation, server.start);
      if (!sameCounters(next.counters, expected)) {
        // mirror out of sync: hard refresh from the server
        next = boardStateFrom(await api.state(sessionId), design.n);
      }
      show(next, counterDiff(state.counters, next.counters));
    } catch (error) {
      if (error instanceof ApiError && error.status === 409) {
        board.shakeHole(state);
      } else {
        reportError(error);
      }
    } finally {
      busy = false;
    }
  }

  document.getElementById("undo")!.addEventListener("click", () => {
    if (state.history.length) void act(() => api.undo(sessionId));
  });
  document.getElementById("reset")!.addEventListener("click", () => {
    void act(() => api.reset(sessionId));
  });
  document.getElementById("scramble")!.addEventListener("click", () => {
    void act(() => api.scramble(sessionId, 5));
  });

  show(state, []);
}

function sameCounters(a: Map<number, number>, b: Map<number, number>): boolean {
  if (a.size !== b.size) return false;
  for (const [k, v] of a) {
    if (b.get(k) !== v) return false;
  }
  return true;
}

function reportError(error: unknown): void {
  const banner = document.getElementById("error-banner")!;
  banner.textContent = error instanceof Error ? error.message : String(error);
  banner.classList.add("visible");
  setTimeout(() => banner.classList.remove("visible"), 4000);
}

boot().catch(reportError);
