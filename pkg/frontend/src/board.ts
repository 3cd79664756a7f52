// SVG rendering of the board: one node per point showing the counter sitting
// there, the hole drawn hollow. Swapped counters pulse after each move; an
// illegal click shakes the hole.

import { layoutFor, type Point } from "./layout.js";
import type { BoardState } from "./state.js";

const SIZE = 640;
const PULSE_MS = 600;

export class Board {
  private positions: Point[];
  private nodes: SVGGElement[] = [];
  private svg: SVGSVGElement;

  constructor(
    container: HTMLElement,
    designName: string,
    private n: number,
    private onClick: (point: number) => void,
  ) {
    this.positions = layoutFor(designName, n);
    this.svg = document.createElementNS("http://www.w3.org/2000/svg", "svg");
    this.svg.setAttribute("viewBox", `0 0 ${SIZE} ${SIZE}`);
    this.svg.classList.add("board");
    container.appendChild(this.svg);
    const radius = this.nodeRadius();
    for (let i = 0; i < n; i++) {
      const g = document.createElementNS("http://www.w3.org/2000/svg", "g");
      const { x, y } = this.positions[i];
      g.setAttribute("transform", `translate(${x * SIZE}, ${y * SIZE})`);
      g.classList.add("node");
      const circle = document.createElementNS("http://www.w3.org/2000/svg", "circle");
      circle.setAttribute("r", String(radius));
      const label = document.createElementNS("http://www.w3.org/2000/svg", "text");
      label.setAttribute("dy", "0.35em");
      g.appendChild(circle);
      g.appendChild(label);
      g.addEventListener("click", () => this.onClick(i));
      this.svg.appendChild(g);
      this.nodes.push(g);
    }
  }

  private nodeRadius(): number {
    return this.n <= 16 ? 26 : Math.max(10, 300 / this.n + 8);
  }

  render(state: BoardState, animate: Iterable<number>): void {
    for (let i = 0; i < this.n; i++) {
      const g = this.nodes[i];
      const text = g.querySelector("text")!;
      const counter = state.counters.get(i);
      const isHole = i === state.hole;
      g.classList.toggle("hole", isHole);
      text.textContent = isHole ? "" : String(counter);
      g.classList.toggle("displaced", !isHole && counter !== i);
    }
    for (const i of animate) {
      const g = this.nodes[i];
      g.classList.remove("pulse");
      void (g as unknown as HTMLElement).getBoundingClientRect?.();
      g.classList.add("pulse");
      setTimeout(() => g.classList.remove("pulse"), PULSE_MS);
    }
  }

  shakeHole(state: BoardState): void {
    const g = this.nodes[state.hole];
    g.classList.add("shake");
    setTimeout(() => g.classList.remove("shake"), 400);
  }
}
