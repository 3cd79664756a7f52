// Point placement in the unit square. Generic designs get a circle; the
// 13-point plane gets a fixed hand-tuned layout (center, inner triangle,
// outer ring) so the classic board always looks the same.

export interface Point {
  x: number;
  y: number;
}

export function circularLayout(n: number): Point[] {
  const points: Point[] = [];
  for (let i = 0; i < n; i++) {
    const angle = (2 * Math.PI * i) / n - Math.PI / 2;
    points.push({
      x: 0.5 + 0.42 * Math.cos(angle),
      y: 0.5 + 0.42 * Math.sin(angle),
    });
  }
  return points;
}

function ring(count: number, radius: number, phase: number): Point[] {
  const points: Point[] = [];
  for (let i = 0; i < count; i++) {
    const angle = (2 * Math.PI * i) / count + phase;
    points.push({
      x: 0.5 + radius * Math.cos(angle),
      y: 0.5 + radius * Math.sin(angle),
    });
  }
  return points;
}

export const P3_LAYOUT: Point[] = [
  { x: 0.5, y: 0.5 },
  ...ring(3, 0.18, -Math.PI / 2),
  ...ring(9, 0.42, -Math.PI / 2),
];

export function layoutFor(name: string, n: number): Point[] {
  if (n === 13 && name === "p3") return P3_LAYOUT;
  return circularLayout(n);
}
