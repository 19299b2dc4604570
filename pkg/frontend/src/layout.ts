// Circular board layout: vertex i of N sits on a circle, starting at
// twelve o'clock and walking clockwise.

export interface Point {
    x: number;
    y: number;
}

export function circularLayout(
    n: number,
    cx: number,
    cy: number,
    radius: number,
): Point[] {
    const points: Point[] = [];
    for (let i = 0; i < n; i++) {
        const angle = (2 * Math.PI * i) / n - Math.PI / 2;
        points.push({
            x: cx + radius * Math.cos(angle),
            y: cy + radius * Math.sin(angle),
        });
    }
    return points;
}

export function edgeKey(u: number, v: number): string {
    return u <= v ? `${u}-${v}` : `${v}-${u}`;
}
