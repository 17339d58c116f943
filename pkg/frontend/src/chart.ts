/** Hand-rolled SVG line chart for sweep series; no chart library needed.
 *
 * One polyline per (key, width) series; clicking near a point selects that
 * window.  Returns the svg element plus the computed point geometry so
 * tests can assert the mapping without rendering.
 */

import type { SweepRow } from "./api.js";

export interface Series {
  label: string;
  width: number;
  key: string;
  rows: SweepRow[];
}

export interface ChartPoint {
  x: number;
  y: number;
  i: number;
  j: number;
  value: number;
  series: string;
}

export interface ChartGeometry {
  svg: SVGSVGElement;
  points: ChartPoint[];
}

const WIDTH = 640;
const HEIGHT = 220;
const PAD = 34;
const COLORS = ["#2563eb", "#dc2626", "#059669", "#d97706", "#7c3aed", "#0891b2"];

export function renderSweepChart(
  doc: Document,
  seriesList: Series[],
  onSelect: (i: number, j: number) => void,
): ChartGeometry {
  const svg = doc.createElementNS("http://www.w3.org/2000/svg", "svg");
  svg.setAttribute("viewBox", `0 0 ${WIDTH} ${HEIGHT}`);
  svg.setAttribute("width", String(WIDTH));
  svg.setAttribute("height", String(HEIGHT));
  svg.setAttribute("data-role", "sweep-chart");

  const values = seriesList.flatMap((s) => s.rows.map((row) => row.stats[s.key] ?? 0));
  const positions = seriesList.flatMap((s) => s.rows.map((row) => row.i));
  if (values.length === 0) {
    return { svg, points: [] };
  }
  const vMax = Math.max(...values, 1);
  const vMin = Math.min(...values, 0);
  const pMax = Math.max(...positions, 1);

  const toX = (pos: number) => PAD + (pos / Math.max(pMax, 1)) * (WIDTH - 2 * PAD);
  const toY = (value: number) =>
    HEIGHT - PAD - ((value - vMin) / Math.max(vMax - vMin, 1)) * (HEIGHT - 2 * PAD);

  const axis = doc.createElementNS("http://www.w3.org/2000/svg", "path");
  axis.setAttribute(
    "d",
    `M ${PAD} ${PAD} L ${PAD} ${HEIGHT - PAD} L ${WIDTH - PAD} ${HEIGHT - PAD}`,
  );
  axis.setAttribute("stroke", "#9ca3af");
  axis.setAttribute("fill", "none");
  svg.appendChild(axis);

  const points: ChartPoint[] = [];
  seriesList.forEach((series, idx) => {
    const color = COLORS[idx % COLORS.length];
    const coords = series.rows.map((row) => ({
      x: toX(row.i),
      y: toY(row.stats[series.key] ?? 0),
      i: row.i,
      j: row.j,
      value: row.stats[series.key] ?? 0,
      series: series.label,
    }));
    const line = doc.createElementNS("http://www.w3.org/2000/svg", "polyline");
    line.setAttribute("points", coords.map((c) => `${c.x},${c.y}`).join(" "));
    line.setAttribute("fill", "none");
    line.setAttribute("stroke", color);
    line.setAttribute("stroke-width", "1.5");
    line.setAttribute("data-series", series.label);
    svg.appendChild(line);

    for (const c of coords) {
      const dot = doc.createElementNS("http://www.w3.org/2000/svg", "circle");
      dot.setAttribute("cx", String(c.x));
      dot.setAttribute("cy", String(c.y));
      dot.setAttribute("r", "3");
      dot.setAttribute("fill", color);
      dot.setAttribute("data-window", `${c.i}:${c.j}`);
      dot.addEventListener("click", () => onSelect(c.i, c.j));
      svg.appendChild(dot);
      points.push(c);
    }
  });
  return { svg, points };
}
