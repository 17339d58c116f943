import { describe, expect, it } from "vitest";

import { renderSweepChart, Series } from "../src/chart.js";

const ROWS = [
  { i: 0, j: 1, stats: { distinct: 2 } },
  { i: 1, j: 2, stats: { distinct: 2 } },
  { i: 2, j: 3, stats: { distinct: 2 } },
  { i: 3, j: 4, stats: { distinct: 2 } },
];

describe("renderSweepChart", () => {
  it("draws one point per window", () => {
    const series: Series[] = [{ label: "distinct w=2", width: 2, key: "distinct", rows: ROWS }];
    const { svg, points } = renderSweepChart(document, series, () => {});
    expect(points).toHaveLength(4);
    expect(svg.querySelectorAll("circle")).toHaveLength(4);
    expect(svg.querySelectorAll("polyline")).toHaveLength(1);
  });

  it("overlays multiple series", () => {
    const series: Series[] = [
      { label: "distinct w=2", width: 2, key: "distinct", rows: ROWS },
      { label: "distinct w=3", width: 3, key: "distinct", rows: ROWS.slice(0, 3) },
    ];
    const { svg } = renderSweepChart(document, series, () => {});
    expect(svg.querySelectorAll("polyline")).toHaveLength(2);
  });

  it("clicking a point selects its window", () => {
    const picked: Array<[number, number]> = [];
    const series: Series[] = [{ label: "s", width: 2, key: "distinct", rows: ROWS }];
    const { svg } = renderSweepChart(document, series, (i, j) => picked.push([i, j]));
    const dot = svg.querySelector('circle[data-window="2:3"]') as SVGCircleElement;
    dot.dispatchEvent(new MouseEvent("click"));
    expect(picked).toEqual([[2, 3]]);
  });

  it("handles empty series", () => {
    const { points } = renderSweepChart(document, [], () => {});
    expect(points).toHaveLength(0);
  });
});
