/** Window explorer: sliders pick a window, the panel shows live statistics,
 * sweep charts compare a statistic across every window of chosen widths. */

import { ApiClient, Meta, StatValues, SweepRow } from "./api.js";
import { renderSweepChart, Series } from "./chart.js";
import { DebouncedFetcher } from "./debounce.js";
import { ViewState } from "./state.js";

export interface App {
  state: ViewState;
  meta: Meta;
  fetcher: DebouncedFetcher<StatValues>;
  refreshStats(): void;
  addSweep(width: number): Promise<void>;
  sweepWidths(): number[];
}

const DEFAULT_KEYS = ["components", "distinct"];
export const DEBOUNCE_MS = 120;

function el<K extends keyof HTMLElementTagNameMap>(
  doc: Document,
  tag: K,
  attrs: Record<string, string> = {},
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = doc.createElement(tag);
  for (const [name, value] of Object.entries(attrs)) {
    node.setAttribute(name, value);
  }
  if (text !== undefined) {
    node.textContent = text;
  }
  return node;
}

export async function initApp(doc: Document, root: HTMLElement, baseUrl: string): Promise<App> {
  const api = new ApiClient(baseUrl);
  const meta = await api.fetchMeta();
  const initialKeys = DEFAULT_KEYS.filter((k) => meta.keys.includes(k));
  const state = new ViewState(meta.m, initialKeys.length ? initialKeys : meta.keys.slice(0, 1));
  const sweepWidths = new Set<number>();

  root.innerHTML = "";
  const banner = el(doc, "div", { "data-role": "error-banner", hidden: "" });
  banner.style.cssText = "background:#fee2e2;color:#991b1b;padding:6px 10px;display:none";
  const header = el(
    doc,
    "div",
    {},
    `${meta.m} events over ${meta.n} vertices (${meta.directed ? "directed" : "undirected"})`,
  );
  const windowLabel = el(doc, "div", { "data-role": "window-label" });

  // window controls: endpoint sliders plus width+position mode
  const controls = el(doc, "div", { "data-role": "controls" });
  const modeSelect = el(doc, "select", { "data-role": "mode" });
  modeSelect.append(
    el(doc, "option", { value: "endpoints" }, "endpoints"),
    el(doc, "option", { value: "width" }, "width + position"),
  );
  const startSlider = el(doc, "input", {
    type: "range", min: "0", max: String(meta.m - 1), "data-role": "start",
  });
  const endSlider = el(doc, "input", {
    type: "range", min: "0", max: String(meta.m - 1), "data-role": "end",
  });
  const widthSlider = el(doc, "input", {
    type: "range", min: "1", max: String(meta.m), "data-role": "width",
  });
  const positionSlider = el(doc, "input", {
    type: "range", min: "0", max: "0", "data-role": "position",
  });
  controls.append(modeSelect, startSlider, endSlider, widthSlider, positionSlider);

  const keyBox = el(doc, "div", { "data-role": "keys" });
  for (const key of meta.keys) {
    const label = el(doc, "label", {});
    const box = el(doc, "input", { type: "checkbox", value: key, "data-key": key });
    (box as HTMLInputElement).checked = state.keys.includes(key);
    box.addEventListener("change", () => {
      state.toggleKey(key, (box as HTMLInputElement).checked);
      refreshStats();
    });
    label.append(box, doc.createTextNode(key));
    keyBox.appendChild(label);
  }

  const panel = el(doc, "dl", { "data-role": "stats-panel" });
  const chartBox = el(doc, "div", { "data-role": "chart-box" });
  root.append(banner, header, windowLabel, controls, keyBox, panel, chartBox);

  const fetcher = new DebouncedFetcher<StatValues>(
    DEBOUNCE_MS,
    (stats) => state.applyStats(stats),
    (err) => state.applyError(err instanceof Error ? err.message : String(err)),
  );

  function currentTask() {
    const { i, j } = state.window;
    const keys = state.keys;
    return (signal: AbortSignal) => api.fetchStats(i, j, keys, signal);
  }

  function refreshStats(): void {
    if (state.keys.length === 0) {
      state.applyStats({});
      return;
    }
    fetcher.schedule(currentTask());
  }

  function renderPanel(): void {
    const { i, j } = state.window;
    windowLabel.textContent = `window [${i}, ${j}] (width ${state.width})`;
    banner.style.display = state.error === null ? "none" : "block";
    if (state.error !== null) {
      banner.removeAttribute("hidden");
      banner.textContent = `service error: ${state.error}`;
    } else {
      banner.setAttribute("hidden", "");
      banner.textContent = "";
    }
    panel.innerHTML = "";
    panel.style.color = state.error === null ? "#111827" : "#9ca3af"; // grey stale values
    const stats = state.stats ?? {};
    for (const key of state.keys) {
      panel.appendChild(el(doc, "dt", {}, key));
      const value = stats[key];
      panel.appendChild(
        el(doc, "dd", { "data-stat": key }, value === undefined ? "…" : String(value)),
      );
    }
  }

  function syncSliders(): void {
    const { i, j } = state.window;
    (startSlider as HTMLInputElement).value = String(i);
    (endSlider as HTMLInputElement).value = String(j);
    (widthSlider as HTMLInputElement).value = String(state.width);
    (positionSlider as HTMLInputElement).max = String(meta.m - state.width);
    (positionSlider as HTMLInputElement).value = String(i);
    const widthMode = state.mode === "width";
    startSlider.style.display = widthMode ? "none" : "";
    endSlider.style.display = widthMode ? "none" : "";
    widthSlider.style.display = widthMode ? "" : "none";
    positionSlider.style.display = widthMode ? "" : "none";
  }

  function renderChart(): void {
    chartBox.innerHTML = "";
    const seriesList: Series[] = [];
    for (const width of [...sweepWidths].sort((a, b) => a - b)) {
      const rows = state.cachedSweep(width, state.keys);
      if (!rows) {
        continue;
      }
      for (const key of state.keys) {
        seriesList.push({ label: `${key} w=${width}`, width, key, rows });
      }
    }
    if (seriesList.length === 0) {
      return;
    }
    const { svg } = renderSweepChart(doc, seriesList, (i, j) => {
      state.setWindow(i, j);
      refreshStats();
    });
    chartBox.appendChild(svg);
  }

  modeSelect.addEventListener("change", () => {
    state.setMode((modeSelect as HTMLSelectElement).value === "width" ? "width" : "endpoints");
  });
  startSlider.addEventListener("input", () => {
    state.setStart(Number((startSlider as HTMLInputElement).value));
    refreshStats();
  });
  endSlider.addEventListener("input", () => {
    state.setEnd(Number((endSlider as HTMLInputElement).value));
    refreshStats();
  });
  widthSlider.addEventListener("input", () => {
    state.setWidthAndPosition(
      Number((widthSlider as HTMLInputElement).value),
      state.window.i,
    );
    refreshStats();
  });
  positionSlider.addEventListener("input", () => {
    state.setWidthAndPosition(state.width, Number((positionSlider as HTMLInputElement).value));
    refreshStats();
  });

  state.subscribe(() => {
    syncSliders();
    renderPanel();
    renderChart();
  });

  async function addSweep(width: number): Promise<void> {
    if (width < 1 || width > meta.m) {
      throw new Error(`sweep width must be in [1, ${meta.m}]`);
    }
    sweepWidths.add(width);
    if (!state.cachedSweep(width, state.keys)) {
      const rows: SweepRow[] = await api.fetchSweep(width, 1, state.keys);
      state.storeSweep(width, state.keys, rows);
    } else {
      renderChart();
    }
  }

  const app: App = {
    state,
    meta,
    fetcher,
    refreshStats,
    addSweep,
    sweepWidths: () => [...sweepWidths].sort((a, b) => a - b),
  };

  syncSliders();
  renderPanel();
  refreshStats();
  return app;
}
