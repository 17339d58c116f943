/** View state: the current window, selected keys, and a sweep cache.
 *
 * The window invariant 0 <= i <= j < m holds after every mutation, in both
 * endpoint mode and width+position mode.  Displayed numbers always come
 * from service responses cached here, never from client-side recomputation.
 */

import type { StatValues, SweepRow } from "./api.js";

export type WindowMode = "endpoints" | "width";

export interface ViewWindow {
  i: number;
  j: number;
}

export type Listener = () => void;

export class ViewState {
  readonly m: number;
  private window_: ViewWindow;
  private mode_: WindowMode = "endpoints";
  private keys_: string[] = [];
  private stats_: StatValues | null = null;
  private error_: string | null = null;
  private sweepCache = new Map<string, SweepRow[]>();
  private listeners: Listener[] = [];

  constructor(m: number, initialKeys: string[] = []) {
    if (m < 1) {
      throw new Error(`need at least one event, got m=${m}`);
    }
    this.m = m;
    this.window_ = { i: 0, j: m - 1 };
    this.keys_ = [...initialKeys];
  }

  subscribe(listener: Listener): void {
    this.listeners.push(listener);
  }

  private emit(): void {
    for (const listener of this.listeners) {
      listener();
    }
  }

  get window(): ViewWindow {
    return { ...this.window_ };
  }

  get mode(): WindowMode {
    return this.mode_;
  }

  get keys(): string[] {
    return [...this.keys_];
  }

  get stats(): StatValues | null {
    return this.stats_;
  }

  get error(): string | null {
    return this.error_;
  }

  get width(): number {
    return this.window_.j - this.window_.i + 1;
  }

  private clamp(value: number, lo: number, hi: number): number {
    return Math.min(Math.max(value, lo), hi);
  }

  setMode(mode: WindowMode): void {
    this.mode_ = mode;
    this.emit();
  }

  /** Endpoint mode: moving one slider never pushes the other out of range. */
  setStart(i: number): void {
    const start = this.clamp(Math.round(i), 0, this.m - 1);
    this.window_ = { i: start, j: Math.max(start, this.window_.j) };
    this.emit();
  }

  setEnd(j: number): void {
    const end = this.clamp(Math.round(j), 0, this.m - 1);
    this.window_ = { i: Math.min(this.window_.i, end), j: end };
    this.emit();
  }

  setWindow(i: number, j: number): void {
    const start = this.clamp(Math.round(i), 0, this.m - 1);
    const end = this.clamp(Math.round(j), start, this.m - 1);
    this.window_ = { i: start, j: end };
    this.emit();
  }

  /** Width mode: a fixed-size window sliding across the sequence. */
  setWidthAndPosition(width: number, position: number): void {
    const w = this.clamp(Math.round(width), 1, this.m);
    const maxStart = this.m - w;
    const start = this.clamp(Math.round(position), 0, maxStart);
    this.window_ = { i: start, j: start + w - 1 };
    this.emit();
  }

  setKeys(keys: string[]): void {
    this.keys_ = [...keys];
    this.emit();
  }

  toggleKey(key: string, on: boolean): void {
    const have = this.keys_.includes(key);
    if (on && !have) {
      this.keys_.push(key);
    } else if (!on && have) {
      this.keys_ = this.keys_.filter((k) => k !== key);
    }
    this.emit();
  }

  /** Stats shown in the panel; stale values grey out while error is set. */
  applyStats(stats: StatValues): void {
    this.stats_ = stats;
    this.error_ = null;
    this.emit();
  }

  applyError(message: string): void {
    this.error_ = message;
    this.emit();
  }

  sweepCacheKey(width: number, keys: string[]): string {
    return `${width}|${[...keys].sort().join(",")}`;
  }

  cachedSweep(width: number, keys: string[]): SweepRow[] | undefined {
    return this.sweepCache.get(this.sweepCacheKey(width, keys));
  }

  storeSweep(width: number, keys: string[], rows: SweepRow[]): void {
    this.sweepCache.set(this.sweepCacheKey(width, keys), rows);
    this.emit();
  }
}
