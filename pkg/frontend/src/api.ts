/** Typed client for the query service (GET /meta, /stats, /sweep, /time_window). */

export interface Meta {
  n: number;
  m: number;
  directed: boolean;
  keys: string[];
  influential: string[];
  time_range: [number, number] | null;
}

export type StatValues = Record<string, number>;

export interface SweepRow {
  i: number;
  j: number;
  stats: StatValues;
}

export class ApiError extends Error {
  readonly status: number;

  constructor(status: number, message: string) {
    super(message);
    this.status = status;
  }
}

async function getJson<T>(url: string, signal?: AbortSignal): Promise<T> {
  const resp = await fetch(url, { signal });
  const body = await resp.json().catch(() => ({}));
  if (!resp.ok) {
    const detail = (body as { error?: string }).error ?? resp.statusText;
    throw new ApiError(resp.status, detail);
  }
  return body as T;
}

export class ApiClient {
  constructor(private readonly base: string) {}

  fetchMeta(signal?: AbortSignal): Promise<Meta> {
    return getJson<Meta>(`${this.base}/meta`, signal);
  }

  fetchStats(i: number, j: number, keys: string[], signal?: AbortSignal): Promise<StatValues> {
    const qs = `i=${i}&j=${j}&keys=${encodeURIComponent(keys.join(","))}`;
    return getJson<StatValues>(`${this.base}/stats?${qs}`, signal);
  }

  fetchSweep(width: number, step: number, keys: string[], signal?: AbortSignal): Promise<SweepRow[]> {
    const qs = `width=${width}&step=${step}&keys=${encodeURIComponent(keys.join(","))}`;
    return getJson<SweepRow[]>(`${this.base}/sweep?${qs}`, signal);
  }

  fetchTimeWindow(t0: number, t1: number, signal?: AbortSignal): Promise<{ i: number | null; j: number | null; empty: boolean }> {
    return getJson(`${this.base}/time_window?t0=${t0}&t1=${t1}`, signal);
  }
}
