/** Debounced single-flight fetching: at most one request in the air.
 *
 * Slider movement schedules a fetch; scheduling again within the delay
 * resets the timer, and firing aborts any request still in flight, so the
 * service never sees two concurrent requests from one control.
 */

export type Task<T> = (signal: AbortSignal) => Promise<T>;

export class DebouncedFetcher<T> {
  private timer: ReturnType<typeof setTimeout> | null = null;
  private controller: AbortController | null = null;
  private inFlight_ = 0;

  constructor(
    private readonly delayMs: number,
    private readonly onResult: (value: T) => void,
    private readonly onError: (err: unknown) => void,
  ) {}

  get inFlight(): number {
    return this.inFlight_;
  }

  schedule(task: Task<T>): void {
    if (this.timer !== null) {
      clearTimeout(this.timer);
    }
    this.timer = setTimeout(() => {
      this.timer = null;
      this.fire(task);
    }, this.delayMs);
  }

  /** Run immediately (still cancelling any previous request). */
  fire(task: Task<T>): void {
    if (this.controller !== null) {
      this.controller.abort();
      this.inFlight_ = 0;
    }
    const controller = new AbortController();
    this.controller = controller;
    this.inFlight_ += 1;
    task(controller.signal)
      .then((value) => {
        if (!controller.signal.aborted) {
          this.onResult(value);
        }
      })
      .catch((err) => {
        if (!controller.signal.aborted) {
          this.onError(err);
        }
      })
      .finally(() => {
        if (this.controller === controller) {
          this.controller = null;
          this.inFlight_ = 0;
        }
      });
  }

  cancel(): void {
    if (this.timer !== null) {
      clearTimeout(this.timer);
      this.timer = null;
    }
    if (this.controller !== null) {
      this.controller.abort();
      this.controller = null;
      this.inFlight_ = 0;
    }
  }
}
