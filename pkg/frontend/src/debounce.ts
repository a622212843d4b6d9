/** Trailing-edge debounce; a new schedule restarts the wait. */
export class Debouncer<A extends unknown[]> {
  private timer: ReturnType<typeof setTimeout> | null = null;

  constructor(
    private readonly delayMs: number,
    private readonly run: (...args: A) => void,
  ) {}

  schedule(...args: A): void {
    this.cancel();
    this.timer = setTimeout(() => {
      this.timer = null;
      this.run(...args);
    }, this.delayMs);
  }

  cancel(): void {
    if (this.timer !== null) {
      clearTimeout(this.timer);
      this.timer = null;
    }
  }
}

/**
 * Runs async work where only the newest call may deliver.  Responses from
 * superseded calls resolve to null instead of clobbering fresher state,
 * which is what makes rapid what-if slider moves safe.
 */
export class LatestOnly {
  private seq = 0;

  async run<T>(work: () => Promise<T>): Promise<T | null> {
    const ticket = ++this.seq;
    const result = await work();
    return ticket === this.seq ? result : null;
  }

  invalidate(): void {
    this.seq++;
  }
}

/** At most one mutation in flight; extras are refused, not queued. */
export class SingleFlight {
  private busy = false;

  async run<T>(work: () => Promise<T>): Promise<T> {
    if (this.busy) {
      throw new Error("a decision is already in flight");
    }
    this.busy = true;
    try {
      return await work();
    } finally {
      this.busy = false;
    }
  }

  get inFlight(): boolean {
    return this.busy;
  }
}
