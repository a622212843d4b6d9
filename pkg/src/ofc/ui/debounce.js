/** Trailing-edge debounce; a new schedule restarts the wait. */
export class Debouncer {
    constructor(delayMs, run) {
        this.delayMs = delayMs;
        this.run = run;
        this.timer = null;
    }
    schedule(...args) {
        this.cancel();
        this.timer = setTimeout(() => {
            this.timer = null;
            this.run(...args);
        }, this.delayMs);
    }
    cancel() {
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
    constructor() {
        this.seq = 0;
    }
    async run(work) {
        const ticket = ++this.seq;
        const result = await work();
        return ticket === this.seq ? result : null;
    }
    invalidate() {
        this.seq++;
    }
}
/** At most one mutation in flight; extras are refused, not queued. */
export class SingleFlight {
    constructor() {
        this.busy = false;
    }
    async run(work) {
        if (this.busy) {
            throw new Error("a decision is already in flight");
        }
        this.busy = true;
        try {
            return await work();
        }
        finally {
            this.busy = false;
        }
    }
    get inFlight() {
        return this.busy;
    }
}
