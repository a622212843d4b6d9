/** A service error, preserved verbatim for display. */
export class ApiError extends Error {
    constructor(message, code, status) {
        super(message);
        this.code = code;
        this.status = status;
    }
}
export class ApiClient {
    constructor(base = "", fetchFn = fetch) {
        this.base = base.replace(/\/$/, "");
        this.fetchFn = fetchFn;
    }
    async request(path, init) {
        const response = await this.fetchFn(this.base + path, init);
        const text = await response.text();
        if (!response.ok) {
            let message = text;
            let code = "error";
            try {
                const body = JSON.parse(text);
                if (typeof body.error === "string")
                    message = body.error;
                if (typeof body.code === "string")
                    code = body.code;
            }
            catch {
                // not a service-shaped error; keep the raw text
            }
            throw new ApiError(message, code, response.status);
        }
        return text;
    }
    async model() {
        return JSON.parse(await this.request("/api/model"));
    }
    async session() {
        return JSON.parse(await this.request("/api/session"));
    }
    async cost(id, opts = {}) {
        const query = new URLSearchParams();
        if (opts.words !== undefined && opts.words !== null) {
            query.set("words", String(opts.words));
        }
        if (opts.midpattern !== undefined && opts.midpattern.length > 0) {
            query.set("midpattern", opts.midpattern.join(","));
        }
        const suffix = query.toString() ? `?${query}` : "";
        const raw = await this.request(`/api/candidates/${encodeURIComponent(id)}/cost${suffix}`);
        return { doc: JSON.parse(raw), raw };
    }
    async decide(id, verdict, opts = {}) {
        const body = { id, verdict };
        if (opts.allowWholeGraph)
            body.allow_whole_graph = true;
        if (opts.note)
            body.note = opts.note;
        const raw = await this.request("/api/decisions", {
            method: "POST",
            headers: { "content-type": "application/json" },
            body: JSON.stringify(body),
        });
        return JSON.parse(raw);
    }
}
