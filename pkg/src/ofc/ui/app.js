import { ApiClient, ApiError } from "./api.js";
import { Debouncer, LatestOnly, SingleFlight } from "./debounce.js";
import { renderCostPanel, renderError, renderGraph, renderList, renderTotals, } from "./render.js";
import { buildView, refresh, select, selectedView } from "./state.js";
const api = new ApiClient();
const costGate = new LatestOnly();
const decisionGate = new SingleFlight();
let view = null;
let cost = null;
let inputs = { words: null, midpattern: new Set() };
function el(id) {
    const node = document.getElementById(id);
    if (!node)
        throw new Error(`missing container #${id}`);
    return node;
}
function paint() {
    if (!view)
        return;
    el("totals").innerHTML = renderTotals(view);
    el("graph").innerHTML = renderGraph(view);
    el("list").innerHTML = renderList(view);
    el("panel").innerHTML = renderCostPanel(view, cost, inputs);
    el("banner").textContent = view.banner;
    el("banner").hidden = view.banner === null;
}
function showError(message, code) {
    const note = renderError(message, code);
    el("panel-error").innerHTML = note.html;
    if (note.highlightId) {
        const row = document.querySelector(`li[data-candidate="${CSS.escape(note.highlightId)}"]`);
        row?.classList.add("conflict");
    }
}
function clearError() {
    el("panel-error").innerHTML = "";
    document
        .querySelectorAll("li.conflict")
        .forEach((row) => row.classList.remove("conflict"));
}
async function loadCost() {
    if (!view || !view.selectedId)
        return;
    const id = view.selectedId;
    try {
        const result = await costGate.run(() => api.cost(id, {
            words: inputs.words,
            midpattern: [...inputs.midpattern].sort(),
        }));
        if (result === null)
            return; // superseded by a newer query
        cost = result.doc;
        paint();
    }
    catch (err) {
        if (err instanceof ApiError)
            showError(err.message, err.code);
        else
            showError(String(err), "connection");
    }
}
const costDebounce = new Debouncer(200, () => {
    void loadCost();
});
function pickCandidate(id) {
    if (!view)
        return;
    costGate.invalidate();
    costDebounce.cancel();
    view = select(view, id);
    cost = null;
    inputs = { words: inputs.words, midpattern: new Set() };
    paint();
    void loadCost();
}
async function submitDecision(verdict) {
    if (!view || !view.selectedId || decisionGate.inFlight)
        return;
    const id = view.selectedId;
    const target = selectedView(view);
    clearError();
    try {
        await decisionGate.run(async () => {
            try {
                await api.decide(id, verdict);
            }
            catch (err) {
                const wantsWhole = err instanceof ApiError &&
                    err.code === "whole_graph_confirmation" &&
                    target?.row.whole_graph;
                if (!wantsWhole)
                    throw err;
                if (!window.confirm(`${err.message}\n\nAccept anyway?`)) {
                    return;
                }
                await api.decide(id, verdict, { allowWholeGraph: true });
            }
            // one refresh: statuses, cursor, and totals arrive together
            const session = await api.session();
            view = refresh(view, session);
            paint();
        });
    }
    catch (err) {
        if (err instanceof ApiError)
            showError(err.message, err.code);
        else
            showError(String(err), "connection");
    }
}
function wire() {
    el("list").addEventListener("click", (event) => {
        const row = event.target.closest("li[data-candidate]");
        if (row)
            pickCandidate(row.getAttribute("data-candidate"));
    });
    el("panel").addEventListener("input", (event) => {
        const target = event.target;
        if (target.id === "words-slider") {
            inputs.words = Number(target.value);
            const out = document.getElementById("words-out");
            if (out)
                out.textContent = target.value;
            costDebounce.schedule();
        }
    });
    el("panel").addEventListener("change", (event) => {
        const target = event.target;
        if (target.classList.contains("midpattern-toggle")) {
            const state = target.getAttribute("data-state");
            if (target.checked)
                inputs.midpattern.add(state);
            else
                inputs.midpattern.delete(state);
            costDebounce.schedule();
        }
    });
    el("panel").addEventListener("click", (event) => {
        const button = event.target.closest("button[data-verdict]");
        if (button && !button.disabled) {
            void submitDecision(button.getAttribute("data-verdict"));
        }
    });
}
async function boot() {
    try {
        const [model, session] = await Promise.all([api.model(), api.session()]);
        view = buildView(model, session);
        paint();
        if (view.selectedId)
            void loadCost();
    }
    catch {
        el("banner").textContent =
            "Cannot reach the decision service. Start it with: ofc session <model> --serve";
        el("banner").hidden = false;
    }
}
wire();
void boot();
