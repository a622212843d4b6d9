import type { CostDoc } from "./types.js";
import type { CandidateView, ViewState } from "./state.js";
import { layeredLayout } from "./layout.js";
import { barFractions, escapeHtml, rawInt, savingClass } from "./format.js";
import { selectedView } from "./state.js";

const NODE_R = 17;

export function renderGraph(view: ViewState): string {
  const layout = layeredLayout(view.model);
  const selected = selectedView(view);
  const members = new Set(selected?.row.nodes ?? []);
  const color = selected?.color ?? "#4c78a8";

  const parts: string[] = [];
  for (const e of layout.edges) {
    const { from, to } = e;
    if (from.x === to.x && from.y === to.y) {
      // self-loop, drawn as a small arc above the node
      parts.push(
        `<path class="edge loop" d="M ${from.x - 8} ${from.y - NODE_R} ` +
          `C ${from.x - 20} ${from.y - 48}, ${from.x + 20} ${from.y - 48}, ` +
          `${from.x + 8} ${to.y - NODE_R}" />`,
      );
      continue;
    }
    const cls = e.back ? "edge back" : "edge";
    if (e.back) {
      const lift = 36;
      parts.push(
        `<path class="${cls}" d="M ${from.x} ${from.y} ` +
          `Q ${(from.x + to.x) / 2} ${Math.min(from.y, to.y) - lift}, ` +
          `${to.x} ${to.y}" />`,
      );
    } else {
      parts.push(
        `<line class="${cls}" x1="${from.x}" y1="${from.y}" x2="${to.x}" y2="${to.y}" />`,
      );
    }
  }
  for (const s of view.model.states) {
    const p = layout.positions.get(s.id);
    if (!p) continue;
    const inside = members.has(s.id);
    const ring = inside ? ` style="stroke:${color}"` : "";
    let badge = "";
    if (selected && s.id === selected.row.entry && inside) {
      badge = `<text class="badge" x="${p.x}" y="${p.y - NODE_R - 6}">in</text>`;
    } else if (selected && s.id === selected.row.exit && inside) {
      badge = `<text class="badge" x="${p.x}" y="${p.y - NODE_R - 6}">out</text>`;
    }
    parts.push(
      `<g class="state${inside ? " member" : ""}" data-state="${escapeHtml(s.id)}">` +
        `<circle cx="${p.x}" cy="${p.y}" r="${NODE_R}"${ring} />` +
        `<text class="state-label" x="${p.x}" y="${p.y + NODE_R + 14}">${escapeHtml(s.id)}</text>` +
        badge +
        `</g>`,
    );
  }
  const w = Math.max(layout.width, 320);
  const h = Math.max(layout.height, 200);
  return (
    `<svg viewBox="0 0 ${w} ${h}" width="${w}" height="${h}" ` +
    `xmlns="http://www.w3.org/2000/svg">${parts.join("")}</svg>`
  );
}

function patternLabel(v: CandidateView): string {
  const p = v.row.pattern;
  let label = p.kind;
  if (p.kind === "branching") label += ` x${p.branch_count}`;
  if (p.quorum !== null) label += ` q${p.quorum}`;
  if (p.strict_match) label += ` (${p.strict_match})`;
  return label;
}

function statusLabel(v: CandidateView): string {
  if (v.row.decision === "absorbed") {
    return v.absorbedBy
      ? `absorbed by ${escapeHtml(v.absorbedBy)}`
      : "absorbed";
  }
  return v.row.decision ?? "pending";
}

export function renderList(view: ViewState): string {
  if (view.views.length === 0) {
    return (
      `<p class="empty">No off-chainable regions were found in this model. ` +
      `Every candidate needs one entry state, one distinct exit state, and a ` +
      `connected interior.</p>`
    );
  }
  const rows = view.views.map((v) => {
    const classes = ["candidate"];
    if (v.row.id === view.selectedId) classes.push("selected");
    if (v.disabled) classes.push("decided");
    if (v.row.decision === "absorbed") classes.push("absorbed");
    if (v.row.id === view.cursor) classes.push("cursor");
    return (
      `<li class="${classes.join(" ")}" data-candidate="${escapeHtml(v.row.id)}">` +
      `<span class="swatch" style="background:${v.color}"></span>` +
      `<span class="cand-id">${escapeHtml(v.row.id)}</span>` +
      `<span class="cand-pattern">${escapeHtml(patternLabel(v))}</span>` +
      `<span class="cand-count">contains ${v.row.count}</span>` +
      `<span class="cand-saving ${savingClass(v.row.cost.saving)}">${rawInt(v.row.cost.saving)}</span>` +
      `<span class="cand-status">${statusLabel(v)}</span>` +
      `</li>`
    );
  });
  return `<ol class="candidates">${rows.join("")}</ol>`;
}

export interface PanelInputs {
  words: number | null;
  midpattern: Set<string>;
}

export function renderCostPanel(
  view: ViewState,
  cost: CostDoc | null,
  inputs: PanelInputs,
): string {
  const v = selectedView(view);
  if (!v) {
    return `<p class="hint">Select a candidate to see its cost comparison.</p>`;
  }
  const parts: string[] = [];
  parts.push(`<h3>${escapeHtml(v.row.id)}</h3>`);
  parts.push(
    `<p class="boundary">entry ${escapeHtml(v.row.entry)} &rarr; exit ${escapeHtml(v.row.exit)}` +
      (v.row.whole_graph ? ` <span class="whole">whole graph</span>` : "") +
      `</p>`,
  );

  const words = inputs.words ?? 1;
  parts.push(
    `<label class="words">data words <input type="range" id="words-slider" ` +
      `min="0" max="10" step="1" value="${words}" /> ` +
      `<output id="words-out">${words}</output></label>`,
  );

  const toggles = v.row.nodes
    .map((n) => {
      const checked = inputs.midpattern.has(n) ? " checked" : "";
      return (
        `<label class="mid-toggle"><input type="checkbox" class="midpattern-toggle" ` +
        `data-state="${escapeHtml(n)}"${checked} /> ${escapeHtml(n)}</label>`
      );
    })
    .join("");
  parts.push(`<fieldset class="midpattern"><legend>mid-pattern chain access</legend>${toggles}</fieldset>`);

  if (cost === null) {
    parts.push(`<p class="hint loading">fetching cost&hellip;</p>`);
    return parts.join("\n");
  }

  const frac = barFractions(cost.breakdown);
  const pct = (f: number) => `${Math.round(f * 1000) / 10}%`;
  parts.push(
    `<dl class="figures">` +
      `<dt>all on-chain</dt><dd class="num" id="fig-onchain">${rawInt(cost.on_chain_only)}</dd>` +
      `<dt>partitioned</dt><dd class="num" id="fig-offchain">${rawInt(cost.off_chain_total)}</dd>` +
      `<dt>saving</dt><dd class="num saving ${savingClass(cost.saving)}" id="fig-saving">${rawInt(cost.saving)}</dd>` +
      `</dl>`,
  );
  parts.push(
    `<div class="bars" role="img" aria-label="off-chain cost breakdown">` +
      `<span class="bar boundary" style="width:${pct(frac.boundary)}" title="boundary ${rawInt(cost.breakdown.boundary_on_chain)}"></span>` +
      `<span class="bar overhead" style="width:${pct(frac.overhead)}" title="overhead ${rawInt(cost.breakdown.interface_overhead)}"></span>` +
      `<span class="bar midpattern" style="width:${pct(frac.midpattern)}" title="mid-pattern ${rawInt(cost.breakdown.midpattern_access)}"></span>` +
      `</div>`,
  );
  parts.push(
    cost.recommend_off_chain
      ? `<p class="recommend yes">recommended off-chain</p>`
      : `<p class="recommend no">not worth moving</p>`,
  );

  const disabled = v.disabled ? " disabled" : "";
  parts.push(
    `<div class="verdicts">` +
      `<button class="accept" data-verdict="accept"${disabled}>accept</button>` +
      `<button class="reject" data-verdict="reject"${disabled}>reject</button>` +
      `</div>`,
  );
  if (v.row.decision !== null) {
    parts.push(`<p class="already">${statusLabel(v)}</p>`);
  }
  return parts.join("\n");
}

const CONFLICT_RE = /accepted region (\S+)/;

export interface ConflictNote {
  html: string;
  highlightId: string | null;
}

/** Render a service error verbatim; overlap conflicts also name the
    accepted region so the list can flash it. */
export function renderError(message: string, code: string): ConflictNote {
  const match = code === "overlap_conflict" ? CONFLICT_RE.exec(message) : null;
  return {
    html:
      `<div class="error-note"><span class="code">[${escapeHtml(code)}]</span> ` +
      `${escapeHtml(message)}</div>`,
    highlightId: match ? match[1] : null,
  };
}

export function renderTotals(view: ViewState): string {
  const t = view.totals;
  return (
    `<span>on-chain ${rawInt(t.full_on_chain)}</span>` +
    `<span>partitioned ${rawInt(t.with_offchain)}</span>` +
    `<span class="saving ${savingClass(t.saving)}">saves ${rawInt(t.saving)}</span>`
  );
}
