import type { CandidateRow, ModelDoc, SessionDoc } from "./types.js";

/** One candidate as the list renders it. */
export interface CandidateView {
  row: CandidateRow;
  rank: number;
  color: string;
  /** True when no further decision can be taken on it. */
  disabled: boolean;
  /** Id of the accepted candidate that swallowed this one, if any. */
  absorbedBy: string | null;
}

export interface ViewState {
  model: ModelDoc;
  views: CandidateView[];
  cursor: string | null;
  hierarchicalNodes: string[];
  totals: SessionDoc["totals"];
  selectedId: string | null;
  banner: string | null;
}

const PALETTE = [
  "#4c78a8",
  "#f58518",
  "#54a24b",
  "#b279a2",
  "#e45756",
  "#72b7b2",
  "#eeca3b",
  "#9d755d",
];

export function colorFor(rank: number): string {
  return PALETTE[rank % PALETTE.length];
}

function isSubset(inner: string[], outer: string[]): boolean {
  if (inner.length >= outer.length) return false;
  const big = new Set(outer);
  return inner.every((n) => big.has(n));
}

/**
 * An absorbed candidate names the accepted candidate whose extent covers
 * it.  Pure set containment over node ids; nothing here touches gas.
 */
export function absorbingParent(
  row: CandidateRow,
  all: CandidateRow[],
): string | null {
  if (row.decision !== "absorbed") return null;
  for (const other of all) {
    if (other.decision === "accepted" && isSubset(row.nodes, other.nodes)) {
      return other.id;
    }
  }
  return null;
}

export function buildViews(candidates: CandidateRow[]): CandidateView[] {
  return candidates.map((row, rank) => ({
    row,
    rank,
    color: colorFor(rank),
    disabled: row.decision !== null,
    absorbedBy: absorbingParent(row, candidates),
  }));
}

export function buildView(model: ModelDoc, session: SessionDoc): ViewState {
  return {
    model,
    views: buildViews(session.candidates),
    cursor: session.cursor,
    hierarchicalNodes: session.hierarchical_nodes,
    totals: session.totals,
    selectedId: session.cursor,
    banner: null,
  };
}

/**
 * Fold a re-fetched session document into the view.  This is the single
 * refresh after a decision: every row's status, the cursor, and the
 * totals all change together or not at all.
 */
export function refresh(view: ViewState, session: SessionDoc): ViewState {
  const views = buildViews(session.candidates);
  const stillThere = views.some((v) => v.row.id === view.selectedId);
  return {
    ...view,
    views,
    cursor: session.cursor,
    hierarchicalNodes: session.hierarchical_nodes,
    totals: session.totals,
    selectedId: stillThere ? view.selectedId : session.cursor,
    banner: null,
  };
}

export function select(view: ViewState, id: string | null): ViewState {
  return { ...view, selectedId: id };
}

export function withBanner(view: ViewState, banner: string | null): ViewState {
  return { ...view, banner };
}

export function selectedView(view: ViewState): CandidateView | null {
  return view.views.find((v) => v.row.id === view.selectedId) ?? null;
}
