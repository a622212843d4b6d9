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
export function colorFor(rank) {
    return PALETTE[rank % PALETTE.length];
}
function isSubset(inner, outer) {
    if (inner.length >= outer.length)
        return false;
    const big = new Set(outer);
    return inner.every((n) => big.has(n));
}
/**
 * An absorbed candidate names the accepted candidate whose extent covers
 * it.  Pure set containment over node ids; nothing here touches gas.
 */
export function absorbingParent(row, all) {
    if (row.decision !== "absorbed")
        return null;
    for (const other of all) {
        if (other.decision === "accepted" && isSubset(row.nodes, other.nodes)) {
            return other.id;
        }
    }
    return null;
}
export function buildViews(candidates) {
    return candidates.map((row, rank) => ({
        row,
        rank,
        color: colorFor(rank),
        disabled: row.decision !== null,
        absorbedBy: absorbingParent(row, candidates),
    }));
}
export function buildView(model, session) {
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
export function refresh(view, session) {
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
export function select(view, id) {
    return { ...view, selectedId: id };
}
export function withBanner(view, banner) {
    return { ...view, banner };
}
export function selectedView(view) {
    return view.views.find((v) => v.row.id === view.selectedId) ?? null;
}
