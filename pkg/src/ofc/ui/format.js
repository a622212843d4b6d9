/**
 * Numbers from the service are displayed exactly as serialized: no
 * locale separators, no rounding, no sign prettying.  A displayed gas
 * figure must be byte-identical to the payload field it came from.
 */
export function rawInt(value) {
    if (!Number.isInteger(value)) {
        throw new Error(`expected an integer from the service, got ${value}`);
    }
    return String(value);
}
export function savingClass(saving) {
    return saving < 0 ? "neg" : "pos";
}
/** Relative widths for the off-chain breakdown bars, in [0, 1]. */
export function barFractions(breakdown) {
    const total = breakdown.boundary_on_chain +
        breakdown.interface_overhead +
        breakdown.midpattern_access;
    if (total <= 0)
        return { boundary: 0, overhead: 0, midpattern: 0 };
    return {
        boundary: breakdown.boundary_on_chain / total,
        overhead: breakdown.interface_overhead / total,
        midpattern: breakdown.midpattern_access / total,
    };
}
const ESCAPES = {
    "&": "&amp;",
    "<": "&lt;",
    ">": "&gt;",
    '"': "&quot;",
};
export function escapeHtml(text) {
    return text.replace(/[&<>"]/g, (ch) => ESCAPES[ch]);
}
