const COL = 150;
const ROW = 70;
const PAD = 60;
/**
 * Layered layout: rank = shortest hop count from the initial state, nodes
 * within a rank ordered by id.  Everything is derived from sorted inputs,
 * so the same model always yields the same picture.
 */
export function layeredLayout(model) {
    const succ = new Map();
    for (const s of model.states)
        succ.set(s.id, []);
    const transitions = [...model.transitions].sort((a, b) => a.id < b.id ? -1 : a.id > b.id ? 1 : 0);
    for (const t of transitions)
        succ.get(t.from)?.push(t.to);
    const ranks = new Map();
    ranks.set(model.initial_state, 0);
    let frontier = [model.initial_state];
    while (frontier.length > 0) {
        const next = [];
        for (const id of frontier) {
            for (const target of succ.get(id) ?? []) {
                if (!ranks.has(target)) {
                    ranks.set(target, (ranks.get(id) ?? 0) + 1);
                    next.push(target);
                }
            }
        }
        frontier = next;
    }
    // States unreachable from the initial state still get drawn, one rank
    // past everything reachable.
    const spill = Math.max(0, ...ranks.values()) + 1;
    for (const s of [...model.states].sort((a, b) => (a.id < b.id ? -1 : 1))) {
        if (!ranks.has(s.id))
            ranks.set(s.id, spill);
    }
    const byRank = new Map();
    for (const [id, rank] of ranks) {
        const bucket = byRank.get(rank) ?? [];
        bucket.push(id);
        byRank.set(rank, bucket);
    }
    const positions = new Map();
    let tallest = 1;
    for (const [rank, ids] of byRank) {
        ids.sort();
        tallest = Math.max(tallest, ids.length);
        ids.forEach((id, i) => {
            positions.set(id, { x: PAD + rank * COL, y: PAD + i * ROW });
        });
    }
    const edges = transitions.map((t) => ({
        id: t.id,
        from: positions.get(t.from),
        to: positions.get(t.to),
        back: (ranks.get(t.to) ?? 0) <= (ranks.get(t.from) ?? 0),
    }));
    const maxRank = Math.max(0, ...ranks.values());
    return {
        positions,
        ranks,
        edges,
        width: PAD * 2 + maxRank * COL,
        height: PAD * 2 + (tallest - 1) * ROW,
    };
}
