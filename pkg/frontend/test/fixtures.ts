import type {
  CandidateRow,
  CostDoc,
  ModelDoc,
  SessionDoc,
} from "../src/types.js";

export function chainModel(n: number): ModelDoc {
  const states = [];
  const transitions = [];
  for (let i = 0; i < n; i++) {
    states.push({
      id: `s${i}`,
      label: `s${i}`,
      reads_words: 1,
      writes_words: 1,
      actors: [],
    });
    if (i > 0) {
      transitions.push({
        id: `t${i}`,
        from: `s${i - 1}`,
        to: `s${i}`,
        method_name: `step${i}`,
        actor: "",
      });
    }
  }
  return { states, initial_state: "s0", transitions };
}

export function cost(saving: number): CostDoc {
  return {
    on_chain_only: 80800,
    off_chain_total: 80800 - saving,
    saving,
    recommend_off_chain: saving > 0,
    breakdown: {
      boundary_on_chain: 40400,
      interface_overhead: 45,
      midpattern_access: 0,
      boundary_words: 1,
    },
  };
}

export function row(
  id: string,
  nodes: string[],
  overrides: Partial<CandidateRow> = {},
): CandidateRow {
  return {
    id,
    nodes,
    entry: nodes[0],
    exit: nodes[nodes.length - 1],
    count: 0,
    whole_graph: false,
    pattern: { kind: "sequence", branch_count: 1, quorum: null, strict_match: null },
    cost: cost(40355),
    decision: null,
    ...overrides,
  };
}

export function sessionDoc(
  candidates: CandidateRow[],
  cursor: string | null = null,
): SessionDoc {
  return {
    candidates,
    decisions: [],
    cursor: cursor ?? candidates.find((c) => c.decision === null)?.id ?? null,
    totals: { full_on_chain: 383600, with_offchain: 343245, saving: 40355 },
    hierarchical_nodes: [],
  };
}
