// Documents exactly as the service serializes them.  The UI never invents
// fields and never recomputes gas; these shapes are the contract.

export interface StateDoc {
  id: string;
  label: string;
  reads_words: number;
  writes_words: number;
  actors: string[];
}

export interface TransitionDoc {
  id: string;
  from: string;
  to: string;
  method_name: string;
  actor: string;
  quorum?: number | null;
}

export interface ModelDoc {
  states: StateDoc[];
  initial_state: string;
  transitions: TransitionDoc[];
}

export interface PatternDoc {
  kind: string;
  branch_count: number;
  quorum: number | null;
  strict_match: string | null;
}

export interface CostBreakdown {
  boundary_on_chain: number;
  interface_overhead: number;
  midpattern_access: number;
  boundary_words: number;
}

export interface CostDoc {
  on_chain_only: number;
  off_chain_total: number;
  saving: number;
  recommend_off_chain: boolean;
  breakdown: CostBreakdown;
}

export type DecisionStatus = "accepted" | "rejected" | "absorbed" | null;

export interface CandidateRow {
  id: string;
  nodes: string[];
  entry: string;
  exit: string;
  count: number;
  whole_graph: boolean;
  pattern: PatternDoc;
  cost: CostDoc;
  decision: DecisionStatus;
}

export interface TotalsDoc {
  full_on_chain: number;
  with_offchain: number;
  saving: number;
}

export interface SessionDoc {
  candidates: CandidateRow[];
  decisions: unknown[];
  cursor: string | null;
  totals: TotalsDoc;
  hierarchical_nodes: string[];
}

export interface DecisionResponse {
  decision: Record<string, unknown>;
  cursor: string | null;
  hierarchical_nodes: string[];
}
