"""Gas economics of moving a region off chain.

All costs are per 32-byte word.  A state's on-chain execution costs
``sload * reads + sstore * writes`` for the words its entering method
touches.  Moving a region off chain keeps only the boundary states (entry
and exit) on chain, adds a fixed interface overhead of three jumps plus
five word-sized memory operations for event dispatch and marshaling, and
adds the full chain-access cost for any interior state declared as still
needing live chain data mid-pattern.

The default word prices mirror the usual EVM figures (200 for a read,
20000 for a write), and every price is overridable through a config
document, so the break-even analysis survives gas repricing.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Any, Iterable, Mapping

from .discovery import SimpleSubgraph, classify_relation, is_proper_subgraph, RelationKind
from .errors import ModelSyntaxError, OverlappingDecisionsError
from .model import FsmModel, StateNode

__all__ = [
    "GasTable",
    "DataProfile",
    "CostComparison",
    "ContractTotals",
    "state_cost",
    "cost_on_chain",
    "boundary_words_for",
    "interface_overhead",
    "cost_off_chain",
    "contract_totals",
]


@dataclass(frozen=True)
class GasTable:
    """Word-granularity gas prices for the operations the model meters."""

    sload: int = 200
    sstore: int = 20000
    memop: int = 3
    stackop: int = 3
    pop: int = 2
    jump: int = 10

    def to_doc(self) -> dict[str, int]:
        return {
            "sload": self.sload,
            "sstore": self.sstore,
            "memop": self.memop,
            "stackop": self.stackop,
            "pop": self.pop,
            "jump": self.jump,
        }

    @classmethod
    def from_doc(cls, doc: Mapping[str, Any]) -> "GasTable":
        """Build from a partial override document; unknown keys are rejected."""
        known = set(cls().to_doc())
        unknown = set(doc) - known
        if unknown:
            raise ModelSyntaxError(f"unknown gas table keys: {', '.join(sorted(unknown))}")
        for key, value in doc.items():
            if not isinstance(value, int) or isinstance(value, bool) or value < 0:
                raise ModelSyntaxError(f"gas table key {key!r} must be a nonnegative integer")
        return cls(**doc)


@dataclass(frozen=True)
class DataProfile:
    """Data-size assumptions layered over the model's per-state words.

    ``words`` uniformly overrides every state's reads and writes (the
    uniform-M what-if knob); per-state overrides take precedence over it.
    ``boundary_words`` is the marshaled interface size; when unset it
    defaults to the largest per-state word count in the costed region.
    ``midpattern_chain_states`` declares up front which region states still
    need live chain access while off chain.  ``frequency`` scales a state's
    execution count and defaults to one everywhere.
    """

    words: int | None = None
    boundary_words: int | None = None
    midpattern_chain_states: frozenset[str] = frozenset()
    read_overrides: Mapping[str, int] = field(default_factory=dict)
    write_overrides: Mapping[str, int] = field(default_factory=dict)
    frequency: Mapping[str, int] = field(default_factory=dict)

    def reads_for(self, state: StateNode) -> int:
        if state.id in self.read_overrides:
            return self.read_overrides[state.id]
        if self.words is not None:
            return self.words
        return state.reads_words

    def writes_for(self, state: StateNode) -> int:
        if state.id in self.write_overrides:
            return self.write_overrides[state.id]
        if self.words is not None:
            return self.words
        return state.writes_words

    def freq_for(self, state_id: str) -> int:
        return self.frequency.get(state_id, 1)

    def to_doc(self) -> dict[str, Any]:
        return {
            "words": self.words,
            "boundary_words": self.boundary_words,
            "midpattern_chain_states": sorted(self.midpattern_chain_states),
            "read_overrides": dict(sorted(self.read_overrides.items())),
            "write_overrides": dict(sorted(self.write_overrides.items())),
            "frequency": dict(sorted(self.frequency.items())),
        }


def state_cost(state: StateNode, profile: DataProfile, table: GasTable) -> int:
    """Gas for executing one state on chain, scaled by its frequency."""
    per_run = table.sload * profile.reads_for(state) + table.sstore * profile.writes_for(state)
    return profile.freq_for(state.id) * per_run


def cost_on_chain(model: FsmModel, sg: SimpleSubgraph, profile: DataProfile, table: GasTable) -> int:
    """Gas for running the whole region on chain, every member once per frequency."""
    return sum(state_cost(model.state(s), profile, table) for s in sorted(sg.nodes))


def boundary_words_for(model: FsmModel, nodes: Iterable[str], profile: DataProfile) -> int:
    """Marshaled interface size: explicit override, else the region's largest
    per-state word count (the uniform-M assumption)."""
    if profile.boundary_words is not None:
        return profile.boundary_words
    return max(
        max(profile.reads_for(model.state(s)), profile.writes_for(model.state(s)))
        for s in nodes
    )


def interface_overhead(profile: DataProfile, table: GasTable) -> int:
    """Fixed cost of crossing the boundary once, in and out.

    Three jumps for event dispatch plus five memory operations per
    marshaled word.  The boundary states' own loads and stores belong to
    the boundary cost, not here.  With no explicit ``boundary_words`` the
    uniform ``words`` override is used, else zero; region-aware defaulting
    happens in ``cost_off_chain``.
    """
    boundary = profile.boundary_words
    if boundary is None:
        boundary = profile.words if profile.words is not None else 0
    return 3 * table.jump + 5 * table.memop * boundary


@dataclass(frozen=True)
class CostComparison:
    """Both sides of the ledger for one region, with the breakdown."""

    on_chain_only: int
    off_chain_total: int
    boundary_on_chain: int
    interface_overhead: int
    midpattern_access: int
    boundary_words: int

    @property
    def saving(self) -> int:
        return self.on_chain_only - self.off_chain_total

    @property
    def recommend_off_chain(self) -> bool:
        return self.saving > 0

    def to_doc(self) -> dict[str, Any]:
        return {
            "on_chain_only": self.on_chain_only,
            "off_chain_total": self.off_chain_total,
            "saving": self.saving,
            "recommend_off_chain": self.recommend_off_chain,
            "breakdown": {
                "boundary_on_chain": self.boundary_on_chain,
                "interface_overhead": self.interface_overhead,
                "midpattern_access": self.midpattern_access,
                "boundary_words": self.boundary_words,
            },
        }


def cost_off_chain(
    model: FsmModel, sg: SimpleSubgraph, profile: DataProfile, table: GasTable
) -> CostComparison:
    """Compare on-chain-only execution against the partitioned execution.

    The off-chain total is boundary cost (entry and exit states stay on
    chain) plus interface overhead plus declared mid-pattern chain access.
    Interior compute is free by assumption.
    """
    stray = profile.midpattern_chain_states - sg.nodes
    if stray:
        raise ValueError(
            f"midpattern states outside the region: {', '.join(sorted(stray))}"
        )
    boundary_words = boundary_words_for(model, sg.nodes, profile)
    boundary_cost = state_cost(model.state(sg.entry), profile, table) + state_cost(
        model.state(sg.exit), profile, table
    )
    overhead = interface_overhead(replace(profile, boundary_words=boundary_words), table)
    extra = sum(
        state_cost(model.state(s), profile, table)
        for s in sorted(profile.midpattern_chain_states)
    )
    on_chain = cost_on_chain(model, sg, profile, table)
    return CostComparison(
        on_chain_only=on_chain,
        off_chain_total=boundary_cost + overhead + extra,
        boundary_on_chain=boundary_cost,
        interface_overhead=overhead,
        midpattern_access=extra,
        boundary_words=boundary_words,
    )


@dataclass(frozen=True)
class ContractTotals:
    full_on_chain: int
    with_offchain: int
    per_pattern: tuple[dict[str, Any], ...]

    @property
    def saving(self) -> int:
        return self.full_on_chain - self.with_offchain

    def to_doc(self) -> dict[str, Any]:
        return {
            "full_on_chain": self.full_on_chain,
            "with_offchain": self.with_offchain,
            "saving": self.saving,
            "per_pattern": list(self.per_pattern),
        }


def contract_totals(
    model: FsmModel,
    decisions: Iterable[SimpleSubgraph],
    profiles: Mapping[str, DataProfile] | None,
    table: GasTable,
) -> ContractTotals:
    """Whole-contract gas with and without the accepted regions off chain.

    Accepted regions must be pairwise disjoint, nested, or sharing only a
    boundary node; anything else raises ``OverlappingDecisionsError``.
    Nested accepted regions are absorbed by their parent: only maximal
    regions contribute a replacement.  The baseline total uses the model's
    own word counts; each pattern's delta uses that pattern's profile, so
    a profile override changes the pattern's contribution only.
    """
    unique: dict[str, SimpleSubgraph] = {}
    for sg in decisions:
        unique.setdefault(sg.id, sg)
    accepted = list(unique.values())
    profiles = profiles or {}
    for i, a in enumerate(accepted):
        for b in accepted[i + 1 :]:
            relation = classify_relation(model, a, b)
            if relation.kind not in (
                RelationKind.DISJOINT,
                RelationKind.NESTED,
                RelationKind.BOUNDARY_SHARED,
            ):
                raise OverlappingDecisionsError(
                    f"accepted regions {a.id} and {b.id} overlap at interior nodes "
                    f"({relation.kind.value}); totals would double-count them"
                )

    base = DataProfile()
    full = sum(state_cost(s, base, table) for s in sorted(model.states, key=lambda s: s.id))

    maximal = [
        sg
        for sg in accepted
        if not any(
            other is not sg and is_proper_subgraph(sg.nodes, other.nodes) for other in accepted
        )
    ]
    with_offchain = full
    per_pattern: list[dict[str, Any]] = []
    for sg in sorted(accepted, key=lambda s: s.id):
        profile = profiles.get(sg.id, base)
        comparison = cost_off_chain(model, sg, profile, table)
        is_maximal = any(other is sg for other in maximal)
        if is_maximal:
            with_offchain -= comparison.saving
        per_pattern.append(
            {
                "id": sg.id,
                "maximal": is_maximal,
                "absorbed": not is_maximal,
                **comparison.to_doc(),
            }
        )
    return ContractTotals(
        full_on_chain=full,
        with_offchain=with_offchain,
        per_pattern=tuple(per_pattern),
    )
