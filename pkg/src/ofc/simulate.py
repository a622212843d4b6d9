"""Deterministic replay of partitioned workflows against a mock ledger.

The simulator owns four pieces of state: an append-only ledger with
strictly increasing sequence numbers, an off-chain cache whose entries
carry dirty flags, the off-chain activity flag, and the attestation round
for a completed pattern.  Everything is synchronous and deterministic:
ledger values are a pure function of (method, parameters, target state),
so a flat run and a partitioned run of the same trace end with identical
ledger content.

Gas accounting mirrors the cost model exactly:

* A state executed on chain charges ``sload * reads + sstore * writes``.
  The charge rides the ledger write when the state writes, otherwise it
  is tracked as a non-ledger charge.
* Entering a pattern executes the entry state on chain as usual, then
  charges the entry half of the interface overhead (one jump plus two
  memory operations per boundary word) and seeds the cache.
* Interior methods run against the cache at zero gas.  States declared as
  mid-pattern chain accessors charge their full state cost once per
  traversal: at their own execution when the trace visits them, and at
  exit for declared states the trace skipped, because the declaration is
  a static accounting commitment, not a visit counter.
* Reaching the exit suspends execution until every affected actor
  approves.  A single rejection fails the simulation terminally with
  nothing committed.  Unanimous approval fires the done event, commits
  dirty cache entries in first-write order (the exit state's own write
  carries the exit boundary charge; cached interior values ride along at
  zero, their cost being the off-chain work already accounted), and
  charges the exit half of the overhead (two jumps, three memory
  operations per word).

Total for a happy-path traversal with boundary words B: entry state cost
+ exit state cost + (3 jumps + 5 memops * B) + declared mid-pattern
access, which is precisely the cost model's off-chain total.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Any, Iterable, Mapping

from .bridge import BridgeSpec, MethodSpec, content_digest, data_key, derive_bridge_spec
from .costs import DataProfile, GasTable, boundary_words_for
from .errors import (
    AttestationPendingError,
    InvalidSpecError,
    MissingSpecError,
    ModelSyntaxError,
    NotAwaitingError,
    NotEnabledError,
    SimulationFailedError,
    TraceError,
    UnknownActorError,
)
from .hsm import HsmModel
from .model import FsmModel, StateNode, Transition

__all__ = [
    "LedgerEntry",
    "CacheEntry",
    "InvocationResult",
    "AttestationOutcome",
    "SimulationState",
    "TraceResult",
    "ParsedSkeleton",
    "new_simulation",
    "derive_all_specs",
    "invoke",
    "attest",
    "run_trace",
    "parse_trace",
    "load_contract_skeleton",
]

RUNNING = "running"
AWAITING = "awaiting_attestation"
FAILED = "failed"


@dataclass(frozen=True)
class LedgerEntry:
    seq: int
    key: str
    value: str
    gas_charged: int

    def to_doc(self) -> dict[str, Any]:
        return {"seq": self.seq, "key": self.key, "value": self.value, "gas": self.gas_charged}


@dataclass
class CacheEntry:
    value: str
    dirty: bool


@dataclass(frozen=True)
class InvocationResult:
    executed_where: str  # "on_chain" | "off_chain"
    new_state: str
    outputs: dict[str, str]
    events_fired: tuple[str, ...]
    gas_delta: int
    pattern_entered: str | None = None
    awaiting_attestation: bool = False


@dataclass(frozen=True)
class AttestationOutcome:
    status: str
    committed: tuple[str, ...] = ()
    record_id: str | None = None


class SimulationState:
    """Single-owner mutable simulation; one logical actor drives it."""

    def __init__(
        self,
        hsm: HsmModel,
        specs: Mapping[str, BridgeSpec],
        actors: frozenset[str],
        profile: DataProfile,
        table: GasTable,
    ) -> None:
        self.hsm = hsm
        self.specs = dict(specs)
        self.actors = actors
        self.profile = profile
        self.table = table

        self.current_state = hsm.top.initial_state
        self.active_pattern: str | None = None
        self.offchain_flag = False
        self.status = RUNNING

        self.ledger: list[LedgerEntry] = []
        self.cache: dict[str, CacheEntry] = {}
        self.write_order: list[str] = []
        self.pending: dict[str, bool | None] = {}
        self.awaiting_method: MethodSpec | None = None

        self.gas_meter = 0
        self.nonledger_gas = 0
        self.step_log: list[str] = []
        self.records: list[dict[str, Any]] = []
        self.traversal_path: list[str] = []
        self.traversal_methods: list[str] = []
        self._midpattern_charged: set[str] = set()
        self._seq = 0

    # -- small helpers ----------------------------------------------------

    def log(self, line: str) -> None:
        self.step_log.append(line)

    def charge_nonledger(self, gas: int) -> None:
        self.gas_meter += gas
        self.nonledger_gas += gas

    def append_ledger(self, key: str, value: str, gas: int) -> LedgerEntry:
        self._seq += 1
        entry = LedgerEntry(seq=self._seq, key=key, value=value, gas_charged=gas)
        self.ledger.append(entry)
        self.gas_meter += gas
        return entry

    def ledger_value(self, key: str) -> str | None:
        for entry in reversed(self.ledger):
            if entry.key == key:
                return entry.value
        return None

    def nested(self):
        assert self.active_pattern is not None
        return self.hsm.mapping[self.active_pattern]

    def _boundary_words(self) -> int:
        nested = self.nested()
        return boundary_words_for(nested.model, [s.id for s in nested.model.states], self.profile)


def derive_all_specs(hsm: HsmModel) -> dict[str, BridgeSpec]:
    return {h: derive_bridge_spec(hsm, h) for h in sorted(hsm.mapping)}


def new_simulation(
    hsm: HsmModel,
    specs: Mapping[str, BridgeSpec] | None = None,
    actors: Iterable[str] | None = None,
    profile: DataProfile | None = None,
    table: GasTable | None = None,
) -> SimulationState:
    """Fresh simulation at the top machine's initial state.

    Raises ``MissingSpecError`` when a hierarchical node has no bridge
    spec.  With no explicit actor registry, the union of all specs'
    affected actors is used.
    """
    if specs is None:
        specs = derive_all_specs(hsm)
    missing = sorted(set(hsm.mapping) - set(specs))
    if missing:
        raise MissingSpecError(f"no bridge spec for hierarchical nodes: {', '.join(missing)}")
    if actors is None:
        gathered: set[str] = set()
        for spec in specs.values():
            gathered |= spec.affected_actors
        actors = gathered
    sim = SimulationState(
        hsm=hsm,
        specs=specs,
        actors=frozenset(actors),
        profile=profile or DataProfile(),
        table=table or GasTable(),
    )
    if sim.current_state in hsm.mapping:
        _activate_pattern(sim, sim.current_state, entered_by_method=None)
    return sim


def _value_for(state_id: str, method: str, params: Mapping[str, Any]) -> str:
    """Deterministic ledger value: same inputs, same value, on or off chain."""
    rendered = ",".join(f"{k}={params[k]}" for k in sorted(params))
    return f"{method}({rendered})->{state_id}"


def _state_gas(sim: SimulationState, state: StateNode) -> int:
    profile, table = sim.profile, sim.table
    per_run = table.sload * profile.reads_for(state) + table.sstore * profile.writes_for(state)
    return profile.freq_for(state.id) * per_run


def _execute_onchain_state(
    sim: SimulationState, state: StateNode, method: str, params: Mapping[str, Any]
) -> tuple[str, int]:
    """Run one state on chain: full state cost, write to the ledger if the
    state writes anything."""
    gas = _state_gas(sim, state)
    value = _value_for(state.id, method, params)
    if sim.profile.writes_for(state) > 0:
        sim.append_ledger(data_key(state.id), value, gas)
        sim.log(f"onchain {state.id} gas={gas}")
    else:
        sim.charge_nonledger(gas)
        sim.log(f"onchain {state.id} gas={gas} (no write)")
    return value, gas


def _activate_pattern(sim: SimulationState, h_id: str, entered_by_method: str | None) -> None:
    nested = sim.hsm.mapping[h_id]
    sim.active_pattern = h_id
    sim.offchain_flag = True
    sim.current_state = nested.entry
    sim.traversal_path = [nested.entry]
    sim.traversal_methods = [] if entered_by_method is None else [entered_by_method]
    sim._midpattern_charged = set()
    sim.write_order = []
    sim.log(f"enter_pattern {h_id}")

    boundary = sim._boundary_words()
    entry_overhead = sim.table.jump + 2 * sim.table.memop * boundary
    sim.charge_nonledger(entry_overhead)
    sim.log(f"overhead entry gas={entry_overhead}")

    key = data_key(nested.entry)
    value = sim.ledger_value(key)
    if value is not None:
        sim.cache[key] = CacheEntry(value=value, dirty=False)
    sim.log(f"seed_cache {key}")


def _resolve_transition(sim: SimulationState, method_name: str) -> Transition:
    if sim.active_pattern is not None:
        source: FsmModel = sim.nested().model
    else:
        source = sim.hsm.top
    candidates = sorted(
        (
            t
            for t in source.transitions
            if t.from_state == sim.current_state and t.method_name == method_name
        ),
        key=lambda t: t.id,
    )
    if not candidates:
        enabled = sorted(
            {t.method_name for t in source.transitions if t.from_state == sim.current_state}
        )
        raise NotEnabledError(
            f"method {method_name!r} is not enabled in state {sim.current_state!r}; "
            f"enabled: {', '.join(enabled) if enabled else 'none'}"
        )
    return candidates[0]


def _method_spec(spec: BridgeSpec, name: str) -> MethodSpec:
    for m in spec.methods:
        if m.name == name:
            return m
    raise NotEnabledError(f"method {name!r} is not part of bridge spec {spec.pattern_id}")


def _charge_midpattern(sim: SimulationState, state_id: str, note: str) -> int:
    state = sim.nested().model.state(state_id)
    gas = _state_gas(sim, state)
    sim.charge_nonledger(gas)
    sim._midpattern_charged.add(state_id)
    sim.log(f"chain_access {data_key(state_id)} gas={gas}{note}")
    return gas


def _invoke_offchain(
    sim: SimulationState, transition: Transition, params: Mapping[str, Any]
) -> InvocationResult:
    spec = sim.specs[sim.active_pattern]
    mspec = _method_spec(spec, transition.method_name)
    nested = sim.nested()
    gas_before = sim.gas_meter

    sim.log(f"recv {mspec.event} method={mspec.name}")
    for key in mspec.reads:
        if key in sim.cache:
            sim.log(f"seed_cache {key}")
        else:
            chain_value = sim.ledger_value(key)
            if chain_value is not None:
                # data exists on chain but was not marshaled across: fetch live
                sim.log("pause")
                sim.log(f"getter {key}")
                sim.log("resume")
                sim.cache[key] = CacheEntry(value=chain_value, dirty=False)
            else:
                sim.cache[key] = CacheEntry(value="0", dirty=False)
                sim.log(f"seed_cache {key}")

    target_id = transition.to_state
    target = nested.model.state(target_id)
    value = _value_for(target_id, mspec.name, params)
    if sim.profile.writes_for(target) > 0:
        key = data_key(target_id)
        if key in sim.cache:
            sim.cache[key].value = value
            if not sim.cache[key].dirty:
                sim.cache[key].dirty = True
                sim.write_order.append(key)
        else:
            sim.cache[key] = CacheEntry(value=value, dirty=True)
            sim.write_order.append(key)
    sim.log(f"invoke {mspec.name}")

    if (
        target_id in sim.profile.midpattern_chain_states
        and target_id not in sim._midpattern_charged
    ):
        _charge_midpattern(sim, target_id, "")

    sim.current_state = target_id
    sim.traversal_path.append(target_id)
    sim.traversal_methods.append(mspec.name)
    sim.log("exit_check")

    events: tuple[str, ...]
    awaiting = False
    if target_id == nested.exit:
        declared = sim.profile.midpattern_chain_states & {s.id for s in nested.model.states}
        for state_id in sorted(declared - sim._midpattern_charged):
            _charge_midpattern(sim, state_id, " (declared, unvisited)")
        sim.log("marshal_writes")
        sim.log(f"request_attestation {', '.join(sorted(spec.affected_actors))}")
        sim.status = AWAITING
        sim.pending = {actor: None for actor in sorted(spec.affected_actors)}
        sim.awaiting_method = mspec
        if not sim.pending:
            # no affected actors: unanimity holds vacuously, commit now
            _commit(sim)
            events = (mspec.event, mspec.done_event)
        else:
            events = (mspec.event,)
            awaiting = True
    else:
        sim.log(f"fire {mspec.done_event}")
        events = (mspec.event, mspec.done_event)

    outputs = {p.name: value for p in transition.outputs}
    return InvocationResult(
        executed_where="off_chain",
        new_state=target_id,
        outputs=outputs,
        events_fired=events,
        gas_delta=sim.gas_meter - gas_before,
        awaiting_attestation=awaiting,
    )


def invoke(sim: SimulationState, method_name: str, params: Mapping[str, Any] | None = None) -> InvocationResult:
    """Call a contract method: routes on or off chain by the current mode."""
    params = params or {}
    if sim.status == FAILED:
        raise SimulationFailedError("simulation failed terminally; no further steps accepted")
    if sim.status == AWAITING:
        raise AttestationPendingError(
            "pattern completion is awaiting attestation; no invocations until it settles"
        )

    transition = _resolve_transition(sim, method_name)
    if sim.active_pattern is not None:
        return _invoke_offchain(sim, transition, params)

    gas_before = sim.gas_meter
    target_id = transition.to_state
    if target_id in sim.hsm.mapping:
        # entering a pattern: the entry state executes on chain, then the
        # off-chain phase arms itself
        nested = sim.hsm.mapping[target_id]
        entry_state = nested.model.state(nested.entry)
        value, _ = _execute_onchain_state(sim, entry_state, method_name, params)
        _activate_pattern(sim, target_id, entered_by_method=method_name)
        outputs = {p.name: value for p in transition.outputs}
        return InvocationResult(
            executed_where="on_chain",
            new_state=sim.current_state,
            outputs=outputs,
            events_fired=(),
            gas_delta=sim.gas_meter - gas_before,
            pattern_entered=target_id,
        )

    target = sim.hsm.top.state(target_id)
    value, _ = _execute_onchain_state(sim, target, method_name, params)
    sim.current_state = target_id
    outputs = {p.name: value for p in transition.outputs}
    return InvocationResult(
        executed_where="on_chain",
        new_state=target_id,
        outputs=outputs,
        events_fired=(),
        gas_delta=sim.gas_meter - gas_before,
    )


def _commit(sim: SimulationState) -> AttestationOutcome:
    spec = sim.specs[sim.active_pattern]
    nested = sim.nested()
    mspec = sim.awaiting_method
    assert mspec is not None
    sim.log(f"fire {mspec.done_event}")

    exit_state = nested.model.state(nested.exit)
    exit_gas = _state_gas(sim, exit_state)
    exit_key = data_key(nested.exit)
    committed: list[str] = []
    exit_charged = False
    # first-write order, so a flat replay writes the same sequence
    for key in sim.write_order:
        entry = sim.cache[key]
        gas = exit_gas if key == exit_key else 0
        if key == exit_key:
            exit_charged = True
        sim.append_ledger(key, entry.value, gas)
        sim.log(f"commit {key} gas={gas}")
        committed.append(key)
    if not exit_charged and exit_gas:
        # exit state writes nothing; its boundary charge stands alone
        sim.charge_nonledger(exit_gas)
        sim.log(f"boundary exit gas={exit_gas} (no write)")

    boundary = sim._boundary_words()
    exit_overhead = 2 * sim.table.jump + 3 * sim.table.memop * boundary
    sim.charge_nonledger(exit_overhead)
    sim.log(f"overhead exit gas={exit_overhead}")

    writes = [[key, sim.cache[key].value] for key in committed]
    body = {
        "pattern": sim.active_pattern,
        "path": sim.traversal_path,
        "methods": sim.traversal_methods,
        "actors": sorted(spec.affected_actors),
        "writes": writes,
    }
    tx_id = content_digest(json.dumps(body, sort_keys=True))
    record = {
        "TransactionID": tx_id,
        "CurrentOffchainPatternAsSubmitted": {
            "pattern": sim.active_pattern,
            "path": list(sim.traversal_path),
            "methods": list(sim.traversal_methods),
        },
        "SmartContractFromAddress": "contract://main",
        "SmartContractToAddress": f"bridge://{sim.active_pattern}",
        "ParticipatedActors": sorted(spec.affected_actors),
        "ParticipatedActorsSignatures": [
            f"sig:{actor}:{tx_id[:16]}" for actor in sorted(spec.affected_actors)
        ],
        "TransitionParameters": writes,
    }
    sim.records.append(record)
    sim.log(f"record {tx_id[:16]}")

    completed = sim.active_pattern
    sim.cache.clear()
    sim.write_order = []
    sim.pending = {}
    sim.awaiting_method = None
    sim.offchain_flag = False
    sim.active_pattern = None
    sim.current_state = completed
    sim.status = RUNNING
    sim.log(f"pattern_complete {completed}")
    return AttestationOutcome(status=RUNNING, committed=tuple(committed), record_id=tx_id)


def attest(sim: SimulationState, actor: str, verdict: bool) -> AttestationOutcome:
    """Record one actor's verdict on the completed pattern.

    Unanimous approval commits; a single rejection is terminal and commits
    nothing.
    """
    if sim.status == FAILED:
        raise SimulationFailedError("simulation failed terminally; no further steps accepted")
    if sim.status != AWAITING:
        raise NotAwaitingError("no pattern completion is awaiting attestation")
    if actor not in sim.pending:
        raise UnknownActorError(
            f"actor {actor!r} is not among the affected actors: "
            f"{', '.join(sorted(sim.pending))}"
        )

    if not verdict:
        sim.log(f"attest {actor} reject")
        sim.status = FAILED
        sim.log(f"pattern_failed {sim.active_pattern}")
        return AttestationOutcome(status=FAILED)

    sim.log(f"attest {actor} approve")
    sim.pending[actor] = True
    if all(v is True for v in sim.pending.values()):
        return _commit(sim)
    return AttestationOutcome(status=AWAITING)


@dataclass(frozen=True)
class TraceResult:
    sim: SimulationState
    gas: int
    ledger: tuple[LedgerEntry, ...]
    records: tuple[dict[str, Any], ...]

    def to_doc(self) -> dict[str, Any]:
        return {
            "gas": self.gas,
            "final_state": self.sim.current_state,
            "status": self.sim.status,
            "ledger": [e.to_doc() for e in self.ledger],
            "records": list(self.records),
            "steps": list(self.sim.step_log),
        }


def parse_trace(text: str) -> list[dict[str, Any]]:
    """Parse and shape-check a trace document (a JSON array of operations)."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelSyntaxError(exc.msg, line=exc.lineno) from exc
    if not isinstance(doc, list):
        raise ModelSyntaxError("trace: top level must be an array")
    for i, op in enumerate(doc):
        if not isinstance(op, dict) or "op" not in op:
            raise ModelSyntaxError(f"trace[{i}]: must be an object with an 'op' field")
        kind = op["op"]
        if kind == "invoke":
            if not isinstance(op.get("method"), str):
                raise ModelSyntaxError(f"trace[{i}]: invoke needs a string 'method'")
            if "params" in op and not isinstance(op["params"], dict):
                raise ModelSyntaxError(f"trace[{i}]: invoke 'params' must be an object")
        elif kind == "attest":
            if not isinstance(op.get("actor"), str):
                raise ModelSyntaxError(f"trace[{i}]: attest needs a string 'actor'")
            if not isinstance(op.get("verdict"), bool):
                raise ModelSyntaxError(f"trace[{i}]: attest needs a boolean 'verdict'")
        else:
            raise ModelSyntaxError(f"trace[{i}]: unknown op {kind!r}")
    return doc


def run_trace(
    hsm: HsmModel,
    specs: Mapping[str, BridgeSpec] | None = None,
    trace: Iterable[Mapping[str, Any]] = (),
    *,
    actors: Iterable[str] | None = None,
    profile: DataProfile | None = None,
    table: GasTable | None = None,
) -> TraceResult:
    """Replay a trace; errors are wrapped with the failing step's index."""
    sim = new_simulation(hsm, specs, actors=actors, profile=profile, table=table)
    for i, op in enumerate(trace):
        try:
            if op["op"] == "invoke":
                invoke(sim, op["method"], op.get("params") or {})
            elif op["op"] == "attest":
                attest(sim, op["actor"], op["verdict"])
            else:
                raise NotEnabledError(f"unknown trace op {op.get('op')!r}")
        except TraceError:
            raise
        except Exception as exc:
            raise TraceError(i, exc) from exc
    return TraceResult(
        sim=sim,
        gas=sim.gas_meter,
        ledger=tuple(sim.ledger),
        records=tuple(sim.records),
    )


# -- skeleton loader ------------------------------------------------------

_CONTRACT_RE = re.compile(r"^contract Pattern_(\S+)$")
_ENTRY_RE = re.compile(r"^\s+entry state: (\S+)$")
_EXIT_RE = re.compile(r"^\s+exit state: (\S+)$")
_METHOD_RE = re.compile(r"^\s+method (\w+)\(")
_EMIT_RE = re.compile(r"^\s+emit (offChainEvent\d+)\(")
_SUSPEND_RE = re.compile(r"^\s+suspend until (offChainDoneEvent\d+)$")


@dataclass(frozen=True)
class ParsedSkeleton:
    pattern_id: str
    entry_state: str
    exit_state: str
    methods: tuple[tuple[str, str, str], ...]  # (name, event, done_event)
    guard_count: int
    has_attest_hook: bool


def load_contract_skeleton(text: str) -> ParsedSkeleton:
    """Re-parse a generated contract skeleton, checking its structure.

    Raises ``InvalidSpecError`` when the skeleton is structurally broken:
    no contract header, a method without its event pair, unmatched event
    numbering, or a missing attestation hook.
    """
    pattern_id: str | None = None
    entry = exit_ = None
    methods: list[tuple[str, str, str]] = []
    current: str | None = None
    current_event: str | None = None
    guard_count = 0
    has_attest = False

    for line in text.splitlines():
        if m := _CONTRACT_RE.match(line):
            pattern_id = m.group(1)
        elif m := _ENTRY_RE.match(line):
            entry = m.group(1)
        elif m := _EXIT_RE.match(line):
            exit_ = m.group(1)
        elif m := _METHOD_RE.match(line):
            if current is not None:
                raise InvalidSpecError(f"method {current!r} has no complete guard block")
            current = m.group(1)
            current_event = None
        elif line.strip() == "guard:":
            guard_count += 1
        elif m := _EMIT_RE.match(line):
            current_event = m.group(1)
        elif m := _SUSPEND_RE.match(line):
            if current is None or current_event is None:
                raise InvalidSpecError("suspend line outside a method guard")
            number = re.sub(r"\D", "", current_event)
            if m.group(1) != f"offChainDoneEvent{number}":
                raise InvalidSpecError(
                    f"method {current!r} pairs {current_event} with {m.group(1)}"
                )
            methods.append((current, current_event, m.group(1)))
            current = None
            current_event = None
        elif "attestResults" in line:
            has_attest = True

    if pattern_id is None:
        raise InvalidSpecError("no contract header found")
    if current is not None:
        raise InvalidSpecError(f"method {current!r} has no complete guard block")
    if entry is None or exit_ is None:
        raise InvalidSpecError("entry or exit state declaration missing")
    if not methods:
        raise InvalidSpecError("skeleton declares no methods")
    if guard_count != len(methods):
        raise InvalidSpecError(
            f"{guard_count} guard blocks for {len(methods)} methods"
        )
    if not has_attest:
        raise InvalidSpecError("no attestResults hook in the completion handler")
    return ParsedSkeleton(
        pattern_id=pattern_id,
        entry_state=entry,
        exit_state=exit_,
        methods=tuple(methods),
        guard_count=guard_count,
        has_attest_hook=has_attest,
    )
