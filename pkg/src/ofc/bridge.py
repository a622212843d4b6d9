"""Bridge artifacts for an off-chained region.

From a hierarchical node this module derives a bridge spec (mirrored
methods, their event pair, the chain keys they touch, the actors whose
approval seals a completion) and renders three deterministic text
artifacts: the on-chain contract skeleton with per-method dispatch guards,
the off-chain bridge process script, and the storage schema for the
record every participant keeps per attested completion.

Output is plain structured text, platform neutral on purpose, and byte
identical for identical input.  Event names are numbered by method order
(methods sort by name): ``offChainEvent1`` pairs with
``offChainDoneEvent1`` and so on.
"""

from __future__ import annotations

import hashlib
import json
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Iterable

from .errors import InvalidSpecError, IoError, NotHierarchicalError
from .hsm import HsmModel
from .model import ParamSpec

__all__ = [
    "RECORD_FIELDS",
    "MethodSpec",
    "BridgeSpec",
    "OffchainRecordSchema",
    "data_key",
    "content_digest",
    "derive_bridge_spec",
    "generate_contract_skeleton",
    "generate_bridge_script",
    "generate_storage_schema",
    "parse_storage_schema",
    "write_artifacts",
]

# The record layout every participant keeps, field order fixed.
RECORD_FIELDS: tuple[tuple[str, str], ...] = (
    ("TransactionID", "bytes"),
    ("CurrentOffchainPatternAsSubmitted", "bytes"),
    ("SmartContractFromAddress", "varchar"),
    ("SmartContractToAddress", "bytes"),
    ("ParticipatedActors", "enum"),
    ("ParticipatedActorsSignatures", "enum"),
    ("TransitionParameters", "enum"),
)


def data_key(state_id: str) -> str:
    """Ledger key for the chain words a state's entering method touches."""
    return f"data:{state_id}"


def content_digest(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


@dataclass(frozen=True)
class MethodSpec:
    """One mirrored method with its event pair and chain-data footprint."""

    name: str
    params: tuple[ParamSpec, ...]
    reads: tuple[str, ...]
    writes: tuple[str, ...]
    event: str
    done_event: str
    targets: tuple[str, ...]
    exit_reaching: bool


@dataclass(frozen=True)
class BridgeSpec:
    pattern_id: str
    entry_state: str
    exit_state: str
    methods: tuple[MethodSpec, ...]
    affected_actors: frozenset[str]

    def to_doc(self) -> dict[str, Any]:
        return {
            "pattern_id": self.pattern_id,
            "entry_state": self.entry_state,
            "exit_state": self.exit_state,
            "affected_actors": sorted(self.affected_actors),
            "methods": [
                {
                    "name": m.name,
                    "params": [p.to_doc() for p in m.params],
                    "reads": list(m.reads),
                    "writes": list(m.writes),
                    "event": m.event,
                    "done_event": m.done_event,
                    "targets": list(m.targets),
                    "exit_reaching": m.exit_reaching,
                }
                for m in self.methods
            ],
        }


@dataclass(frozen=True)
class OffchainRecordSchema:
    pattern_id: str
    fields: tuple[tuple[str, str], ...]


def derive_bridge_spec(hsm: HsmModel, node_id: str) -> BridgeSpec:
    """Derive the bridge spec for one hierarchical node.

    Methods come from the nested machine's transitions, one spec per
    distinct method name, parameters taken from the lowest-id transition
    carrying the name.  Affected actors are the union of transition actors
    and member-state actors.
    """
    if node_id not in hsm.mapping:
        raise NotHierarchicalError(f"state {node_id!r} has no nested machine")
    nested = hsm.mapping[node_id]
    transitions = sorted(nested.model.transitions, key=lambda t: t.id)
    if not transitions:
        raise InvalidSpecError(f"region {node_id} has no internal transitions to mirror")

    by_name: dict[str, list] = {}
    for t in transitions:
        by_name.setdefault(t.method_name, []).append(t)

    methods = []
    for k, name in enumerate(sorted(by_name), start=1):
        group = by_name[name]
        targets = sorted({t.to_state for t in group})
        reads = tuple(
            data_key(s) for s in targets if nested.model.state(s).reads_words > 0
        )
        writes = tuple(
            data_key(s) for s in targets if nested.model.state(s).writes_words > 0
        )
        methods.append(
            MethodSpec(
                name=name,
                params=group[0].inputs,
                reads=reads,
                writes=writes,
                event=f"offChainEvent{k}",
                done_event=f"offChainDoneEvent{k}",
                targets=tuple(targets),
                exit_reaching=any(t.to_state == nested.exit for t in group),
            )
        )

    actors: set[str] = {t.actor for t in transitions if t.actor}
    for s in nested.model.states:
        actors |= s.actors

    return BridgeSpec(
        pattern_id=node_id,
        entry_state=nested.entry,
        exit_state=nested.exit,
        methods=tuple(methods),
        affected_actors=frozenset(actors),
    )


def _params_sig(params: tuple[ParamSpec, ...]) -> str:
    return ", ".join(f"{p.name}[{p.words}w]" for p in params)


def _check(spec: BridgeSpec) -> None:
    if not spec.methods:
        raise InvalidSpecError(f"bridge spec {spec.pattern_id} has no methods")
    if not any(m.exit_reaching for m in spec.methods):
        raise InvalidSpecError(f"bridge spec {spec.pattern_id} has no exit-reaching method")


def generate_contract_skeleton(spec: BridgeSpec) -> str:
    """On-chain skeleton: state variable, off-chain flag, one dispatch guard
    per mirrored method, and a single completion handler that verifies the
    attestation before committing cached writes."""
    _check(spec)
    actors = ", ".join(sorted(spec.affected_actors))
    all_writes = sorted({w for m in spec.methods for w in m.writes})
    lines = [
        f"contract skeleton for region {spec.pattern_id}",
        "generated deterministically from the region machine",
        "",
        f"contract Pattern_{spec.pattern_id}",
        "  var currentState",
        "  var offChain = false",
        f"  entry state: {spec.entry_state}",
        f"  exit state: {spec.exit_state}",
        f"  affected actors: {actors}",
        "",
    ]
    for m in spec.methods:
        reads = ",".join(m.reads) if m.reads else "none"
        lines += [
            f"  method {m.name}({_params_sig(m.params)})",
            "    guard:",
            f'      when currentState == "{spec.entry_state}" or offChain',
            "      set offChain = true",
            f"      emit {m.event}(method={m.name}, params, reads={reads})",
            f"      suspend until {m.done_event}",
            "    end guard",
            "",
        ]
    lines += [
        "  on done event at exit state:",
        "    verify attestResults(results, signatures) covers all affected actors",
        f"    commit cached writes: {', '.join(all_writes) if all_writes else 'none'}",
        "    set offChain = false",
        "    resume on-chain execution",
        "  end",
        "end contract",
    ]
    return "\n".join(lines) + "\n"


def generate_bridge_script(spec: BridgeSpec) -> str:
    """Off-chain bridge process: wait for the event, seed the cache, run the
    mirrored method, and on reaching the exit marshal the cached writes and
    collect the attestation before firing the done event."""
    _check(spec)
    actors = ", ".join(sorted(spec.affected_actors))
    lines = [
        f"bridge process for region {spec.pattern_id}",
        "mirrors the region machine against a local cache",
        "",
        f"bridge Pattern_{spec.pattern_id}",
    ]
    for m in spec.methods:
        lines.append(f"  on {m.event}(method={m.name}):")
        for key in m.reads:
            lines.append(f"    step seed_cache {key}")
        lines.append(f"    step invoke {m.name}")
        lines.append("    step exit_check")
        lines += [
            "      when exit reached:",
            "        step marshal_writes",
            f"        step request_attestation {actors}",
        ]
        lines.append(f"    step fire {m.done_event}")
        lines.append("")
    lines += [
        "  on cache miss during any step:",
        "    step pause",
        "    step getter <missing key>",
        "    step resume",
        "",
        "end bridge",
    ]
    return "\n".join(lines) + "\n"


def generate_storage_schema(spec: BridgeSpec) -> str:
    """Storage schema text for the per-completion record."""
    _check(spec)
    lines = [
        f"storage schema for region {spec.pattern_id}",
        "one record per attested completion, kept by every participant",
        "",
        "record OffchainTransaction",
    ]
    for i, (name, type_name) in enumerate(RECORD_FIELDS, start=1):
        lines.append(f"  {i} {name} {type_name}")
    lines += ["end record"]
    return "\n".join(lines) + "\n"


_SCHEMA_HEADER = re.compile(r"^storage schema for region (\S+)$")
_SCHEMA_FIELD = re.compile(r"^\s+(\d+)\s+(\w+)\s+(\w+)$")


def parse_storage_schema(text: str) -> OffchainRecordSchema:
    """Parse a schema artifact back; inverse of ``generate_storage_schema``."""
    pattern_id = None
    fields: list[tuple[str, str]] = []
    in_record = False
    for line in text.splitlines():
        header = _SCHEMA_HEADER.match(line)
        if header:
            pattern_id = header.group(1)
        if line.strip() == "record OffchainTransaction":
            in_record = True
            continue
        if line.strip() == "end record":
            in_record = False
            continue
        if in_record:
            m = _SCHEMA_FIELD.match(line)
            if not m:
                raise InvalidSpecError(f"unparseable schema field line: {line!r}")
            index, name, type_name = m.groups()
            if int(index) != len(fields) + 1:
                raise InvalidSpecError(f"schema field {name} out of order")
            fields.append((name, type_name))
    if pattern_id is None:
        raise InvalidSpecError("schema text has no region header")
    return OffchainRecordSchema(pattern_id=pattern_id, fields=tuple(fields))


def write_artifacts(specs: Iterable[BridgeSpec], out_dir: str | Path) -> dict[str, Any]:
    """Write the three artifacts per spec plus an index manifest.

    Returns the manifest document (also written as ``manifest.json``).
    Only the event-driven bridge variant is generated; the manifest notes
    the alternative for ledgers without event support.
    """
    out = Path(out_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise IoError(f"cannot create output directory {out}: {exc}") from exc

    patterns = []
    for spec in sorted(specs, key=lambda s: s.pattern_id):
        artifacts = {
            "contract": (f"{spec.pattern_id}.contract.txt", generate_contract_skeleton(spec)),
            "bridge": (f"{spec.pattern_id}.bridge.txt", generate_bridge_script(spec)),
            "schema": (f"{spec.pattern_id}.schema.txt", generate_storage_schema(spec)),
        }
        files = {}
        digests = {}
        for kind, (name, text) in artifacts.items():
            try:
                (out / name).write_text(text, encoding="utf-8")
            except OSError as exc:
                raise IoError(f"cannot write {out / name}: {exc}") from exc
            files[kind] = name
            digests[kind] = content_digest(text)
        patterns.append(
            {
                "pattern_id": spec.pattern_id,
                "entry": spec.entry_state,
                "exit": spec.exit_state,
                "variant": "event-driven",
                "files": files,
                "sha256": digests,
            }
        )

    manifest = {
        "patterns": patterns,
        "notes": [
            "only the event-driven bridge variant is generated; ledgers without "
            "contract events need a polling bridge instead",
        ],
    }
    try:
        (out / "manifest.json").write_text(
            json.dumps(manifest, indent=2) + "\n", encoding="utf-8"
        )
    except OSError as exc:
        raise IoError(f"cannot write manifest: {exc}") from exc
    return manifest
