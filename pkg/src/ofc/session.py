"""Interactive partitioning sessions: ranked candidates, accept/reject
decisions, and the derived hierarchical machine.

A session wraps one model.  Discovery runs once up front; decisions are
an append-only log, and the hierarchical machine is recomputed by folding
the accepted regions in acceptance order.  Flattening the derived machine
must always give back the original model, which ``decide`` re-checks
after every fold.

Accept gating keeps the fold well defined:

* a region nested inside an already accepted one is absorbed, not
  separately acceptable;
* a region that properly overlaps an accepted one (shares interior
  without nesting) conflicts;
* boundary sharing is fine, both regions stand, the shared state simply
  belongs to whichever folded first;
* the whole-graph candidate needs an explicit confirmation flag.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any, Iterable

from .bridge import derive_bridge_spec, write_artifacts
from .costs import (
    ContractTotals,
    CostComparison,
    DataProfile,
    GasTable,
    contract_totals,
    cost_off_chain,
)
from .discovery import (
    DEFAULT_CAP,
    PairRelation,
    RelationKind,
    SimpleSubgraph,
    classify_relation,
    find_simple_subgraphs,
    is_simple_subgraph,
)
from .errors import (
    AbsorbedError,
    AlreadyDecidedError,
    IoError,
    NotFoundError,
    OverlapConflictError,
    WholeGraphConfirmationError,
)
from .hsm import HsmModel, collapse_whole, equivalent, extend_hsm, flatten, serialize_hsm
from .model import FsmModel, model_from_doc, model_to_doc, serialize
from .patterns import classify_pattern

__all__ = [
    "Decision",
    "Session",
    "create_session",
    "decide",
    "what_if",
    "session_totals",
    "session_report",
    "export_session",
    "save_session",
    "load_session",
]


@dataclass(frozen=True)
class Decision:
    seq: int
    subgraph_id: str
    accepted: bool
    note: str = ""

    def to_doc(self) -> dict[str, Any]:
        doc: dict[str, Any] = {
            "seq": self.seq,
            "subgraph": self.subgraph_id,
            "accepted": self.accepted,
        }
        if self.note:
            doc["note"] = self.note
        return doc


ACCEPTED = "accepted"
REJECTED = "rejected"
ABSORBED = "absorbed"


@dataclass
class Session:
    model: FsmModel
    candidates: list[SimpleSubgraph]
    profile: DataProfile
    table: GasTable
    decisions: list[Decision] = field(default_factory=list)
    status: dict[str, str] = field(default_factory=dict)
    hsm: HsmModel = None  # type: ignore[assignment]

    def __post_init__(self) -> None:
        if self.hsm is None:
            self.hsm = HsmModel(top=self.model, mapping={})

    def candidate(self, subgraph_id: str) -> SimpleSubgraph:
        for sg in self.candidates:
            if sg.id == subgraph_id:
                return sg
        raise NotFoundError(f"no candidate region {subgraph_id!r}")

    def accepted(self) -> list[SimpleSubgraph]:
        return [self.candidate(d.subgraph_id) for d in self.decisions if d.accepted]

    def pending(self) -> list[SimpleSubgraph]:
        return [sg for sg in self.candidates if sg.id not in self.status]

    def cursor(self) -> SimpleSubgraph | None:
        """The next candidate still open for a decision, in rank order."""
        remaining = self.pending()
        return remaining[0] if remaining else None


def create_session(
    model: FsmModel,
    cap: int = DEFAULT_CAP,
    profile: DataProfile | None = None,
    table: GasTable | None = None,
) -> Session:
    candidates = find_simple_subgraphs(model, cap=cap)
    return Session(
        model=model,
        candidates=candidates,
        profile=profile or DataProfile(),
        table=table or GasTable(),
    )


def _flat_extent(hsm: HsmModel, h_id: str) -> frozenset[str]:
    """All original model states a hierarchical node stands for."""
    out: set[str] = set()
    stack = [h_id]
    while stack:
        current = stack.pop()
        nested = hsm.mapping[current]
        for state in nested.model.states:
            if state.id in hsm.mapping:
                stack.append(state.id)
            else:
                out.add(state.id)
    return frozenset(out)


def _translate(hsm: HsmModel, nodes: frozenset[str]) -> frozenset[str]:
    """Rewrite a flat node set against the current top machine.

    Hierarchical nodes whose whole extent lies inside the set replace
    their members; members folded away under a partially overlapping node
    (a shared boundary state) are dropped.
    """
    adjusted = set(nodes)
    for h_id in hsm.top.state_ids:
        if h_id not in hsm.mapping:
            continue
        extent = _flat_extent(hsm, h_id)
        if extent <= nodes:
            adjusted -= extent
            adjusted.add(h_id)
    return frozenset(adjusted & hsm.top.state_ids)


def _fold(session: Session, sg: SimpleSubgraph) -> HsmModel:
    hsm = session.hsm
    adjusted = _translate(hsm, sg.nodes)
    if len(adjusted) < 2:
        raise OverlapConflictError(
            f"region {sg.id} reduces to fewer than two states once earlier "
            "accepts are folded in; nothing left to move off chain"
        )
    verdict = is_simple_subgraph(hsm.top, adjusted)
    if verdict is None:
        raise OverlapConflictError(
            f"region {sg.id} is no longer a simple region of the folded machine"
        )
    entry, exit_ = verdict
    folded_sg = replace(sg, nodes=adjusted, entry=entry, exit=exit_)
    if adjusted == hsm.top.state_ids:
        collapsed = collapse_whole(hsm.top, folded_sg)
        return HsmModel(top=collapsed.top, mapping={**hsm.mapping, **collapsed.mapping})
    return extend_hsm(hsm, folded_sg)


def decide(
    session: Session,
    subgraph_id: str,
    accept: bool,
    allow_whole_graph: bool = False,
    note: str = "",
) -> Decision:
    """Record one decision; accepted regions fold into the machine at once.

    Accepting also marks every still-pending proper subset of the region
    as absorbed: those run off chain as part of the parent and are no
    longer independently decidable.
    """
    sg = session.candidate(subgraph_id)
    existing = session.status.get(subgraph_id)
    if existing == ABSORBED:
        raise AbsorbedError(
            f"region {subgraph_id} was absorbed by an accepted parent region"
        )
    if existing is not None:
        raise AlreadyDecidedError(f"region {subgraph_id} was already {existing}")

    if accept:
        if sg.whole_graph and not allow_whole_graph:
            raise WholeGraphConfirmationError(
                "accepting the whole-graph region moves the entire workflow "
                "off chain; pass the explicit confirmation flag to do that"
            )
        for prior in session.accepted():
            rel = classify_relation(session.model, prior, sg)
            if rel.kind == RelationKind.NESTED and sg.nodes < prior.nodes:
                raise AbsorbedError(
                    f"region {sg.id} lies inside accepted region {prior.id}; "
                    "it is already covered"
                )
            if rel.kind in (RelationKind.OVERLAP_SIMPLE, RelationKind.THEOREM_VIOLATION):
                raise OverlapConflictError(
                    f"region {sg.id} overlaps accepted region {prior.id} "
                    f"({rel.kind.value}); accept one or the other"
                )
        new_hsm = _fold(session, sg)
        restored = flatten(new_hsm)
        if not equivalent(restored, session.model):
            raise OverlapConflictError(
                f"folding region {sg.id} would not preserve the model; refused"
            )
        session.hsm = new_hsm

    decision = Decision(
        seq=len(session.decisions) + 1,
        subgraph_id=subgraph_id,
        accepted=accept,
        note=note,
    )
    session.decisions.append(decision)
    session.status[subgraph_id] = ACCEPTED if accept else REJECTED
    if accept:
        for other in session.candidates:
            if other.id not in session.status and other.nodes < sg.nodes:
                session.status[other.id] = ABSORBED
    return decision


def what_if(
    session: Session,
    subgraph_id: str,
    words: int | None = None,
    midpattern: Iterable[str] | None = None,
    frequencies: dict[str, int] | None = None,
) -> CostComparison:
    """Cost comparison for one candidate under an adjusted data profile.

    Purely explorative: nothing in the session changes.
    """
    sg = session.candidate(subgraph_id)
    base = session.profile
    probe = DataProfile(
        words=words if words is not None else base.words,
        boundary_words=base.boundary_words,
        midpattern_chain_states=(
            frozenset(midpattern) if midpattern is not None else base.midpattern_chain_states
        ),
        read_overrides=dict(base.read_overrides),
        write_overrides=dict(base.write_overrides),
        frequency=dict(frequencies) if frequencies is not None else dict(base.frequency),
    )
    return cost_off_chain(session.model, sg, probe, session.table)


def session_totals(session: Session) -> ContractTotals:
    accepted = session.accepted()
    profiles = {sg.id: session.profile for sg in accepted}
    return contract_totals(session.model, accepted, profiles, session.table)


def session_report(session: Session) -> dict[str, Any]:
    """Everything a decision surface needs in one document."""
    rows = []
    for sg in session.candidates:
        comparison = cost_off_chain(session.model, sg, session.profile, session.table)
        rows.append(
            {
                **sg.to_doc(),
                "pattern": classify_pattern(session.model, sg).to_doc(),
                "cost": comparison.to_doc(),
                "decision": session.status.get(sg.id),
            }
        )
    cursor = session.cursor()
    return {
        "candidates": rows,
        "decisions": [d.to_doc() for d in session.decisions],
        "cursor": None if cursor is None else cursor.id,
        "totals": session_totals(session).to_doc(),
        "hierarchical_nodes": sorted(session.hsm.mapping),
    }


def export_session(session: Session, out_dir: str | Path) -> dict[str, Any]:
    """Write the derived machine, bridge artifacts, and the decision log.

    Produces ``model.json``, ``hsm.json``, ``decision_log.json``,
    ``cost_report.json``, the per-region artifact files, and a top-level
    ``manifest.json`` naming all of them.
    """
    out = Path(out_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
        (out / "model.json").write_text(serialize(session.model), encoding="utf-8")
        (out / "hsm.json").write_text(serialize_hsm(session.hsm), encoding="utf-8")
        log_doc = [d.to_doc() for d in session.decisions]
        (out / "decision_log.json").write_text(
            json.dumps(log_doc, indent=2) + "\n", encoding="utf-8"
        )
        report = session_report(session)
        (out / "cost_report.json").write_text(
            json.dumps(report, indent=2, sort_keys=True) + "\n", encoding="utf-8"
        )
    except OSError as exc:
        raise IoError(f"cannot write session export to {out}: {exc}") from exc

    specs = [derive_bridge_spec(session.hsm, h) for h in sorted(session.hsm.mapping)]
    artifact_manifest = write_artifacts(specs, out / "artifacts") if specs else {"patterns": []}

    manifest = {
        "files": [
            "model.json",
            "hsm.json",
            "decision_log.json",
            "cost_report.json",
        ],
        "artifacts": artifact_manifest,
        "accepted": [sg.id for sg in session.accepted()],
        "hierarchical_nodes": sorted(session.hsm.mapping),
    }
    try:
        (out / "manifest.json").write_text(
            json.dumps(manifest, indent=2, sort_keys=True) + "\n", encoding="utf-8"
        )
    except OSError as exc:
        raise IoError(f"cannot write session export to {out}: {exc}") from exc
    return manifest


def save_session(session: Session, path: str | Path) -> None:
    """Persist as model plus append-only decision log; replayable."""
    doc = {
        "model": model_to_doc(session.model),
        "decisions": [d.to_doc() for d in session.decisions],
    }
    try:
        Path(path).write_text(json.dumps(doc, indent=2) + "\n", encoding="utf-8")
    except OSError as exc:
        raise IoError(f"cannot write session file {path}: {exc}") from exc


def load_session(
    path: str | Path,
    cap: int = DEFAULT_CAP,
    profile: DataProfile | None = None,
    table: GasTable | None = None,
) -> Session:
    """Rebuild a session by replaying its decision log.

    Logged decisions were all admitted once, so the replay re-applies
    them without re-confirmation (including a whole-graph accept).
    """
    try:
        raw = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise IoError(f"cannot read session file {path}: {exc}") from exc
    doc = json.loads(raw)
    model = model_from_doc(doc["model"])
    session = create_session(model, cap=cap, profile=profile, table=table)
    for entry in doc.get("decisions", []):
        decide(
            session,
            entry["subgraph"],
            entry["accepted"],
            allow_whole_graph=True,
            note=entry.get("note", ""),
        )
    return session
