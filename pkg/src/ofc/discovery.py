"""Discovery of single-entry/single-exit regions in a workflow FSM.

A candidate region ("simple subgraph") is a set of at least two states with
exactly one member entered from outside, exactly one *different* member
exiting to the outside, and a weakly connected interior.  The initial state
and states without predecessors count as externally entered; states without
successors count as externally exiting.  Self-loops are internal edges and
never disqualify a candidate; they are also ignored when deciding entry and
exit, so a state whose only successor is itself still counts as exiting.

Enumeration is exhaustive over all subsets, so it is exponential in the
state count and guarded by a cap.  The subset walk runs on a compiled
kernel when the extension built, with a pure-Python twin as fallback; both
produce identical output.  ``is_simple_subgraph`` is an independent
set-based implementation of the same predicate, usable on its own and kept
deliberately separate from the kernels.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from enum import Enum
from typing import Any, Iterable, Iterator

from .errors import InvalidModelError, NotASubsetError, TooLargeError
from .model import FsmModel, validate

try:
    from ofc import _fastscan as _scan_impl

    KERNEL = "compiled"
except ImportError:  # extension not built; the pure twin behaves identically
    from ofc import _scan_py as _scan_impl

    KERNEL = "python"

__all__ = [
    "KERNEL",
    "DEFAULT_CAP",
    "SimpleSubgraph",
    "RelationKind",
    "PairRelation",
    "subgraph_id",
    "enumerate_subsets",
    "region_boundary",
    "is_simple_subgraph",
    "is_proper_subgraph",
    "find_simple_subgraphs",
    "classify_relation",
    "subgraphs_to_doc",
]

DEFAULT_CAP = 16
_KERNEL_LIMIT = 62


def subgraph_id(nodes: Iterable[str]) -> str:
    """Stable identifier derived from the member set alone."""
    digest = hashlib.sha256(",".join(sorted(nodes)).encode("utf-8")).hexdigest()
    return f"sg_{digest[:8]}"


@dataclass(frozen=True)
class SimpleSubgraph:
    """A discovered region: members, boundary, and its containment count.

    ``count`` is the number of other simple subgraphs properly contained in
    this one; ranking prefers high counts.  ``whole_graph`` flags the
    candidate covering every state.
    """

    nodes: frozenset[str]
    entry: str
    exit: str
    count: int = 0
    whole_graph: bool = False

    @property
    def id(self) -> str:
        return subgraph_id(self.nodes)

    @property
    def interior(self) -> frozenset[str]:
        return self.nodes - {self.entry, self.exit}

    def to_doc(self) -> dict[str, Any]:
        return {
            "id": self.id,
            "nodes": sorted(self.nodes),
            "entry": self.entry,
            "exit": self.exit,
            "count": self.count,
            "whole_graph": self.whole_graph,
        }


class RelationKind(str, Enum):
    DISJOINT = "disjoint"
    NESTED = "nested"
    BOUNDARY_SHARED = "boundary_shared"
    OVERLAP_SIMPLE = "overlap_simple"
    THEOREM_VIOLATION = "theorem_violation"


@dataclass(frozen=True)
class PairRelation:
    """How two simple subgraphs of one model relate to each other."""

    kind: RelationKind
    shared: frozenset[str]
    detail: str = ""
    witness: dict[str, Any] | None = None

    def to_doc(self) -> dict[str, Any]:
        doc: dict[str, Any] = {
            "kind": self.kind.value,
            "shared": sorted(self.shared),
            "detail": self.detail,
        }
        if self.witness is not None:
            doc["witness"] = self.witness
        return doc


def _sorted_ids(model: FsmModel) -> list[str]:
    return sorted(s.id for s in model.states)


def _adjacency(model: FsmModel) -> tuple[dict[str, set[str]], dict[str, set[str]]]:
    """Successor and predecessor sets with self-loops dropped.

    Boundary conditions are decided on the loop-free graph: a state whose
    only successor is itself is a sink and counts as exiting, one whose only
    predecessor is itself counts as entered.  Keeping the self-edge would
    instead let a looping trap state hide inside a region past its exit,
    which breaks the pairwise-relation guarantees.
    """
    succs: dict[str, set[str]] = {s.id: set() for s in model.states}
    preds: dict[str, set[str]] = {s.id: set() for s in model.states}
    for t in model.transitions:
        if t.from_state == t.to_state:
            continue
        if t.from_state in succs and t.to_state in preds:
            succs[t.from_state].add(t.to_state)
            preds[t.to_state].add(t.from_state)
    return succs, preds


def enumerate_subsets(model: FsmModel, cap: int = DEFAULT_CAP) -> Iterator[frozenset[str]]:
    """Yield every state subset of size >= 2, in a fixed bitmask order.

    The number of subsets is 2**n - n - 1; exceeding the cap raises
    ``TooLargeError`` before any work happens.
    """
    ids = _sorted_ids(model)
    n = len(ids)
    if n > min(cap, _KERNEL_LIMIT):
        raise TooLargeError(n, min(cap, _KERNEL_LIMIT))
    for mask in range(3, 1 << n):
        if mask.bit_count() < 2:
            continue
        yield frozenset(ids[i] for i in range(n) if mask >> i & 1)


def _entered_exited(model: FsmModel, members: frozenset[str]) -> tuple[list[str], list[str]]:
    """Members entered from outside the set, and members exiting to outside.

    The initial state and predecessor-less states count as entered from
    outside; successor-less states count as exiting to outside.  Both lists
    come back sorted for determinism.
    """
    succs, preds = _adjacency(model)
    entered = sorted(
        s
        for s in members
        if s == model.initial_state or not preds[s] or preds[s] - members
    )
    exited = sorted(s for s in members if not succs[s] or succs[s] - members)
    return entered, exited


def region_boundary(model: FsmModel, candidate: Iterable[str]) -> tuple[str, str] | None:
    """Boundary profile of a connected node set: its sole externally-entered
    member and sole externally-exiting member.

    Unlike the full region predicate, the two may be the same node; that
    happens when the set hangs on a single articulation state, for example
    a cycle that is entered and left through one state.  Returns None when
    the set has no such unique boundary or is not weakly connected over
    internal edges.  Raises ``NotASubsetError`` for members that are not
    states of the model.
    """
    members = frozenset(candidate)
    unknown = members - model.state_ids
    if unknown:
        raise NotASubsetError(f"not states of the model: {', '.join(sorted(unknown))}")
    if len(members) < 2:
        return None

    entered, exited = _entered_exited(model, members)
    if len(entered) != 1 or len(exited) != 1:
        return None
    entry, exit_ = entered[0], exited[0]

    # weak connectivity over internal edges only
    internal: dict[str, set[str]] = {s: set() for s in members}
    for t in model.transitions:
        if t.from_state in members and t.to_state in members:
            internal[t.from_state].add(t.to_state)
            internal[t.to_state].add(t.from_state)
    seen = {entry}
    frontier = [entry]
    while frontier:
        for nxt in internal[frontier.pop()]:
            if nxt not in seen:
                seen.add(nxt)
                frontier.append(nxt)
    if seen != members:
        return None
    return entry, exit_


def is_simple_subgraph(model: FsmModel, candidate: Iterable[str]) -> tuple[str, str] | None:
    """Decide the region predicate for one candidate set.

    Returns the (entry, exit) pair when the candidate qualifies, None when
    it does not.  A region that is entered and left through the same state
    is rejected here: execution could not tell its exit from a re-entry,
    so it is useless as an off-chain unit even though it has a coherent
    boundary.  Raises ``NotASubsetError`` for members that are not states
    of the model.
    """
    boundary = region_boundary(model, candidate)
    if boundary is None or boundary[0] == boundary[1]:
        return None
    return boundary


def is_proper_subgraph(inner: Iterable[str], outer: Iterable[str]) -> bool:
    """Strict containment of member sets."""
    inner_set, outer_set = frozenset(inner), frozenset(outer)
    return inner_set < outer_set


def _masks_for(model: FsmModel) -> tuple[list[str], list[int], list[int], int]:
    ids = _sorted_ids(model)
    index = {sid: i for i, sid in enumerate(ids)}
    succ = [0] * len(ids)
    pred = [0] * len(ids)
    for t in model.transitions:
        if t.from_state == t.to_state:
            continue  # boundary tests run on the loop-free graph
        f, to = index[t.from_state], index[t.to_state]
        succ[f] |= 1 << to
        pred[to] |= 1 << f
    return ids, succ, pred, index[model.initial_state]


def find_simple_subgraphs(model: FsmModel, cap: int = DEFAULT_CAP) -> list[SimpleSubgraph]:
    """Enumerate and rank all simple subgraphs of a valid model.

    Ranking is a total order: containment count descending, then size
    descending, then the sorted node-id tuple ascending.  The whole-graph
    candidate is included but flagged.
    """
    report = validate(model)
    if not report.ok:
        problems = "; ".join(i.message for i in report.issues if i.severity == "error")
        raise InvalidModelError(f"model fails validation: {problems}")

    ids, succ, pred, initial = _masks_for(model)
    n = len(ids)
    if n > min(cap, _KERNEL_LIMIT):
        raise TooLargeError(n, min(cap, _KERNEL_LIMIT))
    if n < 2:
        return []

    raw = _scan_impl.scan_masks(n, succ, pred, initial)
    full_mask = (1 << n) - 1
    counts = [0] * len(raw)
    for i, (mask_i, _, _) in enumerate(raw):
        for mask_j, _, _ in raw:
            if mask_j != mask_i and mask_j & mask_i == mask_j:
                counts[i] += 1

    found = [
        SimpleSubgraph(
            nodes=frozenset(ids[b] for b in range(n) if mask >> b & 1),
            entry=ids[entry],
            exit=ids[exit_],
            count=counts[i],
            whole_graph=mask == full_mask,
        )
        for i, (mask, entry, exit_) in enumerate(raw)
    ]
    found.sort(key=lambda sg: (-sg.count, -len(sg.nodes), tuple(sorted(sg.nodes))))
    return found


def classify_relation(model: FsmModel, a: SimpleSubgraph, b: SimpleSubgraph) -> PairRelation:
    """Classify how two simple subgraphs overlap.

    Every pair of genuine simple subgraphs falls into one of four shapes:
    disjoint, nested, sharing exactly one boundary node (the exit of one
    and entry of the other), or overlapping in a region whose sole entered
    member is the entry of one and whose sole exiting member is the exit
    of the other.  In that last shape the two boundary members usually
    differ, but they may coincide when the overlap is a cycle pinned to a
    single articulation state; that is still the crossed-boundary shape,
    just with the rest of the overlap riding along.  Anything else is
    reported as a violation with a witness; it is never repaired.
    """
    shared = a.nodes & b.nodes
    if not shared:
        return PairRelation(RelationKind.DISJOINT, shared)
    if a.nodes == b.nodes:
        return PairRelation(RelationKind.NESTED, shared, detail="identical node sets")
    if a.nodes < b.nodes or b.nodes < a.nodes:
        inner = a if a.nodes < b.nodes else b
        return PairRelation(
            RelationKind.NESTED, shared, detail=f"{inner.id} inside the other"
        )

    witness = {
        "a": a.to_doc(),
        "b": b.to_doc(),
        "shared": sorted(shared),
    }
    if len(shared) == 1:
        node = next(iter(shared))
        if (node == a.exit and node == b.entry) or (node == b.exit and node == a.entry):
            return PairRelation(
                RelationKind.BOUNDARY_SHARED,
                shared,
                detail=f"{node} joins the two regions end to start",
            )
        witness["reason"] = "shared node is not exit-of-one and entry-of-the-other"
        return PairRelation(
            RelationKind.THEOREM_VIOLATION, shared, detail=witness["reason"], witness=witness
        )

    boundary = region_boundary(model, shared)
    if boundary is None:
        witness["reason"] = "shared region has no single entered and single exiting member"
        return PairRelation(
            RelationKind.THEOREM_VIOLATION, shared, detail=witness["reason"], witness=witness
        )
    entry, exit_ = boundary
    crossed = (entry == a.entry and exit_ == b.exit) or (entry == b.entry and exit_ == a.exit)
    if not crossed:
        witness["reason"] = (
            "shared region boundary is not the crossed boundary of the pair: "
            f"shared entry {entry}, shared exit {exit_}"
        )
        return PairRelation(
            RelationKind.THEOREM_VIOLATION, shared, detail=witness["reason"], witness=witness
        )
    return PairRelation(
        RelationKind.OVERLAP_SIMPLE,
        shared,
        detail=f"overlap carries the crossed boundary {entry} -> {exit_}",
    )


def subgraphs_to_doc(subgraphs: Iterable[SimpleSubgraph]) -> list[dict[str, Any]]:
    return [sg.to_doc() for sg in subgraphs]
