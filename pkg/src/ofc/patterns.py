"""Interaction-pattern classification for discovered regions.

Two classification routes exist on purpose.  ``classify_pattern`` is the
structural route: it counts the maximum number of internally
vertex-disjoint entry-to-exit paths and labels the region Sequence (one
path covering everything), Branching (two or more), or Other (cycles, off
path structure).  ``strict_sequence`` and ``strict_m_of_n`` are the brittle
literal matchers for the known fixed shapes: a bare chain, and N equal
length branches between a fork and a join.  The strict matchers reject
small variations by design (unequal branch lengths, self-loops, parallel
transitions); the structural route absorbs them.  When a strict matcher
also accepts, the result records which one.

Quorum is never inferred from shape.  It is read from ``quorum``
annotations on the transitions that join into the region's exit, and only
kept when it fits inside the branch count.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from enum import Enum
from typing import Any, Iterable

from .discovery import SimpleSubgraph, _entered_exited
from .errors import NotASubsetError
from .model import FsmModel

__all__ = [
    "Boundary",
    "PatternName",
    "StrictMatch",
    "PatternKind",
    "determine_start_end",
    "classify_pattern",
    "strict_sequence",
    "strict_m_of_n",
]


@dataclass(frozen=True)
class Boundary:
    entry: str
    exit: str


class PatternName(str, Enum):
    SEQUENCE = "sequence"
    BRANCHING = "branching"
    OTHER = "other"


class StrictMatch(str, Enum):
    SEQUENCE_STRICT = "sequence_strict"
    TWO_PARTY = "two_party"
    M_OF_N = "m_of_n"


@dataclass(frozen=True)
class PatternKind:
    """Classification result; ``branch_count`` is meaningful for Branching."""

    kind: PatternName
    branch_count: int = 1
    quorum: int | None = None
    strict_match: StrictMatch | None = None

    def to_doc(self) -> dict[str, Any]:
        return {
            "kind": self.kind.value,
            "branch_count": self.branch_count,
            "quorum": self.quorum,
            "strict_match": self.strict_match.value if self.strict_match else None,
        }


def determine_start_end(model: FsmModel, nodes: Iterable[str]) -> Boundary | None:
    """Unique externally-entered and externally-exiting nodes, if both exist.

    Agrees with the discovery predicate's (entry, exit) on every simple
    subgraph; unlike the predicate it skips the size and connectivity
    checks, so it also answers on sets that are not simple.
    """
    members = frozenset(nodes)
    unknown = members - model.state_ids
    if unknown:
        raise NotASubsetError(f"not states of the model: {', '.join(sorted(unknown))}")
    if not members:
        return None
    entered, exited = _entered_exited(model, members)
    if len(entered) != 1 or len(exited) != 1 or entered[0] == exited[0]:
        return None
    return Boundary(entry=entered[0], exit=exited[0])


def _internal_transitions(model: FsmModel, members: frozenset[str]):
    return [t for t in model.transitions if t.from_state in members and t.to_state in members]


def _distinct_edges(model: FsmModel, members: frozenset[str]) -> set[tuple[str, str]]:
    """Distinct internal (from, to) pairs, self-loops included."""
    return {
        (t.from_state, t.to_state) for t in _internal_transitions(model, members)
    }


def _is_chain(edges: set[tuple[str, str]], members: frozenset[str], entry: str, exit_: str) -> bool:
    """Chain test over distinct edges: one straight walk covering everything.

    Parallel transitions collapse into one distinct edge and are tolerated;
    self-loops and any off-walk edge are not.
    """
    if any(u == v for u, v in edges):
        return False
    succs: dict[str, set[str]] = {m: set() for m in members}
    preds: dict[str, set[str]] = {m: set() for m in members}
    for u, v in edges:
        succs[u].add(v)
        preds[v].add(u)
    if preds[entry] or succs[exit_]:
        return False
    current = entry
    seen = {entry}
    while current != exit_:
        if len(succs[current]) != 1:
            return False
        (current,) = succs[current]
        if current in seen or len(preds[current]) != 1:
            return False
        seen.add(current)
    return seen == members


def _max_disjoint_paths(
    edges: set[tuple[str, str]], members: frozenset[str], entry: str, exit_: str
) -> int:
    """Maximum internally vertex-disjoint entry-to-exit paths (unit max-flow).

    Interior nodes get capacity one by the usual in/out split; entry and
    exit are uncapacitated.  Parallel transitions were already collapsed,
    so a direct entry-to-exit edge contributes exactly one path.
    """
    capacity: dict[tuple[str, str], int] = {}
    adjacency: dict[str, set[str]] = {}

    def arc(u: str, v: str, cap: int) -> None:
        capacity[(u, v)] = capacity.get((u, v), 0) + cap
        capacity.setdefault((v, u), 0)
        adjacency.setdefault(u, set()).add(v)
        adjacency.setdefault(v, set()).add(u)

    for m in members:
        if m not in (entry, exit_):
            arc(f"{m}/in", f"{m}/out", 1)
    source, sink = f"{entry}/out", f"{exit_}/in"
    adjacency.setdefault(source, set())
    adjacency.setdefault(sink, set())
    for u, v in edges:
        if u == v:
            continue
        u_out = source if u == entry else f"{u}/out"
        if u == exit_:
            continue  # edges out of the exit never lie on an entry-exit path
        v_in = sink if v == exit_ else f"{v}/in"
        if v == entry:
            continue
        arc(u_out, v_in, 1)

    flow = 0
    while True:
        parent: dict[str, str] = {source: source}
        queue = deque([source])
        while queue and sink not in parent:
            u = queue.popleft()
            for v in sorted(adjacency[u]):
                if v not in parent and capacity.get((u, v), 0) > 0:
                    parent[v] = u
                    queue.append(v)
        if sink not in parent:
            return flow
        node = sink
        while node != source:
            prev = parent[node]
            capacity[(prev, node)] -= 1
            capacity[(node, prev)] += 1
            node = prev
        flow += 1


def _covers_all(
    edges: set[tuple[str, str]], members: frozenset[str], entry: str, exit_: str
) -> bool:
    """True when every member sits on some directed entry-to-exit path."""
    forward: dict[str, set[str]] = {m: set() for m in members}
    backward: dict[str, set[str]] = {m: set() for m in members}
    for u, v in edges:
        if u != v:
            forward[u].add(v)
            backward[v].add(u)

    def reach(start: str, adjacency: dict[str, set[str]]) -> set[str]:
        seen = {start}
        frontier = [start]
        while frontier:
            for nxt in adjacency[frontier.pop()]:
                if nxt not in seen:
                    seen.add(nxt)
                    frontier.append(nxt)
        return seen

    return reach(entry, forward) & reach(exit_, backward) == members


def _annotated_quorum(model: FsmModel, sg: SimpleSubgraph) -> int | None:
    """Largest quorum annotation on internal transitions joining the exit."""
    values = [
        t.quorum
        for t in _internal_transitions(model, sg.nodes)
        if t.to_state == sg.exit and t.quorum is not None
    ]
    return max(values) if values else None


def classify_pattern(model: FsmModel, sg: SimpleSubgraph) -> PatternKind:
    """Structural classification of a simple subgraph.

    Self-loops count as internal cycles and classify as Other, matching
    the strict matchers' refusal of them; the simple-subgraph predicate
    itself is unaffected.
    """
    members = sg.nodes
    edges = _distinct_edges(model, members)
    loop_free = {(u, v) for u, v in edges if u != v}
    has_self_loop = len(loop_free) != len(edges)

    branch_count = _max_disjoint_paths(loop_free, members, sg.entry, sg.exit)
    quorum = _annotated_quorum(model, sg)

    if not has_self_loop and _is_chain(edges, members, sg.entry, sg.exit):
        kind = PatternName.SEQUENCE
        branch_count = 1
    elif (
        not has_self_loop
        and branch_count >= 2
        and _covers_all(loop_free, members, sg.entry, sg.exit)
    ):
        kind = PatternName.BRANCHING
    else:
        kind = PatternName.OTHER
        branch_count = max(branch_count, 1)

    if quorum is not None and not 1 <= quorum <= branch_count:
        quorum = None

    strict: StrictMatch | None = None
    if strict_sequence(model, members):
        strict = StrictMatch.SEQUENCE_STRICT
    elif strict_m_of_n(model, members, quorum or 1) is not None:
        strict = StrictMatch.TWO_PARTY if branch_count == 2 else StrictMatch.M_OF_N

    return PatternKind(kind=kind, branch_count=branch_count, quorum=quorum, strict_match=strict)


def strict_sequence(model: FsmModel, nodes: Iterable[str]) -> bool:
    """Literal chain matcher: one transition per hop, no tolerance.

    Every node has exactly one internal outgoing transition except the
    last, exactly one internal incoming except the first, and the walk
    from first to last covers the set.  Self-loops or parallel transitions
    between the same pair of states break the match.
    """
    members = frozenset(nodes)
    boundary = determine_start_end(model, members)
    if boundary is None:
        return False
    internal = _internal_transitions(model, members)
    pairs = [(t.from_state, t.to_state) for t in internal]
    if len(pairs) != len(set(pairs)):
        return False
    return _is_chain(set(pairs), members, boundary.entry, boundary.exit)


def strict_m_of_n(model: FsmModel, nodes: Iterable[str], quorum: int) -> frozenset[str] | None:
    """Literal fork-join matcher: N equal-length chain branches, N >= quorum.

    The shape is a fork at the entry into N >= 2 vertex-disjoint chains of
    identical length that all join at the exit, nothing else: no direct
    entry-to-exit edge, no cross edges, no self-loops, no parallel
    transitions.  Unequal branch lengths do not match; the structural
    classifier is the route that tolerates such variations.

    Returns the matched node set, or None.
    """
    members = frozenset(nodes)
    boundary = determine_start_end(model, members)
    if boundary is None:
        return None
    entry, exit_ = boundary.entry, boundary.exit
    internal = _internal_transitions(model, members)
    pairs = [(t.from_state, t.to_state) for t in internal]
    if len(pairs) != len(set(pairs)):
        return None
    edges = set(pairs)
    if any(u == v for u, v in edges):
        return None
    if (entry, exit_) in edges:
        return None

    succs: dict[str, set[str]] = {m: set() for m in members}
    preds: dict[str, set[str]] = {m: set() for m in members}
    for u, v in edges:
        succs[u].add(v)
        preds[v].add(u)
    if preds[entry] or succs[exit_]:
        return None

    interior = members - {entry, exit_}
    if not interior:
        return None
    for m in interior:
        if len(preds[m]) != 1 or len(succs[m]) != 1:
            return None

    lengths: list[int] = []
    used: set[str] = set()
    for start in sorted(succs[entry]):
        length = 0
        current = start
        while current != exit_:
            if current not in interior or current in used:
                return None
            used.add(current)
            length += 1
            (current,) = succs[current]
        lengths.append(length)
    if used != interior:
        return None
    if len(set(lengths)) != 1:
        return None
    n_branches = len(lengths)
    if n_branches < 2 or n_branches < quorum:
        return None
    return members
