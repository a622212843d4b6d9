"""Hierarchical folding of accepted regions.

Replacing a region collapses its members into one hierarchical state on
the top machine and records the region's machine, entry, and exit in a
flat mapping.  External transitions into the entry are retargeted at the
hierarchical state, external transitions out of the exit are re-sourced
from it, and internal transitions move into the nested machine; ids are
preserved throughout, so flattening restores the original machine exactly
(up to ordering) rather than merely isomorphically.

The document form extends the plain model format with ``hierarchical:
true`` state flags and a single top-level ``mappings`` section shared by
all nesting levels.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, replace
from typing import Any

from .discovery import SimpleSubgraph, is_simple_subgraph
from .errors import (
    BrokenMappingError,
    ModelSyntaxError,
    NotFoundError,
    WholeGraphError,
)
from .model import FsmModel, StateNode, model_from_doc, model_to_doc

__all__ = [
    "NestedModel",
    "HsmModel",
    "hierarchical_id",
    "replace_with_hsm",
    "extend_hsm",
    "collapse_whole",
    "flatten",
    "equivalent",
    "serialize_hsm",
    "parse_hsm",
    "hsm_to_doc",
    "hsm_from_doc",
]


@dataclass(frozen=True)
class NestedModel:
    """A region's machine with its recorded boundary."""

    model: FsmModel
    entry: str
    exit: str


@dataclass(frozen=True)
class HsmModel:
    top: FsmModel
    mapping: dict[str, NestedModel]

    @property
    def hierarchical_ids(self) -> frozenset[str]:
        return frozenset(self.mapping)


def hierarchical_id(nodes) -> str:
    """Deterministic id for the state replacing a member set."""
    digest = hashlib.sha256(",".join(sorted(nodes)).encode("utf-8")).hexdigest()
    return f"h_{digest[:8]}"


def _fold_once(model: FsmModel, sg: SimpleSubgraph) -> tuple[FsmModel, str, NestedModel]:
    members = sg.nodes
    verdict = is_simple_subgraph(model, members)
    if verdict != (sg.entry, sg.exit):
        raise NotFoundError(
            f"{sorted(members)} with boundary {sg.entry} -> {sg.exit} is not a "
            f"simple subgraph of the model"
        )

    h_id = hierarchical_id(members)
    if h_id in model.state_ids:
        raise NotFoundError(f"hierarchical id {h_id} already taken in the model")

    actors: set[str] = set()
    for m in members:
        actors |= model.state(m).actors
    h_state = StateNode(
        id=h_id,
        label=f"[{sg.entry}..{sg.exit}]",
        reads_words=0,
        writes_words=0,
        actors=frozenset(actors),
        hierarchical=True,
    )

    nested_states = tuple(s for s in model.states if s.id in members)
    nested_transitions = tuple(
        t for t in model.transitions if t.from_state in members and t.to_state in members
    )
    nested = NestedModel(
        model=FsmModel(
            states=nested_states, initial_state=sg.entry, transitions=nested_transitions
        ),
        entry=sg.entry,
        exit=sg.exit,
    )

    top_states = tuple(s for s in model.states if s.id not in members) + (h_state,)
    top_transitions = []
    for t in model.transitions:
        inside_from = t.from_state in members
        inside_to = t.to_state in members
        if inside_from and inside_to:
            continue
        if inside_to:
            t = replace(t, to_state=h_id)
        elif inside_from:
            t = replace(t, from_state=h_id)
        top_transitions.append(t)

    initial = h_id if model.initial_state in members else model.initial_state
    top = FsmModel(
        states=top_states, initial_state=initial, transitions=tuple(top_transitions)
    )
    return top, h_id, nested


def replace_with_hsm(model: FsmModel, sg: SimpleSubgraph) -> HsmModel:
    """Collapse one region of a flat model into a hierarchical state.

    Refuses the whole-graph candidate (``WholeGraphError``); a deliberate
    whole-graph fold goes through ``collapse_whole``.  Raises
    ``NotFoundError`` when the claimed region is not a simple subgraph of
    this model with the claimed boundary.
    """
    if sg.nodes == model.state_ids:
        raise WholeGraphError(
            "region covers the whole graph; use collapse_whole if that is intended"
        )
    top, h_id, nested = _fold_once(model, sg)
    return HsmModel(top=top, mapping={h_id: nested})


def extend_hsm(hsm: HsmModel, sg: SimpleSubgraph) -> HsmModel:
    """Apply a further replacement to an already folded machine's top."""
    if sg.nodes == hsm.top.state_ids:
        raise WholeGraphError(
            "region covers the whole top graph; use collapse_whole if that is intended"
        )
    top, h_id, nested = _fold_once(hsm.top, sg)
    mapping = dict(hsm.mapping)
    mapping[h_id] = nested
    return HsmModel(top=top, mapping=mapping)


def collapse_whole(model: FsmModel, sg: SimpleSubgraph) -> HsmModel:
    """Fold the whole graph into a single hierarchical state, explicitly."""
    if sg.nodes != model.state_ids:
        raise NotFoundError("collapse_whole expects the whole-graph region")
    verdict = is_simple_subgraph(model, sg.nodes)
    if verdict != (sg.entry, sg.exit):
        raise NotFoundError("whole graph is not simple with the claimed boundary")
    h_id = hierarchical_id(sg.nodes)
    actors: set[str] = set()
    for s in model.states:
        actors |= s.actors
    h_state = StateNode(
        id=h_id,
        label=f"[{sg.entry}..{sg.exit}]",
        actors=frozenset(actors),
        hierarchical=True,
    )
    nested = NestedModel(model=model, entry=sg.entry, exit=sg.exit)
    top = FsmModel(states=(h_state,), initial_state=h_id, transitions=())
    return HsmModel(top=top, mapping={h_id: nested})


def flatten(hsm: HsmModel) -> FsmModel:
    """Inline every hierarchical state recursively.

    Raises ``BrokenMappingError`` for a hierarchical flag without a
    mapping, a mapping key that no machine references, or a cyclic
    mapping.
    """
    mapping = hsm.mapping
    current = hsm.top
    consumed: set[str] = set()

    while True:
        hierarchical = [s for s in current.states if s.hierarchical]
        for state in hierarchical:
            if state.id not in mapping:
                raise BrokenMappingError(
                    f"state {state.id!r} is flagged hierarchical but has no mapping entry"
                )
            if state.id in consumed:
                raise BrokenMappingError(f"mapping for {state.id!r} is cyclic")
        if not hierarchical:
            break
        state = hierarchical[0]
        nested = mapping[state.id]
        consumed.add(state.id)
        states = tuple(s for s in current.states if s.id != state.id) + tuple(
            nested.model.states
        )
        transitions = []
        for t in current.transitions:
            from_state = nested.exit if t.from_state == state.id else t.from_state
            to_state = nested.entry if t.to_state == state.id else t.to_state
            if (from_state, to_state) != (t.from_state, t.to_state):
                t = replace(t, from_state=from_state, to_state=to_state)
            transitions.append(t)
        transitions.extend(nested.model.transitions)
        initial = nested.entry if current.initial_state == state.id else current.initial_state
        current = FsmModel(
            states=states, initial_state=initial, transitions=tuple(transitions)
        )

    unused = set(mapping) - consumed
    if unused:
        raise BrokenMappingError(
            f"mapping entries reference no hierarchical state: {', '.join(sorted(unused))}"
        )
    return current


def equivalent(a: FsmModel, b: FsmModel) -> bool:
    """Exact structural identity up to transition ordering.

    State ids, the initial state, and the multiset of (from, to, method)
    edges must all match; ids are preserved by the transform, so no
    isomorphism search is needed or wanted.
    """
    if a.state_ids != b.state_ids or a.initial_state != b.initial_state:
        return False
    edges_a = sorted((t.from_state, t.to_state, t.method_name) for t in a.transitions)
    edges_b = sorted((t.from_state, t.to_state, t.method_name) for t in b.transitions)
    return edges_a == edges_b


def hsm_to_doc(hsm: HsmModel) -> dict[str, Any]:
    doc = model_to_doc(hsm.top)
    doc["mappings"] = {
        h_id: {
            "entry": nested.entry,
            "exit": nested.exit,
            "model": model_to_doc(nested.model),
        }
        for h_id, nested in sorted(hsm.mapping.items())
    }
    return doc


def serialize_hsm(hsm: HsmModel) -> str:
    return json.dumps(hsm_to_doc(hsm), indent=2) + "\n"


def hsm_from_doc(doc: Any) -> HsmModel:
    if not isinstance(doc, dict):
        raise ModelSyntaxError("top level: must be an object")
    mappings_raw = doc.get("mappings", {})
    if not isinstance(mappings_raw, dict):
        raise ModelSyntaxError("top level: field 'mappings' must be an object")
    base = {k: v for k, v in doc.items() if k != "mappings"}
    top = model_from_doc(base)
    mapping: dict[str, NestedModel] = {}
    for h_id, entry_doc in mappings_raw.items():
        if not isinstance(entry_doc, dict):
            raise ModelSyntaxError(f"mappings[{h_id!r}]: must be an object")
        for key in ("entry", "exit", "model"):
            if key not in entry_doc:
                raise ModelSyntaxError(f"mappings[{h_id!r}]: missing field {key!r}")
        mapping[h_id] = NestedModel(
            model=model_from_doc(entry_doc["model"]),
            entry=str(entry_doc["entry"]),
            exit=str(entry_doc["exit"]),
        )
    return HsmModel(top=top, mapping=mapping)


def parse_hsm(text: str) -> HsmModel:
    """Parse a hierarchical (or plain) model document."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelSyntaxError(exc.msg, line=exc.lineno) from exc
    return hsm_from_doc(doc)
