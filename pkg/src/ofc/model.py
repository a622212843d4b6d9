"""Workflow FSM documents: parse, validate, serialize.

A model is a finite state machine describing a contract workflow: states
carry per-execution chain-data sizes (words read and written by the method
that enters them), transitions carry the method signature and the acting
party.  The document format is JSON with a fixed canonical field order so
that serialization is byte-stable and diffable.

Parsing and validation are deliberately separate: ``parse_model`` rejects
only malformed documents (bad JSON, missing or mistyped fields, duplicate
ids), while ``validate`` reports semantic issues on a well-formed model
(dangling endpoints, unreachable states, missing initial state).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any, Mapping

from .errors import DuplicateIdError, ModelSyntaxError

__all__ = [
    "ParamSpec",
    "StateNode",
    "Transition",
    "FsmModel",
    "Issue",
    "ValidationReport",
    "parse_model",
    "validate",
    "serialize",
    "model_from_doc",
    "model_to_doc",
]


@dataclass(frozen=True)
class ParamSpec:
    """One named parameter of a method signature."""

    name: str
    words: int = 1

    def to_doc(self) -> dict[str, Any]:
        return {"name": self.name, "words": self.words}


@dataclass(frozen=True)
class StateNode:
    """A workflow state with its chain-data profile.

    ``reads_words`` and ``writes_words`` are the words of chain data the
    method firing into this state reads and writes.  ``hierarchical`` marks
    states that stand for a nested machine; plain models leave it False.
    """

    id: str
    label: str = ""
    reads_words: int = 0
    writes_words: int = 0
    actors: frozenset[str] = frozenset()
    hierarchical: bool = False

    def to_doc(self) -> dict[str, Any]:
        doc: dict[str, Any] = {
            "id": self.id,
            "label": self.label,
            "reads_words": self.reads_words,
            "writes_words": self.writes_words,
            "actors": sorted(self.actors),
        }
        if self.hierarchical:
            doc["hierarchical"] = True
        return doc


@dataclass(frozen=True)
class Transition:
    """A labeled directed edge: ``method_name`` fired by ``actor``."""

    id: str
    from_state: str
    to_state: str
    method_name: str
    inputs: tuple[ParamSpec, ...] = ()
    outputs: tuple[ParamSpec, ...] = ()
    actor: str = ""
    quorum: int | None = None

    def to_doc(self) -> dict[str, Any]:
        doc: dict[str, Any] = {
            "id": self.id,
            "from": self.from_state,
            "to": self.to_state,
            "method_name": self.method_name,
            "inputs": [p.to_doc() for p in self.inputs],
            "outputs": [p.to_doc() for p in self.outputs],
            "actor": self.actor,
        }
        if self.quorum is not None:
            doc["quorum"] = self.quorum
        return doc


@dataclass(frozen=True, eq=False)
class FsmModel:
    """A parsed workflow machine.

    States and transitions are kept in document order, but two models
    compare equal whenever they agree as sets: canonical serialization
    reorders by id, and round-tripping must not change the model.
    """

    states: tuple[StateNode, ...]
    initial_state: str
    transitions: tuple[Transition, ...]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FsmModel):
            return NotImplemented
        return (
            self.initial_state == other.initial_state
            and frozenset(self.states) == frozenset(other.states)
            and frozenset(self.transitions) == frozenset(other.transitions)
        )

    def __hash__(self) -> int:
        return hash(
            (self.initial_state, frozenset(self.states), frozenset(self.transitions))
        )

    def state(self, state_id: str) -> StateNode:
        return self.states_by_id[state_id]

    @property
    def states_by_id(self) -> dict[str, StateNode]:
        cached = self.__dict__.get("_states_by_id")
        if cached is None:
            cached = {s.id: s for s in self.states}
            self.__dict__["_states_by_id"] = cached
        return cached

    @property
    def state_ids(self) -> frozenset[str]:
        return frozenset(s.id for s in self.states)


@dataclass(frozen=True)
class Issue:
    severity: str  # "error" | "warning"
    code: str
    message: str

    def to_doc(self) -> dict[str, str]:
        return {"severity": self.severity, "code": self.code, "message": self.message}


@dataclass(frozen=True)
class ValidationReport:
    issues: tuple[Issue, ...] = ()

    @property
    def ok(self) -> bool:
        return not any(i.severity == "error" for i in self.issues)

    def to_doc(self) -> dict[str, Any]:
        return {"ok": self.ok, "issues": [i.to_doc() for i in self.issues]}


def _expect(doc: Mapping[str, Any], key: str, kinds: tuple[type, ...], where: str) -> Any:
    if key not in doc:
        raise ModelSyntaxError(f"{where}: missing required field {key!r}")
    value = doc[key]
    if not isinstance(value, kinds) or isinstance(value, bool) and bool not in kinds:
        names = " or ".join(k.__name__ for k in kinds)
        raise ModelSyntaxError(f"{where}: field {key!r} must be {names}")
    return value


def _expect_nonneg(doc: Mapping[str, Any], key: str, where: str) -> int:
    value = _expect(doc, key, (int,), where)
    if value < 0:
        raise ModelSyntaxError(f"{where}: field {key!r} must be nonnegative")
    return value


def _params_from_doc(raw: Any, where: str) -> tuple[ParamSpec, ...]:
    if not isinstance(raw, list):
        raise ModelSyntaxError(f"{where}: must be an array of parameter objects")
    params = []
    for i, item in enumerate(raw):
        if not isinstance(item, dict):
            raise ModelSyntaxError(f"{where}[{i}]: must be an object")
        name = _expect(item, "name", (str,), f"{where}[{i}]")
        words = item.get("words", 1)
        if not isinstance(words, int) or isinstance(words, bool) or words < 0:
            raise ModelSyntaxError(f"{where}[{i}]: field 'words' must be a nonnegative integer")
        params.append(ParamSpec(name=name, words=words))
    return tuple(params)


def _state_from_doc(doc: Any, index: int) -> StateNode:
    where = f"states[{index}]"
    if not isinstance(doc, dict):
        raise ModelSyntaxError(f"{where}: must be an object")
    state_id = _expect(doc, "id", (str,), where)
    if not state_id:
        raise ModelSyntaxError(f"{where}: id must be nonempty")
    actors_raw = doc.get("actors", [])
    if not isinstance(actors_raw, list) or not all(isinstance(a, str) for a in actors_raw):
        raise ModelSyntaxError(f"{where}: field 'actors' must be an array of strings")
    hierarchical = doc.get("hierarchical", False)
    if not isinstance(hierarchical, bool):
        raise ModelSyntaxError(f"{where}: field 'hierarchical' must be a boolean")
    return StateNode(
        id=state_id,
        label=str(doc.get("label", "")),
        reads_words=_expect_nonneg(doc, "reads_words", where),
        writes_words=_expect_nonneg(doc, "writes_words", where),
        actors=frozenset(actors_raw),
        hierarchical=hierarchical,
    )


def _transition_from_doc(doc: Any, index: int) -> Transition:
    where = f"transitions[{index}]"
    if not isinstance(doc, dict):
        raise ModelSyntaxError(f"{where}: must be an object")
    quorum = doc.get("quorum")
    if quorum is not None and (not isinstance(quorum, int) or isinstance(quorum, bool) or quorum < 1):
        raise ModelSyntaxError(f"{where}: field 'quorum' must be a positive integer")
    return Transition(
        id=_expect(doc, "id", (str,), where),
        from_state=_expect(doc, "from", (str,), where),
        to_state=_expect(doc, "to", (str,), where),
        method_name=_expect(doc, "method_name", (str,), where),
        inputs=_params_from_doc(doc.get("inputs", []), f"{where}.inputs"),
        outputs=_params_from_doc(doc.get("outputs", []), f"{where}.outputs"),
        actor=str(doc.get("actor", "")),
        quorum=quorum,
    )


def model_from_doc(doc: Any) -> FsmModel:
    """Build a model from a decoded document, checking shape and id uniqueness."""
    if not isinstance(doc, dict):
        raise ModelSyntaxError("top level: must be an object")
    states_raw = _expect(doc, "states", (list,), "top level")
    transitions_raw = _expect(doc, "transitions", (list,), "top level")
    initial = _expect(doc, "initial_state", (str,), "top level")

    states = tuple(_state_from_doc(s, i) for i, s in enumerate(states_raw))
    seen: set[str] = set()
    for s in states:
        if s.id in seen:
            raise DuplicateIdError(f"duplicate state id {s.id!r}")
        seen.add(s.id)

    transitions = tuple(_transition_from_doc(t, i) for i, t in enumerate(transitions_raw))
    seen.clear()
    for t in transitions:
        if t.id in seen:
            raise DuplicateIdError(f"duplicate transition id {t.id!r}")
        seen.add(t.id)

    return FsmModel(states=states, initial_state=initial, transitions=transitions)


def parse_model(text: str) -> FsmModel:
    """Parse a model document from JSON text."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelSyntaxError(exc.msg, line=exc.lineno) from exc
    return model_from_doc(doc)


def model_to_doc(model: FsmModel) -> dict[str, Any]:
    """Canonical document form: states and transitions sorted by id."""
    return {
        "states": [s.to_doc() for s in sorted(model.states, key=lambda s: s.id)],
        "initial_state": model.initial_state,
        "transitions": [t.to_doc() for t in sorted(model.transitions, key=lambda t: t.id)],
    }


def serialize(model: FsmModel) -> str:
    """Render the canonical document: stable key order, two-space indent."""
    return json.dumps(model_to_doc(model), indent=2) + "\n"


def _reachable(model: FsmModel) -> set[str]:
    """States reachable from the initial state along directed transitions."""
    adjacency: dict[str, list[str]] = {}
    for t in model.transitions:
        adjacency.setdefault(t.from_state, []).append(t.to_state)
    seen = {model.initial_state}
    frontier = [model.initial_state]
    while frontier:
        current = frontier.pop()
        for nxt in adjacency.get(current, ()):
            if nxt not in seen:
                seen.add(nxt)
                frontier.append(nxt)
    return seen


def validate(model: FsmModel) -> ValidationReport:
    """Check semantic well-formedness; never raises."""
    issues: list[Issue] = []
    ids = [s.id for s in model.states]
    id_set = set(ids)

    if len(ids) != len(id_set):
        dupes = sorted({i for i in ids if ids.count(i) > 1})
        issues.append(Issue("error", "duplicate_state", f"duplicate state ids: {', '.join(dupes)}"))
    t_ids = [t.id for t in model.transitions]
    if len(t_ids) != len(set(t_ids)):
        dupes = sorted({i for i in t_ids if t_ids.count(i) > 1})
        issues.append(
            Issue("error", "duplicate_transition", f"duplicate transition ids: {', '.join(dupes)}")
        )

    if not model.states:
        issues.append(Issue("error", "empty", "model has no states"))
        return ValidationReport(tuple(issues))

    if model.initial_state not in id_set:
        issues.append(
            Issue(
                "error",
                "missing_initial",
                f"initial state {model.initial_state!r} is not a declared state",
            )
        )

    for t in model.transitions:
        for end, value in (("from", t.from_state), ("to", t.to_state)):
            if value not in id_set:
                issues.append(
                    Issue(
                        "error",
                        "dangling_endpoint",
                        f"transition {t.id!r} {end}-endpoint {value!r} is not a declared state",
                    )
                )

    if model.initial_state in id_set:
        unreachable = sorted(id_set - _reachable(model))
        for state_id in unreachable:
            issues.append(
                Issue("error", "unreachable", f"state {state_id!r} is unreachable from the initial state")
            )

    dispatch: dict[tuple[str, str], list[str]] = {}
    for t in model.transitions:
        dispatch.setdefault((t.from_state, t.method_name), []).append(t.id)
    for (state_id, method), tids in sorted(dispatch.items()):
        if len(tids) > 1:
            issues.append(
                Issue(
                    "warning",
                    "ambiguous_dispatch",
                    f"state {state_id!r} has {len(tids)} transitions for method {method!r}; "
                    f"invocation picks the lowest transition id",
                )
            )

    return ValidationReport(tuple(issues))
