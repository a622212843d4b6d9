"""Seeded generator for randomized workflow models.

Produces connected machines with 4 to 8 states, occasional self-loops,
parallel transitions, and quorum annotations, so the randomized suites
exercise the same structural variety the curated fixtures do.  The same
seed always yields the same model.
"""

from __future__ import annotations

import random
from collections.abc import Iterator

from ofc.model import FsmModel, StateNode, Transition, validate

_ACTORS = ("buyer", "seller", "agent", "inspector", "operator")


def random_model(seed: int) -> FsmModel:
    rng = random.Random(seed)
    n = rng.randint(4, 8)
    ids = [f"s{i}" for i in range(n)]

    states = [
        StateNode(
            id=sid,
            label=sid.replace("s", "state "),
            reads_words=rng.randint(0, 3),
            writes_words=rng.randint(0, 3),
            actors=frozenset(rng.sample(_ACTORS, rng.randint(0, 2))),
        )
        for sid in ids
    ]

    transitions: list[Transition] = []
    counter = 0

    def add(frm: str, to: str) -> None:
        nonlocal counter
        counter += 1
        transitions.append(
            Transition(
                id=f"t{counter:02d}",
                from_state=frm,
                to_state=to,
                method_name=f"step{counter}",
                actor=rng.choice(_ACTORS),
                quorum=rng.randint(2, 3) if rng.random() < 0.15 else None,
            )
        )

    # random spanning arborescence from s0 keeps every state reachable
    reached = [ids[0]]
    for sid in ids[1:]:
        add(rng.choice(reached), sid)
        reached.append(sid)

    extra = rng.randint(0, n)
    for _ in range(extra):
        frm, to = rng.choice(ids), rng.choice(ids)
        add(frm, to)
    if rng.random() < 0.3:
        looper = rng.choice(ids)
        add(looper, looper)
    if rng.random() < 0.2 and len(transitions) >= 2:
        twin = rng.choice(transitions)
        add(twin.from_state, twin.to_state)

    model = FsmModel(states=tuple(states), initial_state=ids[0], transitions=tuple(transitions))
    report = validate(model)
    assert report.ok, f"generator produced an invalid model (seed {seed}): {report.issues}"
    return model


def corpus(count: int = 200, start_seed: int = 1000) -> Iterator[tuple[int, FsmModel]]:
    for seed in range(start_seed, start_seed + count):
        yield seed, random_model(seed)
