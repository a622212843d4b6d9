"""Shipped example workflows, as canonical JSON documents.

``load_fixture(name)`` parses one of the bundled files; ``builders``
holds the code that produced them.  Regenerate with
``python -m ofc.fixtures`` after changing a builder.
"""

from __future__ import annotations

from importlib import resources

from ..errors import NotFoundError
from ..model import FsmModel, parse_model
from . import builders

__all__ = ["fixture_names", "fixture_text", "load_fixture", "builders"]


def fixture_names() -> list[str]:
    return sorted(builders.ALL_FIXTURES)


def fixture_text(name: str) -> str:
    if name not in builders.ALL_FIXTURES:
        raise NotFoundError(f"no bundled workflow named {name!r}; "
                            f"have: {', '.join(fixture_names())}")
    return (resources.files(__package__) / f"{name}.json").read_text(encoding="utf-8")


def load_fixture(name: str) -> FsmModel:
    return parse_model(fixture_text(name))
