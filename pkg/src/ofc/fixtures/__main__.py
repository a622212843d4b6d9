"""Print a bundled workflow, or regenerate all of them from the builders.

With a fixture name as argument the JSON document goes to stdout, ready to
pipe into a file for the CLI.  With no arguments every bundled document is
rewritten in place from its builder.
"""

from __future__ import annotations

import pathlib
import sys

from ..model import serialize, validate
from .builders import ALL_FIXTURES


def regenerate() -> None:
    here = pathlib.Path(__file__).parent
    for name, build in sorted(ALL_FIXTURES.items()):
        model = build()
        report = validate(model)
        if not report.ok:
            raise SystemExit(f"{name}: {[i.message for i in report.issues]}")
        (here / f"{name}.json").write_text(serialize(model), encoding="utf-8")
        print(f"wrote {name}.json ({len(model.states)} states)")


def main(argv: list[str]) -> None:
    if not argv:
        regenerate()
        return
    if len(argv) > 1 or argv[0] in {"-h", "--help"}:
        names = ", ".join(sorted(ALL_FIXTURES))
        raise SystemExit(f"usage: python3 -m ofc.fixtures [name]\nnames: {names}")
    name = argv[0]
    if name not in ALL_FIXTURES:
        names = ", ".join(sorted(ALL_FIXTURES))
        raise SystemExit(f"unknown fixture {name!r}; names: {names}")
    print(serialize(ALL_FIXTURES[name]()))


if __name__ == "__main__":
    main(sys.argv[1:])
