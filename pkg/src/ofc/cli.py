"""Command-line entry points.

Subcommands mirror the pipeline stages: validate, discover, classify,
cost, session (optionally served over HTTP), export, simulate, gastable.
Structured output is JSON on stdout; problems print one line to stderr
and exit nonzero with the error code.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any

from .costs import DataProfile, GasTable, cost_off_chain
from .discovery import find_simple_subgraphs, subgraphs_to_doc, DEFAULT_CAP
from .errors import IoError, NotFoundError, OfcError
from .hsm import parse_hsm
from .model import parse_model, validate
from .patterns import classify_pattern
from .session import (
    create_session,
    export_session,
    load_session,
    save_session,
    session_report,
)
from .simulate import parse_trace, run_trace

DEFAULT_PORT = 7420


def _read_text(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise IoError(f"cannot read {path}: {exc}") from exc


def _load_model(path: str):
    return parse_model(_read_text(path))


def _emit(doc: Any, out: str | None = None) -> None:
    text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if out:
        try:
            Path(out).write_text(text, encoding="utf-8")
        except OSError as exc:
            raise IoError(f"cannot write {out}: {exc}") from exc
    else:
        sys.stdout.write(text)


def _gastable_from(path: str | None) -> GasTable:
    if path is None:
        return GasTable()
    return GasTable.from_doc(json.loads(_read_text(path)))


def _profile_from(args: argparse.Namespace) -> DataProfile:
    midpattern: frozenset[str] = frozenset()
    if getattr(args, "midpattern", None):
        midpattern = frozenset(s for s in args.midpattern.split(",") if s)
    return DataProfile(
        words=getattr(args, "words", None),
        midpattern_chain_states=midpattern,
    )


def cmd_validate(args: argparse.Namespace) -> int:
    model = _load_model(args.model)
    report = validate(model)
    _emit(
        {
            "ok": report.ok,
            "issues": [
                {"severity": i.severity, "code": i.code, "message": i.message}
                for i in report.issues
            ],
        }
    )
    return 0 if report.ok else 1


def cmd_discover(args: argparse.Namespace) -> int:
    model = _load_model(args.model)
    found = find_simple_subgraphs(model, cap=args.max_states)
    _emit(subgraphs_to_doc(found), args.out)
    return 0


def cmd_classify(args: argparse.Namespace) -> int:
    model = _load_model(args.model)
    found = find_simple_subgraphs(model, cap=args.max_states)
    rows = []
    for sg in found:
        kind = classify_pattern(model, sg)
        rows.append({"subgraph": sg.id, **kind.to_doc()})
    _emit(rows, args.out)
    return 0


def cmd_cost(args: argparse.Namespace) -> int:
    model = _load_model(args.model)
    found = find_simple_subgraphs(model, cap=args.max_states)
    target = next((sg for sg in found if sg.id == args.pattern), None)
    if target is None:
        raise NotFoundError(f"no candidate region {args.pattern!r} in this model")
    comparison = cost_off_chain(model, target, _profile_from(args), _gastable_from(args.gastable))
    _emit({"subgraph": target.id, **comparison.to_doc()})
    return 0


def cmd_session(args: argparse.Namespace) -> int:
    model = _load_model(args.model)
    if not args.serve:
        session = create_session(model, cap=args.max_states)
        _emit(session_report(session))
        if args.save:
            save_session(session, args.save)
        return 0

    import uvicorn

    from .service import create_app

    app = create_app(model, cap=args.max_states)
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


def cmd_export(args: argparse.Namespace) -> int:
    session = load_session(args.session, cap=args.max_states)
    manifest = export_session(session, args.out)
    _emit(manifest)
    return 0


def cmd_simulate(args: argparse.Namespace) -> int:
    hsm = parse_hsm(_read_text(args.hsm))
    trace = parse_trace(_read_text(args.trace))
    result = run_trace(
        hsm,
        trace=trace,
        profile=_profile_from(args),
        table=_gastable_from(args.gastable),
    )
    _emit(result.to_doc())
    return 0


def cmd_gastable(args: argparse.Namespace) -> int:
    _emit(_gastable_from(args.config).to_doc())
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ofc",
        description="Partition smart-contract workflow machines for off-chain execution.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_cap(p: argparse.ArgumentParser) -> None:
        p.add_argument(
            "--max-states",
            type=int,
            default=DEFAULT_CAP,
            help=f"largest model the exhaustive scan accepts (default {DEFAULT_CAP})",
        )

    p = sub.add_parser("validate", help="check a model document")
    p.add_argument("model")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("discover", help="find candidate regions, ranked")
    p.add_argument("model")
    add_cap(p)
    p.add_argument("--out", help="write JSON here instead of stdout")
    p.set_defaults(func=cmd_discover)

    p = sub.add_parser("classify", help="pattern taxonomy for every candidate")
    p.add_argument("model")
    add_cap(p)
    p.add_argument("--out", help="write JSON here instead of stdout")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("cost", help="gas comparison for one candidate")
    p.add_argument("model")
    add_cap(p)
    p.add_argument("--pattern", required=True, help="candidate region id")
    p.add_argument("--words", type=int, default=None, help="uniform per-state word count")
    p.add_argument("--midpattern", help="comma-separated states needing live chain access")
    p.add_argument("--gastable", help="gas table config file")
    p.set_defaults(func=cmd_cost)

    p = sub.add_parser("session", help="open a decision session")
    p.add_argument("model")
    add_cap(p)
    p.add_argument("--serve", action="store_true", help="serve the HTTP API and UI")
    p.add_argument("--port", type=int, default=DEFAULT_PORT)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--save", help="also write a replayable session file here")
    p.set_defaults(func=cmd_session)

    p = sub.add_parser("export", help="write artifacts for a saved session")
    p.add_argument("session", help="session file from --save")
    add_cap(p)
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("simulate", help="replay a trace against a hierarchical model")
    p.add_argument("hsm", help="hierarchical model document")
    p.add_argument("--trace", required=True, help="trace file (JSON array of ops)")
    p.add_argument("--words", type=int, default=None)
    p.add_argument("--midpattern", help="comma-separated states needing live chain access")
    p.add_argument("--gastable", help="gas table config file")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("gastable", help="show the effective gas table")
    p.add_argument("--config", help="gas table config file")
    p.set_defaults(func=cmd_gastable)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except OfcError as exc:
        sys.stderr.write(f"error [{exc.code}]: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
