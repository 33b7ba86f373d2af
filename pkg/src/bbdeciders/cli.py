"""Command line interface: ``bbdeciders simulate|decide|verify|diagram|db``."""

from __future__ import annotations

import argparse
import json
import os
import sys

from .db import SeedDatabase
from .diagram import render_spacetime
from .pipeline import config_from_mapping, parse_config_text, run_pipeline, verify_file
from .tm import Halted, parse_machine, simulate


def _parse_range(text: str):
    if ".." in text:
        a, b = text.split("..", 1)
        return int(a or 0), (int(b) if b else None)
    i = int(text)
    return i, i + 1


def _config(args):
    values = {}
    if args.config:
        with open(args.config) as fh:
            values.update(parse_config_text(fh.read()))
    for item in args.set or []:
        key, _, value = item.partition("=")
        values[key.strip()] = value.strip()
    if args.pipeline:
        values["pipeline"] = args.pipeline
    for key in ("halt_limit", "quick_halt_limit", "jobs"):
        if getattr(args, key) is not None:
            values[key] = getattr(args, key)
    return config_from_mapping(values)


def _write_results(results, out_dir):
    sink = sys.stdout
    if out_dir:
        os.makedirs(out_dir, exist_ok=True)
        sink = open(os.path.join(out_dir, "results.jsonl"), "w")
    try:
        for i, res in enumerate(results):
            cert = res.get("certificate")
            if out_dir and cert is not None:
                name = f"{i:06d}-{res['decider']}.json"
                with open(os.path.join(out_dir, name), "w") as fh:
                    json.dump(cert, fh, sort_keys=True, indent=1)
            sink.write(json.dumps(res, sort_keys=True) + "\n")
            sink.flush()
    finally:
        if sink is not sys.stdout:
            sink.close()


def cmd_simulate(args) -> int:
    table = parse_machine(args.machine)
    outcome = simulate(table, args.steps)
    if isinstance(outcome, Halted):
        print(json.dumps({"verdict": "halt", "step": outcome.step, "state": "ABCDEFGH"[outcome.state],
                          "read": outcome.read}))
    else:
        c = outcome.configuration
        lo, hi = c.extent
        print(json.dumps({"verdict": "running", "step": c.step, "state": "ABCDEFGH"[c.state],
                          "head": c.head, "ones": len(c.ones), "tape": c.word(lo, hi), "tape_start": lo}))
    return 0


def _db_machines(path, index, move_left_is_one):
    db = SeedDatabase(path, move_left_is_one)
    start, stop = _parse_range(index) if index else (0, None)
    return (table for _, table in db.iter_range(start, stop))


def cmd_decide(args) -> int:
    config = _config(args)
    if args.db:
        machines = _db_machines(args.db, args.index, not args.flip_move)
    elif args.machine:
        machines = args.machine
    else:
        machines = (line.strip() for line in sys.stdin if line.strip())
    _write_results(run_pipeline(machines, config), args.out)
    return 0


def cmd_db_scan(args) -> int:
    args.machine = None
    return cmd_decide(args)


def cmd_verify(args) -> int:
    failed = 0
    for report in verify_file(args.file, args.kind):
        print(json.dumps(report, sort_keys=True))
        failed += not report["ok"]
    return 1 if failed else 0


def cmd_diagram(args) -> int:
    image = render_spacetime(parse_machine(args.machine), args.steps, args.scale)
    image.save(args.out)
    print(f"wrote {args.out} ({image.width}x{image.height})")
    return 0


def _add_pipeline_options(p):
    p.add_argument("--pipeline", help="comma-separated decider names, in order")
    p.add_argument("--config", help="file of key = value lines (flags win)")
    p.add_argument("--set", action="append", metavar="KEY=VALUE", help="override one config key")
    p.add_argument("--halt-limit", dest="halt_limit", type=int)
    p.add_argument("--quick-halt-limit", dest="quick_halt_limit", type=int)
    p.add_argument("--jobs", type=int)
    p.add_argument("--out", help="directory for results.jsonl and certificate files")
    p.add_argument("--index", help="record range a..b of the database")
    p.add_argument("--flip-move", action="store_true", help="database move byte 0 means L")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bbdeciders", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="run a machine from the blank tape")
    p.add_argument("--machine", required=True)
    p.add_argument("--steps", type=int, required=True)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("decide", help="run the decider pipeline")
    p.add_argument("--machine", action="append", help="machine code (repeatable); stdin when absent")
    p.add_argument("--db", help="seed database file")
    _add_pipeline_options(p)
    p.set_defaults(func=cmd_decide)

    p = sub.add_parser("verify", help="check certificate files")
    p.add_argument("--kind", choices=["far", "bouncer"], required=True)
    p.add_argument("file")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("diagram", help="write a space-time diagram as PPM")
    p.add_argument("--machine", required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--scale", type=int, default=1)
    p.set_defaults(func=cmd_diagram)

    p = sub.add_parser("db", help="seed database commands")
    dbsub = p.add_subparsers(dest="db_command", required=True)
    q = dbsub.add_parser("scan", help="decide machines of a database")
    q.add_argument("db")
    _add_pipeline_options(q)
    q.set_defaults(func=cmd_db_scan)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
