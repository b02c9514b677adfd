"""Command-line front end: check, graph, gen, bench."""

from __future__ import annotations

import argparse
import csv
import json
import os
import random
import sys
import time
from fractions import Fraction

from .adt_models import is_aadt
from .checker_aadt import check_aadt
from .checker_queue import queue_check
from .checker_stack import stack_check
from .frontier import build_frontier_graph, to_dot
from .generator import gen_history, mutate_history
from .model import (
    HistoryError,
    concurrency_width,
    parse_history,
    serialize_history,
)
from .oracle import DEFAULT_CAP, CapExceeded, oracle_check

_ENGINES = {
    "aadt": check_aadt,
    "stack": stack_check,
    "queue": queue_check,
    "oracle": oracle_check,
}


def _default_engine(kind):
    if kind == "stack":
        return "stack"
    if kind == "queue":
        return "queue"
    return "aadt"


def _engine_for(kind, name):
    if name == "oracle":
        return "oracle"
    if name is None:
        return _default_engine(kind)
    if name not in _ENGINES:
        raise HistoryError(f"unknown engine {name!r}")
    if name != _default_engine(kind):
        raise HistoryError(f"engine {name!r} cannot check adt kind {kind!r}")
    return name


def _fmt_time(t: Fraction):
    if t.denominator == 1:
        return str(int(t))
    return f"{t.numerator}/{t.denominator}"


def _check_one(h, engine_name):
    t0 = time.perf_counter()
    verdict = _ENGINES[engine_name](h)
    elapsed_ms = (time.perf_counter() - t0) * 1000.0
    states = verdict.stats.get("states")
    if engine_name in ("stack", "oracle"):
        # the stack engine counts states of the transformed history and the
        # oracle counts none; report the input's own figure
        states = build_frontier_graph(h).n_states
    return verdict, states, elapsed_ms


def cmd_check(args):
    try:
        with open(args.file) as f:
            h = parse_history(f.read())
        engine_name = "oracle" if args.oracle else _engine_for(h.kind, args.engine)
        verdict, states, elapsed_ms = _check_one(h, engine_name)
    except (OSError, HistoryError, CapExceeded, ValueError) as e:
        print(json.dumps({"error": str(e)}), file=sys.stderr)
        return 2
    report = {
        "file": args.file,
        "kind": h.kind,
        "engine": engine_name,
        "linearizable": verdict.linearizable,
        "n": h.n,
        "k": concurrency_width(h),
        "states": states,
        "elapsed_ms": round(elapsed_ms, 3),
        "witness": None,
    }
    if args.witness and verdict.witness is not None:
        report["witness"] = [[opid, _fmt_time(t)] for opid, t in verdict.witness]
    print(json.dumps(report, indent=2))
    return 0 if verdict.linearizable else 1


def cmd_graph(args):
    try:
        with open(args.file) as f:
            h = parse_history(f.read())
    except (OSError, HistoryError) as e:
        print(str(e), file=sys.stderr)
        return 2
    print(to_dot(build_frontier_graph(h)))
    return 0


def cmd_gen(args):
    try:
        os.makedirs(args.dir, exist_ok=True)
    except OSError as e:
        print(str(e), file=sys.stderr)
        return 2
    picker = random.Random(f"corpus/{args.seed}/{args.mutate}")
    entries = []
    for i in range(args.count):
        h = gen_history(args.kind, args.n, args.k, f"{args.seed}/{i}")
        mutation = None
        if args.mutate > 0 and args.n > 0 and picker.random() < args.mutate:
            mut = mutate_history(h, f"{args.seed}/{i}")
            h, mutation = mut.history, mut.description
        if h.n <= DEFAULT_CAP:
            label = "linearizable" if oracle_check(h).linearizable else "not-linearizable"
        else:
            label = "unlabeled"
        name = f"h_{i:04d}.json"
        with open(os.path.join(args.dir, name), "w") as f:
            f.write(serialize_history(h) + "\n")
        entries.append({"file": name, "label": label, "mutation": mutation})
    manifest = {
        "kind": args.kind,
        "n": args.n,
        "k": args.k,
        "seed": args.seed,
        "count": args.count,
        "mutate": args.mutate,
        "entries": entries,
    }
    with open(os.path.join(args.dir, "manifest.json"), "w") as f:
        f.write(json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    return 0


def cmd_bench(args):
    try:
        names = sorted(
            f for f in os.listdir(args.dir)
            if f.endswith(".json") and f != "manifest.json"
        )
    except OSError as e:
        print(str(e), file=sys.stderr)
        return 2
    rows = []
    writer = csv.writer(sys.stdout)
    writer.writerow(["kind", "n", "k", "states", "engine", "millis"])
    for name in names:
        try:
            with open(os.path.join(args.dir, name)) as f:
                h = parse_history(f.read())
        except (OSError, HistoryError) as e:
            print(f"{name}: {e}", file=sys.stderr)
            return 2
        engine_name = _default_engine(h.kind)
        _, states, elapsed_ms = _check_one(h, engine_name)
        row = {
            "kind": h.kind,
            "n": h.n,
            "k": concurrency_width(h),
            "states": states,
            "engine": engine_name,
            "millis": round(elapsed_ms, 3),
        }
        rows.append(row)
        writer.writerow([row[c] for c in ("kind", "n", "k", "states", "engine", "millis")])
    if args.figures:
        from .reporting import render_figures

        for path in render_figures(rows, args.figures):
            print(f"wrote {path}", file=sys.stderr)
    return 0


def build_parser():
    p = argparse.ArgumentParser(prog="linmon", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="check one history file")
    c.add_argument("file")
    c.add_argument("--oracle", action="store_true", help="use the brute-force oracle")
    c.add_argument("--engine", choices=sorted(_ENGINES), help="force a specific engine")
    c.add_argument("--witness", action="store_true", help="include the witness in the report")
    c.set_defaults(fn=cmd_check)

    g = sub.add_parser("graph", help="print the frontier graph as DOT")
    g.add_argument("file")
    g.set_defaults(fn=cmd_graph)

    ge = sub.add_parser("gen", help="generate a seeded corpus")
    ge.add_argument("dir")
    ge.add_argument("--kind", required=True)
    ge.add_argument("--n", type=int, required=True)
    ge.add_argument("--k", type=int, required=True)
    ge.add_argument("--seed", required=True)
    ge.add_argument("--count", type=int, required=True)
    ge.add_argument("--mutate", type=float, default=0.0,
                    help="fraction of histories to mutate")
    ge.set_defaults(fn=cmd_gen)

    b = sub.add_parser("bench", help="time every history in a corpus directory")
    b.add_argument("dir")
    b.add_argument("--figures", metavar="DIR",
                   help="also render PNG figures into this directory")
    b.set_defaults(fn=cmd_bench)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except ValueError as e:
        print(str(e), file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
