"""Command-line entry point: ``eugroups analyze|verify|lattice|catalog``."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import builders
from .corpus import (
    CorpusEntry, CorpusError, RunOptions, default_corpus_path, dumps, emit_dot, lattice_json, load_corpus, run,
    summarize,
)
from .lattice import SubgroupLattice
from .perm import CapExceeded
from .table import LATTICE_CAP

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3


def _exit_code(results: list[dict]) -> int:
    s = summarize(results)
    if s["skipped_required"]:
        return EXIT_CAP
    if s["violations"] or s["expectation_mismatches"] or s["lemma_failures"]:
        return EXIT_VIOLATION
    return EXIT_OK


def _write(text: str, path: str | None) -> None:
    if path:
        Path(path).write_text(text)
    else:
        sys.stdout.write(text)


def _print_summary(results: list[dict]) -> None:
    for r in results:
        if r.get("skipped"):
            line = f"SKIP  {r['name']}: {r['reason']}"
        elif "lemmas" in r:
            bad = [x["lemma"] for x in r["lemmas"] if not x["passed"]]
            line = f"{'FAIL' if bad else 'ok  '}  {r['name']}: {len(r['lemmas'])} lemma checks" + \
                (f", failing {bad}" if bad else "")
        else:
            rep = r["report"]
            line = (f"{'ok  ' if 'VIOLATION' not in rep['consistency'].values() else 'FAIL'}  "
                    f"{r['name']}: |G|={rep['order']} |D|={rep['D_order']} "
                    f"E_U={rep['brute_EU']['value']} A={rep['verdict_A']} B={rep['verdict_B']}")
            if r["mismatches"]:
                line += f" MISMATCH {r['mismatches']}"
        print(line, file=sys.stderr)


def _entries_for(target: str):
    path = Path(target)
    if path.suffix == ".json" and path.exists():
        return load_corpus(path)
    return [CorpusEntry(target, builders.lookup(target))]


def cmd_analyze(args) -> int:
    entries = _entries_for(args.target)
    results = run(entries, RunOptions(theorem="AB", cap_order=args.cap_order, jobs=args.jobs))
    payload = results[0]["report"] if len(results) == 1 and "report" in results[0] else results
    _write(dumps(payload), args.report)
    _print_summary(results)
    return _exit_code(results)


def cmd_verify(args) -> int:
    path = args.corpus or default_corpus_path()
    entries = load_corpus(path)
    theorem = {"A": "A", "B": "AB", "lemmas": "lemmas", None: "AB"}[args.theorem]
    opts = RunOptions(theorem=theorem, cap_order=args.cap_order, jobs=args.jobs, seed=args.seed)
    results = run(entries, opts)
    _write(dumps({"results": results, "summary": summarize(results)}), args.report)
    _print_summary(results)
    return _exit_code(results)


def cmd_lattice(args) -> int:
    spec = builders.lookup(args.name)
    G = builders.build(spec)
    if G.order() > args.cap_order:
        raise CapExceeded(f"order {G.order()} exceeds cap {args.cap_order}")
    L = SubgroupLattice(G, cap=args.cap_order)
    text = emit_dot(L, spec.name) if args.format == "dot" else dumps(lattice_json(L, spec.name))
    _write(text, args.report)
    return EXIT_OK


def cmd_catalog(args) -> int:
    for name, spec in sorted(builders.builtin_catalog().items()):
        order = builders.predicted_order(spec)
        print(f"{name}\t{spec.kind}\t{order if order is not None else '?'}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cap-order", type=int, default=LATTICE_CAP,
                        help="largest group order to enumerate (default %(default)s)")
    common.add_argument("--jobs", type=int, default=1, help="worker processes")
    common.add_argument("--report", help="write JSON/DOT output here instead of stdout")

    p = argparse.ArgumentParser(prog="eugroups", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", parents=[common], help="theorem report for one group or corpus file")
    a.add_argument("target", help="catalog name or corpus .json file")
    a.set_defaults(func=cmd_analyze)

    v = sub.add_parser("verify", parents=[common], help="run a corpus")
    v.add_argument("--corpus", help="corpus file (default: shipped corpus)")
    v.add_argument("--theorem", choices=["A", "B", "lemmas"])
    v.add_argument("--seed", type=int, default=0, help="sampling seed for the lemma suite")
    v.set_defaults(func=cmd_verify)

    lat = sub.add_parser("lattice", parents=[common], help="export a subgroup lattice")
    lat.add_argument("name")
    lat.add_argument("--format", choices=["dot", "json"], default="dot")
    lat.set_defaults(func=cmd_lattice)

    c = sub.add_parser("catalog", help="list built-in groups")
    c.add_argument("--list", action="store_true", default=True)
    c.set_defaults(func=cmd_catalog)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (CorpusError, KeyError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except CapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP


if __name__ == "__main__":
    sys.exit(main())
