"""Corpus files, batch runs, and lattice export (DOT and JSON)."""

from __future__ import annotations

import json
import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from . import builders
from .builders import GroupSpec
from .formations import is_supersoluble_chief, is_supersoluble_huppert
from .lattice import SubgroupLattice
from .lemmas import run_lemma_suite
from .perm import CapExceeded, parse_permutation
from .subnorm import Criterion, edge_set, status
from .table import LATTICE_CAP
from .verify import analyze

EXPECT_KEYS = ("order", "is_EU", "D_order")


class CorpusError(ValueError):
    """Malformed corpus file; ``line`` is 1-based."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    spec: GroupSpec
    expect: dict = field(default_factory=dict)
    required: bool = False
    line: int = 0


def default_corpus_path(which: str = "corpus") -> Path:
    return Path(str(resources.files("eugroups") / "data" / f"{which}.json"))


def _line_of(text: str, pos: int) -> int:
    return text.count("\n", 0, pos) + 1


def _split_array(text: str) -> list[tuple[int, object]]:
    """Decode a top-level JSON array, keeping each element's start offset."""
    dec = json.JSONDecoder()
    ws = re.compile(r"\s*")
    try:
        pos = ws.match(text, 0).end()
        if pos == len(text):
            return []
        if text[pos] != "[":
            raise CorpusError("corpus must be a JSON array", _line_of(text, pos))
        pos = ws.match(text, pos + 1).end()
        out = []
        if text[pos:pos + 1] == "]":
            return out
        while True:
            start = pos
            obj, pos = dec.raw_decode(text, pos)
            out.append((start, obj))
            pos = ws.match(text, pos).end()
            if text[pos:pos + 1] == ",":
                pos = ws.match(text, pos + 1).end()
                continue
            if text[pos:pos + 1] == "]":
                return out
            raise CorpusError("expected ',' or ']'", _line_of(text, pos))
    except json.JSONDecodeError as exc:
        raise CorpusError(exc.msg, exc.lineno) from None


def _entry(obj, line: int) -> CorpusEntry:
    if not isinstance(obj, dict):
        raise CorpusError("entry must be an object", line)
    name = obj.get("name")
    if not isinstance(name, str) or not name:
        raise CorpusError("entry needs a non-empty string 'name'", line)
    try:
        if "builtin" in obj:
            spec = builders.lookup(obj["builtin"])
        elif "affine" in obj:
            a = obj["affine"]
            spec = builders.affine(int(a["p"]), int(a["k"]), a["matrices"], name)
        elif "generators" in obj:
            degree = int(obj["degree"])
            gens = [str(g) for g in obj["generators"]]
            for g in gens:
                parse_permutation(g, degree)
            spec = builders.explicit(degree, gens, name)
        else:
            raise CorpusError(f"entry {name!r} needs 'builtin', 'affine' or 'generators'", line)
    except CorpusError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise CorpusError(f"entry {name!r}: {exc}", line) from None
    expect = obj.get("expect", {})
    if not isinstance(expect, dict) or set(expect) - set(EXPECT_KEYS):
        raise CorpusError(f"entry {name!r}: 'expect' keys must be among {EXPECT_KEYS}", line)
    return CorpusEntry(name, spec, dict(expect), bool(obj.get("required", False)), line)


def parse_corpus(text: str) -> list[CorpusEntry]:
    entries = [_entry(obj, _line_of(text, pos)) for pos, obj in _split_array(text)]
    names = [e.name for e in entries]
    dup = sorted({n for n in names if names.count(n) > 1})
    if dup:
        raise CorpusError(f"duplicate entry names: {dup}")
    return sorted(entries, key=lambda e: e.name)


def load_corpus(path) -> list[CorpusEntry]:
    return parse_corpus(Path(path).read_text())


# running ---------------------------------------------------------------------

@dataclass(frozen=True)
class RunOptions:
    theorem: str = "AB"          # "A", "B", "AB" or "lemmas"
    cap_order: int = LATTICE_CAP
    jobs: int = 1
    seed: int = 0


def status_agreement(L: SubgroupLattice) -> dict:
    """Prime-index and supersoluble statuses node by node."""
    P = edge_set(L, Criterion.PRIME_INDEX)
    U = edge_set(L, Criterion.SUPERSOLUBLE)
    diff = [H.id for H in L if status(L, H, P) is not status(L, H, U)]
    return {"nodes": len(L), "disagreements": len(diff), "first": diff[0] if diff else None}


def _expectations(entry: CorpusEntry, rep: dict) -> list[dict]:
    got = {"order": rep["order"], "is_EU": rep["brute_EU"]["value"], "D_order": rep["D_order"]}
    return [{"key": k, "expected": v, "actual": got[k]}
            for k, v in sorted(entry.expect.items()) if got[k] != v]


def run_entry(entry: CorpusEntry, options: RunOptions) -> dict:
    out: dict = {"name": entry.name, "required": entry.required}
    G = builders.build(entry.spec)
    n = G.order()
    if n > options.cap_order:
        out.update(skipped=True, reason=f"order {n} exceeds cap {options.cap_order}")
        return out
    try:
        L = SubgroupLattice(G, cap=options.cap_order)
    except CapExceeded as exc:
        out.update(skipped=True, reason=str(exc))
        return out
    out["skipped"] = False
    out["lattice"] = {"subgroups": len(L), "classes": len(L.classes)}
    if options.theorem == "lemmas":
        out["lemmas"] = [r.to_dict() for r in run_lemma_suite({entry.name: L}, options.seed)]
        out["mismatches"] = []
        return out
    rep = analyze(L, entry.name, theorem_B="B" in options.theorem).to_dict()
    if "A" not in options.theorem:
        rep["verdict_A"] = rep["consistency"]["A"] = "SKIPPED"
    out["report"] = rep
    out["supersoluble_tests"] = {"chief": is_supersoluble_chief(L), "huppert": is_supersoluble_huppert(L)}
    if L.soluble:
        out["status_agreement"] = status_agreement(L)
    out["mismatches"] = _expectations(entry, rep)
    return out


def _run_one(args):
    return run_entry(*args)


def run(entries, options: RunOptions = RunOptions()) -> list[dict]:
    """Run every entry; results come back in name order whatever the worker count."""
    entries = sorted(entries, key=lambda e: e.name)
    jobs = [(e, options) for e in entries]
    if options.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=options.jobs) as pool:
            results = list(pool.map(_run_one, jobs))
    else:
        results = [_run_one(j) for j in jobs]
    return sorted(results, key=lambda r: r["name"])


def summarize(results: list[dict]) -> dict:
    verdicts = {"A": {}, "B": {}}
    violations, mismatches, skipped_required, lemma_failures = [], [], [], []
    literal = [0, 0]
    for r in results:
        if r.get("skipped"):
            if r["required"]:
                skipped_required.append(r["name"])
            continue
        if r["mismatches"]:
            mismatches.append(r["name"])
        for lem in r.get("lemmas", []):
            if not lem["passed"]:
                lemma_failures.append(f"{lem['group']}:{lem['lemma']}")
        rep = r.get("report")
        if rep is None:
            continue
        for t in ("A", "B"):
            v = rep["consistency"][t]
            verdicts[t][v] = verdicts[t].get(v, 0) + 1
            if v == "VIOLATION":
                violations.append(f"{r['name']}:{t}")
        tb = rep.get("theorem_B", {})
        if "literal_agrees" in tb:
            literal[0] += bool(tb["literal_agrees"])
            literal[1] += 1
    return {
        "entries": len(results),
        "verdicts": verdicts,
        "violations": violations,
        "expectation_mismatches": mismatches,
        "skipped_required": skipped_required,
        "lemma_failures": lemma_failures,
        "literal_B_agreement": f"{literal[0]}/{literal[1]}",
    }


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


# lattice export --------------------------------------------------------------

def emit_dot(L: SubgroupLattice, name: str = "G") -> str:
    """One node per conjugacy class, one arrow per class-level maximal inclusion."""
    cls_of = {i: c for c, members in enumerate(L.classes) for i in members}
    lines = [f'digraph "{name}" {{', "  rankdir=BT;", "  node [shape=box];"]
    for c, members in enumerate(L.classes):
        H = L[members[0]]
        lines.append(f'  c{c} [label="{H.order} × {len(members)}"];')
    arrows = sorted({(cls_of[k], cls_of[l], m) for k, l, m in L.edges})
    for a, b, m in arrows:
        lines.append(f'  c{a} -> c{b} [label="{m}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def lattice_json(L: SubgroupLattice, name: str = "G") -> dict:
    T = L.table
    return {
        "name": name,
        "order": L.order,
        "nodes": [{"id": H.id, "order": H.order, "class": H.cls,
                   "generators": [str(T.perms[g]) for g in H.gens]} for H in L],
        "classes": [list(c) for c in L.classes],
        "edges": [{"sub": k, "super": l, "index": m} for k, l, m in L.edges],
    }
