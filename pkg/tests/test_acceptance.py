"""Acceptance gate: one test per criterion, each recording a PASS/FAIL line.

Run ``pytest tests/test_acceptance.py -s`` to see the lines inline; they are
also printed in the terminal summary.
"""

import json
import time

import pytest

import oracles as O
from conftest import ACCEPTANCE
from eugroups.builders import build, lookup
from eugroups.cli import main
from eugroups.corpus import RunOptions, default_corpus_path, load_corpus, run
from eugroups.formations import Formation, node_is_nilpotent, residual
from eugroups.lattice import SubgroupLattice
from eugroups.lemmas import neither_witness_29, run_lemma_suite
from eugroups.verify import analyze


def record(k, ok, detail):
    ACCEPTANCE[k] = (bool(ok), detail)
    print(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {detail}")
    assert ok, detail


@pytest.fixture(scope="module")
def corpus():
    return load_corpus(default_corpus_path())


@pytest.fixture(scope="module")
def controls():
    return load_corpus(default_corpus_path("controls"))


@pytest.fixture(scope="module")
def corpus_results(corpus):
    return run(corpus, RunOptions())


@pytest.fixture(scope="module")
def control_results(controls):
    return run(controls, RunOptions())


def timed_report(name):
    t = time.perf_counter()
    L = SubgroupLattice(build(lookup(name)))
    rep = analyze(L, name)
    return L, rep, time.perf_counter() - t


def test_criterion_1_order12_affine():
    L, rep, dt = timed_report("A4_as_example41")
    ok = (rep.D_order == 4 and L.order // rep.D_order == 3 and rep.brute_EU.value is True
          and rep.verdict_A == "CONFIRMS_A" and dt < 1.0)
    record(1, ok, f"|D|={rep.D_order} |G/D|={L.order // rep.D_order} E_U={rep.brute_EU.value} "
                  f"{rep.verdict_A} {dt:.2f}s")


def test_criterion_2_order1176_affine():
    L, rep, dt = timed_report("SL23_affine7")
    D = residual(L, Formation.SUPERSOLUBLE)
    nil = node_is_nilpotent(L, D)
    ok = (rep.D_order == 392 and not nil and rep.brute_EU.value is True
          and rep.verdict_A == "CONFIRMS_A" and dt < 600)
    w = rep.brute_EU.witness or {}
    record(2, ok, f"|D|={rep.D_order} nilpotent(D)={nil} E_U={rep.brute_EU.value} "
                  f"(witness order {w.get('order')}) {rep.verdict_A} {dt:.1f}s")


def test_criterion_3_s4():
    L, rep, dt = timed_report("S4")
    w = rep.brute_EU.witness
    C3_class = {i for i in L.class_of(L[w["id"]])}
    subs = {frozenset(L.table.perms[i].array for i in H.mask.nonzero()[0]) for H in L}
    G = max(subs, key=len)
    oracle = {O.chain_status(G, frozenset(L.table.perms[i].array for i in L[j].mask.nonzero()[0]),
                             subs, "U") for j in C3_class}
    vi = rep.conditions["vi"]
    ok = (rep.brute_EU.value is False and w["order"] == 3 and oracle == {"NEITHER"}
          and not vi.passed and vi.witness["order"] == 12 and rep.verdict_A == "CONFIRMS_A" and dt < 5)
    record(3, ok, f"E_U={rep.brute_EU.value} witness order {w['order']} (oracle {sorted(oracle)}), "
                  f"(vi) witness order {vi.witness['order']}, {rep.verdict_A} {dt:.2f}s")


def test_criterion_4_theorem_a(corpus_results):
    reps = [r["report"] for r in corpus_results if not r["skipped"]]
    eligible = [r for r in reps if r["soluble"] and not r["supersoluble"] and r["order"] <= 2500]
    eu = sum(r["brute_EU"]["value"] is True for r in eligible)
    bad = [r["name"] for r in reps if r["verdict_A"] != "CONFIRMS_A"]
    ok = len(eligible) >= 30 and 0 < eu < len(eligible) and not bad
    record(4, ok, f"{len(eligible)} eligible groups, {eu} E_U, violations {bad}")


def test_criterion_5_theorem_b(corpus_results):
    reps = [r["report"] for r in corpus_results if not r["skipped"]]
    bad = [r["name"] for r in reps if r["verdict_B"] != "CONFIRMS_B"]
    lit = sum(r["theorem_B"]["literal_agrees"] for r in reps)
    record(5, not bad, f"{len(reps) - len(bad)}/{len(reps)} CONFIRMS_B; literal-in-G reading agrees "
                       f"{lit}/{len(reps)}")


def test_criterion_6_prime_index_vs_supersoluble(corpus_results):
    sol = [r for r in corpus_results if "status_agreement" in r]
    nodes = sum(r["status_agreement"]["nodes"] for r in sol)
    diff = sum(r["status_agreement"]["disagreements"] for r in sol)
    record(6, diff == 0 and sol, f"{len(sol)} soluble groups, {nodes} nodes, {diff} disagreements")


def test_criterion_7_huppert(corpus_results, control_results):
    rs = [r for r in corpus_results + control_results if not r["skipped"]]
    bad = [r["name"] for r in rs if r["supersoluble_tests"]["chief"] != r["supersoluble_tests"]["huppert"]]
    record(7, not bad, f"{len(rs) - len(bad)}/{len(rs)} agree")


def test_criterion_8_lemmas(corpus, controls):
    lattices = {e.name: SubgroupLattice(build(e.spec)) for e in corpus + controls}
    res = run_lemma_suite(lattices, seed=0)
    failed = [f"{r.group}:{r.lemma}" for r in res if not r.passed]
    needed = {"2.1(1)", "2.1(2)", "2.1(3)", "2.1(4)", "2.1(5)", "2.2", "2.3", "2.4(i)",
              "2.5[N]", "2.5[U]", "2.6[U]", "2.7", "2.8[U]", "2.9(i)", "2.9(ii)"}
    exercised = {r.lemma for r in res if r.instances > 0}
    witnesses = {}
    for name in ("A5", "S5"):
        H = neither_witness_29(lattices[name])
        witnesses[name] = H.order if H is not None else None
    ok = not failed and needed <= exercised and all(witnesses.values())
    record(8, ok, f"{len(res)} lemma records, failures {failed}, unexercised {sorted(needed - exercised)}, "
                  f"2.9(ii) NEITHER witness orders {witnesses}")


def test_criterion_9_lattice_oracle(corpus, controls):
    mism, checked = [], 0
    for e in corpus + controls:
        G = build(e.spec)
        if G.order() > 200:
            continue
        E = O.closure([g.array for g in G.generators], G.degree)
        subs = O.all_subgroups(E, G.degree)
        cls = O.conjugacy_classes(E, subs)
        L = SubgroupLattice(G)
        checked += 1
        if (len(L), len(L.classes)) != (len(subs), len(cls)):
            mism.append(e.name)
    S4 = SubgroupLattice(build(lookup("S4")))
    ok = not mism and (len(S4), len(S4.classes)) == (30, 11)
    record(9, ok, f"{checked} groups of order <= 200, mismatches {mism}; S4 {len(S4)}/{len(S4.classes)}")


def test_criterion_10_determinism(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    ca = main(["verify", "--report", str(a)])
    cb = main(["verify", "--report", str(b)])
    same = a.read_bytes() == b.read_bytes()
    n = len(json.loads(a.read_text())["results"])
    record(10, same and ca == cb == 0, f"{n} entries, byte-identical={same}, exit codes {ca},{cb}")
