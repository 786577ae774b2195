"""Instance checks for the auxiliary lemmas on subnormality, residuals and criticality.

Every check walks one lattice and returns a :class:`LemmaResult`.  Checks that
quantify over pairs of subgroups sample them with a seeded RNG so that the
suite is reproducible.
"""

from __future__ import annotations

import random
from math import gcd
from dataclasses import asdict, dataclass, field

from .formations import (
    Formation, is_critical, is_supersoluble_chief, is_supersoluble_huppert, is_U_central,
    node_is_nilpotent, node_is_soluble, node_is_supersoluble, residual, section_in,
)
from .lattice import (
    Subgroup, SubgroupLattice, fitting, frattini, maximal_subgroups, minimal_normal_subgroups,
    normal_subgroups,
)
from .subnorm import Criterion, Status, edge_set, is_chain_subnormal_in, status
from .table import is_prime, is_prime_power, prime_factors
from .verify import brute_EU, image_node, quotient_lattice

CRITICAL_REP_LIMIT = 6
CRITICAL_REP_ORDER = 400
QUOTIENT_ORDER_LIMIT = 500
QUOTIENTS_PER_GROUP = 3


@dataclass
class LemmaResult:
    group: str
    lemma: str
    passed: bool
    instances: int
    witness: dict | None = None

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass
class _Acc:
    group: str
    lemma: str
    instances: int = 0
    witness: dict | None = field(default=None)

    def check(self, ok: bool, **witness) -> None:
        self.instances += 1
        if not ok and self.witness is None:
            self.witness = witness

    def result(self) -> LemmaResult:
        return LemmaResult(self.group, self.lemma, self.witness is None, self.instances, self.witness)


def _proper(L: SubgroupLattice) -> list[Subgroup]:
    return [H for H in L if H.order > 1 and H.id != L.top.id]


def _sample(rng: random.Random, items: list, k: int) -> list:
    return items if len(items) <= k else rng.sample(items, k)


def _subnormal(L: SubgroupLattice, H: Subgroup, top: Subgroup | None = None) -> bool:
    E = edge_set(L, Criterion.SUPERSOLUBLE)
    if top is None or top.id == L.top.id:
        return E.reach[H.id]
    return is_chain_subnormal_in(L, H, top, E)


# Lemma 2.1 -------------------------------------------------------------------

def lemma_2_1(L: SubgroupLattice, name: str, rng: random.Random, samples: int) -> list[LemmaResult]:
    E = edge_set(L, Criterion.SUPERSOLUBLE)
    subn = [H for H in L if E.reach[H.id]]
    nodes = list(L)
    D = residual(L, Formation.SUPERSOLUBLE)

    a1 = _Acc(name, "2.1(1)")
    for H in _sample(rng, subn, samples):
        for K in _sample(rng, nodes, 4):
            I = L.intersect(H, K)
            a1.check(_subnormal(L, I, K), H=H.id, K=K.id, intersection=I.id)

    a3 = _Acc(name, "2.1(3)")
    for H in _sample(rng, subn, samples):
        for K in _sample(rng, L.subgroups_of(H), 4):
            if _subnormal(L, K, H):
                a3.check(E.reach[K.id], K=K.id, H=H.id)

    a4 = _Acc(name, "2.1(4)")
    for K in L.supergroups(D):
        a4.check(E.reach[K.id], K=K.id, D=D.id)

    a5 = _Acc(name, "2.1(5)")
    for H in _sample(rng, subn, samples):
        if not node_is_supersoluble(L, H):
            continue
        for K in _sample(rng, L.subgroups_of(H), 4):
            a5.check(E.reach[K.id], K=K.id, H=H.id)

    a2 = _Acc(name, "2.1(2)")
    if L.order <= QUOTIENT_ORDER_LIMIT:
        normals = [N for N in normal_subgroups(L) if 1 < N.order < L.order]
        for N in normals[:QUOTIENTS_PER_GROUP]:
            LQ, hom = quotient_lattice(L, N)
            EQ = edge_set(LQ, Criterion.SUPERSOLUBLE)
            for H in _sample(rng, subn, samples):
                img = image_node(LQ, hom, H)
                a2.check(EQ.reach[img.id], H=H.id, N=N.id, image_order=img.order)
    return [a.result() for a in (a1, a2, a3, a4, a5)]


# Lemma 2.2 -------------------------------------------------------------------

def lemma_2_2(L: SubgroupLattice, name: str) -> LemmaResult:
    acc = _Acc(name, "2.2")
    T = L.table
    for R in minimal_normal_subgroups(L):
        central = is_U_central(L, R)
        for M in maximal_subgroups(L):
            if L.join(M, R).id != L.top.id:
                continue
            core = T.core_mask(M.mask, L.top_gens)
            quot = section_in(L, L.top, core, Formation.SUPERSOLUBLE)
            acc.check(quot == central, M=M.id, R=R.id, quotient_supersoluble=quot, U_central=central)
    return acc.result()


# Lemma 2.3 (nilpotent E) -----------------------------------------------------

def lemma_2_3(L: SubgroupLattice, name: str) -> LemmaResult:
    acc = _Acc(name, "2.3")
    Phi = frattini(L)
    minimal = minimal_normal_subgroups(L)
    for E in normal_subgroups(L):
        if E.order == 1 or not node_is_nilpotent(L, E) or L.intersect(E, Phi).order != 1:
            continue
        J = L.bottom
        for R in minimal:
            if R <= E:
                J = L.join(J, R)
        acc.check(J.id == E.id, E=E.id, join_of_minimal_normal=J.id)
    return acc.result()


# Lemma 2.4 -------------------------------------------------------------------

def lemma_2_4(L: SubgroupLattice, name: str, is_EU: bool) -> list[LemmaResult]:
    a1 = _Acc(name, "2.4(i)")
    a2 = _Acc(name, "2.4(ii)")
    if is_EU:
        E = edge_set(L, Criterion.SUPERSOLUBLE)
        for H in _proper(L):
            if E.reach[H.id]:
                a1.check(node_is_supersoluble(L, H), H=H.id)
        if L.soluble:
            D = residual(L, Formation.SUPERSOLUBLE)
            F = fitting(L)
            DPhi = L.join(D, frattini(L))
            a2.check(F <= DPhi, F=F.id, D_Phi=DPhi.id)
    return [a1.result(), a2.result()]


# Lemmas 2.5 and 2.6 on critical groups --------------------------------------

def _chief_factor(L: SubgroupLattice, lower: Subgroup, upper: Subgroup) -> bool:
    """``upper/lower`` is a chief factor of the ambient group."""
    if not (L.is_normal(lower) and L.is_normal(upper) and lower < upper):
        return False
    return not any(lower < N < upper for N in normal_subgroups(L))


def lemma_2_5(L: SubgroupLattice, name: str, tag: Formation) -> LemmaResult:
    acc = _Acc(name, f"2.5[{tag.value}]")
    if not (L.soluble and is_critical(L, tag)):
        return acc.result()
    D = residual(L, tag)
    p_group = len(prime_factors(D.order)) == 1
    acc.check(p_group, part="(i)/(ii)(a)", D_order=D.order)
    if p_group:
        LD = SubgroupLattice(D.group)
        PhiD = L.find(frattini(LD).group)
        acc.check(_chief_factor(L, PhiD, D), part="(ii)(b)", D=D.id, Phi_D=PhiD.id)
    return acc.result()


def lemma_2_6(L: SubgroupLattice, name: str, tag: Formation) -> LemmaResult:
    acc = _Acc(name, f"2.6[{tag.value}]")
    if not (L.soluble and is_critical(L, tag)):
        return acc.result()
    crit = Criterion.SUPERSOLUBLE if tag is Formation.SUPERSOLUBLE else Criterion.NILPOTENT
    E = edge_set(L, crit)
    floor = L.intersect(frattini(L), residual(L, tag))
    for H in L.supergroups(floor):
        acc.check(status(L, H, E) is not Status.NEITHER, H=H.id, floor=floor.id)
    return acc.result()


def critical_sections(L: SubgroupLattice, limit: int = CRITICAL_REP_LIMIT) -> list[tuple[str, SubgroupLattice]]:
    """Own lattices of proper class representatives that are soluble and critical."""
    out = []
    for cls in L.classes:
        H = L[cls[0]]
        if H.id == L.top.id or H.order > CRITICAL_REP_ORDER or not node_is_soluble(L, H):
            continue
        if node_is_supersoluble(L, H) and node_is_nilpotent(L, H):
            continue
        LH = SubgroupLattice(H.group)
        if is_critical(LH, Formation.SUPERSOLUBLE) or is_critical(LH, Formation.NILPOTENT):
            out.append((f"node{H.id}", LH))
            if len(out) >= limit:
                break
    return out


# Lemmas 2.7 and 2.8 ----------------------------------------------------------

def lemma_2_7(L: SubgroupLattice, name: str) -> LemmaResult:
    acc = _Acc(name, "2.7")
    sup = [N for N in normal_subgroups(L) if node_is_supersoluble(L, N)]
    G = L.order
    for i, A in enumerate(sup):
        for B in sup[i:]:
            if L.join(A, B).id != L.top.id:
                continue
            if gcd(G // A.order, G // B.order) != 1:
                continue
            acc.check(node_is_supersoluble(L, L.top), A=A.id, B=B.id)
    return acc.result()


def lemma_2_8(L: SubgroupLattice, name: str) -> list[LemmaResult]:
    Phi = frattini(L)
    out = []
    for tag in (Formation.SUPERSOLUBLE, Formation.NILPOTENT):
        acc = _Acc(name, f"2.8[{tag.value}]")
        for E in normal_subgroups(L):
            I = L.intersect(E, Phi)
            if section_in(L, E, I, tag):
                acc.check(section_in(L, E, L.bottom, tag), E=E.id, E_cap_Phi=I.id)
        out.append(acc.result())
    return out


# Lemma 2.9 -------------------------------------------------------------------

def p_property_failures(L: SubgroupLattice, prime_order_only: bool) -> list[Subgroup]:
    """Cyclic prime-power nodes (or prime-order nodes) with prime-index status NEITHER."""
    E = edge_set(L, Criterion.PRIME_INDEX)
    T = L.table
    bad = []
    for H in _proper(L):
        if prime_order_only:
            if not is_prime(H.order):
                continue
        elif not (is_prime_power(H.order) and int(T.order[H.mask].max()) == H.order):
            continue
        if status(L, H, E) is Status.NEITHER:
            bad.append(H)
    return bad


def is_simple_nonabelian(L: SubgroupLattice) -> bool:
    return len(normal_subgroups(L)) == 2 and not is_prime(L.order)


def lemma_2_9(L: SubgroupLattice, name: str) -> list[LemmaResult]:
    a1 = _Acc(name, "2.9(i)")
    if not p_property_failures(L, prime_order_only=True):
        a1.check(not is_simple_nonabelian(L))
    a2 = _Acc(name, "2.9(ii)")
    bad = p_property_failures(L, prime_order_only=False)
    if not bad:
        a2.check(L.soluble)
    r2 = a2.result()
    if not L.soluble and bad:
        H = bad[0]
        r2.instances += 1
        r2.witness = {"neither_node": H.id, "order": H.order, "status": "NEITHER",
                      "class_size": len(L.class_of(H))}
    return [a1.result(), r2]


def neither_witness_29(L: SubgroupLattice) -> Subgroup | None:
    bad = p_property_failures(L, prime_order_only=False)
    return bad[0] if bad else None


# driver ----------------------------------------------------------------------

def lemma_instances(L: SubgroupLattice, name: str, seed: int = 0, samples: int = 40) -> list[LemmaResult]:
    rng = random.Random(f"{seed}:{name}")
    assert is_supersoluble_chief(L) == is_supersoluble_huppert(L)
    brute = brute_EU(L).value is True
    res: list[LemmaResult] = []
    if L.soluble:
        res += lemma_2_1(L, name, rng, samples)
    res.append(lemma_2_2(L, name))
    res.append(lemma_2_3(L, name))
    res += lemma_2_4(L, name, brute)
    groups = [(name, L)] + [(f"{name}/{tag}", LH) for tag, LH in critical_sections(L)]
    for gname, LG in groups:
        for tag in (Formation.NILPOTENT, Formation.SUPERSOLUBLE):
            res.append(lemma_2_5(LG, gname, tag))
            res.append(lemma_2_6(LG, gname, tag))
    res.append(lemma_2_7(L, name))
    res += lemma_2_8(L, name)
    res += lemma_2_9(L, name)
    return res


def run_lemma_suite(lattices, seed: int = 0, samples: int = 40) -> list[LemmaResult]:
    """``lattices`` maps names to lattices; results come back in name order."""
    out = []
    for name in sorted(lattices):
        out += lemma_instances(lattices[name], name, seed, samples)
    return out
