"""Chain predicates over a subgroup lattice.

A subgroup is subnormal for a criterion when a path of admissible maximal
inclusions leads from it to the whole group, and abnormal when no admissible
inclusion ``K < L`` exists with ``H <= K``.  For the prime-index criterion it
is enough to look at lattice edges: a prime index forces ``K`` maximal in
``L``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .formations import Formation, node_is_nilpotent, node_is_supersoluble, section_in
from .lattice import Subgroup, SubgroupLattice
from .table import is_prime


class Criterion(str, Enum):
    PRIME_INDEX = "P"
    SUPERSOLUBLE = "U"
    NILPOTENT = "N"

    @property
    def formation(self) -> Formation | None:
        return {"U": Formation.SUPERSOLUBLE, "N": Formation.NILPOTENT}.get(self.value)


class Status(str, Enum):
    SUBNORMAL = "SUBNORMAL"
    ABNORMAL = "ABNORMAL"
    NEITHER = "NEITHER"
    WHOLE_GROUP = "WHOLE_GROUP"


@dataclass
class ChainEdgeSet:
    lattice: SubgroupLattice = field(repr=False)
    criterion: Criterion
    admissible: frozenset           # (sub id, super id) pairs
    reach: list = field(repr=False)  # reach[id]: admissible path to the top
    above: list = field(repr=False)  # above[id]: some admissible edge starts at or above id

    def admits(self, k: int, l: int) -> bool:
        return (k, l) in self.admissible


def edge_admissible(L: SubgroupLattice, k: int, l: int, m: int, criterion: Criterion) -> bool:
    if criterion is Criterion.PRIME_INDEX:
        return is_prime(m)
    K, top = L[k], L[l]
    core = L.table.core_mask(K.mask, top.gens)
    return section_in(L, top, core, criterion.formation)


def edge_set(L: SubgroupLattice, criterion: Criterion) -> ChainEdgeSet:
    cache = L.__dict__.setdefault("_edge_sets", {})
    if criterion in cache:
        return cache[criterion]
    adm = frozenset((k, l) for k, l, m in L.edges if edge_admissible(L, k, l, m, criterion))
    n = len(L)
    reach = [False] * n
    above = [False] * n
    reach[n - 1] = True
    for i in range(n - 2, -1, -1):
        ups = L.up[i]
        reach[i] = any(reach[l] for l, _ in ups if (i, l) in adm)
        above[i] = any((i, l) in adm or above[l] for l, _ in ups)
    E = ChainEdgeSet(L, criterion, adm, reach, above)
    cache[criterion] = E
    return E


def is_chain_subnormal(L: SubgroupLattice, H: Subgroup, E: ChainEdgeSet) -> bool:
    return E.reach[H.id]


def is_chain_abnormal(L: SubgroupLattice, H: Subgroup, E: ChainEdgeSet) -> bool:
    if H.id == L.top.id:
        raise ValueError("abnormality is defined for proper subgroups only")
    return not E.above[H.id]


def is_chain_subnormal_in(L: SubgroupLattice, H: Subgroup, top: Subgroup, E: ChainEdgeSet) -> bool:
    """Subnormality of ``H`` inside the subgroup ``top`` (same edge criterion)."""
    if not H <= top:
        return False
    seen = {H.id}
    stack = [H.id]
    while stack:
        k = stack.pop()
        if k == top.id:
            return True
        for l, _ in L.up[k]:
            if l not in seen and E.admits(k, l) and L[l] <= top:
                seen.add(l)
                stack.append(l)
    return False


def violating_edge(L: SubgroupLattice, H: Subgroup, E: ChainEdgeSet) -> tuple[int, int] | None:
    """An admissible edge ``(K, L)`` with ``H <= K``, if any (smallest ``K`` first)."""
    for K in L.supergroups(H):
        for l, _ in L.up[K.id]:
            if E.admits(K.id, l):
                return (K.id, l)
    return None


def upward_closure(L: SubgroupLattice, H: Subgroup, E: ChainEdgeSet) -> list[int]:
    seen = {H.id}
    stack = [H.id]
    while stack:
        k = stack.pop()
        for l, _ in L.up[k]:
            if l not in seen and E.admits(k, l):
                seen.add(l)
                stack.append(l)
    return sorted(seen)


def status(L: SubgroupLattice, H: Subgroup, E: ChainEdgeSet) -> Status:
    if H.id == L.top.id:
        return Status.WHOLE_GROUP
    if E.reach[H.id]:
        return Status.SUBNORMAL
    if not E.above[H.id]:
        return Status.ABNORMAL
    return Status.NEITHER


@dataclass
class SubgroupStatus:
    id: int
    p_status: Status
    u_status: Status
    n_status: Status
    witness: dict = field(default_factory=dict)

    def of(self, criterion: Criterion) -> Status:
        return {"P": self.p_status, "U": self.u_status, "N": self.n_status}[criterion.value]


def neither_witness(L: SubgroupLattice, H: Subgroup, E: ChainEdgeSet) -> dict:
    k, l = violating_edge(L, H, E)
    reached = upward_closure(L, H, E)
    return {"edge": [k, l], "index": L[l].order // L[k].order,
            "chain_search": {"reachable": len(reached), "reached_top": False}}


def status_all(L: SubgroupLattice) -> dict[int, SubgroupStatus]:
    sets = {c: edge_set(L, c) for c in Criterion}
    out = {}
    for H in L:
        st = {c: status(L, H, sets[c]) for c in Criterion}
        wit = {c.value: neither_witness(L, H, sets[c]) for c in Criterion if st[c] is Status.NEITHER}
        out[H.id] = SubgroupStatus(H.id, st[Criterion.PRIME_INDEX], st[Criterion.SUPERSOLUBLE],
                                   st[Criterion.NILPOTENT], wit)
    return out


def is_gaschutz(L: SubgroupLattice, H: Subgroup) -> bool:
    """Supersoluble, and no prime-index pair ``K <= L`` sits above ``H``."""
    if not node_is_supersoluble(L, H):
        return False
    if H.id == L.top.id:
        return True
    return not edge_set(L, Criterion.PRIME_INDEX).above[H.id]


def self_normalizing(L: SubgroupLattice, H: Subgroup) -> bool:
    N = L.table.normalizer_mask(H.mask, H.gens)
    return int(N.sum()) == H.order


def is_carter(L: SubgroupLattice, H: Subgroup) -> bool:
    return node_is_nilpotent(L, H) and self_normalizing(L, H)
