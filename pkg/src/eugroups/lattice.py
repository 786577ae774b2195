"""Subgroup lattices by cyclic extension, and the structural subgroups read off them."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .perm import CapExceeded, PermGroup, NotNormal
from .table import LATTICE_CAP, GroupTable, is_prime_power, mask_key, p_part, prime_factors


@dataclass(eq=False)
class Subgroup:
    """One node of a lattice.  ``key`` is the element bitset of ``mask``."""

    id: int
    mask: np.ndarray = field(repr=False)
    key: int = field(repr=False)
    order: int
    gens: tuple
    cls: int = -1
    lattice: "SubgroupLattice | None" = field(default=None, repr=False)

    @cached_property
    def group(self) -> PermGroup:
        return self.lattice.table.to_group(self.mask, self.gens)

    def __le__(self, other: "Subgroup") -> bool:
        return (self.key & other.key) == self.key

    def __lt__(self, other: "Subgroup") -> bool:
        return self.key != other.key and self <= other


@dataclass(frozen=True)
class ChiefSeries:
    terms: tuple            # node ids, 1 = N_0 < ... < N_r = G
    factor_orders: tuple
    factor_cyclic: tuple


def _derived_mask(T: GroupTable, mask: np.ndarray, gens) -> np.ndarray:
    gens = [int(g) for g in gens]
    comms = set()
    for i, a in enumerate(gens):
        for b in gens[i + 1:]:
            c = int(T.mul[T.mul[T.inv[a], T.inv[b]], T.mul[a, b]])
            if c:
                comms.add(c)
    return normal_closure_mask(T, comms, gens)


def normal_closure_mask(T: GroupTable, seeds, top_gens) -> np.ndarray:
    seeds = set(int(s) for s in seeds)
    N = T.closure(seeds)
    while True:
        extra = {int(T.conj[t, s]) for t in top_gens for s in seeds} | \
                {int(T.conj[T.inv[t], s]) for t in top_gens for s in seeds}
        extra = {e for e in extra if not N[e]}
        if not extra:
            return N
        seeds |= extra
        N = T.closure(seeds)


def table_is_soluble(T: GroupTable, mask: np.ndarray | None = None, gens=None) -> bool:
    if mask is None:
        mask = T.full
        gens = [T.index_of(g) for g in T.group.generators]
    gens = list(gens) if gens is not None else T.generators_of(mask)
    size = int(mask.sum())
    while size > 1:
        D = _derived_mask(T, mask, gens)
        dsize = int(D.sum())
        if dsize == size:
            return False
        mask, size = D, dsize
        gens = T.generators_of(D)
    return True


class SubgroupLattice:
    """All subgroups of a group, sorted by (order, element list).

    Node ids are positions in that order: 0 is the trivial subgroup and the
    last id is the whole group.
    """

    def __init__(self, G: PermGroup, cap: int = LATTICE_CAP, table: GroupTable | None = None):
        if G.order() > cap:
            raise CapExceeded(f"lattice too large: order {G.order()} exceeds cap {cap}")
        self.ambient = G
        self.table = table if table is not None else GroupTable(G, cap)
        T = self.table
        self.top_gens = [T.index_of(g) for g in G.generators]
        self.soluble = table_is_soluble(T, T.full, self.top_gens)
        found = _cyclic_extension(T, self.soluble)
        items = sorted(found.values(), key=lambda mg: (int(mg[0].sum()), tuple(np.flatnonzero(mg[0]))))
        self.nodes: list[Subgroup] = []
        for i, (mask, gens) in enumerate(items):
            if i == len(items) - 1:
                gens = self.top_gens
            elif len(gens) > 2:
                gens = T.generators_of(mask)
            self.nodes.append(Subgroup(i, mask, mask_key(mask), int(mask.sum()), tuple(gens), lattice=self))
        self.by_key = {nd.key: nd.id for nd in self.nodes}
        self._packed = np.packbits(np.stack([nd.mask for nd in self.nodes]), axis=1, bitorder="little")
        self.classes: list[tuple[int, ...]] = self._conjugacy_classes()
        self.edges: list[tuple[int, int, int]] = self._maximal_edges()
        self.up: list[list[tuple[int, int]]] = [[] for _ in self.nodes]
        self.down: list[list[tuple[int, int]]] = [[] for _ in self.nodes]
        for k, l, m in self.edges:
            self.up[k].append((l, m))
            self.down[l].append((k, m))

    # basic access -------------------------------------------------------

    def __len__(self) -> int:
        return len(self.nodes)

    def __getitem__(self, i: int) -> Subgroup:
        return self.nodes[i]

    def __iter__(self):
        return iter(self.nodes)

    @property
    def top(self) -> Subgroup:
        return self.nodes[-1]

    @property
    def bottom(self) -> Subgroup:
        return self.nodes[0]

    @property
    def order(self) -> int:
        return self.top.order

    def find_mask(self, mask: np.ndarray) -> Subgroup:
        return self.nodes[self.by_key[mask_key(mask)]]

    def find(self, H: PermGroup) -> Subgroup:
        """The node equal to ``H`` (a subgroup of the ambient group)."""
        return self.find_mask(self.table.mask_of(H))

    def node_from_gens(self, gens) -> Subgroup:
        return self.find_mask(self.table.closure(gens))

    def supergroups(self, node: Subgroup, proper: bool = False) -> list[Subgroup]:
        row = self._packed[node.id]
        hit = np.flatnonzero(((self._packed & row) == row).all(axis=1))
        return [self.nodes[i] for i in hit if not (proper and i == node.id)]

    def subgroups_of(self, node: Subgroup, proper: bool = False) -> list[Subgroup]:
        row = self._packed[node.id]
        hit = np.flatnonzero(((self._packed & row) == self._packed).all(axis=1))
        return [self.nodes[i] for i in hit if not (proper and i == node.id)]

    def intersect(self, a: Subgroup, b: Subgroup) -> Subgroup:
        return self.find_mask(a.mask & b.mask)

    def join(self, a: Subgroup, b: Subgroup) -> Subgroup:
        if a <= b:
            return b
        if b <= a:
            return a
        return self.node_from_gens(list(a.gens) + list(b.gens))

    def is_normal(self, node: Subgroup, top: Subgroup | None = None) -> bool:
        if top is None:
            return len(self.classes[node.cls]) == 1
        return node <= top and self.table.is_normal_in(node.mask, top.gens, node.gens)

    def class_of(self, node: Subgroup) -> tuple[int, ...]:
        return self.classes[node.cls]

    # construction helpers -------------------------------------------------

    def _conjugacy_classes(self) -> list[tuple[int, ...]]:
        T = self.table
        classes = []
        for nd in self.nodes:
            if nd.cls >= 0:
                continue
            idx = np.flatnonzero(nd.mask)
            rows = np.unique(np.sort(T.conj[:, idx], axis=1), axis=0)
            members = []
            for row in rows:
                m = np.zeros(T.n, dtype=bool)
                m[row] = True
                members.append(self.by_key[mask_key(m)])
            members.sort()
            c = len(classes)
            for i in members:
                self.nodes[i].cls = c
            classes.append(tuple(members))
        return classes

    def _maximal_edges(self) -> list[tuple[int, int, int]]:
        P = self._packed
        orders = np.array([nd.order for nd in self.nodes])
        edges = []
        for nd in self.nodes:
            row = P[nd.id]
            sup = np.flatnonzero(((P & row) == row).all(axis=1) & (orders > nd.order))
            if not len(sup):
                continue
            sub_rows = P[sup]
            dominated = np.zeros(len(sup), dtype=bool)
            for pos in range(len(sup)):
                if dominated[pos]:
                    continue
                cover = sup[pos]
                edges.append((nd.id, int(cover), self.nodes[cover].order // nd.order))
                crow = P[cover]
                dominated |= ((sub_rows & crow) == crow).all(axis=1)
        edges.sort()
        return edges


def _cyclic_extension(T: GroupTable, soluble: bool) -> dict[int, tuple[np.ndarray, list[int]]]:
    """Every subgroup, grown from the trivial one by prime-power cyclic subgroups.

    ``H<g>`` is formed directly when ``g`` normalizes ``H``; this reaches every
    soluble subgroup.  For insoluble groups general joins are added as well.
    """
    cyc: dict[int, tuple[np.ndarray, int]] = {}
    for x in range(1, T.n):
        if is_prime_power(int(T.order[x])):
            m = T.cyclic(x)
            cyc.setdefault(mask_key(m), (m, x))
    cyc_list = sorted(cyc.values(), key=lambda t: t[1])
    found: dict[int, tuple[np.ndarray, list[int]]] = {mask_key(T.trivial): (T.trivial.copy(), [])}
    queue = [mask_key(T.trivial)]
    head = 0
    while head < len(queue):
        mask, gens = found[queue[head]]
        head += 1
        norm = T.normalizer_mask(mask, gens)
        for zmask, g in cyc_list:
            if mask[g]:
                continue
            if norm[g]:
                K = T.product_mask(mask, zmask)
            elif not soluble:
                K = T.closure(list(gens) + [g])
            else:
                continue
            k = mask_key(K)
            if k not in found:
                found[k] = (K, list(gens) + [g])
                queue.append(k)
    return found


def all_subgroups(G: PermGroup, cap: int = LATTICE_CAP) -> SubgroupLattice:
    return SubgroupLattice(G, cap)


def maximal_subgroups(L: SubgroupLattice) -> list[Subgroup]:
    return [L[k] for k, _ in L.down[L.top.id]]


def normal_subgroups(L: SubgroupLattice) -> list[Subgroup]:
    return [nd for nd in L if L.is_normal(nd)]


def minimal_normal_subgroups(L: SubgroupLattice) -> list[Subgroup]:
    normals = [nd for nd in normal_subgroups(L) if nd.order > 1]
    return [nd for nd in normals if not any(m < nd for m in normals)]


def frattini(L: SubgroupLattice) -> Subgroup:
    mask = L.table.full.copy()
    for M in maximal_subgroups(L):
        mask &= M.mask
    return L.find_mask(mask)


def sylow(L: SubgroupLattice, p: int) -> Subgroup:
    target = p_part(L.order, p)
    return next(nd for nd in L if nd.order == target)


def o_p(L: SubgroupLattice, p: int) -> Subgroup:
    """Largest normal p-subgroup (core of a Sylow p-subgroup)."""
    P = sylow(L, p)
    return L.find_mask(L.table.core_mask(P.mask, L.top_gens))


def fitting(L: SubgroupLattice) -> Subgroup:
    gens: list[int] = []
    for p in prime_factors(L.order):
        gens.extend(o_p(L, p).gens)
    return L.node_from_gens(gens)


def pi_part(n: int, pi) -> int:
    return math.prod(p_part(n, p) for p in set(pi))


def hall(L: SubgroupLattice, pi) -> Subgroup | None:
    target = pi_part(L.order, pi)
    return next((nd for nd in L if nd.order == target), None)


def complements(L: SubgroupLattice, N: Subgroup) -> list[Subgroup]:
    if not L.is_normal(N):
        raise NotNormal("complements are taken for normal subgroups")
    want = L.order // N.order
    return [H for H in L if H.order == want and int((H.mask & N.mask).sum()) == 1]


def _chief_step(L: SubgroupLattice, normals: list[Subgroup], N: Subgroup, target: Subgroup) -> Subgroup:
    cand = [M for M in normals if N < M and M <= target]
    minimal = [M for M in cand if not any(X < M for X in cand)]
    return min(minimal, key=lambda nd: nd.id)


def chief_series(L: SubgroupLattice, through: Subgroup | None = None) -> ChiefSeries:
    """A chief series of the ambient group, passing through ``through`` if given.

    Each step takes the least minimal normal subgroup of the current quotient
    inside the remaining interval.
    """
    if through is not None and not L.is_normal(through):
        raise NotNormal("chief series can only pass through a normal subgroup")
    normals = normal_subgroups(L)
    terms = [L.bottom]
    for target in ([through] if through is not None else []) + [L.top]:
        while terms[-1].id != target.id:
            terms.append(_chief_step(L, normals, terms[-1], target))
    T = L.table
    orders = tuple(b.order // a.order for a, b in zip(terms, terms[1:]))
    cyclic = tuple(T.section_is_cyclic(b.mask, a.mask) for a, b in zip(terms, terms[1:]))
    return ChiefSeries(tuple(t.id for t in terms), orders, cyclic)
