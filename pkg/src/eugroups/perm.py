"""Permutations and permutation groups.

Points are 1-based in cycle notation and in ``Permutation.images``; internally
a permutation is a tuple of 0-based images.  Products are read left to right:
``p * q`` applies ``p`` first, then ``q``.

Groups carry a stabilizer chain (deterministic Schreier-Sims), which gives the
order and membership.  Normalizers, centralizers and intersections are done by
scanning elements, so they are bounded by :data:`ELEMENT_CAP`.
"""

from __future__ import annotations

import math
import re
from typing import Iterable, Iterator, Sequence

ELEMENT_CAP = 20000
DEGREE_CAP = 20000


class CapExceeded(RuntimeError):
    """An operation would enumerate more elements or points than allowed."""


class NotASubgroup(ValueError):
    pass


class NotNormal(ValueError):
    pass


class Permutation:
    __slots__ = ("_img", "_hash")

    def __init__(self, images: Sequence[int], *, zero_based: bool = False):
        img = tuple(images) if zero_based else tuple(x - 1 for x in images)
        if sorted(img) != list(range(len(img))):
            raise ValueError(f"not a permutation: {list(images)!r}")
        self._img = img
        self._hash = hash(img)

    @classmethod
    def _raw(cls, img: tuple) -> "Permutation":
        p = object.__new__(cls)
        p._img = img
        p._hash = hash(img)
        return p

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls._raw(tuple(range(degree)))

    @property
    def degree(self) -> int:
        return len(self._img)

    @property
    def images(self) -> tuple:
        """1-based images: ``images[i-1]`` is the image of point ``i``."""
        return tuple(x + 1 for x in self._img)

    @property
    def array(self) -> tuple:
        return self._img

    def __call__(self, point: int) -> int:
        return self._img[point - 1] + 1

    def __mul__(self, other: "Permutation") -> "Permutation":
        q = other._img
        return Permutation._raw(tuple(q[x] for x in self._img))

    def __invert__(self) -> "Permutation":
        return self.inverse()

    def inverse(self) -> "Permutation":
        inv = [0] * len(self._img)
        for i, x in enumerate(self._img):
            inv[x] = i
        return Permutation._raw(tuple(inv))

    def __pow__(self, n: int) -> "Permutation":
        if n < 0:
            return self.inverse() ** (-n)
        result = Permutation.identity(self.degree)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self._img == other._img

    def __lt__(self, other: "Permutation") -> bool:
        return self._img < other._img

    def __hash__(self) -> int:
        return self._hash

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self._img))

    def cycles(self) -> list[tuple[int, ...]]:
        seen = set()
        out = []
        for start in range(len(self._img)):
            if start in seen or self._img[start] == start:
                continue
            cyc = [start]
            seen.add(start)
            x = self._img[start]
            while x != start:
                cyc.append(x)
                seen.add(x)
                x = self._img[x]
            out.append(tuple(c + 1 for c in cyc))
        return out

    def order(self) -> int:
        return math.lcm(1, *(len(c) for c in self.cycles()))

    def __str__(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc)

    def __repr__(self) -> str:
        return f"Permutation({str(self)!r}, degree={self.degree})"


_CYCLE = re.compile(r"\(([^()]*)\)")


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Apply ``p`` then ``q``."""
    return p * q


def inverse(p: Permutation) -> Permutation:
    return p.inverse()


def parse_permutation(text: str, degree: int) -> Permutation:
    """Parse cycle notation such as ``"(1 2 3)(4 5)"`` or ``"(1,2)"``.

    Cycles are applied left to right; unmentioned points are fixed.
    """
    if degree < 1:
        raise ValueError("degree must be positive")
    s = text.strip()
    if not s:
        raise ValueError("empty permutation text")
    pos = 0
    cycles = []
    seen: set[int] = set()
    while pos < len(s):
        if s[pos].isspace():
            pos += 1
            continue
        m = _CYCLE.match(s, pos)
        if m is None:
            raise ValueError(f"malformed cycle notation at column {pos + 1}: {text!r}")
        body = m.group(1).strip()
        pos = m.end()
        if not body:
            continue
        tokens = [t for t in re.split(r"[\s,]+", body) if t]
        try:
            pts = [int(t) for t in tokens]
        except ValueError:
            raise ValueError(f"non-integer point in {text!r}") from None
        for x in pts:
            if not 1 <= x <= degree:
                raise ValueError(f"point {x} out of range 1..{degree}")
            if x in seen:
                raise ValueError(f"point {x} repeated in {text!r}")
            seen.add(x)
        cycles.append(pts)
    img = list(range(degree))
    for cyc in cycles:
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            img[a - 1] = b - 1
    return Permutation._raw(tuple(img))


def _sift(levels: list["_Level"], g: tuple, start: int = 0) -> tuple[tuple, int]:
    for i in range(start, len(levels)):
        lv = levels[i]
        x = g[lv.base]
        u = lv.inv_trans.get(x)
        if u is None:
            return g, i
        g = tuple(u[y] for y in g)
    return g, len(levels)


class _Level:
    __slots__ = ("base", "gens", "trans", "inv_trans")

    def __init__(self, base: int):
        self.base = base
        self.gens: list[tuple] = []
        # trans[x] maps base -> x; inv_trans[x] is its inverse
        self.trans: dict[int, tuple] = {}
        self.inv_trans: dict[int, tuple] = {}

    def rebuild_orbit(self, degree: int) -> None:
        ident = tuple(range(degree))
        trans = {self.base: ident}
        frontier = [self.base]
        while frontier:
            nxt = []
            for x in frontier:
                u = trans[x]
                for s in self.gens:
                    y = s[x]
                    if y not in trans:
                        trans[y] = tuple(s[z] for z in u)
                        nxt.append(y)
            frontier = nxt
        self.trans = trans
        inv_trans = {}
        for x, u in trans.items():
            inv = [0] * degree
            for i, v in enumerate(u):
                inv[v] = i
            inv_trans[x] = tuple(inv)
        self.inv_trans = inv_trans


def _is_id(g: tuple) -> bool:
    return all(i == x for i, x in enumerate(g))


def _schreier_sims(degree: int, gens: list[tuple]) -> list[_Level]:
    strong: list[tuple] = []
    levels: list[_Level] = []

    def fixes_prefix(s: tuple, k: int) -> bool:
        return all(s[levels[t].base] == levels[t].base for t in range(k))

    def refresh(k: int) -> None:
        levels[k].gens = [s for s in strong if fixes_prefix(s, k)]
        levels[k].rebuild_orbit(degree)

    def add_strong(h: tuple, upto: int) -> None:
        strong.append(h)
        if upto == len(levels):
            moved = next(x for x in range(degree) if h[x] != x)
            levels.append(_Level(moved))
        for k in range(upto + 1):
            refresh(k)

    for g in gens:
        if _is_id(g) or g in strong:
            continue
        h, j = _sift(levels, g)
        if not _is_id(h):
            add_strong(h, j)

    i = len(levels) - 1
    while i >= 0:
        lv = levels[i]
        restart = None
        for beta, u in list(lv.trans.items()):
            for s in lv.gens:
                img = s[beta]
                # u_beta * s * u_{beta^s}^-1
                us = tuple(s[z] for z in u)
                sg = tuple(lv.inv_trans[img][z] for z in us)
                if _is_id(sg):
                    continue
                h, j = _sift(levels, sg, i + 1)
                if not _is_id(h):
                    add_strong(h, j)
                    restart = j
                    break
            if restart is not None:
                break
        if restart is None:
            i -= 1
        else:
            i = min(restart, len(levels) - 1)
    return levels


class PermGroup:
    """A permutation group given by generators, with a stabilizer chain.

    Instances are immutable; derived data (elements, element index) is cached
    lazily.
    """

    def __init__(self, degree: int, generators: Iterable[Permutation] = ()):
        gens = []
        seen = set()
        for g in generators:
            if g.degree != degree:
                raise ValueError(f"generator of degree {g.degree} in a group of degree {degree}")
            if g.is_identity() or g in seen:
                continue
            seen.add(g)
            gens.append(g)
        self._degree = degree
        self._gens = tuple(gens)
        self._levels = _schreier_sims(degree, [g.array for g in gens])
        self._order = math.prod(len(lv.trans) for lv in self._levels)
        self._elements: list[Permutation] | None = None
        self._element_set: frozenset | None = None

    @property
    def degree(self) -> int:
        return self._degree

    @property
    def generators(self) -> tuple[Permutation, ...]:
        return self._gens

    @property
    def base(self) -> tuple[int, ...]:
        """0-based base points of the stabilizer chain."""
        return tuple(lv.base for lv in self._levels)

    @property
    def transversal_sizes(self) -> tuple[int, ...]:
        return tuple(len(lv.trans) for lv in self._levels)

    def order(self) -> int:
        return self._order

    def __len__(self) -> int:
        return self._order

    def identity(self) -> Permutation:
        return Permutation.identity(self._degree)

    def contains(self, p: Permutation) -> bool:
        if p.degree != self._degree:
            raise ValueError("degree mismatch")
        h, _ = _sift(self._levels, p.array)
        return _is_id(h)

    __contains__ = contains

    def is_subgroup_of(self, other: "PermGroup") -> bool:
        return (other.order() % self.order() == 0
                and all(other.contains(g) for g in self._gens))

    def __eq__(self, other) -> bool:
        if not isinstance(other, PermGroup):
            return NotImplemented
        return (self._degree == other._degree and self._order == other._order
                and self.is_subgroup_of(other))

    def __hash__(self):
        return hash((self._degree, self._order))

    def elements(self, cap: int = ELEMENT_CAP) -> list[Permutation]:
        if self._order > cap:
            raise CapExceeded(f"group of order {self._order} exceeds element cap {cap}")
        if self._elements is None:
            out = [tuple(range(self._degree))]
            for lv in reversed(self._levels):
                out = [tuple(u[x] for x in g) for u in lv.trans.values() for g in out]
            self._elements = sorted(Permutation._raw(g) for g in out)
        return list(self._elements)

    def element_set(self, cap: int = ELEMENT_CAP) -> frozenset:
        if self._element_set is None:
            self._element_set = frozenset(self.elements(cap))
        return self._element_set

    def __iter__(self) -> Iterator[Permutation]:
        return iter(self.elements())

    def is_abelian(self) -> bool:
        gs = self._gens
        return all(a * b == b * a for i, a in enumerate(gs) for b in gs[i + 1:])

    def __repr__(self) -> str:
        gens = ", ".join(str(g) for g in self._gens) or "()"
        return f"PermGroup(degree={self._degree}, order={self._order}, gens=[{gens}])"


def group_from_generators(gens: Iterable[Permutation], degree: int | None = None) -> PermGroup:
    gens = list(gens)
    if degree is None:
        if not gens:
            raise ValueError("degree required for an empty generating set")
        degree = gens[0].degree
    if any(g.degree != degree for g in gens):
        raise ValueError("generators have mixed degrees")
    return PermGroup(degree, gens)


def trivial_group(degree: int) -> PermGroup:
    return PermGroup(degree, ())


def order(G: PermGroup) -> int:
    return G.order()


def contains(G: PermGroup, p: Permutation) -> bool:
    return G.contains(p)


def elements(G: PermGroup, cap: int = ELEMENT_CAP) -> list[Permutation]:
    return G.elements(cap)


def subgroup_from_elements(degree: int, elems: Iterable[Permutation]) -> PermGroup:
    """Smallest group containing ``elems``, with a short generating set."""
    gens: list[Permutation] = []
    H = PermGroup(degree, ())
    for e in sorted(elems):
        if not H.contains(e):
            gens.append(e)
            H = PermGroup(degree, gens)
    return H


def _check_degree(A: PermGroup, B: PermGroup) -> None:
    if A.degree != B.degree:
        raise ValueError(f"degree mismatch: {A.degree} vs {B.degree}")


def intersection(A: PermGroup, B: PermGroup, cap: int = ELEMENT_CAP) -> PermGroup:
    _check_degree(A, B)
    small, big = (A, B) if A.order() <= B.order() else (B, A)
    if small.is_subgroup_of(big):
        return small
    return subgroup_from_elements(A.degree, (g for g in small.elements(cap) if big.contains(g)))


def join(A: PermGroup, B: PermGroup) -> PermGroup:
    _check_degree(A, B)
    if B.is_subgroup_of(A):
        return A
    if A.is_subgroup_of(B):
        return B
    return PermGroup(A.degree, A.generators + B.generators)


def commutator(a: Permutation, b: Permutation) -> Permutation:
    return a.inverse() * b.inverse() * a * b


def normal_closure(G: PermGroup, S: Iterable[Permutation]) -> PermGroup:
    S = list(S)
    for s in S:
        if not G.contains(s):
            raise NotASubgroup(f"{s} is not in the group")
    gens = list(S)
    N = PermGroup(G.degree, gens)
    queue = list(N.generators)
    while queue:
        s = queue.pop()
        for g in G.generators:
            for c in (g.inverse() * s * g, g * s * g.inverse()):
                if not N.contains(c):
                    gens.append(c)
                    N = PermGroup(G.degree, gens)
                    queue.append(c)
    return N


def derived_subgroup(G: PermGroup) -> PermGroup:
    gs = G.generators
    comms = [commutator(a, b) for i, a in enumerate(gs) for b in gs[i + 1:]]
    return normal_closure(G, [c for c in comms if not c.is_identity()])


def derived_series(G: PermGroup) -> list[PermGroup]:
    series = [G]
    while True:
        D = derived_subgroup(series[-1])
        if D.order() == series[-1].order():
            return series
        series.append(D)
        if D.order() == 1:
            return series


def conjugate(H: PermGroup, g: Permutation) -> PermGroup:
    """``H^g = g^-1 H g``."""
    gi = g.inverse()
    return PermGroup(H.degree, [gi * h * g for h in H.generators])


def normalizes(g: Permutation, H: PermGroup) -> bool:
    gi = g.inverse()
    return all(H.contains(gi * h * g) for h in H.generators)


def normalizer(G: PermGroup, H: PermGroup, cap: int = ELEMENT_CAP) -> PermGroup:
    _check_degree(G, H)
    if not H.is_subgroup_of(G):
        raise NotASubgroup("H is not a subgroup of G")
    return subgroup_from_elements(G.degree, (g for g in G.elements(cap) if normalizes(g, H)))


def centralizer(G: PermGroup, H: PermGroup, cap: int = ELEMENT_CAP) -> PermGroup:
    _check_degree(G, H)
    hs = H.generators
    return subgroup_from_elements(
        G.degree, (g for g in G.elements(cap) if all(g * h == h * g for h in hs)))


def is_normal(G: PermGroup, N: PermGroup) -> bool:
    return N.is_subgroup_of(G) and all(normalizes(g, N) for g in G.generators)


def core(L: PermGroup, K: PermGroup) -> PermGroup:
    """Largest normal subgroup of ``L`` contained in ``K``."""
    if not K.is_subgroup_of(L):
        raise NotASubgroup("K is not a subgroup of L")
    C = K
    changed = True
    while changed:
        changed = False
        for g in L.generators:
            D = intersection(C, conjugate(C, g))
            if D.order() < C.order():
                C = D
                changed = True
    return C


def index(G: PermGroup, H: PermGroup) -> int:
    if not H.is_subgroup_of(G):
        raise NotASubgroup("H is not a subgroup of G")
    return G.order() // H.order()


def right_cosets(L: PermGroup, K: PermGroup, cap: int = ELEMENT_CAP) -> tuple[list[Permutation], dict]:
    """Representatives of the right cosets ``K x`` and a map element -> coset number."""
    which: dict[Permutation, int] = {}
    reps: list[Permutation] = []
    kel = K.elements(cap)
    for x in L.elements(cap):
        if x in which:
            continue
        c = len(reps)
        reps.append(x)
        for k in kel:
            which[k * x] = c
    return reps, which


def coset_action(L: PermGroup, K: PermGroup, cap: int = DEGREE_CAP):
    """Action of ``L`` on right cosets of ``K``.

    Returns ``(image_group, hom)`` where ``hom`` maps elements of ``L`` to
    permutations of the cosets.  The kernel is the core of ``K`` in ``L``.
    """
    if not K.is_subgroup_of(L):
        raise NotASubgroup("K is not a subgroup of L")
    n = L.order() // K.order()
    if n > cap:
        raise CapExceeded(f"coset action on {n} points exceeds degree cap {cap}")
    reps, which = right_cosets(L, K)

    def hom(g: Permutation) -> Permutation:
        return Permutation._raw(tuple(which[r * g] for r in reps))

    image = PermGroup(n, [hom(g) for g in L.generators])
    return image, hom


def coset_quotient_by_core(L: PermGroup, K: PermGroup, cap: int = DEGREE_CAP) -> PermGroup:
    """Image of ``L`` acting on the cosets of ``K``; isomorphic to ``L / core(L, K)``."""
    return coset_action(L, K, cap)[0]


def quotient(G: PermGroup, N: PermGroup, cap: int = DEGREE_CAP) -> PermGroup:
    """``G/N`` as a permutation group on the cosets of ``N``."""
    if not is_normal(G, N):
        raise NotNormal("N is not a normal subgroup of G")
    return coset_action(G, N, cap)[0]


def quotient_map(G: PermGroup, N: PermGroup, cap: int = DEGREE_CAP):
    if not is_normal(G, N):
        raise NotNormal("N is not a normal subgroup of G")
    return coset_action(G, N, cap)


def image_of(hom, H: PermGroup, degree: int) -> PermGroup:
    return PermGroup(degree, [hom(h) for h in H.generators])
