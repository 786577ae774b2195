"""Indexed element table of a small permutation group.

Lattice work happens on element indices: a subgroup is a boolean mask over the
indices (plus a Python-int bitset used as a dictionary key and for fast
containment tests).  Index 0 is always the identity; elements are sorted by
their image tuples, so indices are deterministic for a given group.
"""

from __future__ import annotations

from functools import cached_property

import numpy as np

from .perm import CapExceeded, Permutation, PermGroup

LATTICE_CAP = 2500


def prime_factors(n: int) -> list[int]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def is_prime(n: int) -> bool:
    return n >= 2 and prime_factors(n) == [n]


def is_prime_power(n: int) -> bool:
    """``n = p**k`` with ``k >= 1``."""
    return n >= 2 and len(prime_factors(n)) == 1


def p_part(n: int, p: int) -> int:
    q = 1
    while n % p == 0:
        n //= p
        q *= p
    return q


def mask_key(mask: np.ndarray) -> int:
    return int.from_bytes(np.packbits(mask, bitorder="little").tobytes(), "little")


class GroupTable:
    """Multiplication table and element data for a group of order <= cap."""

    def __init__(self, G: PermGroup, cap: int = LATTICE_CAP):
        n = G.order()
        if n > cap:
            raise CapExceeded(f"group of order {n} exceeds lattice cap {cap}")
        self.group = G
        self.n = n
        self.perms: list[Permutation] = G.elements(cap)
        E = np.array([p.array for p in self.perms], dtype=np.int64).reshape(n, G.degree)
        self.E = E
        base = list(G.base) or [0]
        radix = max(G.degree, 2)
        weights = np.array([radix ** k for k in range(len(base))], dtype=np.int64)
        if radix ** len(base) >= 2 ** 62:
            raise CapExceeded("base too long for integer element keys")
        self._base = np.array(base, dtype=np.int64)
        self._weights = weights
        keys = E[:, self._base] @ weights
        self._order_by_key = np.argsort(keys, kind="stable")
        self._sorted_keys = keys[self._order_by_key]
        if len(np.unique(keys)) != n:
            raise AssertionError("base images do not separate group elements")

        mul = np.empty((n, n), dtype=np.int32)
        for i in range(n):
            # e_i then e_j: image of b is e_j[e_i[b]]
            mul[i] = self._lookup(E[:, E[i, self._base]] @ weights)
        self.mul = mul
        self.inv = np.argmin(mul, axis=1).astype(np.int32)
        assert np.all(mul[np.arange(n), self.inv] == 0)
        self.order = self._element_orders()
        self.full = np.ones(n, dtype=bool)
        self.trivial = np.zeros(n, dtype=bool)
        self.trivial[0] = True

    def _lookup(self, keys: np.ndarray) -> np.ndarray:
        pos = np.searchsorted(self._sorted_keys, keys)
        return self._order_by_key[pos]

    def index_of(self, p: Permutation) -> int:
        key = int(np.array(p.array, dtype=np.int64)[self._base] @ self._weights)
        pos = int(np.searchsorted(self._sorted_keys, key))
        i = int(self._order_by_key[pos])
        if self.perms[i] != p:
            raise KeyError(f"{p} is not in the group")
        return i

    def _element_orders(self) -> np.ndarray:
        n = self.n
        order = np.zeros(n, dtype=np.int64)
        cur = np.arange(n, dtype=np.int64)
        k = 1
        remaining = np.ones(n, dtype=bool)
        while remaining.any():
            hit = remaining & (cur == 0)
            order[hit] = k
            remaining &= ~hit
            cur = self.mul[cur, np.arange(n)]
            k += 1
        return order

    @cached_property
    def conj(self) -> np.ndarray:
        """``conj[g, x]`` is the index of ``g^-1 x g``."""
        idx = np.arange(self.n)
        left = self.mul[self.inv][:, idx]  # g^-1 x
        return self.mul[left, idx[:, None]].astype(np.int32)

    def power(self, x: int, k: int) -> int:
        r = 0
        for _ in range(k):
            r = int(self.mul[r, x])
        return r

    # subgroup helpers -------------------------------------------------

    def closure(self, gens) -> np.ndarray:
        """Mask of the subgroup generated by ``gens``."""
        gens = np.asarray(sorted(set(int(g) for g in gens)), dtype=np.int64)
        mask = self.trivial.copy()
        frontier = np.array([0], dtype=np.int64)
        while len(frontier) and len(gens):
            prod = self.mul[frontier][:, gens].ravel()
            new = np.unique(prod[~mask[prod]])
            mask[new] = True
            frontier = new
        return mask

    def cyclic(self, x: int) -> np.ndarray:
        mask = self.trivial.copy()
        y = x
        while y != 0:
            mask[y] = True
            y = int(self.mul[y, x])
        return mask

    def conjugate_mask(self, mask: np.ndarray, g: int) -> np.ndarray:
        """Mask of ``H^g = g^-1 H g``."""
        return mask[self.conj[int(self.inv[g])]]

    def normalizer_mask(self, mask: np.ndarray, gens, within: np.ndarray | None = None) -> np.ndarray:
        # g normalizes H iff g^-1 h g in H for each generator h
        out = self.full.copy() if within is None else within.copy()
        for h in gens:
            out &= mask[self.conj[:, int(h)]]
        return out

    def is_normal_in(self, mask: np.ndarray, top_gens, gens=None) -> bool:
        members = np.flatnonzero(mask) if gens is None else np.asarray(list(gens), dtype=np.int64)
        for t in top_gens:
            if not mask[self.conj[int(t), members]].all():
                return False
        return True

    def core_mask(self, mask: np.ndarray, top_gens) -> np.ndarray:
        C = mask.copy()
        while True:
            before = int(C.sum())
            for t in top_gens:
                C &= C[self.conj[int(self.inv[int(t)])]]
            if int(C.sum()) == before:
                return C

    def generators_of(self, mask: np.ndarray) -> list[int]:
        """A short generating set, chosen greedily from largest element order."""
        idx = np.flatnonzero(mask)
        cand = idx[np.lexsort((idx, -self.order[idx]))]
        got = self.trivial.copy()
        gens: list[int] = []
        target = int(mask.sum())
        for x in cand:
            if got[x]:
                continue
            gens.append(int(x))
            got = self.closure(gens)
            if int(got.sum()) == target:
                break
        return gens

    def product_mask(self, A: np.ndarray, B: np.ndarray) -> np.ndarray:
        a = np.flatnonzero(A)
        b = np.flatnonzero(B)
        out = np.zeros(self.n, dtype=bool)
        out[self.mul[a][:, b].ravel()] = True
        return out

    def commutes(self, gens) -> bool:
        gens = [int(g) for g in gens]
        for i, a in enumerate(gens):
            for b in gens[i + 1:]:
                if self.mul[a, b] != self.mul[b, a]:
                    return False
        return True

    def to_group(self, mask: np.ndarray, gens=None) -> PermGroup:
        if gens is None:
            gens = self.generators_of(mask)
        return PermGroup(self.group.degree, [self.perms[g] for g in gens])

    def mask_of(self, H: PermGroup) -> np.ndarray:
        return self.closure([self.index_of(g) for g in H.generators])

    # sections: L/N with N normal in L, both masks --------------------

    def coset_orders(self, L: np.ndarray, N: np.ndarray) -> dict[int, int]:
        """Order of ``xN`` for every ``x`` in ``L``."""
        out = {}
        for x in np.flatnonzero(L):
            x = int(x)
            y, k = x, 1
            while not N[y]:
                y = int(self.mul[y, x])
                k += 1
            out[x] = k
        return out

    def section_is_nilpotent(self, L: np.ndarray, N: np.ndarray) -> bool:
        size = int(L.sum()) // int(N.sum())
        if size == 1:
            return True
        co = self.coset_orders(L, N)
        nsize = int(N.sum())
        for p in prime_factors(size):
            count = sum(1 for k in co.values() if p_part(k, p) == k)
            if count // nsize != p_part(size, p):
                return False
        return True

    def section_is_abelian(self, L_gens) -> bool:
        return self.commutes(L_gens)

    def section_is_cyclic(self, L: np.ndarray, N: np.ndarray) -> bool:
        size = int(L.sum()) // int(N.sum())
        if size == 1:
            return True
        return max(self.coset_orders(L, N).values()) == size

    def section_is_supersoluble(self, L: np.ndarray, N: np.ndarray, L_gens=None) -> bool:
        """Whether ``L/N`` is supersoluble (``N`` normal in ``L``).

        Builds a normal series of ``L`` through ``N`` with prime-order factors,
        one step at a time; any normal prime-order factor can be chosen since
        the class is closed under quotients.
        """
        if L_gens is None:
            L_gens = self.generators_of(L)
        L_gens = [int(t) for t in L_gens]
        N = N.copy()
        total = int(L.sum())
        while int(N.sum()) < total:
            nsize = int(N.sum())
            tried = N.copy()
            step = None
            for x in np.flatnonzero(L & ~N):
                x = int(x)
                if tried[x]:
                    continue
                M = self.product_mask(N, self.cyclic(x))
                if not is_prime(int(M.sum()) // nsize):
                    continue
                tried |= M
                if all(M[self.conj[t, x]] for t in L_gens):
                    step = M
                    break
            if step is None:
                return False
            N = step
        return True


