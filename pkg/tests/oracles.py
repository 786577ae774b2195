"""Slow, independent reference computations used to freeze expected values.

Nothing here touches the package's tables or lattices: permutations are plain
0-based tuples, groups are frozensets, and every subgroup is found by brute
force.  Products are left to right, matching the package convention.
"""

from __future__ import annotations

from itertools import combinations


def mul(p, q):
    return tuple(q[i] for i in p)


def inv(p):
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


def ident(n):
    return tuple(range(n))


def from_cycles(text: str, n: int):
    img = list(range(n))
    for cyc in text.replace(" ", ",").split(")"):
        pts = [int(x) - 1 for x in cyc.strip("(, ").split(",") if x]
        for a, b in zip(pts, pts[1:] + pts[:1]):
            img[a] = b
    return tuple(img)


def closure(gens, n):
    """Breadth-first closure under right multiplication by generators."""
    e = ident(n)
    seen = {e}
    frontier = [e]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = mul(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(seen)


def subgroup_closure(elems, n):
    return closure(list(elems), n)


def derived(G, n):
    return closure([mul(mul(inv(a), inv(b)), mul(a, b)) for a in G for b in G], n)


def conjugate(H, g):
    gi = inv(g)
    return frozenset(mul(mul(gi, h), g) for h in H)


def normalizer(G, H):
    return frozenset(g for g in G if conjugate(H, g) == H)


def centralizer(G, H):
    return frozenset(g for g in G if all(mul(g, h) == mul(h, g) for h in H))


def core(G, H):
    out = set(H)
    for g in G:
        out &= conjugate(H, g)
    return frozenset(out)


def is_normal(G, H):
    return all(conjugate(H, g) == H for g in G)


def element_order(x):
    n = 1
    y = x
    e = ident(len(x))
    while y != e:
        y = mul(y, x)
        n += 1
    return n


def all_subgroups(G, n):
    """Cyclic subgroups, then joins of pairs until nothing new appears."""
    G = frozenset(G)
    cyclic = {closure([g], n) for g in G}
    subs = set(cyclic)
    frontier = set(cyclic)
    while frontier:
        new = set()
        for S in frontier:
            for C in cyclic:
                if C <= S:
                    continue
                J = _join(S, C, n)
                if J not in subs:
                    new.add(J)
        subs |= new
        frontier = new
    return subs


def _join(S, C, n):
    gens = _small_generating_set(S, n) + _small_generating_set(C, n)
    return closure(gens, n)


def _small_generating_set(S, n):
    gens = []
    cur = frozenset([ident(n)])
    for x in sorted(S):
        if x not in cur:
            gens.append(x)
            cur = closure(gens, n)
            if cur == S:
                break
    return gens


def conjugacy_classes(G, subs):
    remaining = set(subs)
    classes = []
    while remaining:
        H = min(remaining, key=lambda s: (len(s), sorted(s)))
        cls = {conjugate(H, g) for g in G}
        classes.append(cls)
        remaining -= cls
    return classes


def maximal_pairs(subs):
    """``(K, L)`` with ``K < L`` and nothing strictly between."""
    subs = sorted(subs, key=len)
    pairs = []
    for i, K in enumerate(subs):
        ups = [L for L in subs[i + 1:] if len(L) > len(K) and K < L]
        for L in ups:
            if not any(K < M < L for M in ups if len(M) < len(L)):
                pairs.append((K, L))
    return pairs


def is_prime(m):
    return m > 1 and all(m % d for d in range(2, int(m ** 0.5) + 1))


def maximal_in(L, subs):
    inside = [M for M in subs if M < L]
    return [M for M in inside if not any(M < X for X in inside)]


def section_huppert(L, K, subs):
    """Huppert: a group is supersoluble iff every maximal subgroup has prime index."""
    interval = [M for M in subs if K <= M < L]
    maximal = [M for M in interval if not any(M < X for X in interval)]
    return all(is_prime(len(L) // len(M)) for M in maximal)


def u_admissible(K, L, subs):
    """Maximal pair ``K < L`` with ``L / core_L(K)`` supersoluble."""
    return section_huppert(L, core(L, K), subs)


def chain_status(G, H, subs, criterion):
    """Exhaustive status: 'SUBNORMAL', 'ABNORMAL', 'NEITHER' or 'WHOLE_GROUP'."""
    G = frozenset(G)
    if H == G:
        return "WHOLE_GROUP"
    pairs = maximal_pairs(subs)
    if criterion == "P":
        ok = {(K, L) for K, L in pairs if is_prime(len(L) // len(K))}
    else:
        ok = {(K, L) for K, L in pairs if u_admissible(K, L, subs)}

    def reaches(X, seen):
        if X == G:
            return True
        for K, L in ok:
            if K == X and L not in seen:
                seen.add(L)
                if reaches(L, seen):
                    return True
        return False

    if reaches(H, {H}):
        return "SUBNORMAL"
    if criterion == "P":
        # any pair above H, maximal or not
        above = [X for X in subs if H <= X]
        bad = any(is_prime(len(L) // len(K)) for K in above for L in above if K < L)
    else:
        bad = any(H <= K for K, L in ok)
    return "NEITHER" if bad else "ABNORMAL"


def named(n, *cycles):
    return closure([from_cycles(c, n) for c in cycles], n)


def sym(n):
    if n < 2:
        return frozenset([ident(n)])
    return named(n, "(1 2)", "(" + " ".join(str(i) for i in range(1, n + 1)) + ")")


def alt(n):
    S = sym(n)
    return frozenset(p for p in S if _even(p))


def _even(p):
    seen = set()
    parity = 0
    for i in range(len(p)):
        if i in seen:
            continue
        j, length = i, 0
        while j not in seen:
            seen.add(j)
            j = p[j]
            length += 1
        parity += length - 1
    return parity % 2 == 0


def pairs_subgroups(G, n):
    """Subgroups generated by at most two elements (a lower bound for the lattice)."""
    G = sorted(G)
    out = {closure([g], n) for g in G}
    for a, b in combinations(G, 2):
        out.add(closure([a, b], n))
    return out
