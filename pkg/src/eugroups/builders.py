"""Group constructors and the built-in catalog.

Every construction yields a :class:`~eugroups.perm.PermGroup`.  Affine groups
``F_p^k : <M>`` act on the ``p**k`` vectors of ``F_p^k``; vector
``(v_0, ..., v_{k-1})`` is point ``1 + sum(v_i * p**i)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any

from .perm import DEGREE_CAP, CapExceeded, PermGroup, Permutation, parse_permutation
from .table import is_prime

KINDS = ("cyclic", "dihedral", "symmetric", "alternating", "product", "affine", "generators")


@dataclass(frozen=True)
class GroupSpec:
    """Recipe for a group.

    ``params`` by kind: cyclic/dihedral/symmetric/alternating take ``n``;
    product takes ``factors`` (a tuple of specs); affine takes ``p``, ``k`` and
    ``matrices``; generators takes ``degree`` and ``generators`` (cycle strings).
    """

    name: str
    kind: str
    params: tuple = field(default=())

    def param(self, key: str, default: Any = None) -> Any:
        return dict(self.params).get(key, default)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown construction {self.kind!r}")


def cyclic(n: int, name: str | None = None) -> GroupSpec:
    return GroupSpec(name or f"C{n}", "cyclic", (("n", n),))


def dihedral(n: int, name: str | None = None) -> GroupSpec:
    """Symmetries of the regular ``n``-gon (order ``2n``)."""
    return GroupSpec(name or f"D{2 * n}", "dihedral", (("n", n),))


def symmetric(n: int, name: str | None = None) -> GroupSpec:
    return GroupSpec(name or f"S{n}", "symmetric", (("n", n),))


def alternating(n: int, name: str | None = None) -> GroupSpec:
    return GroupSpec(name or f"A{n}", "alternating", (("n", n),))


def product(*factors: GroupSpec, name: str | None = None) -> GroupSpec:
    return GroupSpec(name or "x".join(f.name for f in factors), "product", (("factors", tuple(factors)),))


def _freeze(m):
    return tuple(tuple(tuple(int(x) for x in row) for row in mat) for mat in m)


def affine(p: int, k: int, matrices, name: str | None = None) -> GroupSpec:
    return GroupSpec(name or f"AFF({p}^{k})", "affine",
                     (("p", p), ("k", k), ("matrices", _freeze(matrices))))


def explicit(degree: int, generators, name: str) -> GroupSpec:
    return GroupSpec(name, "generators", (("degree", degree), ("generators", tuple(generators))))


# matrices over F_p -----------------------------------------------------

def _det_mod(M, p: int) -> int:
    # Gaussian elimination mod p
    A = [list(r) for r in M]
    n = len(A)
    det = 1
    for c in range(n):
        piv = next((r for r in range(c, n) if A[r][c] % p), None)
        if piv is None:
            return 0
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            det = -det
        det = det * A[c][c] % p
        inv = pow(A[c][c], -1, p)
        for r in range(c + 1, n):
            f = A[r][c] * inv % p
            for j in range(c, n):
                A[r][j] = (A[r][j] - f * A[c][j]) % p
    return det % p


def _matmul(A, B, p):
    k = len(A)
    return tuple(tuple(sum(A[i][t] * B[t][j] for t in range(k)) % p for j in range(k)) for i in range(k))


def matrix_group_order(p: int, matrices) -> int:
    if not matrices:
        return 1
    k = len(matrices[0])
    ident = tuple(tuple(int(i == j) for j in range(k)) for i in range(k))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for X in frontier:
            for M in matrices:
                Y = _matmul(X, M, p)
                if Y not in seen:
                    seen.add(Y)
                    nxt.append(Y)
        frontier = nxt
    return len(seen)


def _vectors(p: int, k: int):
    # index = sum v_i p^i
    return [tuple((x // p ** i) % p for i in range(k)) for x in range(p ** k)]


def _vec_index(v, p):
    return sum(c * p ** i for i, c in enumerate(v))


def _affine_generators(p: int, k: int, matrices) -> list[Permutation]:
    vecs = _vectors(p, k)
    gens = []
    for t in range(k):
        img = []
        for v in vecs:
            w = list(v)
            w[t] = (w[t] + 1) % p
            img.append(_vec_index(w, p))
        gens.append(Permutation(img, zero_based=True))
    for M in matrices:
        img = [_vec_index([sum(M[i][j] * v[j] for j in range(k)) % p for i in range(k)], p) for v in vecs]
        gens.append(Permutation(img, zero_based=True))
    return gens


def _shift(perm: Permutation, offset: int, degree: int) -> Permutation:
    img = list(range(degree))
    for i, x in enumerate(perm.array):
        img[i + offset] = x + offset
    return Permutation(img, zero_based=True)


def predicted_order(spec: GroupSpec) -> int | None:
    """Order implied by the construction, or ``None`` for explicit generators."""
    k = spec.kind
    if k == "cyclic":
        return spec.param("n")
    if k == "dihedral":
        return 2 * spec.param("n")
    if k == "symmetric":
        return math.factorial(spec.param("n"))
    if k == "alternating":
        n = spec.param("n")
        return max(1, math.factorial(n) // 2)
    if k == "product":
        orders = [predicted_order(f) for f in spec.param("factors")]
        return None if None in orders else math.prod(orders)
    if k == "affine":
        p, kk = spec.param("p"), spec.param("k")
        return p ** kk * matrix_group_order(p, spec.param("matrices"))
    return None


def _generators(spec: GroupSpec) -> tuple[int, list[Permutation]]:
    kind = spec.kind
    if kind in ("cyclic", "dihedral", "symmetric", "alternating"):
        n = spec.param("n")
        if n < 1:
            raise ValueError("n must be positive")
    if kind == "cyclic":
        return n, [Permutation([(i + 1) % n for i in range(n)], zero_based=True)]
    if kind == "dihedral":
        if n < 3:
            raise ValueError("dihedral groups need n >= 3")
        rot = Permutation([(i + 1) % n for i in range(n)], zero_based=True)
        ref = Permutation([(-i) % n for i in range(n)], zero_based=True)
        return n, [rot, ref]
    if kind == "symmetric":
        if n == 1:
            return 1, []
        gens = [Permutation([(i + 1) % n for i in range(n)], zero_based=True),
                Permutation([1, 0] + list(range(2, n)), zero_based=True)]
        return n, gens
    if kind == "alternating":
        gens = []
        for i in range(n - 2):
            img = list(range(n))
            img[0], img[1], img[i + 2] = img[1], img[i + 2], img[0]
            gens.append(Permutation(img, zero_based=True))
        return n, gens
    if kind == "product":
        parts = [_generators(f) for f in spec.param("factors")]
        degree = sum(d for d, _ in parts)
        gens = []
        off = 0
        for d, gs in parts:
            gens.extend(_shift(g, off, degree) for g in gs)
            off += d
        return degree, gens
    if kind == "affine":
        p, k, mats = spec.param("p"), spec.param("k"), spec.param("matrices")
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if k < 1:
            raise ValueError("k must be positive")
        if p ** k > DEGREE_CAP:
            raise CapExceeded(f"affine degree {p ** k} exceeds cap {DEGREE_CAP}")
        for M in mats:
            if len(M) != k or any(len(r) != k for r in M):
                raise ValueError(f"matrix is not {k}x{k}")
            if _det_mod(M, p) == 0:
                raise ValueError(f"singular matrix mod {p}: {M}")
        return p ** k, _affine_generators(p, k, mats)
    if kind == "generators":
        degree = spec.param("degree")
        return degree, [parse_permutation(s, degree) for s in spec.param("generators")]
    raise ValueError(kind)


def build(spec: GroupSpec) -> PermGroup:
    degree, gens = _generators(spec)
    return PermGroup(degree, gens)


# catalog -----------------------------------------------------------------

# Q8 in its regular representation (action on the nonzero vectors of F_3^2)
Q8_GENERATORS = ("(1 3 2 6)(4 5 8 7)", "(1 4 2 8)(3 7 6 5)")

# SL(2,p) copies of Q8 (i, j) and an order-3 element w normalizing them
SL23 = {
    3: (((0, 2), (1, 0)), ((1, 1), (1, 2)), ((0, 1), (2, 2))),
    5: (((0, 4), (1, 0)), ((0, 2), (2, 0)), ((1, 1), (2, 3))),
    7: (((0, 6), (1, 0)), ((2, 3), (3, 5)), ((0, 4), (5, 6))),
}


def _linear_on_nonzero(p: int, matrices, name: str) -> GroupSpec:
    """Matrix group acting on the nonzero vectors of F_p^k, as explicit generators."""
    k = len(matrices[0])
    vecs = [v for v in _vectors(p, k) if any(v)]
    where = {v: i + 1 for i, v in enumerate(vecs)}
    gens = []
    for M in matrices:
        img = [where[tuple(sum(M[i][j] * v[j] for j in range(k)) % p for i in range(k))] for v in vecs]
        gens.append(str(Permutation(img)))
    return explicit(len(vecs), gens, name)


def _catalog_specs() -> list[GroupSpec]:
    i3, j3, w3 = SL23[3]
    i5, j5, w5 = SL23[5]
    i7, j7, w7 = SL23[7]
    f8 = ((0, 0, 1), (1, 0, 1), (0, 1, 0))          # x^3 + x + 1
    frob8 = ((1, 0, 0), (0, 0, 1), (0, 1, 1))
    f9 = ((0, 1), (1, 2))                            # x^2 + x + 2, order 8
    frob9 = ((1, 2), (0, 2))
    f16_5 = ((0, 0, 0, 1), (1, 0, 0, 1), (0, 1, 0, 1), (0, 0, 1, 1))  # x^4+x^3+x^2+x+1
    f16 = ((0, 0, 0, 1), (1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 1))    # x^4 + x^3 + 1
    f32 = ((0, 0, 0, 0, 1), (1, 0, 0, 0, 0), (0, 1, 0, 0, 0), (0, 0, 1, 0, 1), (0, 0, 0, 1, 0))
    c13 = ((0, 2, 2), (0, 0, 2), (1, 1, 1))
    c8_5 = ((2, 2), (4, 3))
    f81_5 = ((0, 0, 0, 2), (1, 0, 0, 2), (0, 1, 0, 2), (0, 0, 1, 2))  # x^4+x^3+x^2+x+1 mod 3

    S3, S4, S5 = symmetric(3), symmetric(4), symmetric(5)
    A4, A5 = alternating(4), alternating(5)
    C2, C3, C5 = cyclic(2), cyclic(3), cyclic(5)
    Q8 = explicit(8, Q8_GENERATORS, "Q8")
    SL2_3 = _linear_on_nonzero(3, [i3, j3, w3], "SL(2,3)")
    GL2_3 = _linear_on_nonzero(3, [i3, j3, w3, ((1, 0), (0, 2))], "GL(2,3)")

    specs = [
        S3, S4, S5, A4, A5, dihedral(4, "D8"), Q8, SL2_3, GL2_3,
        affine(7, 2, [i7, j7, w7], "SL23_affine7"),
        affine(2, 2, [((0, 1), (1, 1))], "A4_as_example41"),
        explicit(13, ["(1 2)(3 4)", "(1 3)(2 4)", "(2 3 4)(5 6 7 8 9 10 11 12 13)"], "C2^2:C9"),
        affine(3, 2, [((0, 2), (1, 0))], "C3^2:C4"),
        affine(3, 2, [i3, j3], "C3^2:Q8"),
        affine(3, 2, [f9], "AGL(1,9)"),
        affine(3, 2, [((0, 1), (1, 0)), ((2, 0), (0, 1))], "C3^2:D8"),
        affine(3, 2, [f9, frob9], "AGammaL(1,9)"),
        affine(3, 2, [i3, j3, w3], "ASL(2,3)"),
        affine(3, 2, [i3, j3, w3, ((1, 0), (0, 2))], "AGL(2,3)"),
        affine(2, 3, [f8], "AGL(1,8)"),
        affine(2, 3, [f8, frob8], "AGammaL(1,8)"),
        affine(5, 2, [w5], "C5^2:C3"),
        affine(5, 2, [i5, j5], "C5^2:Q8"),
        affine(5, 2, [c8_5], "C5^2:C8"),
        affine(5, 2, [i5, j5, w5], "C5^2:SL(2,3)"),
        affine(7, 2, [i7, j7], "C7^2:Q8"),
        affine(2, 4, [f16_5], "C2^4:C5"),
        affine(2, 4, [f16], "AGL(1,16)"),
        affine(3, 3, [c13], "C3^3:C13"),
        affine(3, 4, [f81_5], "C3^4:C5"),
        affine(2, 5, [f32], "AGL(1,32)"),
        product(A4, C2), product(A4, C3), product(A4, C5), product(S4, C2),
        product(S4, C3), product(A4, S3), product(S4, S3), product(A4, A4),
        product(SL2_3, C2), product(A4, C2, C2, name="A4xC2xC2"),
        product(S3, C5), product(Q8, C3), product(A5, C2), product(S3, S3),
        affine(5, 1, [((2,),)], "AGL(1,5)"), affine(3, 1, [((2,),)], "AGL(1,3)"),
    ]
    specs += [cyclic(n) for n in range(1, 33)]
    specs += [dihedral(n // 2) for n in range(6, 33, 2)]
    return specs


@lru_cache(maxsize=1)
def builtin_catalog() -> dict[str, GroupSpec]:
    out: dict[str, GroupSpec] = {}
    for s in _catalog_specs():
        out.setdefault(s.name, s)
    return out


def lookup(name: str) -> GroupSpec:
    try:
        return builtin_catalog()[name]
    except KeyError:
        raise KeyError(f"unknown catalog group {name!r}") from None


def translation_subgroup(spec: GroupSpec) -> PermGroup:
    """The normal subgroup of translations of an affine group."""
    if spec.kind != "affine":
        raise ValueError("not an affine construction")
    p, k = spec.param("p"), spec.param("k")
    return PermGroup(p ** k, _affine_generators(p, k, []))


def linear_part(spec: GroupSpec) -> PermGroup:
    """The point stabilizer of the zero vector (the matrix group)."""
    if spec.kind != "affine":
        raise ValueError("not an affine construction")
    p, k = spec.param("p"), spec.param("k")
    return PermGroup(p ** k, _affine_generators(p, k, spec.param("matrices"))[k:])
