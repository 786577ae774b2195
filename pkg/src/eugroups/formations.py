"""Class membership (nilpotent, supersoluble, ...) and formation residuals."""

from __future__ import annotations

from enum import Enum

import numpy as np

from .lattice import (
    SubgroupLattice, Subgroup, chief_series, maximal_subgroups, minimal_normal_subgroups,
    normal_subgroups, sylow, table_is_soluble,
)
from .perm import PermGroup, derived_series
from .table import is_prime, mask_key, prime_factors


class Formation(str, Enum):
    NILPOTENT = "N"
    SUPERSOLUBLE = "U"


class NotMinimalNormal(ValueError):
    pass


def is_abelian(G: PermGroup) -> bool:
    return G.is_abelian()


def is_p_group(G: PermGroup, p: int) -> bool:
    return prime_factors(G.order()) in ([], [p])


def is_soluble(G: PermGroup) -> bool:
    return derived_series(G)[-1].order() == 1


def _memo(L: SubgroupLattice) -> dict:
    if not hasattr(L, "_formation_memo"):
        L._formation_memo = {}
    return L._formation_memo


def section_in(L: SubgroupLattice, top: Subgroup, bottom: Subgroup | np.ndarray, tag: Formation) -> bool:
    """Whether ``top/bottom`` lies in the formation (``bottom`` normal in ``top``)."""
    bmask = bottom.mask if isinstance(bottom, Subgroup) else bottom
    memo = _memo(L)
    key = (top.key, mask_key(bmask), tag)
    if key not in memo:
        T = L.table
        if tag is Formation.NILPOTENT:
            memo[key] = T.section_is_nilpotent(top.mask, bmask)
        else:
            memo[key] = T.section_is_supersoluble(top.mask, bmask, top.gens)
    return memo[key]


def in_formation(L: SubgroupLattice, node: Subgroup, tag: Formation) -> bool:
    return section_in(L, node, L.bottom, tag)


def node_is_nilpotent(L: SubgroupLattice, node: Subgroup) -> bool:
    return in_formation(L, node, Formation.NILPOTENT)


def node_is_supersoluble(L: SubgroupLattice, node: Subgroup) -> bool:
    return in_formation(L, node, Formation.SUPERSOLUBLE)


def node_is_abelian(L: SubgroupLattice, node: Subgroup) -> bool:
    return L.table.commutes(node.gens)


def node_is_soluble(L: SubgroupLattice, node: Subgroup) -> bool:
    return table_is_soluble(L.table, node.mask, node.gens)


def is_nilpotent(L: SubgroupLattice, verify: bool = False) -> bool:
    """Every Sylow subgroup is normal."""
    result = all(L.is_normal(sylow(L, p)) for p in prime_factors(L.order))
    if verify:
        other = all(L.is_normal(M) for M in maximal_subgroups(L))
        assert result == other, "Sylow and maximal-subgroup nilpotency tests disagree"
    return result


def is_supersoluble_chief(L: SubgroupLattice) -> bool:
    return all(is_prime(m) for m in chief_series(L).factor_orders)


def is_supersoluble_huppert(L: SubgroupLattice) -> bool:
    """Every maximal subgroup has prime index."""
    return all(is_prime(L.order // M.order) for M in maximal_subgroups(L))


def is_supersoluble(L: SubgroupLattice, verify: bool = False) -> bool:
    result = is_supersoluble_chief(L)
    if verify:
        assert result == is_supersoluble_huppert(L), "chief-series and Huppert tests disagree"
    return result


def residual(L: SubgroupLattice, tag: Formation, verify: bool = True) -> Subgroup:
    """Intersection of the normal subgroups with quotient in the formation."""
    G = L.top
    mask = L.table.full.copy()
    qualifying = [N for N in normal_subgroups(L) if section_in(L, G, N, tag)]
    for N in qualifying:
        mask &= N.mask
    R = L.find_mask(mask)
    if verify:
        assert section_in(L, G, R, tag), "residual quotient is not in the formation"
        assert all(R <= N for N in qualifying)
    return R


def node_is_miller_moreno(L: SubgroupLattice, node: Subgroup) -> bool:
    """Non-abelian with every proper subgroup abelian (maximal ones suffice)."""
    if node_is_abelian(L, node):
        return False
    return all(node_is_abelian(L, L[k]) for k, _ in L.down[node.id])


def is_miller_moreno(L: SubgroupLattice) -> bool:
    return node_is_miller_moreno(L, L.top)


def is_critical(L: SubgroupLattice, tag: Formation) -> bool:
    if in_formation(L, L.top, tag):
        return False
    return all(in_formation(L, M, tag) for M in maximal_subgroups(L))


def is_schmidt(L: SubgroupLattice) -> bool:
    return is_critical(L, Formation.NILPOTENT)


def is_U_central(L: SubgroupLattice, R: Subgroup) -> bool:
    """Whether a minimal normal subgroup is supersolubly embedded as a chief factor.

    For ``|R| = p`` the automizer ``G/C_G(R)`` embeds in ``Aut(C_p)``, so
    ``R : (G/C_G(R))`` is supersoluble; otherwise ``R`` itself is a non-cyclic
    chief factor of the semidirect product.
    """
    if R.id not in {M.id for M in minimal_normal_subgroups(L)}:
        raise NotMinimalNormal("R must be a minimal normal subgroup")
    return is_prime(R.order)
