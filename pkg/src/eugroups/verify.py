"""Brute-force E_U test and structural checks for the classification theorems.

Each group gets two independent answers: the brute one from subgroup
statuses, and the structural one from the decomposition ``G = D : H`` with
``D`` the supersoluble residual.  A report confirms when the two agree.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field

from .formations import (
    Formation, node_is_abelian, node_is_miller_moreno, node_is_nilpotent,
    node_is_supersoluble, residual,
)
from .lattice import (
    Subgroup, SubgroupLattice, _derived_mask, chief_series, complements, frattini,
)
from .perm import image_of, quotient_map
from .subnorm import (
    Criterion, Status, edge_set, is_carter, is_gaschutz, neither_witness, status,
)
from .table import is_prime_power, prime_factors

NOT_APPLICABLE = "NOT_APPLICABLE"
CONDITIONS = ("i", "ii", "iii", "iv", "v", "vi")


def describe(L: SubgroupLattice, H: Subgroup) -> dict:
    return {"id": H.id, "order": H.order, "class_size": len(L.class_of(H)),
            "generators": [str(L.table.perms[g]) for g in H.gens]}


@dataclass
class Condition:
    passed: bool
    witness: dict | None = None

    def to_dict(self) -> dict:
        return {"pass": self.passed, "witness": self.witness}


@dataclass
class BruteResult:
    value: bool | str
    witness: dict | None = None


@dataclass
class TheoremReport:
    name: str
    order: int
    soluble: bool
    supersoluble: bool
    D_order: int
    brute_EU: BruteResult
    conditions: dict = field(default_factory=dict)
    decomposition: dict | None = None
    structural_A: bool | None = None
    verdict_A: str = NOT_APPLICABLE
    theorem_B: dict = field(default_factory=dict)
    verdict_B: str = NOT_APPLICABLE

    @property
    def consistency(self) -> dict:
        return {"A": self.verdict_A, "B": self.verdict_B}

    def to_dict(self) -> dict:
        d = asdict(self)
        d["conditions"] = {k: v.to_dict() if isinstance(v, Condition) else v
                           for k, v in self.conditions.items()}
        d["consistency"] = self.consistency
        return d


def _quantified_status(L: SubgroupLattice, floor: Subgroup | None = None) -> tuple[bool, dict | None]:
    """Every non-identity proper node (containing ``floor``) is U-subnormal or U-abnormal."""
    E = edge_set(L, Criterion.SUPERSOLUBLE)
    for H in L:
        if H.order == 1 or H.id == L.top.id:
            continue
        if floor is not None and not floor <= H:
            continue
        if status(L, H, E) is Status.NEITHER:
            w = describe(L, H)
            w.update(status="NEITHER", **neither_witness(L, H, E))
            return False, w
    return True, None


def brute_EU(L: SubgroupLattice) -> BruteResult:
    if node_is_supersoluble(L, L.top):
        return BruteResult(NOT_APPLICABLE, {"reason": "group is supersoluble"})
    ok, w = _quantified_status(L)
    return BruteResult(ok, w)


# structural conditions -------------------------------------------------------

def derived_node(L: SubgroupLattice, X: Subgroup | None = None) -> Subgroup:
    X = X or L.top
    return L.find_mask(_derived_mask(L.table, X.mask, X.gens))


def is_hall(L: SubgroupLattice, H: Subgroup) -> bool:
    return math.gcd(H.order, L.order // H.order) == 1


def condition_i(L: SubgroupLattice, H: Subgroup) -> Condition:
    if not is_hall(L, H):
        return Condition(False, {"reason": "not a Hall subgroup", **describe(L, H)})
    if not is_gaschutz(L, H):
        return Condition(False, {"reason": "not a Gaschutz subgroup", **describe(L, H)})
    if node_is_nilpotent(L, H) and not is_carter(L, H):
        return Condition(False, {"reason": "nilpotent but not a Carter subgroup", **describe(L, H)})
    return Condition(True, describe(L, H))


def condition_ii(L: SubgroupLattice, D: Subgroup) -> Condition:
    cs = chief_series(L, through=D)
    below = cs.terms.index(D.id)
    for pos in range(below):
        if cs.factor_cyclic[pos]:
            return Condition(False, {"reason": "cyclic chief factor below D",
                                     "factor": [cs.terms[pos], cs.terms[pos + 1]],
                                     "factor_order": cs.factor_orders[pos]})
    return Condition(True, {"factor_orders_below_D": list(cs.factor_orders[:below])})


def condition_iii(L: SubgroupLattice, D: Subgroup) -> Condition:
    DG = L.join(D, derived_node(L))
    idx = L.order // DG.order
    return Condition(is_prime_power(idx), {"index": idx})


def _cyclic_prime_power_higher(L: SubgroupLattice, H: Subgroup) -> bool:
    """``H`` is cyclic of order ``q^n`` with ``n > 1``."""
    if not is_prime_power(H.order) or len(prime_factors(H.order)) != 1:
        return False
    q = prime_factors(H.order)[0]
    cyclic = int(L.table.order[H.mask].max()) == H.order
    return cyclic and H.order != q


def condition_iv(L: SubgroupLattice, D: Subgroup, H: Subgroup) -> Condition:
    if _cyclic_prime_power_higher(L, H):
        return Condition(True, {"reason": "H is cyclic of order q^n, n > 1"})
    ok = node_is_nilpotent(L, D)
    return Condition(ok, None if ok else {"reason": "D is not nilpotent", "D_order": D.order})


def quotient_lattice(L: SubgroupLattice, N: Subgroup):
    """Lattice of ``G/N`` and the coset-action homomorphism."""
    Q, hom = quotient_map(L.ambient, N.group)
    return SubgroupLattice(Q), hom


def image_node(LQ: SubgroupLattice, hom, X: Subgroup) -> Subgroup:
    return LQ.find(image_of(hom, X.group, LQ.ambient.degree))


def condition_v(L: SubgroupLattice, H: Subgroup, Phi: Subgroup) -> Condition:
    if Phi.order == 1:
        LQ, img = L, H
    else:
        LQ, hom = quotient_lattice(L, Phi)
        img = image_node(LQ, hom, H)
    mm = node_is_miller_moreno(LQ, img)
    ab = node_is_abelian(LQ, img) and (img.order == 1 or is_prime_power(img.order))
    w = {"image_order": img.order, "miller_moreno": mm, "abelian_prime_power": ab}
    return Condition(mm or ab, w)


def condition_vi(L: SubgroupLattice, D: Subgroup) -> Condition:
    for X in L.supergroups(D, proper=True):
        if X.id == L.top.id:
            continue
        if not node_is_supersoluble(L, X):
            return Condition(False, {"reason": "non-supersoluble proper subgroup containing D",
                                     **describe(L, X)})
    return Condition(True)


def _no_complement() -> Condition:
    return Condition(False, {"reason": "D has no complement"})


def check_theorem_A(L: SubgroupLattice, name: str = "", brute: BruteResult | None = None) -> TheoremReport:
    G = L.top
    sup = node_is_supersoluble(L, G)
    D = residual(L, Formation.SUPERSOLUBLE)
    brute = brute or brute_EU(L)
    rep = TheoremReport(name, L.order, L.soluble, sup, D.order, brute)
    if sup:
        return rep
    comps = complements(L, D)
    chosen = None
    first_fail = None
    for H in comps:
        c = condition_i(L, H)
        if c.passed:
            chosen = (H, c)
            break
        first_fail = first_fail or (H, c)
    Phi = frattini(L)
    conds: dict[str, Condition] = {}
    H = None
    if chosen is not None:
        H, conds["i"] = chosen
    elif first_fail is not None:
        H, conds["i"] = first_fail
    else:
        conds["i"] = _no_complement()
    conds["ii"] = condition_ii(L, D)
    conds["iii"] = condition_iii(L, D)
    conds["iv"] = condition_iv(L, D, H) if H is not None else _no_complement()
    conds["v"] = condition_v(L, H, Phi) if H is not None else _no_complement()
    conds["vi"] = condition_vi(L, D)
    rep.conditions = conds
    rep.decomposition = {"complements": len(comps),
                         "certified": chosen[0].id if chosen else None,
                         "H_order": H.order if H is not None else None}
    rep.structural_A = chosen is not None and all(c.passed for c in conds.values())
    rep.verdict_A = "CONFIRMS_A" if rep.structural_A == brute.value else "VIOLATION"
    return rep


def check_theorem_B(L: SubgroupLattice, rep: TheoremReport) -> dict:
    """Fill ``rep.theorem_B``; needs ``rep`` from :func:`check_theorem_A`."""
    if rep.supersoluble:
        rep.theorem_B = {"verdict": NOT_APPLICABLE}
        rep.verdict_B = NOT_APPLICABLE
        return rep.theorem_B
    D = residual(L, Formation.SUPERSOLUBLE)
    Phi = L.intersect(frattini(L), D)
    brute, witness = _quantified_status(L, floor=Phi)

    LQ = hom = None
    if Phi.order > 1:
        LQ, hom = quotient_lattice(L, Phi)
    found = None
    literal_found = None
    for H in complements(L, D):
        if not is_hall(L, H):
            continue
        HPhi = L.join(H, Phi)
        if LQ is None:
            quot = is_gaschutz(L, H)
        else:
            quot = is_gaschutz(LQ, image_node(LQ, hom, HPhi))
        lit = is_gaschutz(L, HPhi)
        if quot and found is None:
            found = H
        if lit and literal_found is None:
            literal_found = H
    H = found or literal_found
    conds = dict(rep.conditions)
    if H is not None:
        conds["iv"] = condition_iv(L, D, H)
        conds["v"] = condition_v(L, H, frattini(L))
    rest = all(conds[c].passed for c in ("iii", "iv", "v", "vi")) if H is not None else False
    structural = L.soluble and found is not None and rest
    literal = L.soluble and literal_found is not None and rest
    rep.theorem_B = {
        "Phi_order": Phi.order,
        "brute": brute,
        "witness": witness,
        "structural_quotient_reading": structural,
        "structural_literal_reading": literal,
        "literal_agrees": literal == brute,
        "complement": H.id if H is not None else None,
        "conditions": {c: conds[c].to_dict() for c in ("iii", "iv", "v", "vi")},
    }
    rep.verdict_B = "CONFIRMS_B" if structural == brute else "VIOLATION"
    rep.theorem_B["verdict"] = rep.verdict_B
    return rep.theorem_B


def analyze(L: SubgroupLattice, name: str = "", theorem_B: bool = True) -> TheoremReport:
    rep = check_theorem_A(L, name)
    if theorem_B:
        check_theorem_B(L, rep)
    return rep
