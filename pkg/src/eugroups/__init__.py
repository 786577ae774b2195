"""Permutation-group engine for E_U-group verification.

Typical use::

    from eugroups import build, lookup, SubgroupLattice, analyze
    L = SubgroupLattice(build(lookup("A4")))
    report = analyze(L, "A4")
"""

from .builders import GroupSpec, build, builtin_catalog, lookup
from .lattice import Subgroup, SubgroupLattice
from .perm import CapExceeded, Permutation, PermGroup, parse_permutation
from .verify import TheoremReport, analyze, brute_EU, check_theorem_A, check_theorem_B

__version__ = "0.1.0"

__all__ = [
    "CapExceeded", "GroupSpec", "PermGroup", "Permutation", "Subgroup", "SubgroupLattice",
    "TheoremReport", "analyze", "brute_EU", "build", "builtin_catalog", "check_theorem_A",
    "check_theorem_B", "lookup", "parse_permutation",
]
