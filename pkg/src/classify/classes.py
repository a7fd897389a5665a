"""
Group-class membership tests

Every test reads one chief series of G (or of the section G/N, through the
normal lattice of G above N); Jordan-Holder makes one series enough.
"""

from enum import Enum
from typing import List, Optional

from sympy import isprime

from src.core.exceptions import NotASubgroupError
from src.lattice.normal_lattice import ChiefFactor, normal_lattice
from src.lattice.reach import reach
from src.perm.group import GroupHandle, SubgroupRef
from src.perm.operations import (
    derived_subgroup,
    is_abelian,
    is_p_number,
    join,
    p_elements,
    p_part,
    primes_of,
)
from src.utils.logging import classify_logger as logger


class GroupClass(str, Enum):
    """Classes of finite groups the engine decides"""
    ABELIAN = "abelian"
    NILPOTENT = "nilpotent"
    P_NILPOTENT = "p-nilpotent"
    SOLVABLE = "solvable"
    P_SOLVABLE = "p-solvable"
    SUPERSOLVABLE = "supersolvable"
    P_SUPERSOLVABLE = "p-supersolvable"
    QUASINILPOTENT = "quasinilpotent"
    P_QUASINILPOTENT = "p-quasinilpotent"
    SIMPLE = "simple"
    QUASISIMPLE = "quasisimple"

    @property
    def needs_prime(self) -> bool:
        return self.value.startswith("p-")


def is_nilpotent(G: GroupHandle) -> bool:
    """Every Sylow subgroup is normal, i.e. G has exactly |G|_p p-elements for each p"""
    def build() -> bool:
        return all(len(p_elements(G, p)) == p_part(G.order, p) for p in primes_of(G.order))

    return G.cached("is_nilpotent", build)


def section_factors(G: GroupHandle, N: Optional[SubgroupRef] = None) -> List[ChiefFactor]:
    """Chief factors of G/N along the canonical chief series above N"""
    lattice = normal_lattice(G)
    source = lattice.id_of(N) if N is not None else lattice.bottom
    chain = reach(lattice, lambda lo, hi: True, source=source).chain
    return [lattice.chief_factor(edge) for edge in zip(chain, chain[1:])]


def group_class(G: GroupHandle, cls: GroupClass, p: Optional[int] = None, modulo: Optional[SubgroupRef] = None) -> bool:
    """
    Decide whether G (or the section G/modulo) lies in a class

    Args:
        G: the group
        cls: class to test
        p: prime for the p-classes
        modulo: normal subgroup N of G; the section G/N is tested

    Returns:
        Membership verdict
    """
    cls = GroupClass(cls)
    if cls.needs_prime and (p is None or not isprime(p)):
        raise ValueError(f"class {cls.value} needs a prime p")
    N = modulo if modulo is not None else G.trivial
    if N.parent is not G:
        raise NotASubgroupError("modulo subgroup belongs to another group")

    if N.is_whole:
        return cls not in (GroupClass.SIMPLE, GroupClass.QUASISIMPLE)

    if N.is_trivial:
        if cls == GroupClass.ABELIAN:
            return is_abelian(G)
        if is_abelian(G) or is_nilpotent(G):
            if cls == GroupClass.SIMPLE:
                return isprime(G.order)
            return cls != GroupClass.QUASISIMPLE
        if cls == GroupClass.NILPOTENT:
            return False

    verdict = _section_class(G, cls, p, N)
    logger.debug(f"{G.name}/{N.order}: {cls.value}{'' if p is None else f' (p={p})'} -> {verdict}")
    return verdict


def _section_class(G: GroupHandle, cls: GroupClass, p: Optional[int], N: SubgroupRef) -> bool:
    lattice = normal_lattice(G)
    source = lattice.id_of(N)
    factors = section_factors(G, N)

    if cls == GroupClass.ABELIAN:
        return all((N.mask >> G.commutator_of(a, b)) & 1 for a in G.generator_ids for b in G.generator_ids)
    if cls == GroupClass.NILPOTENT:
        return all(f.centralizer.is_whole for f in factors)
    if cls == GroupClass.P_NILPOTENT:
        index = G.order // N.order
        complement = N.order * (index // p_part(index, p))
        return any(n.order == complement and N <= n for n in lattice.nodes)
    if cls == GroupClass.SOLVABLE:
        return all(f.is_abelian for f in factors)
    if cls == GroupClass.P_SOLVABLE:
        return all(is_p_number(f.order, p) or f.order % p != 0 for f in factors)
    if cls == GroupClass.SUPERSOLVABLE:
        return all(f.prime is not None and f.order == f.prime for f in factors)
    if cls == GroupClass.P_SUPERSOLVABLE:
        # order exactly p also makes the factor a p-group, so p-solvability follows
        return all(f.order == p for f in factors if f.order % p == 0)
    if cls in (GroupClass.QUASINILPOTENT, GroupClass.P_QUASINILPOTENT):
        return all(
            _induces_inner_automorphisms(G, lattice.nodes[f.hi], f)
            for f in factors
            if cls == GroupClass.QUASINILPOTENT or f.order % p == 0
        )
    if cls == GroupClass.SIMPLE:
        return lattice.successors(source) == [lattice.top]
    if cls == GroupClass.QUASISIMPLE:
        if not join(G, derived_subgroup(G), N).is_whole:
            return False
        Z = _center_modulo(G, N)
        if Z.is_whole:
            return False
        return lattice.successors(lattice.id_of(Z)) == [lattice.top]
    raise ValueError(f"unknown class {cls}")


def _induces_inner_automorphisms(G: GroupHandle, L: SubgroupRef, factor: ChiefFactor) -> bool:
    """Every g in G acts on L/K like an element of L, i.e. G = L * C_G(L/K)"""
    return join(G, L, factor.centralizer).is_whole


def _center_modulo(G: GroupHandle, N: SubgroupRef) -> SubgroupRef:
    """Preimage of Z(G/N)"""
    mask = 0
    for g in range(G.order):
        if all((N.mask >> G.commutator_of(g, x)) & 1 for x in G.generator_ids):
            mask |= 1 << g
    return G.from_mask(mask)
