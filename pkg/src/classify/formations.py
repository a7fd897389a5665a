"""
Formation tags, F-central chief factors and F-hypercentres
"""

import re
from dataclasses import dataclass, field
from typing import List, Optional

from sympy import isprime

from src.classify.classes import GroupClass, group_class
from src.core.config import settings
from src.core.exceptions import CapExceededError, NotASubgroupError
from src.lattice.normal_lattice import ChiefFactor, normal_lattice
from src.lattice.reach import reachable
from src.perm.enumeration import all_subgroups
from src.perm.group import GroupHandle, SubgroupRef
from src.perm.operations import is_normal, join_all, require_p_group
from src.perm.permutation import Permutation
from src.utils.logging import classify_logger as logger

_TAG = re.compile(r"^(U|N)(p)?(?:\((\d+)\))?$")


@dataclass(frozen=True)
class FormationTag:
    """One of U, Up(p), N, Np(p)"""
    kind: str
    p: Optional[int] = None

    def __post_init__(self):
        if self.kind not in ("U", "Up", "N", "Np"):
            raise ValueError(f"unknown formation {self.kind!r}")
        if self.kind.endswith("p") and (self.p is None or not isprime(self.p)):
            raise ValueError(f"formation {self.kind} needs a prime p")
        if not self.kind.endswith("p") and self.p is not None:
            object.__setattr__(self, "p", None)

    @classmethod
    def parse(cls, text: str) -> "FormationTag":
        """Accept ``U``, ``N``, ``Up(3)``, ``Np(2)``"""
        m = _TAG.match(text.strip())
        if not m:
            raise ValueError(f"cannot parse formation tag {text!r}")
        base, local, prime = m.groups()
        return cls(base + (local or ""), int(prime) if prime else None)

    @property
    def group_class(self) -> GroupClass:
        return {
            "U": GroupClass.SUPERSOLVABLE,
            "Up": GroupClass.P_SUPERSOLVABLE,
            "N": GroupClass.NILPOTENT,
            "Np": GroupClass.P_NILPOTENT,
        }[self.kind]

    @property
    def label(self) -> str:
        return f"{self.kind}({self.p})" if self.p is not None else self.kind

    def __str__(self) -> str:
        return self.label

    def contains(self, G: GroupHandle, modulo: Optional[SubgroupRef] = None) -> bool:
        return group_class(G, self.group_class, self.p, modulo=modulo)


def containing_up(p: int) -> List[FormationTag]:
    """Instantiated formations containing every p-supersolvable group"""
    return [FormationTag("Up", p)]


def containing_u(primes: List[int]) -> List[FormationTag]:
    """Instantiated formations containing every supersolvable group"""
    return [FormationTag("U")] + [FormationTag("Up", q) for q in primes]


def all_tags(primes: List[int]) -> List[FormationTag]:
    tags = [FormationTag("U"), FormationTag("N")]
    for q in primes:
        tags.extend([FormationTag("Up", q), FormationTag("Np", q)])
    return tags


def semidirect_action(G: GroupHandle, factor: ChiefFactor) -> GroupHandle:
    """
    (L/K) x| (G/C_G(L/K)) as a permutation group on the cosets of K in L

    Right translations by generators of L give the regular copy of L/K;
    conjugation by generators of G gives the acting quotient, which fixes
    the trivial coset.

    Raises:
        CapExceededError: the factor is larger than the degree cap
    """
    if factor.order > settings.max_degree:
        raise CapExceededError("max_degree", settings.max_degree, factor.order, detail="chief factor")
    lattice = normal_lattice(G)
    K, L = lattice.nodes[factor.lo], lattice.nodes[factor.hi]

    label = {}
    reps = []
    for x in L.elements:
        if x in label:
            continue
        c = len(reps)
        reps.append(x)
        for k in K.elements:
            label[G.mul(k, x)] = c

    gens = []
    for h in L.generators:
        gens.append(Permutation(tuple(label[G.mul(r, h)] for r in reps)))
    for g in G.generator_ids:
        table = G.conj_table(g)
        gens.append(Permutation(tuple(label[table[r]] for r in reps)))
    return GroupHandle(factor.order, gens, name=f"{G.name}[{factor.lo}->{factor.hi}]")


def f_central(G: GroupHandle, factor: ChiefFactor, tag: FormationTag) -> bool:
    """Is (L/K) x| (G/C_G(L/K)) in the formation?"""
    lattice = normal_lattice(G)
    key = f"f_central:{factor.lo}:{factor.hi}:{tag.label}"
    if key not in lattice.memo:
        lattice.memo[key] = tag.contains(semidirect_action(G, factor))
    return lattice.memo[key]


@dataclass
class HypercentreReport:
    """Z_F(G/N) as a subgroup of G plus the join-closure diagnostic"""
    tag: FormationTag
    subgroup: SubgroupRef
    hypercentral_nodes: List[int] = field(default_factory=list)
    join_is_hypercentral: bool = True


def hypercentre_report(G: GroupHandle, tag: FormationTag, modulo: Optional[SubgroupRef] = None) -> HypercentreReport:
    lattice = normal_lattice(G)
    source = lattice.id_of(modulo) if modulo is not None else lattice.bottom
    key = f"hypercentre:{tag.label}:{source}"
    if key not in lattice.memo:
        nodes = reachable(lattice, lambda lo, hi: f_central(G, lattice.chief_factor((lo, hi)), tag), source)
        Z = join_all(G, (lattice.nodes[i] for i in sorted(nodes)))
        closed = lattice.id_of(Z) in nodes
        if not closed:
            logger.error(f"Join of {tag.label}-hypercentral nodes of {G.name} is not {tag.label}-hypercentral")
        lattice.memo[key] = HypercentreReport(tag, Z, sorted(nodes), closed)
    return lattice.memo[key]


def hypercentre(G: GroupHandle, tag: FormationTag, modulo: Optional[SubgroupRef] = None) -> SubgroupRef:
    """Z_F(G), or the preimage of Z_F(G/N) when ``modulo`` is given"""
    return hypercentre_report(G, tag, modulo).subgroup


def greedy_climb(G: GroupHandle, tag: FormationTag, modulo: Optional[SubgroupRef] = None) -> SubgroupRef:
    """Climb single F-central cover edges from the bottom until stuck"""
    lattice = normal_lattice(G)
    node = lattice.id_of(modulo) if modulo is not None else lattice.bottom
    while True:
        step = next(
            (nxt for nxt in lattice.successors(node) if f_central(G, lattice.chief_factor((node, nxt)), tag)),
            None,
        )
        if step is None:
            return lattice.nodes[node]
        node = step


def _quotient_is_q8(G: GroupHandle, S: SubgroupRef, T: SubgroupRef) -> bool:
    gens = S.generators
    if all((T.mask >> G.commutator_of(a, b)) & 1 for a in gens for b in gens):
        return False
    involutions = sum(
        1 for x in S.elements if not (T.mask >> x) & 1 and (T.mask >> G.mul(x, x)) & 1
    ) // T.order
    return involutions == 1


def quaternion_free(G: GroupHandle, P: SubgroupRef) -> bool:
    """
    True iff no section S/T of the 2-group P is isomorphic to Q8

    Raises:
        NotASubgroupError: P is not a 2-group
    """
    if P.order < 8:
        if P.order > 1 and require_p_group(P) != 2:
            raise NotASubgroupError("quaternion-freeness is defined for 2-groups")
        return True
    if require_p_group(P) != 2:
        raise NotASubgroupError("quaternion-freeness is defined for 2-groups")
    H = P.as_group()
    subgroups = all_subgroups(H)
    for S in subgroups:
        if S.order < 8:
            continue
        for T in subgroups:
            if T.order * 8 != S.order or not T <= S or not is_normal(H, T, within=S):
                continue
            if _quotient_is_q8(H, S, T):
                return False
    return True
