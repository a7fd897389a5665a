"""
Characteristic subgroups

Subgroups that are characteristic in a normal subgroup X of G are normal in
G, so most of them are read straight off the normal lattice of G. The rest
are computed in X as a group of its own and mapped back.
"""

from enum import Enum
from typing import Callable, Optional

from src.classify.classes import GroupClass, group_class, is_nilpotent
from src.core.exceptions import NotASubgroupError
from src.lattice.normal_lattice import minimal_normals, normal_lattice
from src.perm.enumeration import all_subgroups, maximal_subgroups
from src.perm.group import GroupHandle, SubgroupRef
from src.perm.operations import (
    center,
    centralizer,
    elements_of_order,
    is_p_group,
    is_p_number,
    is_perfect,
    join,
    join_all,
    primes_of,
    require_p_group,
    subnormal_closure_test,
)
from src.perm.sylow import frattini_of_p_group, sylow
from src.utils.logging import classify_logger as logger


class CharKind(str, Enum):
    """Characteristic subgroups the engine computes"""
    CENTER = "Z"
    HYPERCENTER = "Zinf"
    FRATTINI = "Phi"
    FITTING = "F"
    OP = "Op"
    OP_PRIME = "Op'"
    O_UPPER_P = "O^p"
    SOCLE = "Soc"
    LAYER = "E"
    FSTAR = "Fstar"
    FSTAR_P = "Fstar_p"
    OMEGA1 = "Omega1"
    OMEGA2 = "Omega2"
    PSI = "Psi"

    @property
    def needs_prime(self) -> bool:
        return self in (CharKind.OP, CharKind.OP_PRIME, CharKind.O_UPPER_P, CharKind.FSTAR_P, CharKind.PSI)


def _lattice_nodes_in(G: GroupHandle, X: SubgroupRef):
    lattice = normal_lattice(G)
    lattice.id_of(X)
    return [n for n in lattice.nodes if n <= X]


def _in_own_group(G: GroupHandle, X: SubgroupRef, compute: Callable[[GroupHandle], SubgroupRef]) -> SubgroupRef:
    if X.is_whole:
        return compute(G)
    return G.subgroup_from(compute(X.as_group()))


def o_p(G: GroupHandle, p: int, X: Optional[SubgroupRef] = None) -> SubgroupRef:
    """Largest normal p-subgroup of X"""
    X = X if X is not None else G.whole
    if X.is_whole and is_nilpotent(G):
        return sylow(G, p)
    return join_all(G, (n for n in _lattice_nodes_in(G, X) if is_p_group(n, p)))


def o_p_prime(G: GroupHandle, p: int, X: Optional[SubgroupRef] = None) -> SubgroupRef:
    """Largest normal p'-subgroup of X"""
    X = X if X is not None else G.whole
    return join_all(G, (n for n in _lattice_nodes_in(G, X) if n.order % p != 0))


def o_upper_p(G: GroupHandle, p: int, X: Optional[SubgroupRef] = None) -> SubgroupRef:
    """Smallest normal subgroup of X with p-group quotient"""
    X = X if X is not None else G.whole
    mask = X.mask
    for n in _lattice_nodes_in(G, X):
        if is_p_number(X.order // n.order, p):
            mask &= n.mask
    return G.from_mask(mask)


def fitting(G: GroupHandle, X: Optional[SubgroupRef] = None) -> SubgroupRef:
    X = X if X is not None else G.whole
    if X.is_whole and is_nilpotent(G):
        return G.whole
    return join_all(G, (o_p(G, q, X) for q in primes_of(X.order)))


def center_of(G: GroupHandle, X: Optional[SubgroupRef] = None) -> SubgroupRef:
    if X is None or X.is_whole:
        return center(G)
    inside = centralizer(G, X)
    return G.from_mask(inside.mask & X.mask)


def hypercenter(G: GroupHandle) -> SubgroupRef:
    """Z_inf(G): pull back the centre of G/Z_i until the series stops"""
    def build() -> SubgroupRef:
        if is_nilpotent(G):
            return G.whole
        current = G.trivial
        while True:
            mask = 0
            for g in range(G.order):
                if all((current.mask >> G.commutator_of(g, x)) & 1 for x in G.generator_ids):
                    mask |= 1 << g
            if mask == current.mask:
                return current
            current = G.from_mask(mask)

    return G.cached("hypercenter", build)


def frattini(G: GroupHandle) -> SubgroupRef:
    """Intersection of the maximal subgroups (P'P^p per Sylow for nilpotent G)"""
    def build() -> SubgroupRef:
        if G.order == 1:
            return G.trivial
        if is_nilpotent(G):
            return join_all(G, (frattini_of_p_group(G, sylow(G, q)) for q in primes_of(G.order)))
        mask = G.full_mask
        for M in maximal_subgroups(G):
            mask &= M.mask
        return G.from_mask(mask)

    return G.cached("frattini", build)


def socle(G: GroupHandle) -> SubgroupRef:
    return join_all(G, minimal_normals(G))


def is_quasisimple_subgroup(G: GroupHandle, S: SubgroupRef) -> bool:
    if S.is_trivial or not is_perfect(G, S):
        return False
    return group_class(S.as_group(), GroupClass.QUASISIMPLE)


def layer(G: GroupHandle) -> SubgroupRef:
    """E(G): join of the subnormal quasisimple subgroups (trivial for solvable G)"""
    def build() -> SubgroupRef:
        if group_class(G, GroupClass.SOLVABLE):
            return G.trivial
        components = [
            S for S in all_subgroups(G)
            if is_quasisimple_subgroup(G, S) and subnormal_closure_test(G, S)
        ]
        logger.debug(f"{G.name} has {len(components)} components")
        return join_all(G, components)

    return G.cached("layer", build)


def fstar(G: GroupHandle, X: Optional[SubgroupRef] = None) -> SubgroupRef:
    """Generalized Fitting subgroup F*(X) = F(X)E(X)"""
    X = X if X is not None else G.whole
    F = fitting(G, X)
    E = _in_own_group(G, X, layer)
    return join(G, F, E)


def fstar_p(G: GroupHandle, p: int, X: Optional[SubgroupRef] = None) -> SubgroupRef:
    """p-quasinilpotent radical: join of the normal subgroups that are p-quasinilpotent as groups"""
    X = X if X is not None else G.whole

    def compute(H: GroupHandle) -> SubgroupRef:
        lattice = normal_lattice(H)
        good = [n for n in lattice.nodes if group_class(n.as_group(), GroupClass.P_QUASINILPOTENT, p)]
        return join_all(H, good)

    return _in_own_group(G, X, compute)


def omega(G: GroupHandle, P: SubgroupRef, level: int) -> SubgroupRef:
    """Omega_1 or Omega_2 of a p-group P"""
    p = require_p_group(P)
    orders = {p} if level == 1 else {p, p * p}
    return G.close(elements_of_order(G, orders, within=P))


def psi(G: GroupHandle, p: int, X: Optional[SubgroupRef] = None) -> SubgroupRef:
    """<x in X : o(x) = p>, with o(x) in {2, 4} when p = 2"""
    X = X if X is not None else G.whole
    orders = {2, 4} if p == 2 else {p}
    return G.close(elements_of_order(G, orders, within=X))


def char_subgroup(G: GroupHandle, kind: CharKind, p: Optional[int] = None, X: Optional[SubgroupRef] = None) -> SubgroupRef:
    """
    Compute a characteristic subgroup of X (G by default)

    Raises:
        NotASubgroupError: an Omega kind on a non-p-group, or X not normal in G
    """
    kind = CharKind(kind)
    if kind.needs_prime and p is None:
        raise ValueError(f"{kind.value} needs a prime p")
    X = X if X is not None else G.whole

    if kind == CharKind.CENTER:
        return center_of(G, X)
    if kind == CharKind.HYPERCENTER:
        return _in_own_group(G, X, hypercenter)
    if kind == CharKind.FRATTINI:
        return _in_own_group(G, X, frattini)
    if kind == CharKind.FITTING:
        return fitting(G, X)
    if kind == CharKind.OP:
        return o_p(G, p, X)
    if kind == CharKind.OP_PRIME:
        return o_p_prime(G, p, X)
    if kind == CharKind.O_UPPER_P:
        return o_upper_p(G, p, X)
    if kind == CharKind.SOCLE:
        return _in_own_group(G, X, socle)
    if kind == CharKind.LAYER:
        return _in_own_group(G, X, layer)
    if kind == CharKind.FSTAR:
        return fstar(G, X)
    if kind == CharKind.FSTAR_P:
        return fstar_p(G, p, X)
    if kind in (CharKind.OMEGA1, CharKind.OMEGA2):
        if not is_p_group(X) or X.is_trivial:
            raise NotASubgroupError(f"{kind.value} needs a non-trivial p-group")
        return omega(G, X, 1 if kind == CharKind.OMEGA1 else 2)
    return psi(G, p, X)
