"""
Sylow subgroups and the subgroup structure of p-groups
"""

from typing import Iterable, List, Optional, Set

from sympy import isprime

from src.perm.group import GroupHandle, SubgroupRef
from src.perm.operations import (
    commutator,
    conjugates,
    cyclic_subgroup,
    is_p_number,
    normalizer,
    p_part,
    require_p_group,
)
from src.utils.logging import perm_logger as logger


def sylow(G: GroupHandle, p: int) -> SubgroupRef:
    """
    A Sylow p-subgroup, grown from the trivial group through normalizers.

    While P is not Sylow, p divides |N_G(P) : P|, so N_G(P) holds a p-element
    outside P; adjoining it keeps a p-group.
    """
    if not isprime(p):
        raise ValueError(f"{p} is not a prime")

    def build() -> SubgroupRef:
        target = p_part(G.order, p)
        P = G.trivial
        orders = G.element_orders
        while P.order < target:
            N = normalizer(G, P)
            step = next(
                (x for x in N.elements if not (P.mask >> x) & 1 and is_p_number(orders[x], p)),
                None,
            )
            if step is None:
                raise RuntimeError(f"normalizer growth stalled at order {P.order} in {G.name}")
            P = G.close([step], base=P)
        logger.debug(f"Sylow {p}-subgroup of {G.name} has order {P.order}")
        return P

    return G.cached(f"sylow:{p}", build)


def all_sylow(G: GroupHandle, p: int) -> List[SubgroupRef]:
    return G.cached(f"all_sylow:{p}", lambda: conjugates(G, sylow(G, p)))



def power_subgroup(G: GroupHandle, P: SubgroupRef, p: int) -> SubgroupRef:
    """P^p modulo P': generated by p-th powers of the generators together with P'"""
    derived = commutator(G, P, P)
    return G.close((G.power(g, p) for g in P.generators), base=derived)


def frattini_of_p_group(G: GroupHandle, P: SubgroupRef) -> SubgroupRef:
    """Phi(P) = P'P^p"""
    p = require_p_group(P)
    return power_subgroup(G, P, p)


def _frattini_basis(G: GroupHandle, P: SubgroupRef, phi: SubgroupRef) -> List[int]:
    basis = []
    span = phi
    for g in P.generators:
        if not (span.mask >> g) & 1:
            basis.append(g)
            span = G.close([g], base=span)
    if span != P:
        raise RuntimeError("generators of P do not span P/Phi(P)")
    return basis


def _normalized_functionals(d: int, p: int) -> Iterable[List[int]]:
    """Non-zero vectors of GF(p)^d whose first non-zero entry is 1"""
    for lead in range(d):
        tail = d - lead - 1
        for code in range(p ** tail):
            vector = [0] * lead + [1]
            for _ in range(tail):
                vector.append(code % p)
                code //= p
            yield vector


def maximal_subgroups_of_p_group(G: GroupHandle, P: SubgroupRef) -> List[SubgroupRef]:
    """
    Index-p subgroups of a p-group P as preimages of hyperplanes of P/Phi(P)

    Raises:
        NotASubgroupError: P is not a p-group
    """
    if P.order == 1:
        return []
    p = require_p_group(P)
    phi = frattini_of_p_group(G, P)
    basis = _frattini_basis(G, P, phi)

    maximals = []
    for f in _normalized_functionals(len(basis), p):
        lead = f.index(1)
        gens = []
        for j, b in enumerate(basis):
            if j == lead:
                continue
            # b_j * b_lead^(-f_j) lies in the kernel of f
            gens.append(G.mul(b, G.power(basis[lead], (-f[j]) % p)))
        maximals.append(G.close(gens, base=phi))
    return sorted(maximals, key=lambda s: s.sort_key)


def cyclic_subgroups_of_order(G: GroupHandle, P: SubgroupRef, orders: Optional[Set[int]] = None) -> List[SubgroupRef]:
    """One ref per distinct cyclic subgroup <x> of P with o(x) in ``orders`` (default {p})"""
    p = require_p_group(P) if P.order > 1 else None
    if p is None:
        return []
    wanted = orders if orders is not None else {p}
    seen = {}
    for x in P.elements:
        if G.element_orders[x] in wanted:
            C = cyclic_subgroup(G, x)
            seen.setdefault(C.mask, C)
    return sorted(seen.values(), key=lambda s: s.sort_key)


def sylow_of_subgroup(G: GroupHandle, X: SubgroupRef, p: int) -> SubgroupRef:
    """A Sylow p-subgroup of X, as a subgroup of G"""
    if X.is_whole:
        return sylow(G, p)
    handle = X.as_group()
    return G.subgroup_from(sylow(handle, p))
