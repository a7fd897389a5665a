"""
Complete subgroup enumeration by cyclic extension
"""

from typing import Dict, Iterable, List, Optional

from src.core.config import settings
from src.core.exceptions import CapExceededError
from src.perm.group import GroupHandle, SubgroupRef
from src.perm.operations import conjugate_masks, cyclic_subgroup, is_p_group, join
from src.utils.logging import perm_logger as logger


def cyclic_subgroups(G: GroupHandle) -> List[SubgroupRef]:
    def build() -> List[SubgroupRef]:
        seen: Dict[int, SubgroupRef] = {}
        covered = 0
        for x in range(G.order):
            if (covered >> x) & 1:
                continue
            C = cyclic_subgroup(G, x)
            if C.mask not in seen:
                seen[C.mask] = C
                # generators of C give the same subgroup
                for y in C.elements:
                    if G.element_orders[y] == C.order:
                        covered |= 1 << y
        return sorted(seen.values(), key=lambda s: s.sort_key)

    return G.cached("cyclic_subgroups", build)


def all_subgroups(G: GroupHandle) -> List[SubgroupRef]:
    """
    Every subgroup of G in canonical order

    Each subgroup is a join of cyclic subgroups, so closing the cyclic
    subgroups under "join with one more cyclic subgroup" reaches them all.

    Raises:
        CapExceededError: |G| is above the enumeration cap
    """
    if G.order > settings.enumeration_max_order:
        raise CapExceededError("enumeration_max_order", settings.enumeration_max_order, G.order, detail=G.name)

    def build() -> List[SubgroupRef]:
        cyclics = cyclic_subgroups(G)
        found: Dict[int, SubgroupRef] = {c.mask: c for c in cyclics}
        frontier = list(cyclics)
        while frontier:
            nxt = []
            for S in frontier:
                for C in cyclics:
                    if C <= S:
                        continue
                    J = join(G, S, C)
                    if J.mask not in found:
                        found[J.mask] = J
                        nxt.append(J)
            frontier = nxt
        subgroups = sorted(found.values(), key=lambda s: s.sort_key)
        logger.debug(f"{G.name} has {len(subgroups)} subgroups")
        return subgroups

    return G.cached("all_subgroups", build)


def enumerate_subgroups(
    G: GroupHandle,
    orders: Optional[Iterable[int]] = None,
    p: Optional[int] = None,
    up_to_conjugacy: bool = False,
) -> List[SubgroupRef]:
    """
    Subgroups of G matching a filter

    Args:
        G: ambient group
        orders: keep only subgroups whose order is in this set
        p: keep only p-subgroups for this prime
        up_to_conjugacy: keep the first subgroup of each conjugacy class

    Returns:
        Duplicate-free list in canonical order
    """
    wanted = set(orders) if orders is not None else None
    result = []
    claimed = set()
    for S in all_subgroups(G):
        if wanted is not None and S.order not in wanted:
            continue
        if p is not None and not is_p_group(S, p):
            continue
        if up_to_conjugacy:
            if S.mask in claimed:
                continue
            claimed.update(conjugate_masks(G, S))
        result.append(S)
    return result


def maximal_subgroups(G: GroupHandle) -> List[SubgroupRef]:
    """Proper subgroups not contained in another proper subgroup"""
    def build() -> List[SubgroupRef]:
        proper = [S for S in all_subgroups(G) if not S.is_whole]
        maximal = []
        for S in reversed(proper):
            if not any(S < M for M in maximal):
                maximal.append(S)
        return sorted(maximal, key=lambda s: s.sort_key)

    return G.cached("maximal_subgroups", build)
