"""
Filtered reachability over the normal lattice

An edge predicate accepts or rejects cover edges; reach looks for a maximal
chain made only of accepted edges without ever enumerating chains.
"""

from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Iterator, List, Optional, Set, Tuple, Union

import networkx as nx

from src.core.config import settings
from src.core.exceptions import ChainExplosionError
from src.lattice.normal_lattice import Edge, NormalLattice, normal_lattice
from src.perm.group import GroupHandle, SubgroupRef
from src.perm.operations import join_all
from src.utils.logging import lattice_logger as logger

EdgeVerdict = Union[bool, Tuple[bool, Any]]
EdgePredicate = Callable[[int, int], EdgeVerdict]


@dataclass
class ReachResult:
    """Outcome of a reach query"""
    verdict: bool
    chain: List[int] = field(default_factory=list)
    frontier: List[int] = field(default_factory=list)
    diagnostics: Dict[Edge, Any] = field(default_factory=dict)


class _EdgeCache:
    def __init__(self, predicate: EdgePredicate):
        self.predicate = predicate
        self.verdicts: Dict[Edge, bool] = {}
        self.diagnostics: Dict[Edge, Any] = {}

    def __call__(self, lo: int, hi: int) -> bool:
        edge = (lo, hi)
        if edge not in self.verdicts:
            result = self.predicate(lo, hi)
            if isinstance(result, tuple):
                ok, info = result
            else:
                ok, info = result, None
            self.verdicts[edge] = bool(ok)
            self.diagnostics[edge] = info
        return self.verdicts[edge]


def reach(
    lattice: NormalLattice,
    predicate: EdgePredicate,
    source: Optional[int] = None,
    target: Optional[int] = None,
) -> ReachResult:
    """
    Is ``target`` (default G) reachable from ``source`` (default 1) by accepted edges?

    The depth-first search tries successors in canonical node order, so the
    witness chain prefers the smallest next node. When the verdict is false
    the frontier lists every node reachable from the source.
    """
    source = lattice.bottom if source is None else source
    target = lattice.top if target is None else target
    accepted = _EdgeCache(predicate)
    dead: Set[int] = set()

    def within(i: int) -> bool:
        return lattice.contains(i, target)

    def search(node: int) -> Optional[List[int]]:
        if node == target:
            return [node]
        for nxt in lattice.successors(node):
            if nxt in dead or not within(nxt):
                continue
            if not accepted(node, nxt):
                continue
            tail = search(nxt)
            if tail is not None:
                return [node] + tail
            dead.add(nxt)
        return None

    if not lattice.contains(source, target):
        return ReachResult(verdict=False, frontier=[source])

    chain = search(source)
    if chain is not None:
        return ReachResult(verdict=True, chain=chain, diagnostics=dict(accepted.diagnostics))

    frontier = reachable(lattice, accepted, source, target)
    logger.debug(f"No accepted chain {source}->{target}; frontier has {len(frontier)} nodes")
    return ReachResult(verdict=False, frontier=sorted(frontier), diagnostics=dict(accepted.diagnostics))


def reachable(
    lattice: NormalLattice,
    predicate: EdgePredicate,
    source: Optional[int] = None,
    target: Optional[int] = None,
) -> Set[int]:
    """Every node reachable from ``source`` by accepted edges (optionally staying below ``target``)"""
    source = lattice.bottom if source is None else source
    accepted = predicate if isinstance(predicate, _EdgeCache) else _EdgeCache(predicate)
    seen = {source}
    queue = [source]
    while queue:
        node = queue.pop(0)
        for nxt in lattice.successors(node):
            if nxt in seen:
                continue
            if target is not None and not lattice.contains(nxt, target):
                continue
            if accepted(node, nxt):
                seen.add(nxt)
                queue.append(nxt)
    return seen


def count_maximal_chains(lattice: NormalLattice, source: Optional[int] = None) -> int:
    source = lattice.bottom if source is None else source
    paths = {lattice.top: 1}
    for node in reversed(list(nx.topological_sort(lattice.graph))):
        if node != lattice.top:
            paths[node] = sum(paths.get(nxt, 0) for nxt in lattice.successors(node))
    return paths.get(source, 0)


def all_maximal_chains(lattice: NormalLattice, cap: Optional[int] = None) -> Iterator[Tuple[int, ...]]:
    """
    Every maximal chain 1 = G_0 < ... < G_n = G as node-id tuples

    Raises:
        ChainExplosionError: more chains than the cap allows
    """
    cap = settings.chain_cap if cap is None else cap
    count = count_maximal_chains(lattice)
    if count > cap:
        raise ChainExplosionError("chain_cap", cap, count, detail=lattice.group.name)
    if lattice.top == lattice.bottom:
        yield (lattice.bottom,)
        return
    for path in nx.all_simple_paths(lattice.graph, lattice.bottom, lattice.top):
        yield tuple(path)


def witness_chain(lattice: NormalLattice) -> List[int]:
    """The canonical chief series (smallest next node at every step)"""
    return reach(lattice, lambda lo, hi: True).chain


def jh_multiset(lattice: NormalLattice) -> List[int]:
    """Sorted chief-factor orders along the canonical chief series"""
    chain = witness_chain(lattice)
    return sorted(lattice.nodes[hi].order // lattice.nodes[lo].order for lo, hi in zip(chain, chain[1:]))


def chain_orders(lattice: NormalLattice, chain: List[int]) -> List[int]:
    return [lattice.nodes[i].order for i in chain]


def solvable_radical(G: GroupHandle) -> SubgroupRef:
    """Largest solvable normal subgroup: the join of nodes reached by abelian chief factors"""
    lattice = normal_lattice(G)

    def build() -> SubgroupRef:
        solvable = reachable(lattice, lambda lo, hi: lattice.chief_factor((lo, hi)).is_abelian)
        return join_all(G, (lattice.nodes[i] for i in sorted(solvable)))

    if "solvable_radical" not in lattice.memo:
        lattice.memo["solvable_radical"] = build()
    return lattice.memo["solvable_radical"]
