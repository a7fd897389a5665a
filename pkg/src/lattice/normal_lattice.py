"""
The lattice of normal subgroups and its chief factors

Nodes are numbered in canonical order (order, then key), so node 0 is the
trivial subgroup and the last node is G. Cover edges are exactly the
G-chief factors.
"""

from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Tuple

import networkx as nx
from sympy import factorint

from src.core.exceptions import NotASubgroupError
from src.perm import bits
from src.perm.group import GroupHandle, SubgroupRef
from src.perm.operations import conjugacy_classes, join, normal_closure
from src.utils.logging import lattice_logger as logger

Edge = Tuple[int, int]


@dataclass(frozen=True)
class ChiefFactor:
    """Cover edge lo < hi of the normal lattice"""
    lo: int
    hi: int
    order: int
    is_abelian: bool
    prime: Optional[int]
    centralizer: SubgroupRef

    @property
    def edge(self) -> Edge:
        return self.lo, self.hi


class NormalLattice:
    """DAG of all normal subgroups of a group, with cover edges"""

    def __init__(self, group: GroupHandle, nodes: Iterable[SubgroupRef]):
        self.group = group
        self.nodes: List[SubgroupRef] = sorted(nodes, key=lambda s: s.sort_key)
        self.node_id: Dict[int, int] = {n.mask: i for i, n in enumerate(self.nodes)}
        self.graph = self._cover_graph()
        self.edges: List[Edge] = sorted(self.graph.edges())
        self._factors: Dict[Edge, ChiefFactor] = {}
        self.memo: Dict[str, object] = {}

    def _cover_graph(self) -> nx.DiGraph:
        containment = nx.DiGraph()
        containment.add_nodes_from(range(len(self.nodes)))
        for i, lo in enumerate(self.nodes):
            for j in range(i + 1, len(self.nodes)):
                hi = self.nodes[j]
                if hi.order > lo.order and hi.order % lo.order == 0 and lo <= hi:
                    containment.add_edge(i, j)
        reduced = nx.transitive_reduction(containment)
        graph = nx.DiGraph()
        graph.add_nodes_from(range(len(self.nodes)))
        graph.add_edges_from(sorted(reduced.edges()))
        return graph

    def __len__(self) -> int:
        return len(self.nodes)

    @property
    def bottom(self) -> int:
        return 0

    @property
    def top(self) -> int:
        return len(self.nodes) - 1

    def successors(self, i: int) -> List[int]:
        return sorted(self.graph.successors(i))

    def predecessors(self, i: int) -> List[int]:
        return sorted(self.graph.predecessors(i))

    def id_of(self, sub: SubgroupRef) -> int:
        try:
            return self.node_id[sub.mask]
        except KeyError:
            raise NotASubgroupError(f"subgroup of order {sub.order} is not normal in {self.group.name}") from None

    def is_node(self, sub: SubgroupRef) -> bool:
        return sub.mask in self.node_id

    def contains(self, small: int, big: int) -> bool:
        return bits.is_subset(self.nodes[small].mask, self.nodes[big].mask)

    def is_edge(self, edge: Edge) -> bool:
        return self.graph.has_edge(*edge)

    def chief_factor(self, edge: Edge) -> ChiefFactor:
        """
        Decorate a cover edge

        Raises:
            NotASubgroupError: edge is not a cover edge of this lattice
        """
        if not self.is_edge(edge):
            raise NotASubgroupError(f"{edge} is not a cover edge")
        factor = self._factors.get(edge)
        if factor is None:
            factor = self._build_factor(edge)
            self._factors[edge] = factor
        return factor

    def _build_factor(self, edge: Edge) -> ChiefFactor:
        G = self.group
        lo, hi = self.nodes[edge[0]], self.nodes[edge[1]]
        order = hi.order // lo.order
        gens = hi.generators
        is_abelian = all(
            (lo.mask >> G.commutator_of(a, b)) & 1 for i, a in enumerate(gens) for b in gens[i + 1:]
        )
        primes = factorint(order)
        prime = int(next(iter(primes))) if len(primes) == 1 else None
        mask = 0
        for g in range(G.order):
            if all((lo.mask >> G.commutator_of(g, h)) & 1 for h in gens):
                mask |= 1 << g
        return ChiefFactor(edge[0], edge[1], order, is_abelian, prime, G.from_mask(mask))

    def factors(self) -> List[ChiefFactor]:
        return [self.chief_factor(e) for e in self.edges]


def _class_closures(G: GroupHandle) -> List[SubgroupRef]:
    closures: Dict[int, SubgroupRef] = {}
    for cls in conjugacy_classes(G)[1:]:
        N = normal_closure(G, G.close([cls[0]]))
        closures.setdefault(N.mask, N)
    return list(closures.values())


def normal_lattice(G: GroupHandle) -> NormalLattice:
    """
    All normal subgroups of G as joins of normal closures of conjugacy classes

    The closures are joined pairwise until no new subgroup appears; every
    normal subgroup is the join of the closures of the classes it contains.
    """
    def build() -> NormalLattice:
        found: Dict[int, SubgroupRef] = {G.trivial.mask: G.trivial, G.whole.mask: G.whole}
        closures = _class_closures(G)
        for N in closures:
            found.setdefault(N.mask, N)
        frontier = list(closures)
        while frontier:
            nxt = []
            for A in frontier:
                for B in closures:
                    if B <= A or A <= B:
                        continue
                    J = join(G, A, B)
                    if J.mask not in found:
                        found[J.mask] = J
                        nxt.append(J)
            frontier = nxt
        lattice = NormalLattice(G, found.values())
        logger.debug(f"Normal lattice of {G.name}: {len(lattice)} nodes, {len(lattice.edges)} cover edges")
        return lattice

    return G.cached("normal_lattice", build)


def chief_factor(G: GroupHandle, edge: Edge) -> ChiefFactor:
    return normal_lattice(G).chief_factor(edge)


def minimal_normals(G: GroupHandle) -> List[SubgroupRef]:
    lattice = normal_lattice(G)
    return [lattice.nodes[i] for i in lattice.successors(lattice.bottom)]
