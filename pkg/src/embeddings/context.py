"""
Per-group evaluation context shared by the predicate registry
"""

from functools import cached_property
from typing import Dict, List, Optional, Tuple

from src.classify.formations import FormationTag, hypercentre
from src.core.config import settings
from src.embeddings.models import EdgeDiagnostic
from src.lattice.normal_lattice import Edge, NormalLattice, normal_lattice
from src.lattice.reach import solvable_radical
from src.perm.enumeration import all_subgroups
from src.perm.group import GroupHandle, SubgroupRef
from src.perm.operations import (
    intersect,
    is_pi_number,
    join,
    normal_closure,
    normalizer_index,
    p_part,
    primes_of,
    subnormal_closure_test,
)
from src.perm.sylow import all_sylow, sylow


class EmbeddingContext:
    """
    Caches for one group: lattice, subgroup lists, Sylow families,
    normalizer indices and predicate verdicts.
    """

    def __init__(self, group: GroupHandle):
        self.group = group
        self._index: Dict[int, int] = {}
        self._edges: Dict[Tuple[int, Edge], EdgeDiagnostic] = {}
        self._within: Dict[int, List[SubgroupRef]] = {}
        self._by_order: Optional[Dict[int, List[SubgroupRef]]] = None
        self._subnormal: Dict[int, bool] = {}
        self._sylow_closures: Dict[int, SubgroupRef] = {}
        self.verdicts: Dict[Tuple[str, int], object] = {}

    @property
    def lattice(self) -> NormalLattice:
        return normal_lattice(self.group)

    @cached_property
    def primes(self) -> List[int]:
        return primes_of(self.group.order)

    def sylows(self, p: int) -> List[SubgroupRef]:
        return all_sylow(self.group, p)

    @cached_property
    def all_sylows(self) -> List[SubgroupRef]:
        return [P for p in self.primes for P in self.sylows(p)]

    @property
    def subgroups(self) -> List[SubgroupRef]:
        return all_subgroups(self.group)

    def subgroups_within(self, H: SubgroupRef) -> List[SubgroupRef]:
        """Every subgroup of H, as subgroups of G"""
        found = self._within.get(H.mask)
        if found is None:
            G = self.group
            if H.is_whole or G.order <= settings.enumeration_max_order:
                found = [S for S in all_subgroups(G) if S <= H]
            else:
                found = sorted(
                    (G.subgroup_from(S) for S in all_subgroups(H.as_group())),
                    key=lambda s: s.sort_key,
                )
            self._within[H.mask] = found
        return found

    def subgroups_of_order(self, order: int) -> List[SubgroupRef]:
        if self._by_order is None:
            self._by_order = {}
            for S in self.subgroups:
                self._by_order.setdefault(S.order, []).append(S)
        return self._by_order.get(order, [])

    def sylows_within(self, K: SubgroupRef, p: int) -> List[SubgroupRef]:
        """Sylow p-subgroups of K, read off the subgroup list of G"""
        target = p_part(K.order, p)
        if target == 1:
            return []
        return [S for S in self.subgroups_of_order(target) if S <= K]

    def is_subnormal(self, K: SubgroupRef) -> bool:
        verdict = self._subnormal.get(K.mask)
        if verdict is None:
            verdict = subnormal_closure_test(self.group, K)
            self._subnormal[K.mask] = verdict
        return verdict

    def supplements(self, H: SubgroupRef, subnormal: bool = False) -> List[SubgroupRef]:
        """Every K with HK = G as sets, smallest first"""
        G = self.group
        found = []
        for K in self.subgroups:
            if H.order * K.order // intersect(G, H, K).order != G.order:
                continue
            if subnormal and not self.is_subnormal(K):
                continue
            found.append(K)
        return found

    def normal_closure_of_sylow(self, p: int) -> SubgroupRef:
        """G_p^G, the same for every Sylow p-subgroup"""
        closure = self._sylow_closures.get(p)
        if closure is None:
            closure = normal_closure(self.group, sylow(self.group, p))
            self._sylow_closures[p] = closure
        return closure

    def normalizer_index(self, D: SubgroupRef) -> int:
        index = self._index.get(D.mask)
        if index is None:
            index = normalizer_index(self.group, D)
            self._index[D.mask] = index
        return index

    def good_edge(self, H: SubgroupRef, edge: Edge) -> EdgeDiagnostic:
        """
        Is |G : N_G(D)| a pi(D/K)-number for D = HK n L on the cover edge (K, L)?

        By the modular law D = (H n L)K. D = K gives the empty prime set and
        index 1, so such edges are always good.
        """
        key = (H.mask, edge)
        diagnostic = self._edges.get(key)
        if diagnostic is not None:
            return diagnostic
        G = self.group
        K, L = self.lattice.nodes[edge[0]], self.lattice.nodes[edge[1]]
        D = join(G, intersect(G, H, L), K)
        section = D.order // K.order
        if section == 1:
            index, pi, good = 1, [], True
        else:
            index = self.normalizer_index(D)
            pi = primes_of(section)
            good = is_pi_number(index, pi)
        diagnostic = EdgeDiagnostic(
            edge=edge,
            edge_orders=(K.order, L.order),
            section_order=section,
            index=index,
            pi=pi,
            good=good,
        )
        self._edges[key] = diagnostic
        return diagnostic

    def hypercentre(self, tag: FormationTag, modulo: Optional[SubgroupRef] = None) -> SubgroupRef:
        return hypercentre(self.group, tag, modulo)

    @property
    def solvable_radical(self) -> SubgroupRef:
        return solvable_radical(self.group)


def context_for(G: GroupHandle) -> EmbeddingContext:
    """The shared context of G, created on first use"""
    return G.cached("embedding_context", lambda: EmbeddingContext(G))
