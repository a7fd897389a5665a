"""
Quotients as coset actions, and direct products
"""

from dataclasses import dataclass, field
from functools import cached_property
from typing import List, Optional, Tuple

from src.core.config import settings
from src.core.exceptions import CapExceededError, NotASubgroupError
from src.perm.group import GroupHandle, SubgroupRef
from src.perm.operations import is_normal
from src.perm.permutation import Permutation
from src.utils.logging import perm_logger as logger


@dataclass
class Epimorphism:
    """
    G -> G/N realized by the right action of G on the cosets Nx.

    ``labels[x]`` is the coset of element x; ``images`` holds the target
    permutation of every source generator.
    """
    source: GroupHandle
    target: GroupHandle
    kernel: SubgroupRef
    labels: List[int] = field(repr=False)
    representatives: List[int] = field(repr=False)
    images: Tuple[Permutation, ...] = ()

    @cached_property
    def coset_images(self) -> List[int]:
        """Target element id of every coset"""
        out = []
        for rep in self.representatives:
            out.append(self.target.index[self._action(rep)])
        return out

    @cached_property
    def coset_masks(self) -> List[int]:
        masks = [0] * len(self.representatives)
        for x, c in enumerate(self.labels):
            masks[c] |= 1 << x
        return masks

    def _action(self, x: int) -> Tuple[int, ...]:
        G = self.source
        return tuple(self.labels[G.mul(rep, x)] for rep in self.representatives)

    def forward(self, x: int) -> int:
        """Image of a source element id as a target element id"""
        return self.coset_images[self.labels[x]]

    def image_subgroup(self, H: SubgroupRef) -> SubgroupRef:
        """HN/N as a subgroup of the target"""
        if H.parent is not self.source:
            raise NotASubgroupError("subgroup does not belong to the source group")
        return self.target.close(self.forward(h) for h in H.generators)

    def preimage(self, S: SubgroupRef) -> SubgroupRef:
        """Full preimage of a target subgroup (contains the kernel)"""
        if S.parent is not self.target:
            raise NotASubgroupError("subgroup does not belong to the target group")
        mask = 0
        for c, image in enumerate(self.coset_images):
            if (S.mask >> image) & 1:
                mask |= self.coset_masks[c]
        return self.source.from_mask(mask)


def quotient(G: GroupHandle, N: SubgroupRef, name: Optional[str] = None) -> Epimorphism:
    """
    Build G/N as the permutation group induced on the right cosets of N

    Raises:
        NotASubgroupError: N is not normal in G
        CapExceededError: the index exceeds the degree cap
    """
    if N.parent is not G or not is_normal(G, N):
        raise NotASubgroupError(f"kernel of order {N.order} is not a normal subgroup of {G.name}")
    degree = G.order // N.order
    if degree > settings.max_degree:
        raise CapExceededError("max_degree", settings.max_degree, degree, detail=f"{G.name}/N")

    labels = [-1] * G.order
    representatives: List[int] = []
    for x in range(G.order):
        if labels[x] >= 0:
            continue
        c = len(representatives)
        representatives.append(x)
        for n in N.elements:
            labels[G.mul(n, x)] = c

    images = []
    for g in G.generator_ids:
        images.append(Permutation(tuple(labels[G.mul(rep, g)] for rep in representatives)))

    target = GroupHandle(degree, images, name=name or f"{G.name}/{N.order}")
    logger.debug(f"Quotient {G.name} by order-{N.order} kernel acts on {degree} cosets")
    return Epimorphism(G, target, N, labels, representatives, tuple(images))


def direct_product(G1: GroupHandle, G2: GroupHandle, name: Optional[str] = None) -> GroupHandle:
    """G1 x G2 acting on disjoint blocks of points"""
    d1, d2 = G1.degree, G2.degree
    gens = []
    for g in G1.generators:
        gens.append(Permutation(g.images + tuple(range(d1, d1 + d2))))
    for g in G2.generators:
        gens.append(Permutation(tuple(range(d1)) + tuple(i + d1 for i in g.images)))
    return GroupHandle(d1 + d2, gens, name=name or f"{G1.name}x{G2.name}")
