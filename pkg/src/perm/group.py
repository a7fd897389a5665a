"""
Permutation groups and their subgroups

A GroupHandle owns a canonically sorted element table; every subgroup of
it is a SubgroupRef whose members are a bitmask over that table.
"""

import hashlib
from functools import cached_property
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from sympy.combinatorics import Permutation as SymPermutation
from sympy.combinatorics import PermutationGroup

from src.core.config import settings
from src.core.exceptions import CapExceededError, NotASubgroupError, PermutationError
from src.perm import bits
from src.perm.permutation import Permutation
from src.utils.logging import perm_logger as logger


class GroupHandle:
    """
    Immutable permutation group generated by a fixed generator list.

    Order and stabilizer chain come from sympy's Schreier-Sims; the element
    table, inverses and derived structures are computed lazily and cached
    once.
    """

    def __init__(self, degree: int, generators: Sequence[Permutation], name: Optional[str] = None):
        if degree < 1:
            raise PermutationError("degree must be positive")
        for g in generators:
            if g.degree != degree:
                raise PermutationError(f"generator {g} has degree {g.degree}, expected {degree}")

        self.degree = degree
        self.generators: Tuple[Permutation, ...] = tuple(generators)
        self.name = name or f"group_deg{degree}"

        sym_gens = [g.to_sympy() for g in self.generators] or [Permutation.identity(degree).to_sympy()]
        self._sympy = PermutationGroup(sym_gens)
        self.order = int(self._sympy.order())
        if self.order > settings.max_order:
            raise CapExceededError("max_order", settings.max_order, self.order, detail=self.name)

        self._cache: Dict[str, Any] = {}
        self._conj_tables: Dict[int, List[int]] = {}

    def __repr__(self) -> str:
        return f"GroupHandle(name={self.name!r}, degree={self.degree}, order={self.order})"

    # Element table

    @cached_property
    def elements(self) -> List[Tuple[int, ...]]:
        """All elements as 0-based image tuples, lexicographically sorted (identity first)"""
        logger.debug(f"Enumerating {self.order} elements of {self.name}")
        elements = sorted(tuple(e) for e in self._sympy.generate(af=True))
        if len(elements) != self.order:
            raise RuntimeError(f"element enumeration of {self.name} disagrees with its order")
        return elements

    @cached_property
    def index(self) -> Dict[Tuple[int, ...], int]:
        return {e: i for i, e in enumerate(self.elements)}

    @cached_property
    def inverses(self) -> List[int]:
        index = self.index
        out = []
        for e in self.elements:
            inv = [0] * self.degree
            for i, j in enumerate(e):
                inv[j] = i
            out.append(index[tuple(inv)])
        return out

    @cached_property
    def element_orders(self) -> List[int]:
        return [int(SymPermutation(list(e)).order()) for e in self.elements]

    @cached_property
    def generator_ids(self) -> Tuple[int, ...]:
        ids = []
        for g in self.generators:
            i = self.index[g.images]
            if i != 0 and i not in ids:
                ids.append(i)
        return tuple(ids)

    @cached_property
    def full_mask(self) -> int:
        return (1 << self.order) - 1

    @cached_property
    def stabilizer_chain(self) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
        """(base points 1-based, basic transversal sizes)"""
        self._sympy.schreier_sims()
        base = tuple(b + 1 for b in self._sympy.base)
        sizes = tuple(len(t) for t in self._sympy.basic_transversals)
        return base, sizes

    # Arithmetic on element ids

    def mul(self, i: int, j: int) -> int:
        b = self.elements[j]
        return self.index[tuple(map(b.__getitem__, self.elements[i]))]

    def inv(self, i: int) -> int:
        return self.inverses[i]

    def conj(self, x: int, g: int) -> int:
        """x^g = g^-1 x g"""
        return self.mul(self.mul(self.inverses[g], x), g)

    def commutator_of(self, a: int, b: int) -> int:
        """[a, b] = a^-1 b^-1 a b"""
        inv = self.inverses
        return self.mul(self.mul(inv[a], inv[b]), self.mul(a, b))

    def power(self, x: int, k: int) -> int:
        result = 0
        base = x
        while k > 0:
            if k & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            k >>= 1
        return result

    def conj_table(self, g: int) -> List[int]:
        """Images of every element under conjugation by g"""
        table = self._conj_tables.get(g)
        if table is None:
            table = [self.conj(x, g) for x in range(self.order)]
            self._conj_tables[g] = table
        return table

    def conj_mask(self, mask: int, g: int) -> int:
        table = self.conj_table(g)
        return bits.mask_of(table[x] for x in bits.members(mask))

    def permutation(self, i: int) -> Permutation:
        return Permutation(self.elements[i])

    def element_id(self, g: Permutation) -> int:
        if g.degree != self.degree:
            raise PermutationError(f"degree mismatch: {g.degree} vs {self.degree}")
        try:
            return self.index[g.images]
        except KeyError:
            raise NotASubgroupError(f"{g} is not an element of {self.name}") from None

    def contains(self, g: Permutation) -> bool:
        """Membership by sifting through the stabilizer chain"""
        if g.degree != self.degree:
            raise PermutationError(f"degree mismatch: {g.degree} vs {self.degree}")
        return bool(self._sympy.contains(g.to_sympy()))

    # Subgroups

    @cached_property
    def whole(self) -> "SubgroupRef":
        return SubgroupRef(self, self.full_mask, self.generator_ids)

    @cached_property
    def trivial(self) -> "SubgroupRef":
        return SubgroupRef(self, 1, ())

    def close(self, gens: Iterable[int], base: Optional["SubgroupRef"] = None) -> "SubgroupRef":
        """
        Subgroup generated by ``base`` and ``gens`` (Dimino's coset extension)

        Args:
            gens: element ids to adjoin
            base: subgroup to extend, trivial by default

        Returns:
            The generated subgroup
        """
        if base is None:
            block = [0]
            mask = 1
            used: List[int] = []
        else:
            block = list(base.elements)
            mask = base.mask
            used = list(base.generators)

        for g in gens:
            if (mask >> g) & 1:
                continue
            used.append(g)
            previous = block[:]
            reps = [0]
            k = 0
            while k < len(reps):
                r = reps[k]
                k += 1
                for s in used:
                    t = self.mul(r, s)
                    if not (mask >> t) & 1:
                        coset = [self.mul(h, t) for h in previous]
                        mask |= bits.mask_of(coset)
                        block.extend(coset)
                        reps.append(t)
        return SubgroupRef(self, mask, tuple(used))

    def from_mask(self, mask: int) -> "SubgroupRef":
        """Wrap a mask already known to be a subgroup"""
        return SubgroupRef(self, mask)

    def subgroup(self, gens: Sequence[Permutation]) -> "SubgroupRef":
        ids = []
        for g in gens:
            if not self.contains(g):
                raise NotASubgroupError(f"{g} is not an element of {self.name}")
            ids.append(self.element_id(g))
        return self.close(ids)

    def subgroup_from(self, other: "SubgroupRef") -> "SubgroupRef":
        """Image in this handle of a subgroup of another handle on the same points"""
        if other.parent is self:
            return other
        if other.parent.degree != self.degree:
            raise PermutationError("subgroup lives on a different point set")
        source = other.parent.elements
        ids = []
        for i in other.elements:
            j = self.index.get(source[i])
            if j is None:
                raise NotASubgroupError(f"{other} is not contained in {self.name}")
            ids.append(j)
        return SubgroupRef(self, bits.mask_of(ids))

    def generating_set(self, mask: int) -> Tuple[int, ...]:
        sub = self.trivial
        for x in sorted(bits.members(mask), key=lambda i: (-self.element_orders[i], i)):
            if sub.mask == mask:
                break
            if not (sub.mask >> x) & 1:
                sub = self.close([x], base=sub)
        return sub.generators

    def cached(self, key: str, factory: Callable[[], Any]) -> Any:
        """Write-once cache for structures derived from this handle"""
        if key not in self._cache:
            self._cache[key] = factory()
        return self._cache[key]


class SubgroupRef:
    """Subgroup of a GroupHandle identified by its member bitmask"""

    def __init__(self, parent: GroupHandle, mask: int, generators: Optional[Sequence[int]] = None):
        self.parent = parent
        self.mask = mask
        self.order = bits.size(mask)
        self._generators = tuple(generators) if generators is not None else None
        self._handle: Optional[GroupHandle] = None

    @property
    def generators(self) -> Tuple[int, ...]:
        if self._generators is None:
            self._generators = self.parent.generating_set(self.mask)
        return self._generators

    @property
    def permutations(self) -> Tuple[Permutation, ...]:
        return tuple(self.parent.permutation(i) for i in self.generators)

    @cached_property
    def elements(self) -> List[int]:
        return bits.members(self.mask)

    @cached_property
    def key(self) -> str:
        """Digest of the sorted member ids; equal keys mean equal subgroups of one parent"""
        digest = hashlib.sha1(",".join(map(str, self.elements)).encode("ascii"))
        return digest.hexdigest()[:16]

    @property
    def sort_key(self) -> Tuple[int, str]:
        return self.order, self.key

    @property
    def index(self) -> int:
        return self.parent.order // self.order

    @property
    def is_trivial(self) -> bool:
        return self.mask == 1

    @property
    def is_whole(self) -> bool:
        return self.mask == self.parent.full_mask

    def as_group(self, name: Optional[str] = None) -> GroupHandle:
        """This subgroup as a handle of its own (the parent itself when whole)"""
        if self.is_whole:
            return self.parent
        if self._handle is None:
            self._handle = GroupHandle(
                self.parent.degree,
                self.permutations,
                name=name or f"{self.parent.name}/sub{self.order}_{self.key[:6]}",
            )
        return self._handle

    def __contains__(self, i: int) -> bool:
        return (self.mask >> i) & 1 == 1

    def __le__(self, other: "SubgroupRef") -> bool:
        return self.mask & ~other.mask == 0

    def __lt__(self, other: "SubgroupRef") -> bool:
        return self <= other and self.mask != other.mask

    def __eq__(self, other: object) -> bool:
        return isinstance(other, SubgroupRef) and other.parent is self.parent and other.mask == self.mask

    def __hash__(self) -> int:
        return hash((id(self.parent), self.mask))

    def __repr__(self) -> str:
        return f"SubgroupRef(order={self.order}, key={self.key}, parent={self.parent.name!r})"

    def describe(self) -> str:
        gens = ", ".join(str(p) for p in self.permutations)
        return f"<{gens}> (order {self.order})"


def generate_group(degree: int, gens: Sequence[Permutation], name: Optional[str] = None) -> GroupHandle:
    """
    Group generated by ``gens`` on the points 1..degree

    Raises:
        PermutationError: a generator has another degree
        CapExceededError: the order is above max_order
    """
    return GroupHandle(degree, list(gens), name=name)
