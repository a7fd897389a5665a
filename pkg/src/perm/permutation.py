"""
Permutations of the points 1..n
"""

from dataclasses import dataclass
from typing import Iterable, List, Sequence, Tuple

from sympy.combinatorics import Permutation as SymPermutation

from src.core.exceptions import PermutationError


@dataclass(frozen=True)
class Permutation:
    """
    Permutation stored as a 0-based image table.

    Products follow the right-action convention used throughout the
    engine: ``(p * q)`` applies ``p`` first, then ``q``.
    """
    images: Tuple[int, ...]

    def __post_init__(self):
        if not self.images:
            raise PermutationError("permutation must act on at least one point")
        if sorted(self.images) != list(range(len(self.images))):
            raise PermutationError(f"not a bijection on 1..{len(self.images)}: {self.images}")

    @property
    def degree(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        if degree < 1:
            raise PermutationError("degree must be positive")
        return cls(tuple(range(degree)))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], degree: int) -> "Permutation":
        """Build from 1-based disjoint (or not) cycles; later cycles act after earlier ones"""
        if degree < 1:
            raise PermutationError("degree must be positive")
        result = list(range(degree))
        for cycle in cycles:
            points = [c - 1 for c in cycle]
            if any(not 0 <= c < degree for c in points):
                raise PermutationError(f"cycle {tuple(cycle)} leaves the points 1..{degree}")
            if len(set(points)) != len(points):
                raise PermutationError(f"cycle {tuple(cycle)} repeats a point")
            step = list(range(degree))
            for a, b in zip(points, points[1:] + points[:1]):
                step[a] = b
            result = [step[x] for x in result]
        return cls(tuple(result))

    def to_sympy(self) -> SymPermutation:
        return SymPermutation(list(self.images))

    def __mul__(self, other: "Permutation") -> "Permutation":
        if other.degree != self.degree:
            raise PermutationError(f"degree mismatch: {self.degree} vs {other.degree}")
        return Permutation(tuple(other.images[i] for i in self.images))

    def inverse(self) -> "Permutation":
        inv = [0] * self.degree
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def order(self) -> int:
        return int(self.to_sympy().order())

    def cycles(self) -> List[Tuple[int, ...]]:
        """Non-trivial cycles, 1-based, each starting at its smallest point"""
        return [tuple(x + 1 for x in c) for c in self.to_sympy().cyclic_form]

    def __str__(self) -> str:
        cycles = self.cycles()
        if not cycles:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cycles)
