"""
Subsets of a group's element table, stored as Python int bitmasks
"""

from typing import Iterable, List


def mask_of(ids: Iterable[int]) -> int:
    mask = 0
    for i in ids:
        mask |= 1 << i
    return mask


def members(mask: int) -> List[int]:
    """Set bits of ``mask`` in increasing order"""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def size(mask: int) -> int:
    return bin(mask).count("1")


def contains(mask: int, i: int) -> bool:
    return (mask >> i) & 1 == 1


def is_subset(small: int, big: int) -> bool:
    return small & ~big == 0
