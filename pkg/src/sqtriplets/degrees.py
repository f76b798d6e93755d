"""Squarefree multidegrees as bitmasks.

A squarefree degree R, a subset of [n] = {1..n}, is stored as an int whose
bit v-1 is set when variable v belongs to R.
"""

from __future__ import annotations

from typing import Iterable

__all__ = [
    "mask",
    "members",
    "size",
    "complement",
    "all_degrees",
    "contains",
    "degree_str",
    "degree_from_str",
    "degree_vector",
    "degree_from_vector",
    "alpha",
]


def mask(variables: Iterable[int]) -> int:
    m = 0
    for v in variables:
        if v < 1:
            raise ValueError(f"variables are numbered from 1, got {v}")
        m |= 1 << (v - 1)
    return m


def members(R: int) -> list:
    out = []
    v = 1
    while R:
        if R & 1:
            out.append(v)
        R >>= 1
        v += 1
    return out


def size(R: int) -> int:
    return bin(R).count("1")


def complement(R: int, n: int) -> int:
    return ((1 << n) - 1) & ~R


def contains(big: int, small: int) -> bool:
    """True when small is a subset of big."""
    return small & ~big == 0


def all_degrees(n: int) -> list:
    """All subsets of [n], ordered by cardinality and then by bitmask."""
    return sorted(range(1 << n), key=lambda R: (size(R), R))


def degree_str(R: int) -> str:
    """"" for the empty set, "13" for {1, 3}; only meaningful for n <= 9."""
    return "".join(str(v) for v in members(R))


def degree_from_str(text: str) -> int:
    return mask(int(ch) for ch in text)


def degree_vector(R: int, n: int) -> list:
    return [(R >> i) & 1 for i in range(n)]


def degree_from_vector(vec) -> int:
    m = 0
    for i, x in enumerate(vec):
        if x not in (0, 1):
            raise ValueError(f"multidegree entries must be 0 or 1, got {x}")
        if x:
            m |= 1 << i
    return m


def alpha(j: int, R: int) -> int:
    """Number of elements of R smaller than the variable j."""
    return size(R & ((1 << (j - 1)) - 1))
