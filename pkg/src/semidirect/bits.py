"""Subsets of a monoid stored as Python ints, bit ``i`` standing for element ``i``."""

from __future__ import annotations

from typing import Iterable, Iterator

ElemSet = int


def mask(elements: Iterable[int]) -> ElemSet:
    m = 0
    for x in elements:
        if x < 0:
            raise ValueError(f"negative element index {x}")
        m |= 1 << x
    return m


def members(m: ElemSet) -> list[int]:
    """Sorted list of the elements in ``m``."""
    out = []
    while m:
        low = m & -m
        out.append(low.bit_length() - 1)
        m ^= low
    return out


def iter_members(m: ElemSet) -> Iterator[int]:
    while m:
        low = m & -m
        yield low.bit_length() - 1
        m ^= low


def size(m: ElemSet) -> int:
    return bin(m).count("1")


def full(n: int) -> ElemSet:
    return (1 << n) - 1


def is_subset(a: ElemSet, b: ElemSet) -> bool:
    return a & ~b == 0


def submasks(m: ElemSet) -> Iterator[ElemSet]:
    """All subsets of ``m``, including 0 and ``m`` itself, in decreasing order."""
    s = m
    while True:
        yield s
        if s == 0:
            return
        s = (s - 1) & m


def fmt(m: ElemSet, labels: list[str] | None = None) -> str:
    items = members(m)
    if labels is not None:
        return "{" + ",".join(labels[i] for i in items) + "}"
    return "{" + ",".join(map(str, items)) + "}"
