"""Dense sets of small non-negative integers stored as Python ints.

Vertex sets and group subsets are both plain ``int`` bitmasks: bit ``i`` is set
iff element ``i`` belongs to the set.  The helpers here convert between masks
and ordinary collections and fix the canonical ordering used in reports.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator


def mask_of(items: Iterable[int]) -> int:
    m = 0
    for i in items:
        if i < 0:
            raise ValueError(f"negative element {i}")
        m |= 1 << i
    return m


def members(mask: int) -> list[int]:
    """Return the elements of ``mask`` in increasing order."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def iter_members(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def full_mask(n: int) -> int:
    return (1 << n) - 1


def size(mask: int) -> int:
    return mask.bit_count()


def lowest(mask: int) -> int:
    if not mask:
        raise ValueError("empty set has no lowest element")
    return (mask & -mask).bit_length() - 1


def canonical_key(mask: int) -> tuple[int, tuple[int, ...]]:
    """Sort key: cardinality first, then the sorted member tuple."""
    return (mask.bit_count(), tuple(members(mask)))


def fmt(mask: int) -> str:
    return "{" + ",".join(map(str, members(mask))) + "}"
