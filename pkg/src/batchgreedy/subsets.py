"""Subsets of a finite ground set, with a bit-vector encoding.

A subset is canonically a strictly increasing tuple of 0-based element
indices together with the ground-set size.  The equivalent bit-mask encoding
(bit i set iff element i is a member) is what every enumeration loop in the
package operates on; ground sets are therefore capped at 64 elements.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from .params import MAX_GROUND_SIZE


def mask_of(indices: Iterable[int]) -> int:
    mask = 0
    for i in indices:
        mask |= 1 << i
    return mask


def members_of(mask: int) -> tuple[int, ...]:
    """Decode a bit mask into its ascending member indices."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return tuple(out)


@dataclass(frozen=True)
class ElementSubset:
    """An immutable subset of ``{0, ..., ground_size - 1}``.

    ``members`` must be strictly increasing; violations raise ``ValueError``
    at construction.  Use :meth:`of` to build from unsorted input.
    """

    members: tuple[int, ...]
    ground_size: int

    def __post_init__(self) -> None:
        n = self.ground_size
        if not 0 <= n <= MAX_GROUND_SIZE:
            raise ValueError(f"ground size must be in [0, {MAX_GROUND_SIZE}], got {n}")
        prev = -1
        for i in self.members:
            if not isinstance(i, int) or isinstance(i, bool):
                raise ValueError(f"element index {i!r} is not an int")
            if i <= prev:
                raise ValueError(f"members must be strictly increasing, got {self.members}")
            if not 0 <= i < n:
                raise ValueError(f"element index {i} out of range for ground size {n}")
            prev = i

    @classmethod
    def of(cls, elements: Iterable[int], ground_size: int) -> "ElementSubset":
        return cls(tuple(sorted(set(elements))), ground_size)

    @classmethod
    def empty(cls, ground_size: int) -> "ElementSubset":
        return cls((), ground_size)

    @classmethod
    def full(cls, ground_size: int) -> "ElementSubset":
        return cls(tuple(range(ground_size)), ground_size)

    @classmethod
    def from_mask(cls, mask: int, ground_size: int) -> "ElementSubset":
        if mask < 0 or mask >> ground_size:
            raise ValueError(f"mask {mask:#x} does not fit ground size {ground_size}")
        return cls(members_of(mask), ground_size)

    @property
    def mask(self) -> int:
        return mask_of(self.members)

    def union(self, other: "ElementSubset") -> "ElementSubset":
        self._check_same_ground(other)
        return ElementSubset.from_mask(self.mask | other.mask, self.ground_size)

    def intersection(self, other: "ElementSubset") -> "ElementSubset":
        self._check_same_ground(other)
        return ElementSubset.from_mask(self.mask & other.mask, self.ground_size)

    def difference(self, other: "ElementSubset") -> "ElementSubset":
        self._check_same_ground(other)
        return ElementSubset.from_mask(self.mask & ~other.mask, self.ground_size)

    def complement(self) -> "ElementSubset":
        full = (1 << self.ground_size) - 1
        return ElementSubset.from_mask(full & ~self.mask, self.ground_size)

    def isdisjoint(self, other: "ElementSubset") -> bool:
        self._check_same_ground(other)
        return not (self.mask & other.mask)

    def issubset(self, other: "ElementSubset") -> bool:
        self._check_same_ground(other)
        return self.mask & ~other.mask == 0

    def _check_same_ground(self, other: "ElementSubset") -> None:
        if self.ground_size != other.ground_size:
            raise ValueError(
                f"ground sizes differ: {self.ground_size} vs {other.ground_size}"
            )

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, index: int) -> bool:
        return index in self.members

    def __iter__(self) -> Iterator[int]:
        return iter(self.members)

    def __str__(self) -> str:
        return "{" + ",".join(str(i) for i in self.members) + "}"
