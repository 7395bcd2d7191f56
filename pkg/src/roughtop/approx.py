"""Approximation spaces: finite universes, partitions, rough approximations.

Subsets are integer bitmasks over the canonical element order of their
universe: bit i stands for ``elements[i]``.  Since masks impose a total
order on subsets, every derived family and every serialized set comes
out in a canonical order for free, which keeps reports byte-stable.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Iterable, Iterator

from .errors import CapExceededError, InputError

if TYPE_CHECKING:  # import cycle guard, types only
    from .groups import CayleyTable

DEFAULT_UNIVERSE_CAP = 64


def bit_indices(mask: int) -> Iterator[int]:
    """Indices of set bits, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return mask.bit_count()


@dataclass(frozen=True)
class Universe:
    """Ordered finite set of distinct, opaque element names."""

    elements: tuple[str, ...]

    def __post_init__(self):
        index: dict[str, int] = {}
        for i, name in enumerate(self.elements):
            if name in index:
                raise InputError(f"duplicate element name {name!r} in universe")
            index[name] = i
        object.__setattr__(self, "_index", index)

    @property
    def size(self) -> int:
        return len(self.elements)

    @property
    def all_mask(self) -> int:
        return (1 << len(self.elements)) - 1

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise InputError(f"unknown element {name!r}") from None

    def mask_of(self, names: Iterable[str]) -> int:
        mask = 0
        for name in names:
            mask |= 1 << self.index(name)
        return mask

    def names_of(self, mask: int) -> tuple[str, ...]:
        return tuple(self.elements[i] for i in bit_indices(mask))

    def set_str(self, mask: int) -> str:
        return "{%s}" % ",".join(self.names_of(mask))

    def check_subset(self, mask: int, what: str = "subset") -> None:
        if mask < 0 or mask & ~self.all_mask:
            raise InputError(f"{what} is not a subset of the universe")


@dataclass(frozen=True)
class Partition:
    """Partition of a universe into nonempty disjoint covering blocks.

    Blocks are normalized to ascending mask order, so two partitions are
    equal exactly when they induce the same equivalence relation.
    """

    universe: Universe
    blocks: tuple[int, ...]

    def __post_init__(self):
        blocks = tuple(sorted(self.blocks))
        object.__setattr__(self, "blocks", blocks)
        union = 0
        for b in blocks:
            if b == 0:
                raise InputError("partition block may not be empty")
            if b & union:
                raise InputError("partition blocks overlap")
            union |= b
        if union != self.universe.all_mask:
            missing = self.universe.set_str(self.universe.all_mask & ~union)
            raise InputError(f"partition does not cover the universe; missing {missing}")
        arr = [-1] * self.universe.size
        for bi, b in enumerate(blocks):
            for i in bit_indices(b):
                arr[i] = bi
        object.__setattr__(self, "_block_of", tuple(arr))

    @classmethod
    def from_names(cls, universe: Universe, named_blocks) -> "Partition":
        return cls(universe, tuple(universe.mask_of(b) for b in named_blocks))

    @classmethod
    def singletons(cls, universe: Universe) -> "Partition":
        return cls(universe, tuple(1 << i for i in range(universe.size)))

    @classmethod
    def one_block(cls, universe: Universe) -> "Partition":
        return cls(universe, (universe.all_mask,))

    def block_index_of(self, i: int) -> int:
        return self._block_of[i]

    def block_mask_of(self, i: int) -> int:
        return self.blocks[self._block_of[i]]


@dataclass(frozen=True)
class ApproxSpace:
    """A universe with an equivalence partition and an optional operation."""

    universe: Universe
    partition: Partition
    op: "CayleyTable | None" = None

    def __post_init__(self):
        if self.partition.universe != self.universe:
            raise InputError("partition is defined on a different universe")
        if self.op is not None and self.op.universe != self.universe:
            raise InputError("operation table is defined on a different universe")


@dataclass(frozen=True)
class RoughSet:
    """A subset together with its lower and upper approximations."""

    space: ApproxSpace
    subset: int
    lower: int
    upper: int


def lower_approx(space: ApproxSpace, x_mask: int) -> int:
    """Union of the blocks contained in X."""
    space.universe.check_subset(x_mask, "X")
    acc = 0
    for b in space.partition.blocks:
        if b & ~x_mask == 0:
            acc |= b
    return acc


def upper_approx(space: ApproxSpace, x_mask: int) -> int:
    """Union of the blocks meeting X."""
    space.universe.check_subset(x_mask, "X")
    acc = 0
    for b in space.partition.blocks:
        if b & x_mask:
            acc |= b
    return acc


def make_rough_set(space: ApproxSpace, x_mask: int) -> RoughSet:
    return RoughSet(space, x_mask, lower_approx(space, x_mask), upper_approx(space, x_mask))


def pair_name(a: str, b: str) -> str:
    return f"({a},{b})"


def product_universe(u1: Universe, u2: Universe) -> Universe:
    """Pair universe with names "(a,b)", ordered first-component-major."""
    names = tuple(pair_name(a, b) for a in u1.elements for b in u2.elements)
    return Universe(names)  # a name clash raises InputError


def product_mask(m1: int, m2: int, n2: int) -> int:
    """Mask of the rectangle m1 x m2 inside a pair universe with |U2| = n2."""
    mask = 0
    for i in bit_indices(m1):
        mask |= m2 << (i * n2)
    return mask


def product_space(s1: ApproxSpace, s2: ApproxSpace, cap: int = DEFAULT_UNIVERSE_CAP) -> ApproxSpace:
    """Componentwise product: pair universe, block products, pointwise operation.

    Blocks of the product are exactly the products of component blocks,
    so approximations commute with products (tested as an invariant).
    """
    n = s1.universe.size * s2.universe.size
    if n > cap:
        raise CapExceededError(
            f"product universe would have {n} elements, exceeding the cap of {cap}"
        )
    universe = product_universe(s1.universe, s2.universe)
    n2 = s2.universe.size
    blocks = tuple(
        product_mask(b1, b2, n2)
        for b1 in s1.partition.blocks
        for b2 in s2.partition.blocks
    )
    partition = Partition(universe, blocks)
    op = None
    if s1.op is not None and s2.op is not None:
        from .groups import CayleyTable

        n1 = s1.universe.size
        rows = []
        for i1 in range(n1):
            for j1 in range(n2):
                row = []
                for i2 in range(n1):
                    for j2 in range(n2):
                        row.append(s1.op.mul(i1, i2) * n2 + s2.op.mul(j1, j2))
                rows.append(tuple(row))
        op = CayleyTable(universe, tuple(rows))
    return ApproxSpace(universe, partition, op)
