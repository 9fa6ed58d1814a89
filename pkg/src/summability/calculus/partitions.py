"""
Block Partitions
================
An ordered partition I_1, ..., I_d of {1, ..., m}. Each block carries one
free index, so the partition fixes both the block set of multi-indices and
the nesting order of mixed sums (block 1 outermost, block d innermost).

Indices are 1-based, as in the theory; ``axes`` gives the 0-based tensor
axes of a block. The order the user wrote is kept: no renumbering.

Grammar: blocks separated by ``|``, indices by ``,`` (``"1,2|3"``).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence, TYPE_CHECKING

if TYPE_CHECKING:
    from typing import Self

from summability.errors import PartitionError


@dataclass(frozen=True)
class BlockPartition:
    """Ordered partition of {1, ..., m} into non-empty blocks."""

    m: int
    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if self.m < 1:
            raise PartitionError(f"m must be a positive integer, got {self.m}")
        if not self.blocks:
            raise PartitionError("a partition needs at least one block")
        seen: set[int] = set()
        for position, block in enumerate(self.blocks, start=1):
            if not block:
                raise PartitionError(f"block {position} is empty")
            for index in block:
                if not 1 <= index <= self.m:
                    raise PartitionError(f"index {index} in block {position} is outside 1..{self.m}")
                if index in seen:
                    raise PartitionError(f"index {index} appears in more than one block")
                seen.add(index)
        missing = sorted(set(range(1, self.m + 1)) - seen)
        if missing:
            raise PartitionError(f"indices {missing} are not covered by any block")

    # -- constructors -------------------------------------------------------

    @classmethod
    def of(cls, blocks: Iterable[Iterable[int]]) -> Self:
        """Partition from nested iterables; m is the number of indices."""
        frozen = tuple(tuple(int(i) for i in block) for block in blocks)
        return cls(m=sum(len(block) for block in frozen), blocks=frozen)

    @classmethod
    def absolutely_summing(cls, m: int) -> Self:
        """The single block {1, ..., m}: the diagonal."""
        return cls(m=m, blocks=(tuple(range(1, m + 1)),))

    @classmethod
    def multiple_summing(cls, m: int) -> Self:
        """Singleton blocks {1}, ..., {m}: the full grid."""
        return cls(m=m, blocks=tuple((i,) for i in range(1, m + 1)))

    @classmethod
    def from_sizes(cls, sizes: Sequence[int]) -> Self:
        """Consecutive blocks of the given sizes: (2, 1) -> {{1,2},{3}}."""
        if not sizes or any(int(n) < 1 for n in sizes):
            raise PartitionError(f"block sizes must be positive integers, got {list(sizes)}")
        blocks: list[tuple[int, ...]] = []
        start = 1
        for size in sizes:
            blocks.append(tuple(range(start, start + int(size))))
            start += int(size)
        return cls(m=start - 1, blocks=tuple(blocks))

    @classmethod
    def parse(cls, spec: str) -> Self:
        """Parse ``"1,3|2,4|5"``."""
        text = spec.strip()
        if not text:
            raise PartitionError("empty partition spec")
        blocks: list[tuple[int, ...]] = []
        for chunk in text.split("|"):
            try:
                blocks.append(tuple(int(token) for token in chunk.split(",")))
            except ValueError as exc:
                raise PartitionError(f"cannot parse block {chunk.strip()!r} in {spec!r}") from exc
        return cls.of(blocks)

    # -- views --------------------------------------------------------------

    def render(self) -> str:
        return "|".join(",".join(str(i) for i in block) for block in self.blocks)

    @property
    def d(self) -> int:
        return len(self.blocks)

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(block) for block in self.blocks)

    def axes(self, k: int) -> tuple[int, ...]:
        """0-based tensor axes of block ``k`` (1-based)."""
        return tuple(i - 1 for i in self.blocks[k - 1])

    def tail(self, k: int) -> frozenset[int]:
        """Union of blocks k, ..., d (1-based indices)."""
        if not 1 <= k <= self.d:
            raise PartitionError(f"block level {k} is outside 1..{self.d}")
        return frozenset(i for block in self.blocks[k - 1:] for i in block)

    def block_of(self, index: int) -> int:
        """1-based block number containing the 1-based ``index``."""
        for position, block in enumerate(self.blocks, start=1):
            if index in block:
                return position
        raise PartitionError(f"index {index} is outside 1..{self.m}")

    def __str__(self) -> str:
        return "{" + ",".join("{" + ",".join(map(str, b)) + "}" for b in self.blocks) + "}"
