"""Integer bitmask helpers. Bit i of a mask is element index i."""

from typing import Iterable, Iterator


def make_mask(indexes: Iterable[int]) -> int:
    value = 0
    for idx in indexes:
        value |= 1 << idx
    return value


def iter_bits(mask: int) -> Iterator[int]:
    """Set bit positions in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def count_bits(mask: int) -> int:
    return mask.bit_count()


def full_mask(size: int) -> int:
    return (1 << size) - 1


def iter_submasks(mask: int) -> Iterator[int]:
    """Nonempty submasks of `mask`, largest first."""
    sub = mask
    while sub:
        yield sub
        sub = (sub - 1) & mask


def iter_supermasks(core: int, universe: int) -> Iterator[int]:
    """Masks S with core ⊆ S ⊆ universe in increasing integer order.

    Free bits are filled by depositing a counter, which keeps the order
    monotone in the resulting mask.
    """
    if core & ~universe:
        return
    free = list(iter_bits(universe & ~core))
    for counter in range(1 << len(free)):
        mask = core
        bit = 0
        while counter:
            if counter & 1:
                mask |= 1 << free[bit]
            counter >>= 1
            bit += 1
        yield mask
