"""
Element sets bound to one Gamma-semiring instance.

A set is a bitmask over the carrier M (or over Γ when it stands for a
parameter subset Λ). Sets from different instances never mix.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator, List, Tuple

from gsr.core.semiring import GammaSemiring
from gsr.errors import MalformedTableError, OwnerMismatchError
from gsr.setalg.bits import count_bits, full_mask, iter_bits, make_mask


class Carrier(Enum):
    """Which carrier a set lives in."""
    M = "M"
    GAMMA = "Gamma"


@dataclass(frozen=True)
class ElementSet:
    """Subset of one carrier of `owner`, stored as a bitmask."""
    owner: GammaSemiring
    mask: int
    carrier: Carrier = Carrier.M

    def __post_init__(self) -> None:
        if self.mask < 0 or self.mask >> self.carrier_size:
            raise MalformedTableError(
                f"Mask {self.mask:#x} does not fit carrier {self.carrier.value} "
                f"of size {self.carrier_size}"
            )

    @classmethod
    def of(cls, owner: GammaSemiring, indexes: Iterable[int], carrier: Carrier = Carrier.M) -> "ElementSet":
        return cls(owner, make_mask(indexes), carrier)

    @classmethod
    def from_labels(
        cls, owner: GammaSemiring, labels: Iterable[str], carrier: Carrier = Carrier.M
    ) -> "ElementSet":
        lookup = owner.m_index if carrier is Carrier.M else owner.g_index
        return cls(owner, make_mask(lookup(label.strip()) for label in labels), carrier)

    @classmethod
    def parse(cls, owner: GammaSemiring, literal: str, carrier: Carrier = Carrier.M) -> "ElementSet":
        """Parse a comma-separated label list, optionally wrapped in braces."""
        body = literal.strip()
        if body.startswith("{") and body.endswith("}"):
            body = body[1:-1]
        labels = [part for part in body.split(",") if part.strip()]
        return cls.from_labels(owner, labels, carrier)

    @classmethod
    def full(cls, owner: GammaSemiring, carrier: Carrier = Carrier.M) -> "ElementSet":
        size = owner.n if carrier is Carrier.M else owner.g
        return cls(owner, full_mask(size), carrier)

    @classmethod
    def empty(cls, owner: GammaSemiring, carrier: Carrier = Carrier.M) -> "ElementSet":
        return cls(owner, 0, carrier)

    @property
    def carrier_size(self) -> int:
        return self.owner.n if self.carrier is Carrier.M else self.owner.g

    def with_mask(self, mask: int) -> "ElementSet":
        return ElementSet(self.owner, mask, self.carrier)

    def members(self) -> Tuple[int, ...]:
        return tuple(iter_bits(self.mask))

    def labels(self) -> List[str]:
        names = self.owner.m_elems if self.carrier is Carrier.M else self.owner.g_elems
        return [names[i] for i in iter_bits(self.mask)]

    def is_empty(self) -> bool:
        return self.mask == 0

    def is_full(self) -> bool:
        return self.mask == full_mask(self.carrier_size)

    def __iter__(self) -> Iterator[int]:
        return iter_bits(self.mask)

    def __len__(self) -> int:
        return count_bits(self.mask)

    def __contains__(self, index: object) -> bool:
        return isinstance(index, int) and index >= 0 and bool((self.mask >> index) & 1)

    def _peer(self, other: "ElementSet") -> None:
        check_same_owner(self, other)
        if self.carrier is not other.carrier:
            raise OwnerMismatchError(
                f"Cannot combine a {self.carrier.value}-set with a {other.carrier.value}-set"
            )

    def issubset(self, other: "ElementSet") -> bool:
        self._peer(other)
        return self.mask & ~other.mask == 0

    def __le__(self, other: "ElementSet") -> bool:
        return self.issubset(other)

    def __lt__(self, other: "ElementSet") -> bool:
        return self.issubset(other) and self.mask != other.mask

    def __or__(self, other: "ElementSet") -> "ElementSet":
        self._peer(other)
        return self.with_mask(self.mask | other.mask)

    def __and__(self, other: "ElementSet") -> "ElementSet":
        self._peer(other)
        return self.with_mask(self.mask & other.mask)

    def __sub__(self, other: "ElementSet") -> "ElementSet":
        self._peer(other)
        return self.with_mask(self.mask & ~other.mask)

    def render(self) -> str:
        """Sorted comma-separated labels in braces, e.g. {1,2,3}."""
        return "{" + ",".join(self.labels()) + "}"

    def __repr__(self) -> str:
        return f"ElementSet({self.owner.name!r}, {self.render()})"


def check_same_owner(*sets: ElementSet) -> None:
    """Raise OwnerMismatchError unless all sets share one instance."""
    if not sets:
        return
    owner = sets[0].owner
    for s in sets[1:]:
        if s.owner is not owner:
            raise OwnerMismatchError(
                f"Sets belong to different instances: {owner.name!r} and {s.owner.name!r}"
            )
