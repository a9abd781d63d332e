"""Finite words over the tree alphabet {L, R} and the generator alphabet {s, r}."""

from dataclasses import dataclass
from typing import ClassVar, FrozenSet, Iterator

from .errors import InvalidWord


@dataclass(frozen=True)
class _Word:
    letters: str = ""

    ALPHABET: ClassVar[FrozenSet[str]] = frozenset()

    def __post_init__(self) -> None:
        stray = set(self.letters) - self.ALPHABET
        if stray:
            allowed = ", ".join(sorted(self.ALPHABET))
            raise InvalidWord(
                f"{type(self).__name__} '{self.letters}' uses {sorted(stray)}; allowed: {allowed}"
            )

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[str]:
        return iter(self.letters)

    def __str__(self) -> str:
        return self.letters

    def prefix(self, n: int) -> "_Word":
        """First ``n`` letters as a word of the same kind."""
        return type(self)(self.letters[:n])


@dataclass(frozen=True)
class PathWord(_Word):
    """A path in the planar binary tree: L turns left, R turns right."""

    ALPHABET: ClassVar[FrozenSet[str]] = frozenset("LR")

    @classmethod
    def alternating(cls, n: int, first: str = "L") -> "PathWord":
        """The zig-zag word LRLR... (or RLRL...) of length ``n``."""
        other = "R" if first == "L" else "L"
        return cls("".join(first if i % 2 == 0 else other for i in range(n)))


@dataclass(frozen=True)
class GeneratorWord(_Word):
    """A word in the modular group generators: s (tropical Vieta), r (cyclic shift)."""

    ALPHABET: ClassVar[FrozenSet[str]] = frozenset("sr")
