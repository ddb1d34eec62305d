"""The space of eventually-zero binary sequences with the l1 metric.

A sequence is recorded by its support: the finite set of 1-based
positions carrying a one.  The l1 distance between two sequences is the
size of the symmetric difference of their supports, which makes the
space an abelian group under coordinatewise addition mod 2 with the
distance to zero as a norm.

Each odd prime p owns a disjoint "line" of positions: the prime powers
p, p^2, ... encode positive integers and their doubles 2p, 2p^2, ...
encode negative ones.  Integer points embed isometrically along a
single line, and tuples embed isometrically along several lines at
once because distinct odd primes never collide on these positions.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

__all__ = [
    "BinarySeq",
    "l1_distance",
    "prime_line_embed",
    "zn_embed",
    "first_odd_primes",
]


@dataclass(frozen=True)
class BinarySeq:
    """A finitely supported 0/1 sequence, stored as its sorted support.

    `ones` must be strictly increasing positive integers; materializing
    the support as a tuple is what enforces finiteness.  Structural
    equality is equality of sequences.
    """

    ones: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if list(self.ones) != sorted(set(self.ones)):
            raise ValueError(f"support must be strictly increasing: {self.ones!r}")
        if self.ones and self.ones[0] < 1:
            raise ValueError(f"support positions must be >= 1: {self.ones!r}")

    @classmethod
    def from_indices(cls, indices: Iterable[int]) -> "BinarySeq":
        """Build a sequence from any finite iterable of positions."""
        return cls(tuple(sorted(set(indices))))

    @property
    def weight(self) -> int:
        """Number of ones, i.e. the distance to the zero sequence."""
        return len(self.ones)

    def __iter__(self) -> Iterator[int]:
        return iter(self.ones)

    def __contains__(self, position: int) -> bool:
        return position in set(self.ones)

    def __xor__(self, other: "BinarySeq") -> "BinarySeq":
        """Coordinatewise sum mod 2 (symmetric difference of supports)."""
        return BinarySeq.from_indices(set(self.ones) ^ set(other.ones))

    def to_json(self) -> dict:
        return {"ones": list(self.ones)}

    @classmethod
    def from_json(cls, doc: object) -> "BinarySeq":
        if not isinstance(doc, dict) or set(doc) != {"ones"}:
            raise ValueError('expected an object of the form {"ones": [...]}')
        ones = doc["ones"]
        if not isinstance(ones, list) or not all(isinstance(i, int) and not isinstance(i, bool) for i in ones):
            raise ValueError('"ones" must be a list of integers')
        if ones != sorted(set(ones)):
            raise ValueError('"ones" must be strictly increasing')
        return cls(tuple(ones))


def l1_distance(a: BinarySeq, b: BinarySeq) -> int:
    """l1 distance: the number of positions where the two sequences differ.

    >>> l1_distance(BinarySeq((2, 3, 5)), BinarySeq((2, 4)))
    3
    """
    return len(set(a.ones) ^ set(b.ones))


def _require_odd_prime(p: int) -> None:
    if p < 3 or p % 2 == 0:
        raise ValueError(f"{p} is not an odd prime")
    d = 3
    while d * d <= p:
        if p % d == 0:
            raise ValueError(f"{p} is not an odd prime")
        d += 2


def prime_line_embed(p: int, m: int) -> BinarySeq:
    """Embed the integer m isometrically along the line of the odd prime p.

    Positive m lights positions p, p^2, ..., p^m; negative m lights
    2p, ..., 2p^|m|; zero gives the zero sequence.  Positions are exact
    arbitrary-precision integers, so large |m| is allowed.

    >>> prime_line_embed(3, 2).ones
    (3, 9)
    >>> prime_line_embed(3, -2).ones
    (6, 18)
    """
    _require_odd_prime(p)
    if m == 0:
        return BinarySeq()
    if m > 0:
        return BinarySeq(tuple(p ** k for k in range(1, m + 1)))
    return BinarySeq(tuple(2 * p ** k for k in range(1, -m + 1)))


def zn_embed(primes: Sequence[int], point: Sequence[int]) -> BinarySeq:
    """Embed an integer tuple isometrically, one prime line per coordinate.

    Requires pairwise distinct odd primes, one per coordinate of `point`.
    The coordinate supports are pairwise disjoint, so distances add up
    coordinatewise and the embedding is an l1 isometry.
    """
    if len(primes) != len(set(primes)):
        raise ValueError(f"primes must be distinct: {tuple(primes)!r}")
    if len(primes) != len(point):
        raise ValueError(
            f"got {len(primes)} primes for a point of dimension {len(point)}"
        )
    support: set[int] = set()
    for p, m in zip(primes, point):
        line = prime_line_embed(p, m)
        support |= set(line.ones)
    return BinarySeq.from_indices(support)


def first_odd_primes(n: int) -> tuple[int, ...]:
    """The n smallest odd primes, the default lines for `zn_embed`."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    out: list[int] = []
    candidate = 3
    while len(out) < n:
        try:
            _require_odd_prime(candidate)
        except ValueError:
            pass
        else:
            out.append(candidate)
        candidate += 2
    return tuple(out)
