"""A faithful finite model for mapping classes of a two-ended punctured strip.

Punctures sit at the integers; side A is {i <= 0} and side B is {i > 0}.
A mapping class is recorded by its action on puncture labels as an
`EndPerm`: a bijection of Z equal to translation by a fixed offset
outside a finite window.  The group is generated by side-preserving
elements (arbitrary reshuffles within each side) together with the unit
shift, and `crossing_norm` counts the labels carried across the A|B cut,
which is a length function bounding word length in that alphabet from
below.

Binary sequences embed into the group through `phi`: shift every label
up by the weight of the sequence, then return the shifted-through labels
to the zero slots of the sequence with a product of window cycles.  The
composite sends the non-positive labels exactly onto the support, and
the crossing norm of difference elements reproduces the l1 distance on
sequences.  `witness_factorization` turns any element into an explicit
generator word of length at most crossing_norm + 3, and
`word_length_oracle` computes exact word lengths by breadth-first search
over a capped alphabet.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import permutations
from typing import Mapping, Optional, Union

from .qinf import BinarySeq

__all__ = [
    "EndPerm",
    "identity",
    "shift_power",
    "frac_twist",
    "compose",
    "inverse",
    "crossing_norm",
    "positive_images_of_nonpositives",
    "zero_stats",
    "puncture_permutation",
    "phi",
    "Nu",
    "Shift",
    "GenWord",
    "witness_factorization",
    "side_preserving_alphabet",
    "word_ball",
    "word_length_oracle",
    "endperm_to_json",
    "endperm_from_json",
    "genword_to_json",
    "genword_from_json",
    "format_endperm",
]


@dataclass(frozen=True)
class EndPerm:
    """Bijection of Z acting as i -> i + offset outside a finite window.

    `images[j]` is the value at position `lo + j`.  Instances are kept in
    canonical form: the window is the smallest interval outside of which
    the map is the pure translation, and the window images are a
    bijection onto the translated window.  Structural equality therefore
    coincides with equality as functions, and instances are hashable.
    """

    offset: int = 0
    lo: int = 0
    images: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.images:
            lo, t = self.lo, self.offset
            hi = lo + len(self.images) - 1
            if sorted(self.images) != list(range(lo + t, hi + t + 1)):
                raise ValueError(
                    "window images must form a bijection onto the translated window"
                )
            if self.images[0] == lo + t or self.images[-1] == hi + t:
                raise ValueError("window is not minimal; use the canonical constructors")
        elif self.lo != 0:
            raise ValueError("an empty window must be stored with lo = 0")

    @classmethod
    def make(cls, offset: int = 0, mapping: Optional[Mapping[int, int]] = None) -> "EndPerm":
        """Build from a translation offset and finitely many exceptional values.

        Positions inside the span of `mapping` but missing from it follow
        the translation; the result is canonicalized, so redundant
        entries are fine.
        """
        if not mapping:
            return cls(offset=offset)
        lo, hi = min(mapping), max(mapping)
        return _canon(offset, lo, [mapping.get(i, i + offset) for i in range(lo, hi + 1)])

    @property
    def hi(self) -> int:
        """Upper window endpoint; lo - 1 when the window is empty."""
        return self.lo + len(self.images) - 1

    def window_range(self) -> range:
        return range(self.lo, self.lo + len(self.images))

    def __call__(self, i: int) -> int:
        if self.images and self.lo <= i <= self.hi:
            return self.images[i - self.lo]
        return i + self.offset

    @property
    def is_identity(self) -> bool:
        return self.offset == 0 and not self.images

    def is_side_preserving(self) -> bool:
        """True when the map fixes both sides of the A|B cut setwise."""
        if self.offset != 0:
            return False
        return all((i <= 0) == (self(i) <= 0) for i in self.window_range())


def _canon(offset: int, lo: int, images: list[int]) -> EndPerm:
    """Trim translational endpoints and build a canonical EndPerm."""
    start, end = 0, len(images)
    while start < end and images[start] == lo + start + offset:
        start += 1
    while end > start and images[end - 1] == lo + end - 1 + offset:
        end -= 1
    if start == end:
        return EndPerm(offset=offset)
    return EndPerm(offset=offset, lo=lo + start, images=tuple(images[start:end]))


def identity() -> EndPerm:
    return EndPerm()


def shift_power(n: int) -> EndPerm:
    """The translation i -> i + n."""
    return EndPerm(offset=n)


def frac_twist(start: int, end: int) -> EndPerm:
    """Cycle the labels of [start, end] one step up, wrapping end to start.

    Models a fractional twist supported on a loop through consecutive
    punctures: start <= j < end goes to j + 1 and end returns to start.
    """
    if start > end:
        raise ValueError(f"need start <= end, got [{start}, {end}]")
    if start == end:
        return identity()
    images = list(range(start + 1, end + 1)) + [start]
    return _canon(0, start, images)


def compose(outer: EndPerm, inner: EndPerm) -> EndPerm:
    """The composite applying `inner` first, then `outer`."""
    t = outer.offset + inner.offset
    bounds = [inner.lo, inner.hi] if inner.images else []
    if outer.images:
        # indices whose inner image can land in the outer window
        bounds.extend((outer.lo - inner.offset, outer.hi - inner.offset))
    if not bounds:
        return shift_power(t)
    lo, hi = min(bounds), max(bounds)
    return _canon(t, lo, [outer(inner(i)) for i in range(lo, hi + 1)])


def inverse(perm: EndPerm) -> EndPerm:
    if not perm.images:
        return shift_power(-perm.offset)
    lo2 = perm.lo + perm.offset
    images = [0] * len(perm.images)
    for i in perm.window_range():
        images[perm(i) - lo2] = i
    return _canon(-perm.offset, lo2, images)


def _cut_candidates(perm: EndPerm) -> set[int]:
    """Every index that could change sides: the window plus the flip zone
    of the pure translation."""
    idx = set(perm.window_range())
    t = perm.offset
    if t > 0:
        idx.update(range(1 - t, 1))
    elif t < 0:
        idx.update(range(1, 1 - t))
    return idx


def crossing_norm(perm: EndPerm) -> int:
    """Number of labels carried across the A|B cut, in either direction.

    This is a length function: symmetric, subadditive under composition,
    zero exactly on side-preserving elements, and a lower bound for word
    length in the side-preserving-plus-unit-shift alphabet.
    """
    return sum(1 for i in _cut_candidates(perm) if (i <= 0) != (perm(i) <= 0))


def positive_images_of_nonpositives(perm: EndPerm) -> tuple[int, ...]:
    """Sorted positive values taken on non-positive arguments (finite)."""
    return tuple(
        sorted(perm(i) for i in _cut_candidates(perm) if i <= 0 and perm(i) > 0)
    )


def zero_stats(a: BinarySeq) -> tuple[int, list[int]]:
    """Count and locate the zeros occurring before the final one of `a`.

    Returns (z, positions) with positions sorted increasingly; the zero
    sequence gives (0, []).

    >>> zero_stats(BinarySeq((3,)))
    (2, [1, 2])
    """
    if not a.ones:
        return (0, [])
    last = a.ones[-1]
    ones = set(a.ones)
    positions = [j for j in range(1, last) if j not in ones]
    return (len(positions), positions)


def puncture_permutation(a: BinarySeq) -> EndPerm:
    """The cycle product returning shifted-through labels to the zero slots.

    For each zero of `a` before its final one, taken in increasing order,
    apply the fractional twist cycling [position of the i-th zero,
    weight + i]; the i = 1 twist acts first.
    """
    z, zero_positions = zero_stats(a)
    w = a.weight
    acc = identity()
    for i in range(1, z + 1):
        acc = compose(frac_twist(zero_positions[i - 1], w + i), acc)
    return acc


def phi(a: BinarySeq) -> EndPerm:
    """Isometric embedding of binary sequences into the strip model.

    Shift all labels up by the weight of `a`, then rearrange with
    `puncture_permutation(a)`.  The non-positive labels land exactly on
    the support of `a`, the offset and crossing norm both equal the
    weight, and crossing_norm(inverse(phi(b)) . phi(a)) recovers the l1
    distance between `a` and `b`.
    """
    return compose(puncture_permutation(a), shift_power(a.weight))


# ---------------------------------------------------------------------------
# generator words


@dataclass(frozen=True)
class Nu:
    """A side-preserving generator letter."""

    perm: EndPerm

    def __post_init__(self) -> None:
        if not self.perm.is_side_preserving():
            raise ValueError("Nu letters must be side-preserving with offset 0")


@dataclass(frozen=True)
class Shift:
    """A unit shift generator letter, step +1 or -1."""

    step: int

    def __post_init__(self) -> None:
        if self.step not in (1, -1):
            raise ValueError(f"shift step must be +1 or -1, got {self.step}")


Letter = Union[Nu, Shift]


def _letter_perm(letter: Letter) -> EndPerm:
    return letter.perm if isinstance(letter, Nu) else shift_power(letter.step)


@dataclass(frozen=True)
class GenWord:
    """A word in the generating alphabet, applied left to right."""

    letters: tuple[Letter, ...] = ()

    def __post_init__(self) -> None:
        for letter in self.letters:
            if not isinstance(letter, (Nu, Shift)):
                raise ValueError(f"not a generator letter: {letter!r}")

    @property
    def cost(self) -> int:
        """Word length: every letter costs 1."""
        return len(self.letters)

    def replay(self) -> EndPerm:
        """Compose the letters in order (first letter acts first)."""
        acc = identity()
        for letter in self.letters:
            acc = compose(_letter_perm(letter), acc)
        return acc


def _pack_positive(sources: list[int]) -> EndPerm:
    """Side-preserving map sending the positive `sources` to 1..k in order,
    displacing the remaining labels of [1, max] upward in order."""
    k = len(sources)
    if k == 0:
        return identity()
    top = max(sources[-1], k)
    taken = set(sources)
    rest = [i for i in range(1, top + 1) if i not in taken]
    mapping = {}
    for slot, src in enumerate(sources, start=1):
        mapping[src] = slot
    for slot, src in enumerate(rest, start=k + 1):
        mapping[src] = slot
    return _canon(0, 1, [mapping[i] for i in range(1, top + 1)])


def _pack_nonpositive(sources: list[int]) -> EndPerm:
    """Side-preserving map sending the non-positive `sources` to the top
    slots -k+1..0 in order, displacing the rest of [min, 0] downward."""
    k = len(sources)
    if k == 0:
        return identity()
    bottom = min(sources[0], -k + 1)
    taken = set(sources)
    rest = [i for i in range(bottom, 1) if i not in taken]
    mapping = {}
    for slot, src in zip(range(-k + 1, 1), sources):
        mapping[src] = slot
    for slot, src in zip(range(bottom, -k + 1), rest):
        mapping[src] = slot
    return _canon(0, bottom, [mapping[i] for i in range(bottom, 1)])


def witness_factorization(perm: EndPerm) -> GenWord:
    """An explicit generator word replaying to `perm`.

    Strategy: line up the B-side labels destined for A just above the
    cut and shift them over, then line up the A-side labels destined for
    B just below the cut and shift them back, then finish with one
    side-preserving correction.  The cost is at most crossing_norm + 3:
    one shift per crossing plus at most three reshuffles.
    """
    candidates = _cut_candidates(perm)
    to_a = sorted(i for i in candidates if i > 0 and perm(i) <= 0)
    to_b = sorted(i for i in candidates if i <= 0 and perm(i) > 0)
    k1, k2 = len(to_a), len(to_b)

    u1 = _pack_positive(to_a)
    stage = compose(shift_power(-k1), u1)
    u2 = _pack_nonpositive(sorted(i - k1 for i in to_b))
    stage = compose(shift_power(k2), compose(u2, stage))
    u3 = compose(perm, inverse(stage))

    letters: list[Letter] = []
    if not u1.is_identity:
        letters.append(Nu(u1))
    letters.extend(Shift(-1) for _ in range(k1))
    if not u2.is_identity:
        letters.append(Nu(u2))
    letters.extend(Shift(1) for _ in range(k2))
    if not u3.is_identity:
        letters.append(Nu(u3))
    return GenWord(tuple(letters))


# ---------------------------------------------------------------------------
# exact word lengths by breadth-first search

DEFAULT_ALPHABET_CAP = 20000


def side_preserving_alphabet(support_bound: int) -> list[EndPerm]:
    """All non-identity side-preserving maps with window inside
    [-support_bound, support_bound].

    The count grows like (W+1)! * W!, so callers must cap W.
    """
    if support_bound < 0:
        raise ValueError("support_bound must be nonnegative")
    w = support_bound
    out: set[EndPerm] = set()
    for neg in permutations(range(-w, 1)):
        for pos in permutations(range(1, w + 1)):
            perm = _canon(0, -w, list(neg) + list(pos))
            if not perm.is_identity:
                out.add(perm)
    return sorted(out, key=lambda p: (p.lo, p.offset, p.images))


def _check_alphabet_cap(support_bound: int, alphabet_cap: int) -> None:
    expected = math.factorial(support_bound + 1) * math.factorial(support_bound)
    if expected + 2 > alphabet_cap:
        raise ValueError(
            f"alphabet for support_bound={support_bound} has about {expected} letters, "
            f"over the cap of {alphabet_cap}"
        )


def _bfs(
    support_bound: int,
    depth_bound: int,
    target: Optional[EndPerm],
    alphabet_cap: int,
    window_cap: Optional[int],
) -> tuple[dict[EndPerm, int], Optional[int]]:
    _check_alphabet_cap(support_bound, alphabet_cap)
    start = identity()
    if target is not None and target == start:
        return {start: 0}, 0
    letters = side_preserving_alphabet(support_bound) + [shift_power(1), shift_power(-1)]
    cap = window_cap if window_cap is not None else support_bound + depth_bound
    dist: dict[EndPerm, int] = {start: 0}
    frontier = [start]
    for depth in range(1, depth_bound + 1):
        nxt: list[EndPerm] = []
        for g in frontier:
            for s in letters:
                h = compose(s, g)
                if h in dist:
                    continue
                if h.images and (h.lo < -cap or h.hi > cap):
                    continue
                dist[h] = depth
                if target is not None and h == target:
                    return dist, depth
                nxt.append(h)
        frontier = nxt
    return dist, None


def word_ball(
    support_bound: int,
    depth_bound: int,
    *,
    alphabet_cap: int = DEFAULT_ALPHABET_CAP,
    window_cap: Optional[int] = None,
) -> dict[EndPerm, int]:
    """Exact word length for every element reachable within depth_bound.

    States are deduplicated by canonical form; states whose window leaves
    [-window_cap, window_cap] are pruned (the default cap is never hit by
    a reachable state, it only bounds memory).
    """
    dist, _ = _bfs(support_bound, depth_bound, None, alphabet_cap, window_cap)
    return dist


def word_length_oracle(
    perm: EndPerm,
    support_bound: int,
    depth_bound: int,
    *,
    alphabet_cap: int = DEFAULT_ALPHABET_CAP,
    window_cap: Optional[int] = None,
) -> Optional[int]:
    """Least word length of `perm` over the capped alphabet, or None when
    no word of length <= depth_bound reaches it.

    Any returned value is >= crossing_norm(perm), since every letter has
    crossing norm at most one.
    """
    _, found = _bfs(support_bound, depth_bound, perm, alphabet_cap, window_cap)
    return found


# ---------------------------------------------------------------------------
# serialization and rendering


def endperm_to_json(perm: EndPerm) -> dict:
    doc: dict = {"offset": perm.offset}
    if perm.images:
        doc["window"] = [perm.lo, perm.hi]
        doc["images"] = {str(i): perm(i) for i in perm.window_range()}
    return doc


def endperm_from_json(doc: object) -> EndPerm:
    if not isinstance(doc, dict) or "offset" not in doc:
        raise ValueError('expected an object with an "offset" field')
    allowed = {"offset", "window", "images"}
    if set(doc) - allowed:
        raise ValueError(f"unknown fields: {sorted(set(doc) - allowed)}")
    offset = doc["offset"]
    if not isinstance(offset, int) or isinstance(offset, bool):
        raise ValueError('"offset" must be an integer')
    if "window" not in doc and "images" not in doc:
        return shift_power(offset)
    if "window" not in doc or "images" not in doc:
        raise ValueError('"window" and "images" must be given together')
    window = doc["window"]
    if (
        not isinstance(window, list)
        or len(window) != 2
        or not all(isinstance(v, int) and not isinstance(v, bool) for v in window)
    ):
        raise ValueError('"window" must be a [lo, hi] pair of integers')
    lo, hi = window
    if lo > hi:
        raise ValueError(f'"window" must satisfy lo <= hi, got [{lo}, {hi}]')
    images_doc = doc["images"]
    if not isinstance(images_doc, dict):
        raise ValueError('"images" must be an object keyed by window positions')
    images = []
    seen = set()
    for key, value in images_doc.items():
        try:
            pos = int(key)
        except ValueError:
            raise ValueError(f'"images" key is not an integer: {key!r}') from None
        if not isinstance(value, int) or isinstance(value, bool):
            raise ValueError(f'"images" value for {key} must be an integer')
        seen.add(pos)
    if seen != set(range(lo, hi + 1)):
        raise ValueError('"images" keys must cover the window exactly')
    for i in range(lo, hi + 1):
        images.append(images_doc[str(i)] if str(i) in images_doc else images_doc[i])
    return _canon(offset, lo, images)


def genword_to_json(word: GenWord) -> list:
    out = []
    for letter in word.letters:
        if isinstance(letter, Nu):
            out.append({"nu": endperm_to_json(letter.perm)})
        else:
            out.append({"shift": letter.step})
    return out


def genword_from_json(doc: object) -> GenWord:
    if not isinstance(doc, list):
        raise ValueError("expected a list of letters")
    letters: list[Letter] = []
    for entry in doc:
        if not isinstance(entry, dict) or len(entry) != 1:
            raise ValueError(f"each letter must be a one-key object, got {entry!r}")
        if "nu" in entry:
            letters.append(Nu(endperm_from_json(entry["nu"])))
        elif "shift" in entry:
            letters.append(Shift(entry["shift"]))
        else:
            raise ValueError(f'letter must be "nu" or "shift", got {entry!r}')
    return GenWord(tuple(letters))


def format_endperm(perm: EndPerm) -> str:
    """Two-row table over the window plus the translation rule elsewhere."""
    t = perm.offset
    elsewhere = f"i -> i{t:+d} elsewhere" if t else "i -> i elsewhere"
    if not perm.images:
        return elsewhere
    header = "i      | " + "  ".join(str(i) for i in perm.window_range())
    values = "maps to| " + "  ".join(str(perm(i)) for i in perm.window_range())
    return "\n".join([header, values, elsewhere])
