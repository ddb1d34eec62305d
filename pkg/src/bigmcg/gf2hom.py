"""GF(2) row spaces as int bitsets, and graded automorphisms of a block line.

Vectors are Python ints with bit k for coordinate k.  Subspaces are kept
in reduced row echelon form with pivots at the lowest set bits, so equal
row spaces are structurally equal.

The graded side models a Z-indexed chain of coordinate blocks of a fixed
dimension d (d = 2 matches one handle per block).  A `GradedAut`
translates blocks by a fixed offset outside a finite block window and
acts by an invertible matrix inside it.  Splitting the blocks into a
negative side (index <= 0) and a positive side (index >= 1) gives
`homology_norm`, a codimension count of how far the map is from
preserving both sides; it is symmetric, subadditive, zero on
split-preserving maps, and equals d * |n| on the pure block translation
by n.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

__all__ = [
    "Gf2Subspace",
    "rref_rows",
    "rref_basis",
    "subspace_intersect",
    "codim",
    "GradedAut",
    "GradedSubspace",
    "graded_shift",
    "graded_apply",
    "SplitSpec",
    "minimal_hull",
    "homology_norm",
    "HullTooSmallError",
    "HullOverflowError",
    "gradedaut_to_json",
    "gradedaut_from_json",
]


class HullTooSmallError(ValueError):
    """The evaluation hull misses blocks the map can move or mix."""


class HullOverflowError(ValueError):
    """An image coordinate fell outside the hull; enlarge the hull."""


def _low_bit(x: int) -> int:
    return x & -x


def rref_rows(rows: Iterable[int]) -> tuple[int, ...]:
    """Reduced row echelon form with pivots at lowest set bits."""
    pivots: dict[int, int] = {}
    for row in rows:
        while row:
            b = _low_bit(row)
            if b in pivots:
                row ^= pivots[b]
            else:
                pivots[b] = row
                break
    reduced: dict[int, int] = {}
    for b in sorted(pivots, reverse=True):
        row = pivots[b]
        for b2, r2 in reduced.items():
            if row & b2:
                row ^= r2
        reduced[b] = row
    return tuple(reduced[b] for b in sorted(reduced))


@dataclass(frozen=True)
class Gf2Subspace:
    """A subspace of GF(2)^ambient_dim with a canonical RREF basis."""

    ambient_dim: int
    rows: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.ambient_dim < 0:
            raise ValueError("ambient_dim must be nonnegative")
        if self.rows != rref_rows(self.rows):
            raise ValueError("rows must be in reduced row echelon form")
        if any(r >> self.ambient_dim for r in self.rows):
            raise ValueError("row has bits outside the ambient space")

    @property
    def dim(self) -> int:
        return len(self.rows)

    def reduce(self, vec: int) -> int:
        """Residue of vec after elimination by the basis."""
        for row in self.rows:
            if vec & _low_bit(row):
                vec ^= row
        return vec

    def contains(self, vec: int) -> bool:
        return self.reduce(vec) == 0


def rref_basis(rows: Iterable[int], ambient_dim: int) -> Gf2Subspace:
    return Gf2Subspace(ambient_dim, rref_rows(rows))


def subspace_intersect(u: Gf2Subspace, v: Gf2Subspace) -> Gf2Subspace:
    """Intersection via the doubled-width elimination trick: stack rows
    (x | x << n) for u and bare x for v; eliminated rows supported only on
    the high half span the intersection."""
    if u.ambient_dim != v.ambient_dim:
        raise ValueError(
            f"ambient mismatch: {u.ambient_dim} vs {v.ambient_dim}"
        )
    n = u.ambient_dim
    stacked = [r | (r << n) for r in u.rows] + list(v.rows)
    low_mask = (1 << n) - 1
    inter = [r >> n for r in rref_rows(stacked) if not (r & low_mask)]
    return rref_basis(inter, n)


def codim(v: Gf2Subspace, w: Gf2Subspace) -> int:
    """dim(v) - dim(w), requiring w to be a subspace of v."""
    if v.ambient_dim != w.ambient_dim:
        raise ValueError(
            f"ambient mismatch: {v.ambient_dim} vs {w.ambient_dim}"
        )
    for row in w.rows:
        if not v.contains(row):
            raise ValueError("codim requires the second space inside the first")
    return v.dim - w.dim


def _invert_rows(rows: Sequence[int]) -> list[int]:
    """Inverse of a square GF(2) matrix given as row bitmasks."""
    n = len(rows)
    work = list(rows)
    aug = [1 << i for i in range(n)]
    for col in range(n):
        pivot = None
        for r in range(col, n):
            if work[r] >> col & 1:
                pivot = r
                break
        if pivot is None:
            raise ValueError("matrix is singular")
        work[col], work[pivot] = work[pivot], work[col]
        aug[col], aug[pivot] = aug[pivot], aug[col]
        for r in range(n):
            if r != col and work[r] >> col & 1:
                work[r] ^= work[col]
                aug[r] ^= aug[col]
    return aug


# ---------------------------------------------------------------------------
# graded automorphisms

Coord = tuple[int, int]  # (block index, coordinate within block)


def _rank(rows: Iterable[int]) -> int:
    return len(rref_rows(rows))


@dataclass(frozen=True)
class GradedAut:
    """Automorphism of the block line: block i goes to block i + offset
    outside the window [lo, lo + len(rows)//block_dim - 1], and the rows
    give the images of the window coordinates.

    Row r is the image of coordinate (lo + r // d, r % d); bit c of a row
    is coordinate (lo + offset + c // d, c % d).  Canonical form trims
    window blocks that are translated identically and whose image block
    is touched by no other row, so structural equality is equality of
    maps.
    """

    block_dim: int
    offset: int = 0
    lo: int = 0
    rows: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        d = self.block_dim
        if d < 1:
            raise ValueError("block_dim must be >= 1")
        n = len(self.rows)
        if n % d:
            raise ValueError("rows must cover whole blocks")
        if any(r >> n for r in self.rows):
            raise ValueError("row has bits outside the image window")
        if n and _rank(self.rows) != n:
            raise ValueError("window matrix must be invertible")
        if n and (_block_clean(self.rows, d, 0) or _block_clean(self.rows, d, n // d - 1)):
            raise ValueError("window is not minimal; use the canonical constructors")
        if not self.rows and self.lo != 0:
            raise ValueError("an empty window must be stored with lo = 0")

    @classmethod
    def from_rows(
        cls, block_dim: int, offset: int, lo: int, rows: Sequence[int]
    ) -> "GradedAut":
        """Canonicalize and build from image-row bitmasks on window [lo, ...]."""
        return _canon_aut(block_dim, offset, lo, list(rows))

    @property
    def n_blocks(self) -> int:
        return len(self.rows) // self.block_dim

    @property
    def hi(self) -> int:
        """Upper window block; lo - 1 when the window is empty."""
        return self.lo + self.n_blocks - 1

    def window_blocks(self) -> range:
        return range(self.lo, self.lo + self.n_blocks)

    def apply_coord(self, block: int, k: int) -> frozenset[Coord]:
        """Image of a single basis coordinate as a set of coordinates."""
        if not 0 <= k < self.block_dim:
            raise ValueError(f"coordinate index {k} outside block of dim {self.block_dim}")
        d = self.block_dim
        if self.rows and self.lo <= block <= self.hi:
            row = self.rows[(block - self.lo) * d + k]
            base = self.lo + self.offset
            out = []
            c = 0
            while row:
                if row & 1:
                    out.append((base + c // d, c % d))
                row >>= 1
                c += 1
            return frozenset(out)
        return frozenset([(block + self.offset, k)])

    def apply_coords(self, coords: Iterable[Coord]) -> frozenset[Coord]:
        acc: set[Coord] = set()
        for block, k in coords:
            acc ^= self.apply_coord(block, k)
        return frozenset(acc)

    @property
    def is_identity(self) -> bool:
        return self.offset == 0 and not self.rows

    def is_split_preserving(self) -> bool:
        """Offset zero and no window coordinate mixed across the 0|1 cut."""
        if self.offset != 0:
            return False
        for block in self.window_blocks():
            for k in range(self.block_dim):
                if any((block <= 0) != (b2 <= 0) for b2, _ in self.apply_coord(block, k)):
                    return False
        return True

    def compose(self, inner: "GradedAut") -> "GradedAut":
        """The composite applying `inner` first, then self."""
        if self.block_dim != inner.block_dim:
            raise ValueError("block_dim mismatch")
        d = self.block_dim
        t = self.offset + inner.offset
        bounds = []
        if inner.rows:
            bounds.extend((inner.lo, inner.hi))
        if self.rows:
            bounds.extend((self.lo - inner.offset, self.hi - inner.offset))
        if not bounds:
            return graded_shift(t, d)
        lo, hi = min(bounds), max(bounds)
        rows = []
        for block in range(lo, hi + 1):
            for k in range(d):
                img = self.apply_coords(inner.apply_coord(block, k))
                rows.append(_coords_to_row(img, lo + t, hi + t, d))
        return _canon_aut(d, t, lo, rows)

    def inverse(self) -> "GradedAut":
        if not self.rows:
            return graded_shift(-self.offset, self.block_dim)
        return _canon_aut(
            self.block_dim,
            -self.offset,
            self.lo + self.offset,
            _invert_rows(self.rows),
        )


def _block_clean(rows: Sequence[int], d: int, block_pos: int) -> bool:
    """Whether window block `block_pos` is an identity translation no other
    row touches (same local index on both sides since windows align)."""
    n = len(rows)
    base = block_pos * d
    for k in range(d):
        if rows[base + k] != 1 << (base + k):
            return False
    mask = ((1 << d) - 1) << base
    return all(not (rows[r] & mask) for r in range(n) if not base <= r < base + d)


def _canon_aut(d: int, offset: int, lo: int, rows: list[int]) -> GradedAut:
    rows = list(rows)
    while rows and _block_clean(rows, d, 0):
        rows = [r >> d for r in rows[d:]]
        lo += 1
    while rows and _block_clean(rows, d, len(rows) // d - 1):
        rows = rows[: len(rows) - d]
    if not rows:
        return GradedAut(block_dim=d, offset=offset)
    return GradedAut(block_dim=d, offset=offset, lo=lo, rows=tuple(rows))


def _coords_to_row(coords: Iterable[Coord], lo: int, hi: int, d: int) -> int:
    row = 0
    for block, k in coords:
        if not lo <= block <= hi:
            raise HullOverflowError(
                f"coordinate in block {block} falls outside blocks [{lo}, {hi}]"
            )
        row |= 1 << ((block - lo) * d + k)
    return row


def graded_shift(n: int, block_dim: int) -> GradedAut:
    """The pure block translation by n."""
    return GradedAut(block_dim=block_dim, offset=n)


@dataclass(frozen=True)
class GradedSubspace:
    """A subspace carried on the blocks of a finite hull [lo, hi]."""

    block_dim: int
    lo: int
    hi: int
    space: Gf2Subspace

    def __post_init__(self) -> None:
        if self.lo > self.hi:
            raise ValueError("hull must satisfy lo <= hi")
        want = (self.hi - self.lo + 1) * self.block_dim
        if self.space.ambient_dim != want:
            raise ValueError(
                f"ambient dim {self.space.ambient_dim} does not match hull size {want}"
            )

    @classmethod
    def block_span(
        cls, block_dim: int, lo: int, hi: int, blocks: Iterable[int]
    ) -> "GradedSubspace":
        """Span of every coordinate of the listed blocks."""
        rows = []
        for block in blocks:
            if not lo <= block <= hi:
                raise ValueError(f"block {block} outside hull [{lo}, {hi}]")
            for k in range(block_dim):
                rows.append(1 << ((block - lo) * block_dim + k))
        n = (hi - lo + 1) * block_dim
        return cls(block_dim, lo, hi, rref_basis(rows, n))


def graded_apply(aut: GradedAut, sub: GradedSubspace) -> GradedSubspace:
    """Image of a graded subspace, on the same hull.

    Raises HullOverflowError when an image coordinate leaves the hull;
    the caller should enlarge the hull and retry.
    """
    if aut.block_dim != sub.block_dim:
        raise ValueError("block_dim mismatch")
    d = sub.block_dim
    rows = []
    for row in sub.space.rows:
        coords = []
        c = 0
        r = row
        while r:
            if r & 1:
                coords.append((sub.lo + c // d, c % d))
            r >>= 1
            c += 1
        img = aut.apply_coords(coords)
        rows.append(_coords_to_row(img, sub.lo, sub.hi, d))
    n = (sub.hi - sub.lo + 1) * d
    return GradedSubspace(d, sub.lo, sub.hi, rref_basis(rows, n))


# ---------------------------------------------------------------------------
# the two-sided norm


@dataclass(frozen=True)
class SplitSpec:
    """How the block line is split: blocks <= 0 on the minus side, blocks
    >= 1 on the plus side, plus a number of extra blocks per side that
    every map fixes coordinatewise (ends that never move)."""

    extra_minus: int = 0
    extra_plus: int = 0

    def __post_init__(self) -> None:
        if self.extra_minus < 0 or self.extra_plus < 0:
            raise ValueError("extra block counts must be nonnegative")


def _required_blocks(aut: GradedAut) -> set[int]:
    need: set[int] = set()
    if aut.rows:
        need.update(aut.window_blocks())
        need.update(b + aut.offset for b in aut.window_blocks())
    t = aut.offset
    if t > 0:
        need.update(range(1, t + 1))
    elif t < 0:
        need.update(range(t + 1, 1))
    return need


def minimal_hull(aut: GradedAut) -> tuple[int, int]:
    """Smallest hull on which the norm of `aut` can be evaluated."""
    need = _required_blocks(aut)
    if not need:
        return (0, 1)
    return (min(need), max(need))


def homology_norm(
    aut: GradedAut,
    split: SplitSpec = SplitSpec(),
    hull: Optional[tuple[int, int]] = None,
) -> int:
    """Codimension of the invariantly-sided part inside the hull space.

    Concretely: over the hull, take the span H_s of each side's
    coordinates (plus that side's extra blocks), intersect with the image
    of the corresponding full side under `aut`, and subtract both
    dimensions from the hull dimension.  Blocks outside a valid hull are
    carried to their own side untouched, so the value does not depend on
    the hull choice; `HullTooSmallError` rejects hulls missing blocks the
    map actually moves or mixes.
    """
    if hull is None:
        hull = minimal_hull(aut)
    lo, hi = hull
    if lo > hi:
        raise HullTooSmallError(f"hull must satisfy lo <= hi, got [{lo}, {hi}]")
    missing = sorted(b for b in _required_blocks(aut) if not lo <= b <= hi)
    if missing:
        raise HullTooSmallError(
            f"hull [{lo}, {hi}] misses blocks {missing} touched by the map"
        )
    d = aut.block_dim
    n_main = (hi - lo + 1) * d
    n_total = n_main + (split.extra_minus + split.extra_plus) * d
    extra_minus = range(n_main, n_main + split.extra_minus * d)
    extra_plus = range(n_main + split.extra_minus * d, n_total)

    def flat(block: int, k: int) -> int:
        return (block - lo) * d + k

    def side_rows(side_positive: bool) -> list[int]:
        rows = [1 << c for c in (extra_plus if side_positive else extra_minus)]
        for block in range(lo, hi + 1):
            if (block >= 1) == side_positive:
                rows.extend(1 << flat(block, k) for k in range(d))
        return rows

    def image_side_rows(side_positive: bool) -> list[int]:
        # the image of a full side: extras are fixed, window coordinates go
        # through the matrix, and every off-window block of the side whose
        # translate lands in the hull contributes a whole block.
        rows = [1 << c for c in (extra_plus if side_positive else extra_minus)]
        window = set(aut.window_blocks())
        for block in window:
            if (block >= 1) == side_positive:
                for k in range(d):
                    img = aut.apply_coord(block, k)
                    rows.append(sum(1 << flat(b, k2) for b, k2 in img))
        for block in range(lo - aut.offset, hi - aut.offset + 1):
            if block in window:
                continue
            if (block >= 1) != side_positive:
                continue
            target = block + aut.offset
            rows.extend(1 << flat(target, k) for k in range(d))
        return rows

    total = 0
    for side_positive in (False, True):
        h_side = rref_basis(side_rows(side_positive), n_total)
        img_side = rref_basis(image_side_rows(side_positive), n_total)
        total += subspace_intersect(h_side, img_side).dim
    return n_total - total


# ---------------------------------------------------------------------------
# serialization


def gradedaut_to_json(aut: GradedAut) -> dict:
    doc: dict = {"offset": aut.offset, "block_dim": aut.block_dim}
    if aut.rows:
        doc["window"] = [aut.lo, aut.hi]
        n = len(aut.rows)
        doc["matrix"] = [[(r >> c) & 1 for c in range(n)] for r in aut.rows]
    return doc


def gradedaut_from_json(doc: object) -> GradedAut:
    if not isinstance(doc, dict) or "offset" not in doc or "block_dim" not in doc:
        raise ValueError('expected an object with "offset" and "block_dim"')
    allowed = {"offset", "block_dim", "window", "matrix"}
    if set(doc) - allowed:
        raise ValueError(f"unknown fields: {sorted(set(doc) - allowed)}")
    offset, d = doc["offset"], doc["block_dim"]
    for name, value in (("offset", offset), ("block_dim", d)):
        if not isinstance(value, int) or isinstance(value, bool):
            raise ValueError(f'"{name}" must be an integer')
    if "window" not in doc and "matrix" not in doc:
        return graded_shift(offset, d)
    if "window" not in doc or "matrix" not in doc:
        raise ValueError('"window" and "matrix" must be given together')
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
    matrix = doc["matrix"]
    n = (hi - lo + 1) * (d if isinstance(d, int) else 0)
    if not isinstance(matrix, list) or len(matrix) != n:
        raise ValueError(f'"matrix" must have {n} rows for window [{lo}, {hi}]')
    rows = []
    for entry in matrix:
        if not isinstance(entry, list) or len(entry) != n or any(b not in (0, 1) for b in entry):
            raise ValueError('"matrix" rows must be 0/1 lists matching the window size')
        rows.append(sum(bit << c for c, bit in enumerate(entry)))
    return _canon_aut(d, offset, lo, rows)
