"""Decision procedures on declared end-class tables.

An end-class table is a finite, asserted description of the end space of
an infinite-type surface: the clopen pieces a standard shift translates
through, the equivalence classes of ends with their cardinalities and
planarity, where each class appears and where it is the piece maximum,
and which classes accumulate on which.  Nothing here computes topology;
the table records it and the procedures decide consequences.

Two-sidedness questions reduce to connectivity of a graph on pieces: an
edge joins two pieces whenever ends of one class can be traded between
them, which happens when a class is present non-maximally in both, or
when a cantor-cardinality class meets both (such ends are never fixed
pointwise).  Isolated maximal ends, in contrast, are fixed by every
end-preserving map, so a class that is maximal in both pieces with one
end apiece creates no edge.  A shift is classified essential when it
carries finite positive genus per block across a genus-two-sided cut, or
a single block-maximal end class across a cut that is two-sided for that
class's accumulation set.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Sequence

__all__ = [
    "Genus",
    "Cardinality",
    "EndClass",
    "EndClassTable",
    "EndRef",
    "ShiftDescriptor",
    "Violation",
    "ValidationReport",
    "EssentialWitness",
    "EssentialResult",
    "ShiftVerdict",
    "validate_table",
    "accumulation_closure",
    "genus_side_partition",
    "class_side_partition",
    "has_essential_shift",
    "classify_shift",
    "compile_builtin",
    "BUILTIN_NAMES",
    "table_to_json",
    "table_from_json",
    "descriptor_to_json",
    "descriptor_from_json",
    "report_to_json",
    "result_to_json",
    "verdict_to_json",
]


@dataclass(frozen=True)
class Genus:
    """Total genus: zero, a finite positive count, or infinite."""

    kind: str
    g: int = 0

    def __post_init__(self) -> None:
        if self.kind not in ("zero", "finite", "infinite"):
            raise ValueError(f"unknown genus kind {self.kind!r}")
        if self.kind == "finite":
            if self.g < 1:
                raise ValueError("finite genus must be >= 1")
        elif self.g != 0:
            raise ValueError(f"genus {self.kind!r} takes no count")

    @classmethod
    def zero(cls) -> "Genus":
        return cls("zero")

    @classmethod
    def finite(cls, g: int) -> "Genus":
        return cls("finite", g)

    @classmethod
    def infinite(cls) -> "Genus":
        return cls("infinite")

    def render(self) -> str:
        return f"finite:{self.g}" if self.kind == "finite" else self.kind

    @classmethod
    def parse(cls, text: str) -> "Genus":
        if text in ("zero", "infinite"):
            return cls(text)
        if text.startswith("finite:"):
            try:
                return cls("finite", int(text.split(":", 1)[1]))
            except ValueError:
                pass
        raise ValueError(f"cannot parse genus {text!r}")


@dataclass(frozen=True)
class Cardinality:
    """How many ends a class has: finite n, countably infinite (discrete,
    including one isolated end per piece), or a Cantor set."""

    kind: str
    n: int = 0

    def __post_init__(self) -> None:
        if self.kind not in ("finite", "countable", "cantor"):
            raise ValueError(f"unknown cardinality kind {self.kind!r}")
        if self.kind == "finite":
            if self.n < 1:
                raise ValueError("finite cardinality must be >= 1")
        elif self.n != 0:
            raise ValueError(f"cardinality {self.kind!r} takes no count")

    @classmethod
    def finite(cls, n: int) -> "Cardinality":
        return cls("finite", n)

    @classmethod
    def countable(cls) -> "Cardinality":
        return cls("countable")

    @classmethod
    def cantor(cls) -> "Cardinality":
        return cls("cantor")

    def render(self) -> str:
        return f"finite:{self.n}" if self.kind == "finite" else self.kind

    @classmethod
    def parse(cls, text: str) -> "Cardinality":
        if text in ("countable", "cantor"):
            return cls(text)
        if text.startswith("finite:"):
            try:
                return cls("finite", int(text.split(":", 1)[1]))
            except ValueError:
                pass
        raise ValueError(f"cannot parse cardinality {text!r}")


_PRESENCE_LEVELS = ("present", "maximal")


@dataclass(frozen=True)
class EndClass:
    """One equivalence class of ends and where it lives.

    `presence` maps piece name to "present" (the class appears but is not
    the piece maximum) or "maximal" (it is); absent pieces are omitted.
    `accumulates_to` lists the classes this one accumulates on directly.
    """

    id: str
    card: Cardinality
    nonplanar: bool
    presence: tuple[tuple[str, str], ...]
    accumulates_to: frozenset[str] = frozenset()

    def __post_init__(self) -> None:
        pieces = [p for p, _ in self.presence]
        if len(pieces) != len(set(pieces)):
            raise ValueError(f"class {self.id!r} lists a piece twice")
        if list(self.presence) != sorted(self.presence):
            raise ValueError(f"class {self.id!r} presence must be sorted by piece")
        for piece, level in self.presence:
            if level not in _PRESENCE_LEVELS:
                raise ValueError(
                    f"class {self.id!r} has presence level {level!r} in {piece!r}"
                )

    @classmethod
    def make(
        cls,
        id: str,
        card: Cardinality,
        nonplanar: bool,
        presence: Mapping[str, str],
        accumulates_to: Iterable[str] = (),
    ) -> "EndClass":
        return cls(
            id,
            card,
            nonplanar,
            tuple(sorted(presence.items())),
            frozenset(accumulates_to),
        )

    def presence_in(self, piece: str) -> str:
        for p, level in self.presence:
            if p == piece:
                return level
        return "absent"

    def pieces_at(self, *levels: str) -> tuple[str, ...]:
        return tuple(p for p, level in self.presence if level in levels)


@dataclass(frozen=True)
class EndClassTable:
    """Pieces, total genus, and the end classes living on them."""

    pieces: tuple[str, ...]
    genus: Genus
    classes: tuple[EndClass, ...]

    def class_by_id(self, class_id: str) -> EndClass:
        for c in self.classes:
            if c.id == class_id:
                return c
        raise ValueError(f"unknown class {class_id!r}")

    def has_class(self, class_id: str) -> bool:
        return any(c.id == class_id for c in self.classes)

    def maximal_classes_of(self, piece: str) -> tuple[EndClass, ...]:
        return tuple(c for c in self.classes if c.presence_in(piece) == "maximal")


@dataclass(frozen=True)
class Violation:
    rule: str
    detail: str


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations


def validate_table(table: EndClassTable) -> ValidationReport:
    """Check the structural invariants of a table and report every failure."""
    out: list[Violation] = []

    def bad(rule: str, detail: str) -> None:
        out.append(Violation(rule, detail))

    if len(table.pieces) != len(set(table.pieces)):
        bad("duplicate-piece", f"pieces listed twice in {table.pieces!r}")
    ids = [c.id for c in table.classes]
    if len(ids) != len(set(ids)):
        bad("duplicate-class", f"class ids listed twice in {ids!r}")
    known_pieces = set(table.pieces)
    known_ids = set(ids)

    for c in table.classes:
        for piece, _ in c.presence:
            if piece not in known_pieces:
                bad("unknown-piece", f"class {c.id!r} appears in unknown piece {piece!r}")
        if not c.presence:
            bad("empty-presence", f"class {c.id!r} appears in no piece")
        for target in sorted(c.accumulates_to):
            if target not in known_ids:
                bad(
                    "unknown-accumulation-target",
                    f"class {c.id!r} accumulates to unknown class {target!r}",
                )

    for piece in table.pieces:
        maxima = [c.id for c in table.classes if c.presence_in(piece) == "maximal"]
        if len(maxima) != 1:
            bad(
                "maximal-count",
                f"piece {piece!r} must have exactly one maximal class, has {maxima!r}",
            )

    for c in table.classes:
        if c.pieces_at("maximal") and c.card.kind == "finite":
            bad(
                "maximal-cardinality",
                f"class {c.id!r} is a piece maximum but has finite cardinality; "
                "isolated maxima are recorded as countable (one end per piece)",
            )

    # presence below the maximum forces accumulation up to it
    closure_ok = not out
    if closure_ok:
        for c in table.classes:
            closure = accumulation_closure(table, c.id)
            for piece in c.pieces_at("present"):
                maxima = table.maximal_classes_of(piece)
                if maxima and maxima[0].id not in closure:
                    bad(
                        "presence-needs-accumulation",
                        f"class {c.id!r} is present in {piece!r} but does not "
                        f"accumulate to its maximum {maxima[0].id!r}",
                    )

    for c in table.classes:
        if not c.nonplanar:
            continue
        for target in sorted(c.accumulates_to):
            if target in known_ids and not table.class_by_id(target).nonplanar:
                bad(
                    "nonplanar-accumulation",
                    f"nonplanar class {c.id!r} accumulates to planar {target!r}",
                )

    any_nonplanar = any(c.nonplanar for c in table.classes)
    if any_nonplanar and table.genus.kind != "infinite":
        bad(
            "genus-consistency",
            f"nonplanar classes need infinite genus, table declares {table.genus.render()}",
        )
    if table.genus.kind == "infinite" and not any_nonplanar:
        bad("genus-consistency", "infinite genus needs at least one nonplanar class")

    return ValidationReport(tuple(out))


def _require_valid(table: EndClassTable) -> None:
    report = validate_table(table)
    if not report.ok:
        summary = "; ".join(f"{v.rule}: {v.detail}" for v in report.violations)
        raise ValueError(f"invalid table: {summary}")


def accumulation_closure(table: EndClassTable, class_id: str) -> frozenset[str]:
    """Every class reachable from `class_id` along accumulates_to edges
    (one or more steps; contains the class itself only on a cycle)."""
    start = table.class_by_id(class_id)
    seen: set[str] = set()
    frontier = [t for t in start.accumulates_to if table.has_class(t)]
    while frontier:
        cur = frontier.pop()
        if cur in seen:
            continue
        seen.add(cur)
        frontier.extend(
            t for t in table.class_by_id(cur).accumulates_to if table.has_class(t)
        )
    return frozenset(seen)


# ---------------------------------------------------------------------------
# piece graphs and side partitions


def _edges(
    table: EndClassTable,
    class_ids: Optional[frozenset[str]],
    nonplanar_only: bool,
    include_cantor: bool,
) -> set[frozenset]:
    """Edges between pieces that can trade ends of an eligible class."""
    out: set[frozenset] = set()
    for c in table.classes:
        if nonplanar_only and not c.nonplanar:
            continue
        if class_ids is not None and c.id not in class_ids:
            continue
        shared = c.pieces_at("present")
        for i, a in enumerate(shared):
            for b in shared[i + 1 :]:
                out.add(frozenset((a, b)))
        if include_cantor and c.card.kind == "cantor":
            anywhere = c.pieces_at("present", "maximal")
            for i, a in enumerate(anywhere):
                for b in anywhere[i + 1 :]:
                    out.add(frozenset((a, b)))
    return out


def _component(start: str, pieces: Sequence[str], edges: set[frozenset]) -> frozenset[str]:
    seen = {start}
    frontier = [start]
    while frontier:
        cur = frontier.pop()
        for other in pieces:
            if other not in seen and frozenset((cur, other)) in edges:
                seen.add(other)
                frontier.append(other)
    return frozenset(seen)


def _check_pieces(table: EndClassTable, px: str, py: str) -> None:
    for p in (px, py):
        if p not in table.pieces:
            raise ValueError(f"unknown piece {p!r}")
    if px == py:
        raise ValueError("the two exit pieces must differ")


def _side_partition(
    table: EndClassTable,
    px: str,
    py: str,
    class_ids: Optional[frozenset[str]],
    nonplanar_only: bool,
    include_cantor: bool,
) -> Optional[tuple[frozenset[str], frozenset[str]]]:
    edges = _edges(table, class_ids, nonplanar_only, include_cantor)
    side_x = _component(px, table.pieces, edges)
    if py in side_x:
        return None
    side_y = frozenset(p for p in table.pieces if p not in side_x)

    def carries(side: frozenset[str]) -> bool:
        for c in table.classes:
            if nonplanar_only and not c.nonplanar:
                continue
            if class_ids is not None and c.id not in class_ids:
                continue
            if any(p in side for p in c.pieces_at("present", "maximal")):
                return True
        return False

    if carries(side_x) and carries(side_y):
        return (side_x, side_y)
    return None


def genus_side_partition(
    table: EndClassTable, px: str, py: str
) -> Optional[tuple[frozenset[str], frozenset[str]]]:
    """Split the pieces so no nonplanar ends can cross between the sides.

    Returns (X, Y) with px in X and py in Y, X the set of pieces the
    nonplanar trading graph connects to px and Y the rest, or None when
    py is reachable or either side carries no nonplanar ends.
    """
    _check_pieces(table, px, py)
    return _side_partition(table, px, py, None, True, True)


def class_side_partition(
    table: EndClassTable, class_id: str, px: str, py: str
) -> Optional[tuple[frozenset[str], frozenset[str]]]:
    """Split the pieces so the accumulation set of `class_id` cannot cross.

    Only countable (discrete) classes can separate: finite classes
    cannot absorb a shifted orbit and cantor classes are never fixed
    pointwise, so both give None.  Otherwise the graph is restricted to
    the accumulation closure of the class and both sides must meet that
    closure.
    """
    _check_pieces(table, px, py)
    cls = table.class_by_id(class_id)
    if cls.card.kind != "countable":
        return None
    closure = accumulation_closure(table, class_id)
    if not closure:
        return None
    return _side_partition(table, px, py, closure, False, True)


@dataclass(frozen=True)
class EssentialWitness:
    """Which mode produced a two-sided split and between which anchors."""

    mode: str
    class_id: Optional[str]
    anchor_x: str
    anchor_y: str
    side_x: tuple[str, ...]
    side_y: tuple[str, ...]

    def __post_init__(self) -> None:
        if self.mode not in ("genus", "class"):
            raise ValueError(f"unknown witness mode {self.mode!r}")
        if (self.mode == "class") != (self.class_id is not None):
            raise ValueError("class witnesses and only class witnesses carry a class id")


@dataclass(frozen=True)
class EssentialResult:
    two_sided: bool
    witness: Optional[EssentialWitness]
    notes: tuple[str, ...] = ()


_CANTOR_NOTE = (
    "verdict relies on the rule that a cantor class met by both pieces always "
    "lets ends cross; without it a two-sided split would exist"
)


def _search_witness(table: EndClassTable, include_cantor: bool) -> Optional[EssentialWitness]:
    pairs = [
        (px, py)
        for i, px in enumerate(table.pieces)
        for py in table.pieces[i + 1 :]
    ]
    for px, py in pairs:
        part = _side_partition(table, px, py, None, True, include_cantor)
        if part:
            return EssentialWitness("genus", None, px, py, tuple(sorted(part[0])), tuple(sorted(part[1])))
    for c in table.classes:
        if c.card.kind != "countable":
            continue
        closure = accumulation_closure(table, c.id)
        if not closure:
            continue
        for px, py in pairs:
            part = _side_partition(table, px, py, closure, False, include_cantor)
            if part:
                return EssentialWitness("class", c.id, px, py, tuple(sorted(part[0])), tuple(sorted(part[1])))
    return None


def has_essential_shift(table: EndClassTable) -> EssentialResult:
    """Whether some pair of pieces admits a two-sided split, in either mode.

    The witness records the first split found, scanning pieces in
    declared order, genus mode before class modes.  When the answer is no
    only because shared cantor classes glue the pieces together, a note
    says so.
    """
    _require_valid(table)
    witness = _search_witness(table, include_cantor=True)
    if witness is not None:
        return EssentialResult(True, witness)
    notes: tuple[str, ...] = ()
    if _search_witness(table, include_cantor=False) is not None:
        notes = (_CANTOR_NOTE,)
    return EssentialResult(False, None, notes)


# ---------------------------------------------------------------------------
# classifying a described shift


@dataclass(frozen=True)
class EndRef:
    """An end named by the piece it lies in and its class."""

    piece: str
    class_id: str


@dataclass(frozen=True)
class ShiftDescriptor:
    """A standard shift described by its two exit ends and the content of
    one translation block: the block's genus and the end classes that are
    block-maximal, each with multiplicity "one" or "cantor"."""

    x: EndRef
    y: EndRef
    block_genus: Genus
    block_maximal_classes: tuple[tuple[str, str], ...] = ()

    def __post_init__(self) -> None:
        if self.x.piece == self.y.piece:
            raise ValueError("the shift's exit ends must lie in different pieces")
        for class_id, mult in self.block_maximal_classes:
            if mult not in ("one", "cantor"):
                raise ValueError(f"multiplicity must be one or cantor, got {mult!r}")


@dataclass(frozen=True)
class ShiftVerdict:
    essential: bool
    reasons: tuple[EssentialWitness, ...]
    notes: tuple[str, ...] = ()


def _check_descriptor(table: EndClassTable, desc: ShiftDescriptor) -> None:
    for ref in (desc.x, desc.y):
        if ref.piece not in table.pieces:
            raise ValueError(f"descriptor names unknown piece {ref.piece!r}")
        if not table.has_class(ref.class_id):
            raise ValueError(f"descriptor names unknown class {ref.class_id!r}")
        if table.class_by_id(ref.class_id).presence_in(ref.piece) == "absent":
            raise ValueError(
                f"descriptor puts class {ref.class_id!r} in piece {ref.piece!r} "
                "where the table says it is absent"
            )
    for class_id, _ in desc.block_maximal_classes:
        if not table.has_class(class_id):
            raise ValueError(f"descriptor names unknown block class {class_id!r}")


def _classify_reasons(
    table: EndClassTable, desc: ShiftDescriptor, include_cantor: bool
) -> list[EssentialWitness]:
    px, py = desc.x.piece, desc.y.piece
    reasons: list[EssentialWitness] = []

    if desc.block_genus.kind == "finite":
        x_cls = table.class_by_id(desc.x.class_id)
        y_cls = table.class_by_id(desc.y.class_id)
        if x_cls.nonplanar and y_cls.nonplanar:
            part = _side_partition(table, px, py, None, True, include_cantor)
            if part:
                reasons.append(
                    EssentialWitness(
                        "genus", None, px, py, tuple(sorted(part[0])), tuple(sorted(part[1]))
                    )
                )

    for class_id, mult in desc.block_maximal_classes:
        if mult != "one":
            continue  # cantor-multiplicity block maxima never separate
        cls = table.class_by_id(class_id)
        if cls.card.kind != "countable":
            continue
        closure = accumulation_closure(table, class_id)
        if not closure:
            continue
        if desc.x.class_id not in closure or desc.y.class_id not in closure:
            continue
        part = _side_partition(table, px, py, closure, False, include_cantor)
        if part:
            reasons.append(
                EssentialWitness(
                    "class", class_id, px, py, tuple(sorted(part[0])), tuple(sorted(part[1]))
                )
            )
    return reasons


def classify_shift(table: EndClassTable, desc: ShiftDescriptor) -> ShiftVerdict:
    """Decide whether the described shift is essential.

    Fires the genus reason when the blocks carry finite positive genus,
    both exit ends are nonplanar, and the exit pieces split two-sidedly
    for genus; fires a class reason for each block-maximal class of
    multiplicity one whose accumulation set contains both exit ends and
    splits the exit pieces two-sidedly.  Any reason makes the shift
    essential.
    """
    _require_valid(table)
    _check_descriptor(table, desc)
    reasons = _classify_reasons(table, desc, include_cantor=True)
    if reasons:
        return ShiftVerdict(True, tuple(reasons))
    notes: tuple[str, ...] = ()
    if _classify_reasons(table, desc, include_cantor=False):
        notes = (_CANTOR_NOTE,)
    return ShiftVerdict(False, (), notes)


# ---------------------------------------------------------------------------
# built-in tables

BUILTIN_NAMES = (
    "shark_tank",
    "jacobs_ladder",
    "loch_ness",
    "cantor_tree",
    "blooming_cantor_tree",
    "spider",
)


def compile_builtin(name: str) -> EndClassTable:
    """A named reference table; see BUILTIN_NAMES for the choices."""
    if name == "shark_tank":
        # a strip of punctures accumulating to one limit end per side
        table = EndClassTable(
            pieces=("A", "B"),
            genus=Genus.zero(),
            classes=(
                EndClass.make(
                    "limits",
                    Cardinality.countable(),
                    False,
                    {"A": "maximal", "B": "maximal"},
                ),
                EndClass.make(
                    "punctures",
                    Cardinality.countable(),
                    False,
                    {"A": "present", "B": "present"},
                    ("limits",),
                ),
            ),
        )
    elif name == "jacobs_ladder":
        # two ends, each accumulated by genus
        table = EndClassTable(
            pieces=("A", "B"),
            genus=Genus.infinite(),
            classes=(
                EndClass.make(
                    "ladder_ends",
                    Cardinality.countable(),
                    True,
                    {"A": "maximal", "B": "maximal"},
                ),
            ),
        )
    elif name == "loch_ness":
        # one end accumulated by genus: no second piece to shift between
        table = EndClassTable(
            pieces=("A",),
            genus=Genus.infinite(),
            classes=(
                EndClass.make(
                    "monster_end",
                    Cardinality.countable(),
                    True,
                    {"A": "maximal"},
                ),
            ),
        )
    elif name == "cantor_tree":
        # planar surface with a Cantor set of ends, split into two halves
        table = EndClassTable(
            pieces=("A", "B"),
            genus=Genus.zero(),
            classes=(
                EndClass.make(
                    "cantor_ends",
                    Cardinality.cantor(),
                    False,
                    {"A": "maximal", "B": "maximal"},
                    ("cantor_ends",),
                ),
            ),
        )
    elif name == "blooming_cantor_tree":
        # a Cantor set of ends, every one accumulated by genus
        table = EndClassTable(
            pieces=("A", "B"),
            genus=Genus.infinite(),
            classes=(
                EndClass.make(
                    "blooming_ends",
                    Cardinality.cantor(),
                    True,
                    {"A": "maximal", "B": "maximal"},
                    ("blooming_ends",),
                ),
            ),
        )
    elif name == "spider":
        # a cantor body with crawling handle ends and discrete decoration;
        # everything glues through the shared cantor maximum
        table = EndClassTable(
            pieces=("A", "B"),
            genus=Genus.infinite(),
            classes=(
                EndClass.make(
                    "web",
                    Cardinality.cantor(),
                    True,
                    {"A": "maximal", "B": "maximal"},
                    ("web",),
                ),
                EndClass.make(
                    "crawlers",
                    Cardinality.countable(),
                    True,
                    {"A": "present", "B": "present"},
                    ("web",),
                ),
                EndClass.make(
                    "flies",
                    Cardinality.countable(),
                    False,
                    {"A": "present", "B": "present"},
                    ("crawlers", "web"),
                ),
                EndClass.make(
                    "legs",
                    Cardinality.countable(),
                    False,
                    {"A": "present"},
                    ("web",),
                ),
            ),
        )
    else:
        raise ValueError(f"unknown builtin table {name!r}; choose from {BUILTIN_NAMES}")
    report = validate_table(table)
    assert report.ok, report
    return table


# ---------------------------------------------------------------------------
# serialization


def table_to_json(table: EndClassTable) -> dict:
    return {
        "pieces": list(table.pieces),
        "genus": table.genus.render(),
        "classes": [
            {
                "id": c.id,
                "cardinality": c.card.render(),
                "nonplanar": c.nonplanar,
                "presence": {p: level for p, level in c.presence},
                "accumulates_to": sorted(c.accumulates_to),
            }
            for c in table.classes
        ],
    }


def table_from_json(doc: object) -> EndClassTable:
    if not isinstance(doc, dict):
        raise ValueError("expected a table object")
    required = {"pieces", "genus", "classes"}
    if set(doc) != required:
        raise ValueError(f"table object must have exactly the fields {sorted(required)}")
    pieces = doc["pieces"]
    if not isinstance(pieces, list) or not all(isinstance(p, str) for p in pieces):
        raise ValueError('"pieces" must be a list of strings')
    if not isinstance(doc["genus"], str):
        raise ValueError('"genus" must be a string')
    genus = Genus.parse(doc["genus"])
    classes = []
    if not isinstance(doc["classes"], list):
        raise ValueError('"classes" must be a list')
    for entry in doc["classes"]:
        if not isinstance(entry, dict):
            raise ValueError("each class must be an object")
        allowed = {"id", "cardinality", "nonplanar", "presence", "accumulates_to"}
        if set(entry) - allowed:
            raise ValueError(f"unknown class fields: {sorted(set(entry) - allowed)}")
        for fieldname in ("id", "cardinality", "presence"):
            if fieldname not in entry:
                raise ValueError(f'class is missing "{fieldname}"')
        if not isinstance(entry["id"], str) or not isinstance(entry["cardinality"], str):
            raise ValueError('"id" and "cardinality" must be strings')
        presence_doc = entry["presence"]
        if not isinstance(presence_doc, dict) or not all(
            isinstance(k, str) and isinstance(v, str) for k, v in presence_doc.items()
        ):
            raise ValueError('"presence" must map piece names to levels')
        presence = {p: v for p, v in presence_doc.items() if v != "absent"}
        for p, v in presence.items():
            if v not in _PRESENCE_LEVELS:
                raise ValueError(f"unknown presence level {v!r} for piece {p!r}")
        accu = entry.get("accumulates_to", [])
        if not isinstance(accu, list) or not all(isinstance(t, str) for t in accu):
            raise ValueError('"accumulates_to" must be a list of class ids')
        nonplanar = entry.get("nonplanar", False)
        if not isinstance(nonplanar, bool):
            raise ValueError('"nonplanar" must be a boolean')
        classes.append(
            EndClass.make(
                entry["id"],
                Cardinality.parse(entry["cardinality"]),
                nonplanar,
                presence,
                accu,
            )
        )
    return EndClassTable(tuple(pieces), genus, tuple(classes))


def descriptor_to_json(desc: ShiftDescriptor) -> dict:
    return {
        "x": {"piece": desc.x.piece, "class": desc.x.class_id},
        "y": {"piece": desc.y.piece, "class": desc.y.class_id},
        "block_genus": desc.block_genus.render(),
        "block_maximal_classes": [
            {"class": class_id, "multiplicity": mult}
            for class_id, mult in desc.block_maximal_classes
        ],
    }


def descriptor_from_json(doc: object) -> ShiftDescriptor:
    if not isinstance(doc, dict):
        raise ValueError("expected a shift descriptor object")
    allowed = {"x", "y", "block_genus", "block_maximal_classes"}
    if set(doc) - allowed or not {"x", "y", "block_genus"} <= set(doc):
        raise ValueError(
            'descriptor must have "x", "y", "block_genus" and optionally '
            '"block_maximal_classes"'
        )

    def ref(side: str) -> EndRef:
        entry = doc[side]
        if (
            not isinstance(entry, dict)
            or set(entry) != {"piece", "class"}
            or not all(isinstance(v, str) for v in entry.values())
        ):
            raise ValueError(f'"{side}" must be an object with "piece" and "class"')
        return EndRef(entry["piece"], entry["class"])

    if not isinstance(doc["block_genus"], str):
        raise ValueError('"block_genus" must be a string')
    blocks = []
    for entry in doc.get("block_maximal_classes", []):
        if (
            not isinstance(entry, dict)
            or set(entry) != {"class", "multiplicity"}
            or not all(isinstance(v, str) for v in entry.values())
        ):
            raise ValueError(
                'each block maximal class must be {"class": ..., "multiplicity": ...}'
            )
        blocks.append((entry["class"], entry["multiplicity"]))
    return ShiftDescriptor(ref("x"), ref("y"), Genus.parse(doc["block_genus"]), tuple(blocks))


def report_to_json(report: ValidationReport) -> dict:
    return {
        "ok": report.ok,
        "violations": [{"rule": v.rule, "detail": v.detail} for v in report.violations],
    }


def _witness_to_json(witness: Optional[EssentialWitness]) -> Optional[dict]:
    if witness is None:
        return None
    return {
        "mode": witness.mode,
        "class": witness.class_id,
        "anchor_x": witness.anchor_x,
        "anchor_y": witness.anchor_y,
        "side_x": list(witness.side_x),
        "side_y": list(witness.side_y),
    }


def result_to_json(result: EssentialResult) -> dict:
    return {
        "has_essential_shift": result.two_sided,
        "witness": _witness_to_json(result.witness),
        "notes": list(result.notes),
    }


def verdict_to_json(verdict: ShiftVerdict) -> dict:
    return {
        "essential": verdict.essential,
        "reasons": [_witness_to_json(w) for w in verdict.reasons],
        "notes": list(verdict.notes),
    }
