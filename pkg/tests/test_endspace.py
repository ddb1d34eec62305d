import itertools

import pytest
from hypothesis import assume, given, settings, strategies as st

from bigmcg.endspace import (
    BUILTIN_NAMES,
    Cardinality,
    EndClass,
    EndClassTable,
    EndRef,
    EssentialResult,
    Genus,
    ShiftDescriptor,
    accumulation_closure,
    class_side_partition,
    classify_shift,
    compile_builtin,
    descriptor_from_json,
    descriptor_to_json,
    genus_side_partition,
    has_essential_shift,
    report_to_json,
    result_to_json,
    table_from_json,
    table_to_json,
    validate_table,
    verdict_to_json,
)

from strategies import tables


def table_of(pieces, genus, classes):
    return EndClassTable(tuple(pieces), genus, tuple(classes))


def check_partition(table, part, px, py, eligible_ids, planar_ok):
    """Independent recheck of a returned side partition: anchors split,
    sides cover the pieces, no eligible class can trade ends across, and
    both sides actually hold eligible ends."""
    side_x, side_y = part
    assert px in side_x and py in side_y
    assert side_x | side_y == set(table.pieces)
    assert not (side_x & side_y)
    for c in table.classes:
        if not planar_ok and not c.nonplanar:
            continue
        if eligible_ids is not None and c.id not in eligible_ids:
            continue
        shared = set(c.pieces_at("present"))
        if c.card.kind == "cantor":
            shared = set(c.pieces_at("present", "maximal"))
        assert not (shared & side_x and shared & side_y), (c.id, part)
    for side in (side_x, side_y):
        hosts = [
            c
            for c in table.classes
            if (planar_ok or c.nonplanar)
            and (eligible_ids is None or c.id in eligible_ids)
            and any(p in side for p in c.pieces_at("present", "maximal"))
        ]
        assert hosts, (side, eligible_ids)


# ---------------------------------------------------------------------------
# accumulation closures


def test_closure_single_step():
    t = compile_builtin("shark_tank")
    assert accumulation_closure(t, "punctures") == frozenset({"limits"})
    assert accumulation_closure(t, "limits") == frozenset()


def test_closure_chained():
    t = compile_builtin("spider")
    assert accumulation_closure(t, "flies") == frozenset({"crawlers", "web"})
    assert accumulation_closure(t, "legs") == frozenset({"web"})


def test_closure_self_cycle():
    t = compile_builtin("cantor_tree")
    assert accumulation_closure(t, "cantor_ends") == frozenset({"cantor_ends"})


# ---------------------------------------------------------------------------
# validation


def test_builtins_validate():
    for name in BUILTIN_NAMES:
        report = validate_table(compile_builtin(name))
        assert report.ok, (name, report)


def test_two_maxima_in_one_piece():
    t = table_of(
        ["A"],
        Genus.zero(),
        [
            EndClass.make("m1", Cardinality.countable(), False, {"A": "maximal"}),
            EndClass.make("m2", Cardinality.countable(), False, {"A": "maximal"}),
        ],
    )
    assert "maximal-count" in {v.rule for v in validate_table(t).violations}


def test_piece_without_maximum():
    t = table_of(
        ["A", "B"],
        Genus.zero(),
        [EndClass.make("m", Cardinality.countable(), False, {"A": "maximal"})],
    )
    assert "maximal-count" in {v.rule for v in validate_table(t).violations}


def test_finite_maximum_rejected():
    t = table_of(
        ["A"],
        Genus.zero(),
        [EndClass.make("m", Cardinality.finite(1), False, {"A": "maximal"})],
    )
    assert "maximal-cardinality" in {v.rule for v in validate_table(t).violations}


def test_nonplanar_into_planar_rejected():
    t = table_of(
        ["A"],
        Genus.infinite(),
        [
            EndClass.make("m", Cardinality.countable(), False, {"A": "maximal"}),
            EndClass.make(
                "h", Cardinality.countable(), True, {"A": "present"}, ("m",)
            ),
        ],
    )
    assert "nonplanar-accumulation" in {v.rule for v in validate_table(t).violations}


def test_genus_consistency_both_ways():
    planar = table_of(
        ["A"],
        Genus.infinite(),
        [EndClass.make("m", Cardinality.countable(), False, {"A": "maximal"})],
    )
    assert "genus-consistency" in {v.rule for v in validate_table(planar).violations}
    handled = table_of(
        ["A"],
        Genus.zero(),
        [EndClass.make("m", Cardinality.countable(), True, {"A": "maximal"})],
    )
    assert "genus-consistency" in {v.rule for v in validate_table(handled).violations}


def test_unknown_references():
    t = table_of(
        ["A"],
        Genus.zero(),
        [
            EndClass.make("m", Cardinality.countable(), False, {"A": "maximal"}),
            EndClass.make(
                "c", Cardinality.countable(), False, {"A": "present", "Z": "present"},
                ("m", "ghost"),
            ),
        ],
    )
    rules = {v.rule for v in validate_table(t).violations}
    assert "unknown-piece" in rules
    assert "unknown-accumulation-target" in rules


def test_presence_needs_accumulation():
    t = table_of(
        ["A"],
        Genus.zero(),
        [
            EndClass.make("m", Cardinality.countable(), False, {"A": "maximal"}),
            EndClass.make("stray", Cardinality.countable(), False, {"A": "present"}),
        ],
    )
    assert "presence-needs-accumulation" in {v.rule for v in validate_table(t).violations}


def test_invalid_table_refused_by_search():
    t = table_of(
        ["A"],
        Genus.zero(),
        [EndClass.make("m", Cardinality.finite(1), False, {"A": "maximal"})],
    )
    with pytest.raises(ValueError, match="maximal-cardinality"):
        has_essential_shift(t)


# ---------------------------------------------------------------------------
# side partitions on the reference tables


def test_shark_tank_partitions():
    t = compile_builtin("shark_tank")
    assert genus_side_partition(t, "A", "B") is None
    part = class_side_partition(t, "punctures", "A", "B")
    assert part == (frozenset({"A"}), frozenset({"B"}))
    assert class_side_partition(t, "limits", "A", "B") is None


def test_jacobs_ladder_partition():
    t = compile_builtin("jacobs_ladder")
    assert genus_side_partition(t, "A", "B") == (frozenset({"A"}), frozenset({"B"}))


def test_cantor_tree_partitions():
    t = compile_builtin("cantor_tree")
    assert genus_side_partition(t, "A", "B") is None
    assert class_side_partition(t, "cantor_ends", "A", "B") is None


def test_blooming_partition_blocked_by_cantor_rule():
    t = compile_builtin("blooming_cantor_tree")
    assert genus_side_partition(t, "A", "B") is None


def test_partition_argument_errors():
    t = compile_builtin("shark_tank")
    with pytest.raises(ValueError):
        genus_side_partition(t, "A", "Z")
    with pytest.raises(ValueError):
        genus_side_partition(t, "A", "A")
    with pytest.raises(ValueError):
        class_side_partition(t, "ghost", "A", "B")


# ---------------------------------------------------------------------------
# the existence search


EXPECTED_VERDICTS = {
    "shark_tank": True,
    "jacobs_ladder": True,
    "loch_ness": False,
    "cantor_tree": False,
    "blooming_cantor_tree": False,
    "spider": False,
}


@pytest.mark.parametrize("name", BUILTIN_NAMES)
def test_builtin_verdicts(name):
    res = has_essential_shift(compile_builtin(name))
    assert isinstance(res, EssentialResult)
    assert res.two_sided == EXPECTED_VERDICTS[name]
    assert (res.witness is not None) == res.two_sided


def test_shark_tank_witness_details():
    res = has_essential_shift(compile_builtin("shark_tank"))
    w = res.witness
    assert w.mode == "class"
    assert w.class_id == "punctures"
    assert {w.anchor_x, w.anchor_y} == {"A", "B"}
    assert (set(w.side_x), set(w.side_y)) == ({"A"}, {"B"})


def test_jacobs_ladder_witness_details():
    res = has_essential_shift(compile_builtin("jacobs_ladder"))
    w = res.witness
    assert w.mode == "genus"
    assert w.class_id is None
    assert (set(w.side_x), set(w.side_y)) == ({"A"}, {"B"})


def test_cantor_rule_notes():
    assert has_essential_shift(compile_builtin("blooming_cantor_tree")).notes
    assert has_essential_shift(compile_builtin("spider")).notes
    assert not has_essential_shift(compile_builtin("cantor_tree")).notes
    assert not has_essential_shift(compile_builtin("loch_ness")).notes


# ---------------------------------------------------------------------------
# classifying described shifts


def test_classify_shark_tank_by_block_puncture():
    t = compile_builtin("shark_tank")
    desc = ShiftDescriptor(
        EndRef("A", "limits"),
        EndRef("B", "limits"),
        Genus.zero(),
        (("punctures", "one"),),
    )
    verdict = classify_shift(t, desc)
    assert verdict.essential
    assert verdict.reasons[0].mode == "class"
    assert verdict.reasons[0].class_id == "punctures"


def test_classify_cantor_multiplicity_never_fires():
    t = compile_builtin("shark_tank")
    desc = ShiftDescriptor(
        EndRef("A", "limits"),
        EndRef("B", "limits"),
        Genus.zero(),
        (("punctures", "cantor"),),
    )
    assert not classify_shift(t, desc).essential


def test_classify_jacobs_ladder_by_genus():
    t = compile_builtin("jacobs_ladder")
    desc = ShiftDescriptor(
        EndRef("A", "ladder_ends"), EndRef("B", "ladder_ends"), Genus.finite(1)
    )
    verdict = classify_shift(t, desc)
    assert verdict.essential
    assert verdict.reasons[0].mode == "genus"
    plain = ShiftDescriptor(
        EndRef("A", "ladder_ends"), EndRef("B", "ladder_ends"), Genus.zero()
    )
    assert not classify_shift(t, plain).essential


def test_classify_spider_notes_cantor_rule():
    t = compile_builtin("spider")
    desc = ShiftDescriptor(
        EndRef("A", "web"),
        EndRef("B", "web"),
        Genus.zero(),
        (("crawlers", "one"),),
    )
    verdict = classify_shift(t, desc)
    assert not verdict.essential
    assert verdict.notes


def test_classify_descriptor_errors():
    t = compile_builtin("spider")
    with pytest.raises(ValueError):
        ShiftDescriptor(EndRef("A", "web"), EndRef("A", "web"), Genus.zero())
    with pytest.raises(ValueError):
        classify_shift(t, ShiftDescriptor(EndRef("A", "web"), EndRef("Z", "web"), Genus.zero()))
    with pytest.raises(ValueError):
        classify_shift(
            t, ShiftDescriptor(EndRef("A", "web"), EndRef("B", "ghost"), Genus.zero())
        )
    with pytest.raises(ValueError):
        # legs never reach piece B
        classify_shift(
            t, ShiftDescriptor(EndRef("A", "web"), EndRef("B", "legs"), Genus.zero())
        )
    with pytest.raises(ValueError):
        classify_shift(
            t,
            ShiftDescriptor(
                EndRef("A", "web"), EndRef("B", "web"), Genus.zero(), (("ghost", "one"),)
            ),
        )


# ---------------------------------------------------------------------------
# properties over generated tables


@given(tables())
def test_generated_tables_validate(table):
    assert validate_table(table).ok


@given(tables())
def test_genus_partitions_are_sound(table):
    for px, py in itertools.permutations(table.pieces, 2):
        part = genus_side_partition(table, px, py)
        if part is not None:
            check_partition(table, part, px, py, None, planar_ok=False)


@given(tables())
def test_class_partitions_are_sound(table):
    for c in table.classes:
        closure = accumulation_closure(table, c.id)
        for px, py in itertools.permutations(table.pieces, 2):
            part = class_side_partition(table, c.id, px, py)
            if part is None:
                continue
            assert c.card.kind == "countable"
            check_partition(table, part, px, py, closure, planar_ok=True)


@given(tables())
def test_noncountable_classes_never_partition(table):
    blocked = [c for c in table.classes if c.card.kind != "countable"]
    for c in blocked:
        for px, py in itertools.permutations(table.pieces, 2):
            assert class_side_partition(table, c.id, px, py) is None


@given(tables(max_pieces=2))
def test_two_piece_partitions_swap(table):
    assume(len(table.pieces) == 2)
    a, b = table.pieces
    fwd = genus_side_partition(table, a, b)
    rev = genus_side_partition(table, b, a)
    assert (fwd is None) == (rev is None)
    if fwd is not None:
        assert rev == (fwd[1], fwd[0])
    for c in table.classes:
        fwd = class_side_partition(table, c.id, a, b)
        rev = class_side_partition(table, c.id, b, a)
        assert (fwd is None) == (rev is None)
        if fwd is not None:
            assert rev == (fwd[1], fwd[0])


@given(tables(), st.randoms(use_true_random=False))
def test_extra_shared_class_cannot_create_partitions(table, rng):
    """Gluing two pieces with a new shared class only removes partitions."""
    hosts = [
        p
        for p in table.pieces
        if any(c.nonplanar and c.presence_in(p) == "maximal" for c in table.classes)
    ]
    assume(len(hosts) >= 2)
    chosen = rng.sample(hosts, 2)
    maxima = {
        table.maximal_classes_of(p)[0].id for p in chosen
    }
    glue = EndClass.make(
        "GLUE",
        Cardinality.countable(),
        True,
        {p: "present" for p in chosen},
        maxima,
    )
    bigger = EndClassTable(table.pieces, table.genus, table.classes + (glue,))
    assert validate_table(bigger).ok
    for px, py in itertools.permutations(table.pieces, 2):
        if genus_side_partition(bigger, px, py) is not None:
            assert genus_side_partition(table, px, py) is not None


def all_descriptors(table):
    refs = [
        EndRef(p, c.id)
        for p in table.pieces
        for c in table.classes
        if c.presence_in(p) != "absent"
    ]
    blocks = [(Genus.finite(1), ())]
    blocks += [
        (Genus.zero(), ((c.id, "one"),))
        for c in table.classes
        if c.card.kind == "countable"
    ]
    for x, y in itertools.permutations(refs, 2):
        if x.piece == y.piece:
            continue
        for genus, maxima in blocks:
            yield ShiftDescriptor(x, y, genus, maxima)


@settings(max_examples=40)
@given(tables())
def test_search_agrees_with_exhaustive_classification(table):
    found = any(classify_shift(table, d).essential for d in all_descriptors(table))
    assert found == has_essential_shift(table).two_sided


# ---------------------------------------------------------------------------
# serialization


@given(tables())
def test_table_json_round_trip(table):
    assert table_from_json(table_to_json(table)) == table


def test_builtin_json_round_trip():
    for name in BUILTIN_NAMES:
        t = compile_builtin(name)
        assert table_from_json(table_to_json(t)) == t


def test_descriptor_json_round_trip():
    desc = ShiftDescriptor(
        EndRef("A", "limits"),
        EndRef("B", "limits"),
        Genus.finite(2),
        (("punctures", "one"), ("limits", "cantor")),
    )
    assert descriptor_from_json(descriptor_to_json(desc)) == desc


def test_result_and_verdict_json_shapes():
    t = compile_builtin("shark_tank")
    res = result_to_json(has_essential_shift(t))
    assert res["has_essential_shift"] is True
    assert res["witness"]["class"] == "punctures"
    verdict = verdict_to_json(
        classify_shift(
            t,
            ShiftDescriptor(
                EndRef("A", "limits"), EndRef("B", "limits"), Genus.zero(),
                (("punctures", "one"),),
            ),
        )
    )
    assert verdict["essential"] is True
    report = report_to_json(validate_table(t))
    assert report == {"ok": True, "violations": []}


def test_table_json_rejects_malformed():
    with pytest.raises(ValueError):
        table_from_json([])
    with pytest.raises(ValueError):
        table_from_json({"pieces": ["A"], "genus": "zero"})
    with pytest.raises(ValueError):
        table_from_json(
            {
                "pieces": ["A"],
                "genus": "sideways",
                "classes": [],
            }
        )
    with pytest.raises(ValueError):
        table_from_json(
            {
                "pieces": ["A"],
                "genus": "zero",
                "classes": [
                    {
                        "id": "m",
                        "cardinality": "countable",
                        "nonplanar": False,
                        "presence": {"A": "sideways"},
                        "accumulates_to": [],
                    }
                ],
            }
        )
