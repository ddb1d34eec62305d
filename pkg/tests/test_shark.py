import pytest
from hypothesis import given, settings, strategies as st

from bigmcg.qinf import BinarySeq, l1_distance
from bigmcg.shark import (
    EndPerm,
    GenWord,
    Nu,
    Shift,
    compose,
    crossing_norm,
    endperm_from_json,
    endperm_to_json,
    format_endperm,
    frac_twist,
    genword_from_json,
    genword_to_json,
    identity,
    inverse,
    phi,
    positive_images_of_nonpositives,
    puncture_permutation,
    shift_power,
    side_preserving_alphabet,
    witness_factorization,
    word_ball,
    word_length_oracle,
    zero_stats,
)

from strategies import binary_seqs, end_perms, letters, side_perms


# ---------------------------------------------------------------------------
# the permutation algebra


def test_compose_example():
    c = compose(frac_twist(1, 2), shift_power(1))
    assert c.offset == 1
    assert (c(0), c(1), c(2), c(5)) == (2, 1, 3, 6)
    assert (c.lo, c.hi) == (0, 1)


def test_inverse_example():
    inv = inverse(frac_twist(1, 3))
    assert (inv(1), inv(2), inv(3)) == (3, 1, 2)


def test_shift_and_twist_basics():
    assert shift_power(0) == identity()
    assert frac_twist(2, 2) == identity()
    tw = frac_twist(-1, 2)
    assert (tw(-1), tw(0), tw(1), tw(2)) == (0, 1, 2, -1)


def test_make_canonicalizes():
    assert EndPerm.make(0, {5: 5}) == identity()
    assert EndPerm.make(2, {1: 3, 2: 4}) == shift_power(2)
    p = EndPerm.make(0, {1: 2, 2: 1, 3: 3})
    assert (p.lo, p.hi) == (1, 2)


def test_constructor_rejects_noncanonical():
    with pytest.raises(ValueError):
        EndPerm(offset=0, lo=1, images=(1, 3, 2))  # endpoint is translational
    with pytest.raises(ValueError):
        EndPerm(offset=0, lo=1, images=(3, 2))  # not onto the shifted window
    with pytest.raises(ValueError):
        EndPerm(offset=1, lo=3, images=())


@given(end_perms(), end_perms())
def test_compose_is_pointwise_composition(g, h):
    gh = compose(g, h)
    for i in range(-15, 16):
        assert gh(i) == g(h(i))


@given(end_perms(), end_perms(), end_perms())
def test_group_axioms(g, h, k):
    assert compose(compose(g, h), k) == compose(g, compose(h, k))
    assert compose(g, identity()) == g
    assert compose(identity(), g) == g
    assert compose(g, inverse(g)) == identity()
    assert compose(inverse(g), g) == identity()


@given(end_perms())
def test_inverse_is_pointwise_inverse(g):
    inv = inverse(g)
    for i in range(-15, 16):
        assert inv(g(i)) == i


# ---------------------------------------------------------------------------
# the crossing norm


def test_crossing_norm_examples():
    assert crossing_norm(identity()) == 0
    assert crossing_norm(shift_power(1)) == 1
    assert crossing_norm(shift_power(5)) == 5
    assert crossing_norm(shift_power(-5)) == 5


def crossing_by_scan(perm, span=40):
    """Independent oracle: count sign changes over a wide scan window."""
    count = 0
    for i in range(-span, span + 1):
        if (i <= 0) != (perm(i) <= 0):
            count += 1
    return count


@given(end_perms())
def test_crossing_norm_matches_scan(g):
    assert crossing_norm(g) == crossing_by_scan(g)


@given(end_perms(), end_perms())
def test_crossing_norm_is_length_function(g, h):
    assert crossing_norm(inverse(g)) == crossing_norm(g)
    assert crossing_norm(compose(g, h)) <= crossing_norm(g) + crossing_norm(h)


@given(side_perms())
def test_side_preserving_has_norm_zero(u):
    assert u.is_side_preserving()
    assert crossing_norm(u) == 0


@given(end_perms())
def test_offset_bounded_by_norm(g):
    assert abs(g.offset) <= crossing_norm(g)


@given(end_perms())
def test_norm_zero_iff_side_preserving(g):
    assert (crossing_norm(g) == 0) == g.is_side_preserving()


# ---------------------------------------------------------------------------
# sequence embedding


def test_zero_stats_examples():
    assert zero_stats(BinarySeq()) == (0, [])
    assert zero_stats(BinarySeq((3,))) == (2, [1, 2])
    assert zero_stats(BinarySeq((1, 2))) == (0, [])
    assert zero_stats(BinarySeq((2, 5))) == (3, [1, 3, 4])


@given(binary_seqs())
def test_zero_stats_counts_consistently(a):
    z, positions = zero_stats(a)
    assert len(positions) == z
    assert positions == sorted(positions)
    if a.ones:
        assert z == a.ones[-1] - a.weight
        assert all(0 < p < a.ones[-1] and p not in set(a.ones) for p in positions)


def test_puncture_permutation_examples():
    assert puncture_permutation(BinarySeq()) == identity()
    assert puncture_permutation(BinarySeq((1, 2))) == identity()
    pi = puncture_permutation(BinarySeq((3,)))
    assert (pi(1), pi(2), pi(3)) == (3, 1, 2)


@given(binary_seqs())
def test_puncture_permutation_restores_zero_slots(a):
    z, positions = zero_stats(a)
    pi = puncture_permutation(a)
    for i in range(1, z + 1):
        assert pi(a.weight + i) == positions[i - 1]


def test_phi_examples():
    assert phi(BinarySeq()) == identity()
    assert phi(BinarySeq((1,))) == shift_power(1)
    f = phi(BinarySeq((3,)))
    assert (f(-1), f(0), f(1), f(2), f(3)) == (0, 3, 1, 2, 4)


@given(binary_seqs())
def test_phi_support_law(a):
    assert positive_images_of_nonpositives(phi(a)) == a.ones


@given(binary_seqs())
def test_phi_norm_is_weight(a):
    f = phi(a)
    assert f.offset == a.weight
    assert crossing_norm(f) == a.weight


def test_distance_example():
    a, b = BinarySeq((2, 3, 5)), BinarySeq((2, 4))
    diff = compose(inverse(phi(b)), phi(a))
    assert l1_distance(a, b) == 3
    assert crossing_norm(diff) == 3


@given(binary_seqs(max_pos=32), binary_seqs(max_pos=32))
def test_phi_distance_identity(a, b):
    diff = compose(inverse(phi(b)), phi(a))
    assert crossing_norm(diff) == l1_distance(a, b)


# ---------------------------------------------------------------------------
# generator words and the witness


def test_letter_validation():
    with pytest.raises(ValueError):
        Nu(shift_power(1))
    with pytest.raises(ValueError):
        Nu(EndPerm.make(0, {0: 1, 1: 0}))  # crosses the cut
    with pytest.raises(ValueError):
        Shift(2)


def test_replay_order_is_left_to_right():
    word = GenWord((Shift(1), Nu(frac_twist(1, 2))))
    assert word.replay() == compose(frac_twist(1, 2), shift_power(1))


def test_witness_trivial_cases():
    assert witness_factorization(identity()).cost == 0
    w = witness_factorization(shift_power(1))
    assert w.replay() == shift_power(1)
    assert w.cost <= 4


def test_witness_example():
    a, b = BinarySeq((2, 3)), BinarySeq((4,))
    diff = compose(inverse(phi(b)), phi(a))
    word = witness_factorization(diff)
    assert word.replay() == diff
    assert word.cost <= l1_distance(a, b) + 3 == 6


@given(end_perms(max_letters=10))
def test_witness_soundness(g):
    word = witness_factorization(g)
    assert word.replay() == g
    assert word.cost <= crossing_norm(g) + 3


@given(binary_seqs(max_pos=32), binary_seqs(max_pos=32))
def test_witness_cost_bound_on_embedded_pairs(a, b):
    diff = compose(inverse(phi(b)), phi(a))
    word = witness_factorization(diff)
    assert word.replay() == diff
    assert word.cost <= l1_distance(a, b) + 3


# ---------------------------------------------------------------------------
# exact word lengths


def test_alphabet_size():
    assert len(side_preserving_alphabet(0)) == 0
    assert len(side_preserving_alphabet(1)) == 1
    # (W+1)! * W! - 1 non-identity reshuffles for W = 2
    assert len(side_preserving_alphabet(2)) == 11


def test_alphabet_cap():
    with pytest.raises(ValueError):
        word_length_oracle(identity(), 5, 2)
    assert word_length_oracle(identity(), 5, 2, alphabet_cap=10**6) == 0


def test_oracle_examples():
    assert word_length_oracle(identity(), 2, 3) == 0
    assert word_length_oracle(shift_power(1), 2, 3) == 1
    two_letter = compose(EndPerm.make(0, {-1: 0, 0: -1}), shift_power(1))
    assert word_length_oracle(two_letter, 2, 4) == 2


def test_oracle_shift_powers_are_exact():
    for k in range(5):
        assert word_length_oracle(shift_power(k), 2, 4) == k
        assert word_length_oracle(shift_power(-k), 2, 4) == k


def test_oracle_undecided():
    assert word_length_oracle(shift_power(9), 2, 4) is None


def test_oracle_sandwich_on_exhaustive_ball():
    ball = word_ball(2, 3)
    for element, length in ball.items():
        assert crossing_norm(element) <= length
    # every single generator sits at depth exactly 1
    for letter in side_preserving_alphabet(2):
        assert ball[letter] == 1
    assert ball[shift_power(1)] == 1
    assert ball[shift_power(-1)] == 1


def test_ball_is_closed_under_inverse():
    ball = word_ball(2, 3)
    for element, length in ball.items():
        assert ball[inverse(element)] == length


# ---------------------------------------------------------------------------
# serialization and rendering


@given(end_perms())
def test_endperm_json_round_trip(g):
    assert endperm_from_json(endperm_to_json(g)) == g


def test_endperm_json_canonicalizes():
    doc = {"offset": 1, "window": [0, 2], "images": {"0": 2, "1": 1, "2": 3}}
    perm = endperm_from_json(doc)
    assert (perm.lo, perm.hi) == (0, 1)
    assert endperm_to_json(perm)["window"] == [0, 1]


def test_endperm_json_rejects_malformed():
    with pytest.raises(ValueError):
        endperm_from_json({"offset": 0, "window": [0, 1]})
    with pytest.raises(ValueError):
        endperm_from_json({"offset": 0, "window": [0, 1], "images": {"0": 1, "1": 1}})
    with pytest.raises(ValueError):
        endperm_from_json({"offset": 0, "window": [0, 1], "images": {"0": 1}})
    with pytest.raises(ValueError):
        endperm_from_json({"offset": "1"})


@given(end_perms(max_letters=6))
def test_genword_json_round_trip(g):
    word = witness_factorization(g)
    assert genword_from_json(genword_to_json(word)) == word


def test_format_endperm():
    text = format_endperm(shift_power(2))
    assert "i -> i+2 elsewhere" in text
    text = format_endperm(frac_twist(1, 2))
    assert "1  2" in text and "2  1" in text
