"""Executable acceptance checks for the package's headline guarantees.

Each check is deterministic given a seed, reports a one-line detail, and
carries a wall-clock budget in seconds.  `run_all` powers both the
acceptance test module and the `repro all` CLI command.
"""

from __future__ import annotations

import os
import time
from dataclasses import dataclass
from random import Random
from typing import Callable, Optional

from . import endspace, gf2hom, qinf, shark

__all__ = ["CheckResult", "CheckSpec", "CHECKS", "default_seed", "run_check", "run_all"]


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str
    seconds: float
    budget: float


@dataclass(frozen=True)
class CheckSpec:
    name: str
    budget: float
    fn: Callable[[int], str]


class CheckFailure(Exception):
    pass


def default_seed() -> int:
    try:
        return int(os.environ.get("SEED", "0"))
    except ValueError:
        return 0


def _expect(ok: bool, message: str) -> None:
    if not ok:
        raise CheckFailure(message)


# ---------------------------------------------------------------------------
# samplers


def _random_seq(rng: Random, max_pos: int = 32) -> qinf.BinarySeq:
    size = rng.randint(0, 8)
    return qinf.BinarySeq.from_indices(rng.sample(range(1, max_pos + 1), size))


def _random_letter(rng: Random, half_width: int = 3) -> shark.EndPerm:
    if rng.random() < 0.5:
        return shark.shift_power(rng.choice((1, -1)))
    neg = list(range(-half_width, 1))
    pos = list(range(1, half_width + 1))
    rng.shuffle(neg)
    rng.shuffle(pos)
    values = neg + pos
    return shark.EndPerm.make(
        0, {i: v for i, v in zip(range(-half_width, half_width + 1), values)}
    )


def _random_word_element(rng: Random, max_letters: int = 8) -> shark.EndPerm:
    acc = shark.identity()
    for _ in range(rng.randint(0, max_letters)):
        acc = shark.compose(_random_letter(rng), acc)
    return acc


def _random_invertible_rows(rng: Random, n: int) -> list[int]:
    while True:
        rows = [rng.randrange(1, 1 << n) for _ in range(n)]
        if len(gf2hom.rref_rows(rows)) == n:
            return rows


def _random_graded_aut(rng: Random, span: int = 4, max_offset: int = 3) -> gf2hom.GradedAut:
    d = 2
    if rng.random() < 0.15:
        return gf2hom.graded_shift(rng.randint(-max_offset, max_offset), d)
    lo = rng.randint(-span, span)
    hi = rng.randint(lo, span)
    n = (hi - lo + 1) * d
    offset = rng.randint(-max_offset, max_offset)
    return gf2hom.GradedAut.from_rows(d, offset, lo, _random_invertible_rows(rng, n))


# ---------------------------------------------------------------------------
# the checks


def _check_zn_isometry(seed: int) -> str:
    rng = Random(f"{seed}:zn")
    pairs_per_dim = 1000
    for n in range(1, 6):
        primes = qinf.first_odd_primes(n)
        for _ in range(pairs_per_dim):
            u = [rng.randint(-20, 20) for _ in range(n)]
            v = [rng.randint(-20, 20) for _ in range(n)]
            want = sum(abs(a - b) for a, b in zip(u, v))
            got = qinf.l1_distance(qinf.zn_embed(primes, u), qinf.zn_embed(primes, v))
            _expect(got == want, f"dim {n}: embedded distance {got} != {want} for {u}, {v}")
    return f"{5 * pairs_per_dim} random pairs in dimensions 1..5, distances exact"


def _check_crossing_length_function(seed: int) -> str:
    rng = Random(f"{seed}:lenfn")
    trials = 10_000
    for _ in range(trials):
        g = _random_word_element(rng)
        h = _random_word_element(rng)
        ng, nh = shark.crossing_norm(g), shark.crossing_norm(h)
        _expect(
            shark.crossing_norm(shark.inverse(g)) == ng,
            f"norm not symmetric on {g}",
        )
        ngh = shark.crossing_norm(shark.compose(g, h))
        _expect(
            ngh <= ng + nh,
            f"triangle fails: |gh|={ngh} > {ng}+{nh}",
        )
    return f"{trials} random pairs from <=8 letters: symmetry and triangle exact"


def _phi_pairs(seed: int, count: int) -> list[tuple[qinf.BinarySeq, qinf.BinarySeq]]:
    rng = Random(f"{seed}:phi-pairs")
    return [(_random_seq(rng), _random_seq(rng)) for _ in range(count)]


def _check_phi_distance_identity(seed: int) -> str:
    pairs = _phi_pairs(seed, 1000)
    for a, b in pairs:
        diff = shark.compose(shark.inverse(shark.phi(b)), shark.phi(a))
        got = shark.crossing_norm(diff)
        want = qinf.l1_distance(a, b)
        _expect(got == want, f"crossing norm {got} != l1 distance {want} for {a}, {b}")
    return f"{len(pairs)} random sequence pairs: crossing norm equals l1 distance"


def _check_witness_sandwich(seed: int) -> str:
    pairs = _phi_pairs(seed, 1000)
    for a, b in pairs:
        diff = shark.compose(shark.inverse(shark.phi(b)), shark.phi(a))
        word = shark.witness_factorization(diff)
        _expect(word.replay() == diff, f"witness does not replay to the element for {a}, {b}")
        bound = qinf.l1_distance(a, b) + 3
        _expect(
            word.cost <= bound,
            f"witness cost {word.cost} > distance+3 = {bound} for {a}, {b}",
        )
    return f"{len(pairs)} random pairs: witness replays exactly, cost <= distance + 3"


def _check_oracle_lower_bound(seed: int) -> str:
    ball = shark.word_ball(2, 4)
    for element, length in ball.items():
        _expect(
            shark.crossing_norm(element) <= length,
            f"crossing norm exceeds word length {length} on {element}",
        )
    unit = ball.get(shark.shift_power(1))
    _expect(unit == 1, f"unit shift should have word length 1, got {unit}")
    return f"exhaustive ball: {len(ball)} elements within 4 letters, norm <= word length"


def _check_shift_homology_norm(seed: int) -> str:
    d = 2
    for n in range(1, 11):
        aut = gf2hom.graded_shift(n, d)
        lo, hi = gf2hom.minimal_hull(aut)
        values = [
            gf2hom.homology_norm(aut, hull=h)
            for h in ((lo, hi), (lo - 2, hi + 1), (lo - 5, hi + 4))
        ]
        _expect(
            values == [2 * n] * 3,
            f"norm of block shift {n} should be {2 * n} on every hull, got {values}",
        )
    return "block shifts 1..10 at block dim 2: norm 2n on three hull sizes"


def _check_homology_length_function(seed: int) -> str:
    rng = Random(f"{seed}:homlen")
    trials = 1000
    for _ in range(trials):
        g = _random_graded_aut(rng)
        h = _random_graded_aut(rng)
        ng, nh = gf2hom.homology_norm(g), gf2hom.homology_norm(h)
        _expect(
            gf2hom.homology_norm(g.inverse()) == ng,
            f"homology norm not symmetric on {g}",
        )
        ngh = gf2hom.homology_norm(g.compose(h))
        _expect(ngh <= ng + nh, f"triangle fails: {ngh} > {ng}+{nh}")
    return f"{trials} random automorphism pairs, windows in [-4,4]: symmetry and triangle exact"


def _check_classifier_goldens(seed: int) -> str:
    expected = {
        "shark_tank": True,
        "jacobs_ladder": True,
        "loch_ness": False,
        "cantor_tree": False,
        "blooming_cantor_tree": False,
        "spider": False,
    }
    for name, want in expected.items():
        table = endspace.compile_builtin(name)
        got = endspace.has_essential_shift(table)
        _expect(
            got.two_sided == want,
            f"{name}: has_essential_shift = {got.two_sided}, expected {want}",
        )
    shark_verdict = endspace.classify_shift(
        endspace.compile_builtin("shark_tank"),
        endspace.ShiftDescriptor(
            endspace.EndRef("A", "limits"),
            endspace.EndRef("B", "limits"),
            endspace.Genus.zero(),
            (("punctures", "one"),),
        ),
    )
    _expect(
        shark_verdict.essential and shark_verdict.reasons[0].mode == "class",
        "shark_tank standard shift should be essential through its puncture class",
    )
    ladder_verdict = endspace.classify_shift(
        endspace.compile_builtin("jacobs_ladder"),
        endspace.ShiftDescriptor(
            endspace.EndRef("A", "ladder_ends"),
            endspace.EndRef("B", "ladder_ends"),
            endspace.Genus.finite(1),
        ),
    )
    _expect(
        ladder_verdict.essential and ladder_verdict.reasons[0].mode == "genus",
        "jacobs_ladder standard shift should be essential through genus",
    )
    spider_verdict = endspace.classify_shift(
        endspace.compile_builtin("spider"),
        endspace.ShiftDescriptor(
            endspace.EndRef("A", "web"),
            endspace.EndRef("B", "web"),
            endspace.Genus.zero(),
            (("web", "cantor"),),
        ),
    )
    _expect(
        not spider_verdict.essential,
        "spider shift with a cantor-multiplicity block maximum should not be essential",
    )
    return "six builtin tables and three described shifts match the expected verdicts"


def _check_phi_support_law(seed: int) -> str:
    rng = Random(f"{seed}:support")
    trials = 1000
    for _ in range(trials):
        a = _random_seq(rng)
        got = shark.positive_images_of_nonpositives(shark.phi(a))
        _expect(
            got == a.ones,
            f"positive images of non-positives {got} != support {a.ones}",
        )
    return f"{trials} random sequences: punctures land exactly on the support"


CHECKS: tuple[CheckSpec, ...] = (
    CheckSpec("zn_isometry", 5.0, _check_zn_isometry),
    CheckSpec("crossing_length_function", 10.0, _check_crossing_length_function),
    CheckSpec("phi_distance_identity", 10.0, _check_phi_distance_identity),
    CheckSpec("witness_sandwich", 10.0, _check_witness_sandwich),
    CheckSpec("oracle_lower_bound", 60.0, _check_oracle_lower_bound),
    CheckSpec("shift_homology_norm", 5.0, _check_shift_homology_norm),
    CheckSpec("homology_length_function", 30.0, _check_homology_length_function),
    CheckSpec("classifier_goldens", 1.0, _check_classifier_goldens),
    CheckSpec("phi_support_law", 5.0, _check_phi_support_law),
)


def run_check(name: str, seed: Optional[int] = None) -> CheckResult:
    seed = default_seed() if seed is None else seed
    spec = next((c for c in CHECKS if c.name == name), None)
    if spec is None:
        raise ValueError(f"unknown check {name!r}; choose from {[c.name for c in CHECKS]}")
    start = time.perf_counter()
    try:
        detail = spec.fn(seed)
        passed = True
    except CheckFailure as failure:
        detail = str(failure)
        passed = False
    elapsed = time.perf_counter() - start
    return CheckResult(spec.name, passed, detail, elapsed, spec.budget)


def run_all(seed: Optional[int] = None) -> list[CheckResult]:
    return [run_check(spec.name, seed) for spec in CHECKS]
