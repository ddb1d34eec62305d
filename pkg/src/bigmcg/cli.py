"""Command line front end.

Exit codes: 0 success, 1 validation or parse error, 2 oracle undecided.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from . import acceptance, endspace, gf2hom, qinf, shark

__all__ = ["run", "main"]

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_UNDECIDED = 2


class CliError(Exception):
    pass


def _parse_seq(text: str) -> qinf.BinarySeq:
    text = text.strip()
    if not text:
        return qinf.BinarySeq()
    try:
        positions = [int(part) for part in text.split(",")]
    except ValueError:
        raise CliError(f"cannot parse sequence {text!r}: use comma-separated positions")
    return qinf.BinarySeq.from_indices(positions)


def _parse_int_list(text: str, what: str) -> list[int]:
    text = text.strip()
    if not text:
        return []
    try:
        return [int(part) for part in text.split(",")]
    except ValueError:
        raise CliError(f"cannot parse {what} {text!r}: use comma-separated integers")


def _parse_hull(text: str) -> tuple[int, int]:
    parts = _parse_int_list(text, "hull")
    if len(parts) != 2:
        raise CliError(f"hull must be two integers lo,hi, got {text!r}")
    return (parts[0], parts[1])


def _load_json(path: str) -> object:
    try:
        with open(path) as handle:
            return json.load(handle)
    except OSError as err:
        raise CliError(f"cannot read {path}: {err}")
    except json.JSONDecodeError as err:
        raise CliError(f"{path} is not valid JSON: {err}")


def _emit(doc: object) -> None:
    print(json.dumps(doc, indent=2, ensure_ascii=False))


def _load_perm(args: argparse.Namespace) -> shark.EndPerm:
    if getattr(args, "perm", None):
        return shark.endperm_from_json(_load_json(args.perm))
    if getattr(args, "a", None) is not None and getattr(args, "b", None) is not None:
        a, b = _parse_seq(args.a), _parse_seq(args.b)
        return shark.compose(shark.inverse(shark.phi(b)), shark.phi(a))
    if getattr(args, "a", None) is not None:
        return shark.phi(_parse_seq(args.a))
    raise CliError("give either --perm FILE or --a SEQ [--b SEQ]")


def _cmd_qinf_dist(args: argparse.Namespace) -> int:
    a, b = _parse_seq(args.a), _parse_seq(args.b)
    value = qinf.l1_distance(a, b)
    if args.json:
        _emit({"distance": value})
    else:
        print(value)
    return EXIT_OK


def _cmd_qinf_embed(args: argparse.Namespace) -> int:
    point = _parse_int_list(args.point, "point") if args.point.strip() else []
    if args.primes is not None:
        primes = _parse_int_list(args.primes, "primes")
    else:
        primes = list(qinf.first_odd_primes(len(point)))
    seq = qinf.zn_embed(primes, point)
    if args.json:
        _emit(seq.to_json())
    else:
        print(",".join(str(i) for i in seq.ones))
    return EXIT_OK


def _cmd_shark_phi(args: argparse.Namespace) -> int:
    perm = shark.phi(_parse_seq(args.a))
    if args.json:
        _emit(shark.endperm_to_json(perm))
    else:
        print(shark.format_endperm(perm))
    return EXIT_OK


def _cmd_shark_norm(args: argparse.Namespace) -> int:
    perm = _load_perm(args)
    value = shark.crossing_norm(perm)
    if args.json:
        _emit({"crossing_norm": value})
    else:
        print(value)
    return EXIT_OK


def _cmd_shark_dist(args: argparse.Namespace) -> int:
    a, b = _parse_seq(args.a), _parse_seq(args.b)
    diff = shark.compose(shark.inverse(shark.phi(b)), shark.phi(a))
    norm = shark.crossing_norm(diff)
    word = shark.witness_factorization(diff)
    if args.json:
        _emit(
            {
                "crossing_norm": norm,
                "witness_cost": word.cost,
                "witness_bound": norm + 3,
            }
        )
    else:
        print(f"crossing norm: {norm}")
        print(f"witness cost: {word.cost} (bound {norm + 3})")
    return EXIT_OK


def _cmd_shark_witness(args: argparse.Namespace) -> int:
    perm = _load_perm(args)
    word = shark.witness_factorization(perm)
    if args.json:
        _emit(shark.genword_to_json(word))
    else:
        if not word.letters:
            print("empty word (identity)")
        for letter in word.letters:
            if isinstance(letter, shark.Shift):
                print(f"shift {letter.step:+d}")
            else:
                print("reshuffle:")
                for line in shark.format_endperm(letter.perm).splitlines():
                    print(f"  {line}")
    return EXIT_OK


def _cmd_shark_wordlen(args: argparse.Namespace) -> int:
    perm = _load_perm(args)
    length = shark.word_length_oracle(
        perm,
        args.support_bound,
        args.depth,
        alphabet_cap=args.alphabet_cap,
    )
    if length is None:
        if args.json:
            _emit({"word_length": None, "depth": args.depth})
        else:
            print(f"undecided: no word of length <= {args.depth} found")
        return EXIT_UNDECIDED
    if args.json:
        _emit({"word_length": length})
    else:
        print(length)
    return EXIT_OK


def _split_from_args(args: argparse.Namespace) -> gf2hom.SplitSpec:
    return gf2hom.SplitSpec(args.extra_minus, args.extra_plus)


def _cmd_hom_norm(args: argparse.Namespace) -> int:
    aut = gf2hom.gradedaut_from_json(_load_json(args.aut))
    hull = _parse_hull(args.hull) if args.hull else None
    value = gf2hom.homology_norm(aut, _split_from_args(args), hull)
    if args.json:
        _emit({"homology_norm": value})
    else:
        print(value)
    return EXIT_OK


def _cmd_hom_shiftnorm(args: argparse.Namespace) -> int:
    aut = gf2hom.graded_shift(args.n, args.block_dim)
    hull = _parse_hull(args.hull) if args.hull else None
    value = gf2hom.homology_norm(aut, _split_from_args(args), hull)
    if args.json:
        _emit({"homology_norm": value})
    else:
        print(value)
    return EXIT_OK


def _load_table(args: argparse.Namespace) -> endspace.EndClassTable:
    if getattr(args, "builtin", None):
        return endspace.compile_builtin(args.builtin)
    if getattr(args, "table", None):
        return endspace.table_from_json(_load_json(args.table))
    raise CliError("give either --table FILE or --builtin NAME")


def _cmd_ends_validate(args: argparse.Namespace) -> int:
    table = _load_table(args)
    report = endspace.validate_table(table)
    if args.json:
        _emit(endspace.report_to_json(report))
    elif report.ok:
        print("ok")
    else:
        for violation in report.violations:
            print(f"violation [{violation.rule}]: {violation.detail}")
    return EXIT_OK if report.ok else EXIT_ERROR


def _cmd_ends_essential(args: argparse.Namespace) -> int:
    table = _load_table(args)
    result = endspace.has_essential_shift(table)
    if args.json:
        _emit(endspace.result_to_json(result))
    else:
        print("yes" if result.two_sided else "no")
        if result.witness is not None:
            w = result.witness
            what = f"class {w.class_id}" if w.mode == "class" else "genus"
            print(
                f"witness: {what} split, X={{{', '.join(w.side_x)}}} "
                f"Y={{{', '.join(w.side_y)}}}"
            )
        for note in result.notes:
            print(f"note: {note}")
    return EXIT_OK


def _cmd_ends_classify(args: argparse.Namespace) -> int:
    table = _load_table(args)
    desc = endspace.descriptor_from_json(_load_json(args.shift))
    verdict = endspace.classify_shift(table, desc)
    if args.json:
        _emit(endspace.verdict_to_json(verdict))
    else:
        print("essential" if verdict.essential else "not essential")
        for w in verdict.reasons:
            what = f"class {w.class_id}" if w.mode == "class" else "genus"
            print(
                f"reason: {what} split, X={{{', '.join(w.side_x)}}} "
                f"Y={{{', '.join(w.side_y)}}}"
            )
        for note in verdict.notes:
            print(f"note: {note}")
    return EXIT_OK


def _cmd_ends_builtin(args: argparse.Namespace) -> int:
    table = endspace.compile_builtin(args.name)
    _emit(endspace.table_to_json(table))
    return EXIT_OK


def _cmd_repro_all(args: argparse.Namespace) -> int:
    names = args.check or [spec.name for spec in acceptance.CHECKS]
    results = [acceptance.run_check(name, args.seed) for name in names]
    if args.json:
        _emit(
            [
                {
                    "name": r.name,
                    "passed": r.passed,
                    "detail": r.detail,
                    "seconds": round(r.seconds, 3),
                }
                for r in results
            ]
        )
    else:
        width = max(len(r.name) for r in results)
        for r in results:
            mark = "PASS" if r.passed else "FAIL"
            print(f"[{mark}] {r.name:<{width}}  {r.seconds:6.2f}s  {r.detail}")
    return EXIT_OK if all(r.passed for r in results) else EXIT_ERROR


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bigmcg",
        description="length functions, embeddings, and shift classification on finite models",
    )
    top = parser.add_subparsers(dest="group", required=True)

    qinf_p = top.add_parser("qinf", help="binary sequence space").add_subparsers(
        dest="command", required=True
    )
    p = qinf_p.add_parser("dist", help="l1 distance between two sequences")
    p.add_argument("--a", required=True, help="comma-separated 1-positions, empty for zero")
    p.add_argument("--b", required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=_cmd_qinf_dist)
    p = qinf_p.add_parser("embed", help="embed an integer tuple along prime lines")
    p.add_argument("--point", required=True, help="comma-separated integers")
    p.add_argument("--primes", help="comma-separated odd primes (default: first odd primes)")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=_cmd_qinf_embed)

    shark_p = top.add_parser("shark", help="punctured strip model").add_subparsers(
        dest="command", required=True
    )
    p = shark_p.add_parser("phi", help="embed a sequence as a strip mapping class")
    p.add_argument("--a", required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=_cmd_shark_phi)
    p = shark_p.add_parser("norm", help="crossing norm of an element")
    p.add_argument("--perm", help="path to an EndPerm JSON file")
    p.add_argument("--a", help="sequence; uses phi(a), or the difference with --b")
    p.add_argument("--b")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=_cmd_shark_norm)
    p = shark_p.add_parser("dist", help="distance between two embedded sequences")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=_cmd_shark_dist)
    p = shark_p.add_parser("witness", help="explicit generator word for an element")
    p.add_argument("--perm")
    p.add_argument("--a")
    p.add_argument("--b")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=_cmd_shark_witness)
    p = shark_p.add_parser("wordlen", help="exact word length by bounded search")
    p.add_argument("--perm")
    p.add_argument("--a")
    p.add_argument("--b")
    p.add_argument("--support-bound", type=int, default=2, dest="support_bound")
    p.add_argument("--depth", type=int, default=4)
    p.add_argument("--alphabet-cap", type=int, default=shark.DEFAULT_ALPHABET_CAP)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=_cmd_shark_wordlen)

    hom_p = top.add_parser("hom", help="graded homology model").add_subparsers(
        dest="command", required=True
    )
    p = hom_p.add_parser("norm", help="homology norm of a graded automorphism")
    p.add_argument("--aut", required=True, help="path to a GradedAut JSON file")
    p.add_argument("--hull", help="evaluation hull lo,hi (default: minimal)")
    p.add_argument("--extra-minus", type=int, default=0, dest="extra_minus")
    p.add_argument("--extra-plus", type=int, default=0, dest="extra_plus")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=_cmd_hom_norm)
    p = hom_p.add_parser("shiftnorm", help="homology norm of a pure block shift")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--block-dim", type=int, default=2, dest="block_dim")
    p.add_argument("--hull")
    p.add_argument("--extra-minus", type=int, default=0, dest="extra_minus")
    p.add_argument("--extra-plus", type=int, default=0, dest="extra_plus")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=_cmd_hom_shiftnorm)

    ends_p = top.add_parser("ends", help="end-class tables").add_subparsers(
        dest="command", required=True
    )
    for name, fn, needs_shift in (
        ("validate", _cmd_ends_validate, False),
        ("essential", _cmd_ends_essential, False),
        ("classify", _cmd_ends_classify, True),
    ):
        p = ends_p.add_parser(name)
        p.add_argument("--table", help="path to a table JSON file")
        p.add_argument("--builtin", help="name of a builtin table")
        if needs_shift:
            p.add_argument("--shift", required=True, help="path to a shift descriptor JSON file")
        p.add_argument("--json", action="store_true")
        p.set_defaults(fn=fn)
    p = ends_p.add_parser("builtin", help="print a builtin table as JSON")
    p.add_argument("--name", required=True, choices=endspace.BUILTIN_NAMES)
    p.set_defaults(fn=_cmd_ends_builtin)

    repro_p = top.add_parser("repro", help="acceptance checks").add_subparsers(
        dest="command", required=True
    )
    p = repro_p.add_parser("all", help="run the acceptance checks and print a table")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument(
        "--check",
        action="append",
        choices=[spec.name for spec in acceptance.CHECKS],
        help="run only the named check (repeatable)",
    )
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=_cmd_repro_all)

    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exit_err:
        # argparse exits 2 on bad usage; fold that into the error code
        return EXIT_OK if exit_err.code == 0 else EXIT_ERROR
    try:
        return args.fn(args)
    except (CliError, ValueError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_ERROR


def main() -> None:
    sys.exit(run())
