"""Command-line front end: word generation, prefix-normality checks, normal
forms, abelian complexity, density reports, jumbled indexing, and plot data.

Exit codes: 0 success or positive verdict, 1 semantic negative (violation
found, or a query miss under --strict), 2 usage error, 3 I/O or format error.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from . import analysis, generators, jumbled_index
from .errors import IndexFormatError, ResourceLimitError
from .generators import SlopeSpec, WordStream
from .word_core import FiniteWord, compute_profile

#: Analysis windows default to this multiple of the requested output length,
#: so printed normal-form positions sit inside the trusted quarter-window.
WINDOW_FACTOR = 4

_BUILTIN_NAMES = (
    "fibonacci",
    "thue-morse",
    "paperfolding",
    "champernowne",
    "mechanical",
    "flipext-omega",
    "lazy-flipext-omega",
    "density-staircase",
)


class UsageError(Exception):
    """Raised for bad parameter combinations; mapped to exit code 2."""


def _parse_fraction(text: str) -> Fraction:
    try:
        if "/" in text:
            num, den = text.split("/", 1)
            return Fraction(int(num), int(den))
        return Fraction(int(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"cannot parse rational {text!r}") from exc


def _parse_slope(text: str) -> SlopeSpec:
    try:
        return SlopeSpec.parse(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _parse_range(text: str, upper_default: int) -> tuple[int, int]:
    if text is None:
        return 1, upper_default
    try:
        lo_text, hi_text = text.split("..", 1)
        lo, hi = int(lo_text), int(hi_text)
    except ValueError as exc:
        raise UsageError(f"cannot parse range {text!r}; expected A..B") from exc
    if lo < 1 or hi < lo:
        raise UsageError(f"empty or invalid range {text!r}")
    return lo, hi


def _add_source_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("builtin", nargs="?", choices=_BUILTIN_NAMES, help="builtin word name")
    parser.add_argument("--word", help="literal bitstring source")
    parser.add_argument("--file", type=Path, help="read the word from a file")
    parser.add_argument("-n", "--length", type=int, help="prefix length to materialize")
    parser.add_argument("--slope", help='slope: "p/q" or "(a+b*sqrt(d))/c"')
    parser.add_argument("--intercept", default="0", help='intercept "p/q" (rational slopes only)')
    direction = parser.add_mutually_exclusive_group()
    direction.add_argument("--upper", action="store_true", help="upper mechanical word")
    direction.add_argument("--lower", action="store_true", help="lower mechanical word (default)")
    parser.add_argument("--seed", help="seed word for the extension operators")
    parser.add_argument("--alpha", help="rational density target for density-staircase")
    parser.add_argument("--a1", help="first density of the staircase sequence")


def _builtin_stream(args: argparse.Namespace) -> WordStream:
    name = args.builtin
    if name == "fibonacci":
        return generators.fibonacci_stream()
    if name == "thue-morse":
        return generators.thue_morse_stream()
    if name == "paperfolding":
        return generators.paperfolding_stream()
    if name == "champernowne":
        return generators.champernowne_stream()
    if name == "mechanical":
        if not args.slope:
            raise UsageError("mechanical requires --slope")
        slope = _parse_slope(args.slope)
        intercept = _parse_fraction(args.intercept)
        return generators.mechanical_stream(slope, intercept, upper=bool(args.upper))
    if name == "flipext-omega":
        if not args.seed:
            raise UsageError("flipext-omega requires --seed")
        return generators.flipext_stream(FiniteWord(args.seed))
    if name == "lazy-flipext-omega":
        if not args.slope:
            raise UsageError("lazy-flipext-omega requires --slope")
        seed = FiniteWord(args.seed or "1")
        return generators.lazy_alpha_flipext_stream(seed, _parse_slope(args.slope))
    if name == "density-staircase":
        if not args.alpha:
            raise UsageError("density-staircase requires --alpha")
        alpha = _parse_fraction(args.alpha)
        a1 = _parse_fraction(args.a1) if args.a1 else None
        return generators.aperiodic_density_stream(
            alpha, generators.geometric_density_sequence(alpha, a1)
        )
    raise UsageError(f"unknown builtin {name!r}")


def _resolve_word(args: argparse.Namespace, default_length: int | None = None) -> FiniteWord:
    """Materialize the single word source (builtin, literal, or file)."""
    sources = [s for s in (args.builtin, args.word, args.file) if s is not None]
    if len(sources) != 1:
        raise UsageError("exactly one of BUILTIN, --word, or --file is required")
    if args.word is not None or args.file is not None:
        if args.file is not None:
            text = args.file.read_text().splitlines()
            literal = text[0].strip() if text else ""
        else:
            literal = args.word
        word = FiniteWord(literal)
        if args.length is not None:
            if args.length > len(word):
                raise UsageError(f"requested length {args.length} exceeds word length {len(word)}")
            word = word[: args.length]
        return word
    length = args.length if args.length is not None else default_length
    if length is None:
        raise UsageError("builtin sources require -n/--length")
    return _builtin_stream(args).prefix(length)


def _apply_prepend(word: FiniteWord, count: int | None) -> FiniteWord:
    if not count:
        return word
    if count < 0:
        raise UsageError("--prepend-ones must be non-negative")
    return FiniteWord.ones(count) + word


def _emit(args: argparse.Namespace, text: str) -> None:
    if getattr(args, "output", None):
        args.output.write_text(text + "\n")
    else:
        print(text)


# -- subcommands ---------------------------------------------------------------


def _cmd_generate(args: argparse.Namespace) -> int:
    _emit(args, str(_resolve_word(args)))
    return 0


def _cmd_check(args: argparse.Namespace) -> int:
    word = _apply_prepend(_resolve_word(args), args.prepend_ones)
    finder = analysis.find_violation_0 if args.zero else analysis.find_violation_1
    violation = finder(word)
    if violation is None:
        _emit(args, "NORMAL")
        return 0
    _emit(args, violation.render())
    return 1


def _profile_for_output(args: argparse.Namespace, word: FiniteWord):
    """Profile over a widened analysis window, truncated to the output length.

    Builtin sources are materialized ``WINDOW_FACTOR`` times longer than the
    printed length (overridable via --window) so every printed position lies
    in the trusted quarter of the window; literal words are their own window.
    """
    out_len = len(word)
    if args.builtin is not None:
        window = max(args.window or WINDOW_FACTOR * args.length, args.length)
        wide = _apply_prepend(
            _builtin_stream(args).prefix(window), getattr(args, "prepend_ones", None)
        )
    else:
        wide = word
    reliable = analysis.reliable_pnf_window(len(wide))
    return compute_profile(wide).truncated(out_len), reliable


def _cmd_pnf(args: argparse.Namespace) -> int:
    word = _apply_prepend(_resolve_word(args), args.prepend_ones)
    profile, reliable = _profile_for_output(args, word)
    _emit(args, f"{analysis.pnf1(profile)}\n{analysis.pnf0(profile)}")
    if reliable < profile.length:
        note = f"positions beyond {reliable} may change with a longer analysis window"
    else:
        note = f"all {profile.length} positions lie within the reliable window"
    print(f"note: {note}", file=sys.stderr)
    return 0


def _cmd_abelian(args: argparse.Namespace) -> int:
    word = _resolve_word(args)
    profile = compute_profile(word)
    lo, hi = _parse_range(args.range, len(word))
    if hi > len(word):
        raise UsageError(f"range end {hi} exceeds word length {len(word)}")
    lines = [f"{n}\t{analysis.abelian_complexity(profile, n)}" for n in range(lo, hi + 1)]
    _emit(args, "\n".join(lines))
    return 0


def _cmd_density(args: argparse.Namespace) -> int:
    if args.period is not None:
        if args.word is not None or args.builtin is not None or args.file is not None:
            raise UsageError("--period cannot be combined with another word source")
        pre_text, _, per_text = args.period.partition(",")
        up = analysis.UltimatelyPeriodicWord(FiniteWord(pre_text), FiniteWord(per_text))
        delta = analysis.min_density_up(up)
        _emit(args, f"{delta.numerator}/{delta.denominator}")
        return 0
    word = _resolve_word(args)
    report = analysis.min_density(word)
    _emit(args, f"{report.delta.numerator}/{report.delta.denominator} {report.iota} {report.kappa}")
    return 0


def _cmd_index(args: argparse.Namespace) -> int:
    if args.action == "build":
        word = _resolve_word(args)
        blob = jumbled_index.serialize(jumbled_index.build_index(word))
        args.index_file.write_bytes(blob)
        return 0
    index = jumbled_index.deserialize(args.index_file.read_bytes())
    if args.queries is not None:
        lines = args.queries.read_text().splitlines()
    else:
        lines = sys.stdin.read().splitlines()
    answers = []
    misses = False
    for line in lines:
        if not line.strip():
            continue
        try:
            zeros_text, ones_text = line.split()
            zeros, ones = int(zeros_text), int(ones_text)
        except ValueError as exc:
            raise UsageError(f"cannot parse query line {line!r}; expected 'ZEROS ONES'") from exc
        hit = index.query(zeros, ones)
        misses = misses or not hit
        answers.append("yes" if hit else "no")
    _emit(args, "\n".join(answers))
    return 1 if args.strict and misses else 0


def _cmd_plotdata(args: argparse.Namespace) -> int:
    word = _resolve_word(args)
    sums = word.prefix_sums()
    rows = []
    if args.pnf:
        profile, _ = _profile_for_output(args, word)
        p1 = analysis.pnf1(profile).prefix_sums()
        p0 = analysis.pnf0(profile).prefix_sums()
        for n in range(len(word) + 1):
            rows.append(
                f"{n}\t{2 * int(sums[n]) - n}\t{2 * int(p1[n]) - n}\t{2 * int(p0[n]) - n}"
            )
    else:
        for n in range(len(word) + 1):
            rows.append(f"{n}\t{2 * int(sums[n]) - n}")
    _emit(args, "\n".join(rows))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pnw",
        description="Generate, check, and index binary words with respect to prefix normality.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="print a word prefix")
    _add_source_arguments(p)
    p.add_argument("-o", "--output", type=Path)
    p.set_defaults(func=_cmd_generate)

    p = sub.add_parser("check", help="test prefix normality")
    _add_source_arguments(p)
    p.add_argument("--zero", action="store_true", help="check the 0-flavour instead")
    p.add_argument("--prepend-ones", type=int, metavar="K", help="prepend K ones first")
    p.add_argument("-o", "--output", type=Path)
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("pnf", help="print both prefix normal forms")
    _add_source_arguments(p)
    p.add_argument("--prepend-ones", type=int, metavar="K")
    p.add_argument("--window", type=int, help="analysis window length (builtins only)")
    p.add_argument("-o", "--output", type=Path)
    p.set_defaults(func=_cmd_pnf)

    p = sub.add_parser("abelian", help="tabulate abelian complexity")
    _add_source_arguments(p)
    p.add_argument("--range", help="lengths to report, as A..B")
    p.add_argument("-o", "--output", type=Path)
    p.set_defaults(func=_cmd_abelian)

    p = sub.add_parser("density", help="minimum density report")
    _add_source_arguments(p)
    p.add_argument("--period", metavar="U,X", help="ultimately periodic word U followed by X repeated")
    p.add_argument("-o", "--output", type=Path)
    p.set_defaults(func=_cmd_density)

    p = sub.add_parser("index", help="build or query a jumbled-matching index")
    index_sub = p.add_subparsers(dest="action", required=True)
    b = index_sub.add_parser("build", help="serialize an index to a file")
    _add_source_arguments(b)
    b.add_argument("-o", "--index-file", type=Path, required=True)
    b.set_defaults(func=_cmd_index, action="build")
    q = index_sub.add_parser("query", help="answer 'ZEROS ONES' queries")
    q.add_argument("index_file", type=Path)
    q.add_argument("--queries", type=Path, help="file of query pairs (default: stdin)")
    q.add_argument("--strict", action="store_true", help="exit 1 when any answer is 'no'")
    q.add_argument("-o", "--output", type=Path)
    q.set_defaults(func=_cmd_index, action="query")

    p = sub.add_parser("plotdata", help="emit staircase plot rows (ones minus zeros)")
    _add_source_arguments(p)
    p.add_argument("--pnf", action="store_true", help="add normal-form columns")
    p.add_argument("--window", type=int, help="analysis window length for the normal forms")
    p.add_argument("-o", "--output", type=Path)
    p.set_defaults(func=_cmd_plotdata)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (OSError, IndexFormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except ResourceLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, IndexError) as exc:
        # library precondition failures surface as usage errors
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
