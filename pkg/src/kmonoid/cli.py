"""Command line interface: ``kmonoid <command> ...``.

Exit codes: 0 success, 1 usage error, 2 square validation failure,
3 cube validation failure, 4 a precondition of the requested operation
failed.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Sequence

from . import fixtures, lattice
from .element import Element, ElementError, enumerate_below, factor, from_word, multiply, render_word
from .group import (compose, equal_in_group, inverse, parse_bijection, random_bijection,
                    render_bijection)
from .ideals import (alignment_probe, common_upper, is_maximal_code, is_prefix_code)
from .laws import element_laws, group_laws
from .presentation import Presentation, PresentationError, parse_presentation, validate
from .selfsim import (ActionError, GeneralizedElement, act_word, parse_action,
                      validate_selfsimilar, wfp_check, zappa_szep_laws, zs_multiply)

EXIT_OK, EXIT_USAGE, EXIT_SQUARES, EXIT_CUBES, EXIT_SEMANTIC = 0, 1, 2, 3, 4


class Failure(Exception):
    def __init__(self, code: int, lines: Sequence[str] = ()):
        super().__init__(code)
        self.code = code
        self.lines = list(lines)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


# -- helpers ----------------------------------------------------------------

def _cube_line(witness) -> str:
    f, g, h, *routes = witness
    a, b = routes[:3], routes[3:]
    diffs = [f"{x} vs {y}" for x, y in zip(a, b) if x != y]
    return (f"cube ({f}, {g}, {h}): (fg)h gives {' '.join(a)}, f(gh) gives {' '.join(b)}; "
            f"mismatch {', '.join(diffs)}")


def _report_lines(report) -> list[str]:
    out = []
    for kind, witness in report.failures:
        out.append(_cube_line(witness) if kind == "cube" else f"{kind}: {' '.join(witness)}")
    return out


def load_presentation(path: str, jobs: int = 1, check: bool = True) -> Presentation:
    try:
        p = parse_presentation(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise Failure(EXIT_USAGE, [f"cannot read {path}: {exc.strerror}"])
    except PresentationError as exc:
        raise Failure(EXIT_SQUARES, [f"{path}: {exc}"])
    if check:
        squares, cubes = validate(p, jobs)
        if not squares.ok:
            raise Failure(EXIT_SQUARES, _report_lines(squares))
        if not cubes.ok:
            raise Failure(EXIT_CUBES, _report_lines(cubes))
    return p


def _element_text(x: Element, fmt: str) -> list[str]:
    if fmt == "tabular":
        return [f"{i}\t{' '.join(w)}" for i, w in enumerate(x.words, start=1)]
    return [f"color {i}: {' '.join(w)}".rstrip() for i, w in enumerate(x.words, start=1)]


def _set_text(elements, fmt: str) -> list[str]:
    sep = "\t" if fmt == "tabular" else " "
    return [sep.join(x.letters) if x.letters else "ε" for x in sorted(elements, key=lambda e: e.letters)]


def _split(tokens: Sequence[str]) -> tuple[list[str], list[str]]:
    if "--" not in tokens:
        raise Failure(EXIT_USAGE, ["expected '--' between the two operands"])
    i = list(tokens).index("--")
    return [t for t in tokens[:i] if t != "ε"], [t for t in tokens[i + 1:] if t != "ε"]


def _word(p: Presentation, tokens) -> Element:
    return from_word(p, [t for t in tokens if t != "ε"])


def _read_code(p: Presentation, path: str) -> list[Element]:
    out = []
    for raw in Path(path).read_text(encoding="utf-8").splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append(_word(p, line.split()))
    return out


def _generalized(A, text: str) -> GeneralizedElement:
    monoid, _, group = text.partition("|")
    x = _word(A.base, monoid.split())
    return GeneralizedElement(x, A.reduce(t for t in group.split() if t != "ε"))


def _load_action(path: str, jobs: int):
    folder = Path(path).parent
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise Failure(EXIT_USAGE, [f"cannot read {path}: {exc.strerror}"])
    return parse_action(text, load_base=lambda ref: load_presentation(str(folder / ref), jobs))


# -- commands -----------------------------------------------------------------

def cmd_validate(args) -> list[str]:
    load_presentation(args.file, args.jobs)
    return ["pass"]


def cmd_nf(args) -> list[str]:
    p = load_presentation(args.file, args.jobs)
    return _element_text(_word(p, args.letters), args.format)


def cmd_mul(args) -> list[str]:
    p = load_presentation(args.file, args.jobs)
    lhs, rhs = _split(args.operands)
    return _element_text(multiply(_word(p, lhs), _word(p, rhs)), args.format)


def cmd_factor(args) -> list[str]:
    p = load_presentation(args.file, args.jobs)
    m = lattice.parse(args.at)
    if len(m) != p.k:
        raise Failure(EXIT_SEMANTIC, [f"--at needs {p.k} components"])
    x1, x2 = factor(_word(p, args.letters), m)
    return ["first:"] + _element_text(x1, args.format) + ["second:"] + _element_text(x2, args.format)


def cmd_join(args) -> list[str]:
    p = load_presentation(args.file, args.jobs)
    lhs, rhs = _split(args.operands)
    joined = common_upper(_word(p, lhs), _word(p, rhs))
    return _set_text(joined, args.format) if joined else ["incomparable"]


def cmd_code(args) -> list[str]:
    p = load_presentation(args.file, args.jobs)
    code = _read_code(p, args.code)
    if not is_prefix_code(code):
        raise Failure(EXIT_SEMANTIC, ["not a prefix code"])
    if args.action == "check":
        return ["prefix code"]
    return ["maximal" if is_maximal_code(code) else "not maximal"]


def cmd_group(args) -> list[str]:
    p = load_presentation(args.file, args.jobs)
    elts = [parse_bijection(p, Path(path).read_text(encoding="utf-8")) for path in args.elt or []]
    needed = {"compose": 2, "equal": 2, "invert": 1}[args.action]
    if len(elts) != needed:
        raise Failure(EXIT_USAGE, [f"group {args.action} needs {needed} --elt file(s)"])
    for theta in elts:
        if not theta.check_codes():
            raise Failure(EXIT_SEMANTIC, ["domain or range is not a prefix code"])
    if args.action == "invert":
        return render_bijection(inverse(elts[0])).splitlines()
    if args.action == "compose":
        # --elt f --elt g means g after f
        return render_bijection(compose(elts[1], elts[0])).splitlines()
    return ["equal" if equal_in_group(*elts) else "different"]


def cmd_alignment(args) -> list[str]:
    p = load_presentation(args.file, args.jobs)
    bound = lattice.parse(args.bound) if args.bound else (2,) * p.k
    return alignment_probe(p, bound).lines()


def cmd_laws(args) -> list[str]:
    p = load_presentation(args.file, args.jobs)
    counts = element_laws(p, args.cases, args.seed)
    return [f"{name}: {n} failures" for name, n in counts.items()]


def cmd_group_random(args) -> list[str]:
    p = load_presentation(args.file, args.jobs)
    import random
    rng = random.Random(args.seed)
    return render_bijection(random_bijection(p, args.steps, rng)).splitlines()


def cmd_group_laws(args) -> list[str]:
    p = load_presentation(args.file, args.jobs)
    counts = group_laws(p, args.cases, args.seed, args.steps)
    return [f"{name}: {n} failures" for name, n in counts.items()]


def cmd_fixture(args) -> list[str]:
    extra = [int(a) for a in args.params]
    files = fixtures.emit(args.name, *extra)
    out_dir = Path(args.out) if args.out else None
    lines = []
    for name, text in sorted(files.items()):
        if out_dir is None:
            lines += [f"==> {name} <=="] + text.splitlines()
        else:
            out_dir.mkdir(parents=True, exist_ok=True)
            (out_dir / name).write_bytes(text.encode("utf-8"))
            lines.append(str(out_dir / name))
    return lines


def cmd_selfsim(args) -> list[str]:
    A = _load_action(args.file, args.jobs)
    if args.action == "check":
        report = validate_selfsimilar(A)
        if not report.ok:
            raise Failure(EXIT_SEMANTIC, report.lines())
        small = list(enumerate_below(A.base, (1,) * A.base.k))
        words = [()] + [(s,) for s in A.symbols]
        laws = zappa_szep_laws(A, small, words)
        wfp = wfp_check(A, args.bound, args.window)
        lines = ["action: pass", f"zappa-szep laws: {len(laws)} failures"] + wfp.lines()
        if laws or not wfp.ok:
            raise Failure(EXIT_SEMANTIC, lines)
        return lines
    if args.action == "act":
        image, rest = act_word(A, args.operands[0].split(), _word(A.base, args.operands[1].split()))
        return [f"image: {render_word(image.letters)}", f"restriction: {render_word(rest)}"]
    p, q = (_generalized(A, t) for t in args.operands)
    z = zs_multiply(A, p, q)
    return [f"monoid: {render_word(z.monoid_part.letters)}", f"group: {render_word(z.group_part)}"]


# -- parser -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    def global_flags(defaults: bool) -> argparse.ArgumentParser:
        # subcommands repeat the flags without defaults so a value given
        # before the subcommand is not overwritten
        flags = argparse.ArgumentParser(add_help=False)
        pick = (lambda v: v) if defaults else (lambda v: argparse.SUPPRESS)
        flags.add_argument("--format", choices=["text", "tabular"], default=pick("text"))
        flags.add_argument("--seed", type=int, default=pick(0), help="seed for randomized commands")
        flags.add_argument("--jobs", type=int, default=pick(1), help="threads for cube validation")
        return flags

    common = global_flags(False)
    parser = _Parser(prog="kmonoid", description="Computations in k-monoids.", parents=[global_flags(True)])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help_text):
        sp = sub.add_parser(name, help=help_text, description=help_text, parents=[common])
        sp.set_defaults(func=func)
        return sp

    sp = add("validate", cmd_validate, "check squares and cubes of a presentation file")
    sp.add_argument("file")
    sp = add("nf", cmd_nf, "normal form of a product of letters")
    sp.add_argument("file")
    sp.add_argument("letters", nargs="*")
    sp = add("mul", cmd_mul, "multiply two words: LHS... -- RHS...")
    sp.add_argument("file")
    sp.add_argument("operands", nargs=argparse.REMAINDER)
    sp = add("factor", cmd_factor, "unique factorization at a degree")
    sp.add_argument("file")
    sp.add_argument("letters", nargs="*")
    sp.add_argument("--at", required=True, help="degree of the first factor, e.g. 1,2")
    sp = add("join", cmd_join, "minimal common right multiples: A... -- B...")
    sp.add_argument("file")
    sp.add_argument("operands", nargs=argparse.REMAINDER)
    sp = add("code", cmd_code, "prefix code checks")
    sp.add_argument("action", choices=["check", "maximal"])
    sp.add_argument("file")
    sp.add_argument("--code", required=True, help="file with one element per line")
    sp = add("group", cmd_group, "group elements given as code bijection files")
    sp.add_argument("action", choices=["compose", "invert", "equal"])
    sp.add_argument("file")
    sp.add_argument("--elt", action="append", help="bijection file; repeat for two operands")
    sp = add("group-random", cmd_group_random, "print a random code bijection")
    sp.add_argument("file")
    sp.add_argument("--steps", type=int, default=3)
    sp = add("group-laws", cmd_group_laws, "randomized group axiom check")
    sp.add_argument("file")
    sp.add_argument("--cases", type=int, default=100)
    sp.add_argument("--steps", type=int, default=3)
    sp = add("alignment", cmd_alignment, "largest canonical join set up to a degree bound")
    sp.add_argument("file")
    sp.add_argument("--bound", help="degree bound, default 2 in every color")
    sp = add("laws", cmd_laws, "randomized k-monoid law check")
    sp.add_argument("file")
    sp.add_argument("--cases", type=int, default=1000)
    sp = add("fixture", cmd_fixture, "emit a built-in fixture")
    sp.add_argument("name", choices=sorted(fixtures.FIXTURES))
    sp.add_argument("params", nargs="*", help="nk: k; random3: seed")
    sp.add_argument("--out", help="directory to write files into (default: print)")
    sp = add("selfsim", cmd_selfsim, "self-similar actions: act G X | mul P Q | check")
    sp.add_argument("action", choices=["act", "mul", "check"])
    sp.add_argument("file", help="action file")
    sp.add_argument("operands", nargs="*",
                    help="act: 'group word' 'letters'; mul: 'letters | group' twice")
    sp.add_argument("--bound", type=int, default=2, help="total size bound for check")
    sp.add_argument("--window", type=int, default=3, help="unit word length bound for check")
    return parser


def run(argv: Sequence[str] | None = None) -> tuple[int, list[str]]:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return (exc.code if isinstance(exc.code, int) else EXIT_USAGE), []
    try:
        return EXIT_OK, args.func(args)
    except Failure as exc:
        return exc.code, exc.lines
    except (ElementError, ActionError, fixtures.FixtureError, lattice.DimensionError, ValueError) as exc:
        return EXIT_SEMANTIC, [f"error: {exc}"]


def main(argv: Sequence[str] | None = None) -> int:
    code, lines = run(argv)
    for line in lines:
        print(line)
    return code


if __name__ == "__main__":
    sys.exit(main())
