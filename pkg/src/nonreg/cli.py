"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 device file error, 3 a decide verb
found a counterexample.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional

from . import corpus, dnreg, efa, fatl, pda
from .common import (AlphabetError, Bounded, Counterexample,
                     EnumerationBudgetExceeded, Profile, Unknown, parse_word,
                     render_word)
from .grammar import (Grammar, GrammarError, is_proper, make_proper, normalize,
                      parse_grammar, reduce, render_grammar, to_quasi_chomsky,
                      to_quasi_normal_form)
from .groups import GroupError

EXIT_OK, EXIT_USAGE, EXIT_DEVICE, EXIT_COUNTEREXAMPLE = 0, 1, 2, 3

MEASURE_KIND = {"dnreg": "cfg", "push": "pda", "gmc": "efa", "jc": "fatl"}
DECIDE_KIND = {"dnreg-bounded": "cfg", "gmc-bounded": "efa", "jc-bounded": "fatl"}
FLAG_KIND = {"grammar": "cfg", "pda": "pda", "efa": "efa", "fatl": "fatl"}


class UsageError(Exception):
    pass


class DeviceError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="nonreg", description="Measure how non-regular a device is.")
    sub = ap.add_subparsers(dest="verb", required=True)

    def device_flags(p):
        p.add_argument("--grammar", metavar="FILE")
        p.add_argument("--pda", metavar="FILE")
        p.add_argument("--efa", metavar="FILE")
        p.add_argument("--fatl", metavar="FILE")
        p.add_argument("--example", metavar="NAME", choices=sorted(corpus.EXAMPLES))
        p.add_argument("--out", metavar="PATH")
        p.add_argument("-v", "--verbose", action="store_true")

    p = sub.add_parser("measure", help="measure one word")
    p.add_argument("measure", choices=sorted(MEASURE_KIND))
    device_flags(p)
    p.add_argument("--word", required=True, help="input word ('_' for the empty word)")
    p.add_argument("--exact", action="store_true", help="dnreg of the grammar itself, not its quasi-CNF")

    p = sub.add_parser("profile", help="per-length maxima as CSV")
    p.add_argument("measure", choices=sorted(MEASURE_KIND))
    device_flags(p)
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--exact", action="store_true")

    p = sub.add_parser("decide", help="look for words whose measure exceeds a budget")
    p.add_argument("question", choices=sorted(DECIDE_KIND))
    device_flags(p)
    p.add_argument("-c", type=int, required=True, dest="budget")
    p.add_argument("--bound", type=int, default=12, help="search length for gmc/jc")

    p = sub.add_parser("convert", help="normal forms and PDA acceptance modes")
    device_flags(p)
    p.add_argument("--to", required=True,
                   choices=["proper", "qnf", "qcnf", "empty-stack", "final-state"])

    p = sub.add_parser("build-example", help="print a bundled device file")
    p.add_argument("name", choices=sorted(corpus.EXAMPLES))
    p.add_argument("--out", metavar="PATH")

    p = sub.add_parser("enumerate", help="list the words of length <= N")
    device_flags(p)
    p.add_argument("--max-n", type=int, required=True)
    return ap


def _load(args) -> tuple[str, object]:
    given = [(flag, getattr(args, flag)) for flag in FLAG_KIND if getattr(args, flag)]
    if args.example:
        given.append(("example", args.example))
    if len(given) != 1:
        raise UsageError("give exactly one of --grammar, --pda, --efa, --fatl, --example")
    flag, value = given[0]
    if flag == "example":
        kind, text = corpus.example_text(value)
        source = value
    else:
        kind = FLAG_KIND[flag]
        try:
            with open(value, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise DeviceError(f"cannot read {value}: {exc.strerror}") from None
        source = value
    try:
        return kind, corpus.PARSERS[kind](text)
    except (GrammarError, GroupError, ValueError) as exc:
        raise DeviceError(f"{source}: {exc}") from None


def _expect(kind: str, want: str, what: str):
    if kind != want:
        raise UsageError(f"{what} needs a {want} device, got {kind}")


def _grammar_for_dnreg(g: Grammar, exact: bool) -> Grammar:
    if exact:
        if is_proper(g):
            return g
        print("note: grammar made proper before measuring", file=sys.stderr)
        return make_proper(reduce(g))
    print("note: measured on the quasi Chomsky normal form; dnreg may grow by a constant factor",
          file=sys.stderr)
    return normalize(g, chomsky=True)


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _measure_fn(measure: str, device, exact: bool):
    if measure == "dnreg":
        g = _grammar_for_dnreg(device, exact)
        return g, (lambda w: dnreg.dnreg_word(g, w))
    fn = {"push": pda.push_word, "gmc": efa.gmc_word, "jc": fatl.jc_word}[measure]
    return device, (lambda w: fn(device, w))


def cmd_measure(args) -> int:
    kind, device = _load(args)
    _expect(kind, MEASURE_KIND[args.measure], args.measure)
    _, fn = _measure_fn(args.measure, device, args.exact)
    value = fn(parse_word(args.word))
    print(0 if value is None else value)
    if args.verbose:
        print("member" if value is not None else "not a member", file=sys.stderr)
    return EXIT_OK


def cmd_profile(args) -> int:
    kind, device = _load(args)
    _expect(kind, MEASURE_KIND[args.measure], args.measure)
    if args.max_n < 1:
        raise UsageError("--max-n must be positive")
    if args.measure == "dnreg":
        prof = dnreg.dnreg_profile(_grammar_for_dnreg(device, args.exact), args.max_n)
    elif args.measure == "push":
        prof = pda.push_profile(device, args.max_n)
    elif args.measure == "gmc":
        prof = efa.gmc_profile(device, args.max_n)
    else:
        prof = fatl.jc_profile(device, args.max_n)
    _emit(prof.to_csv(), args.out)
    return EXIT_OK


def cmd_decide(args) -> int:
    kind, device = _load(args)
    _expect(kind, DECIDE_KIND[args.question], args.question)
    if args.budget < 0:
        raise UsageError("-c must be non-negative")
    if args.question == "dnreg-bounded":
        g = device if is_proper(device) else make_proper(reduce(device))
        res = dnreg.decide_dnreg_bounded(g, args.budget)
        if isinstance(res, dnreg.Unbounded):
            print(render_word(res.witness))
            return EXIT_COUNTEREXAMPLE
        print("BOUNDED")
        return EXIT_OK
    if args.question == "gmc-bounded":
        res = efa.check_gmc_bounded(device, args.budget, args.bound)
    else:
        res = fatl.decide_jc_bounded(device, args.budget, args.bound)
    if isinstance(res, Counterexample):
        print(render_word(res.word))
        return EXIT_COUNTEREXAMPLE
    if isinstance(res, Unknown):
        print("UNKNOWN")
        print(f"reason: {res.reason}", file=sys.stderr)
        return EXIT_OK
    print("BOUNDED" if res.up_to is None else f"BOUNDED up to length {res.up_to}")
    return EXIT_OK


def cmd_convert(args) -> int:
    kind, device = _load(args)
    if args.to in ("empty-stack", "final-state"):
        _expect(kind, "pda", f"--to {args.to}")
        _emit(pda.render_pda(pda.convert_mode(device, pda.Mode(args.to))), args.out)
        return EXIT_OK
    _expect(kind, "cfg", f"--to {args.to}")
    g = reduce(device)
    if not is_proper(g):
        g = make_proper(g)
    if args.to == "qnf":
        g = to_quasi_normal_form(g)
    elif args.to == "qcnf":
        g = to_quasi_chomsky(to_quasi_normal_form(g))
    _emit(render_grammar(g), args.out)
    return EXIT_OK


def cmd_build_example(args) -> int:
    _, text = corpus.example_text(args.name)
    _emit(text, args.out)
    return EXIT_OK


def cmd_enumerate(args) -> int:
    from .oracle.brute import enumerate as enumerate_slice
    kind, device = _load(args)
    if kind == "cfg" and not is_proper(device):
        device = make_proper(reduce(device))
    _emit(enumerate_slice(device, args.max_n).to_text(), args.out)
    return EXIT_OK


COMMANDS = {
    "measure": cmd_measure,
    "profile": cmd_profile,
    "decide": cmd_decide,
    "convert": cmd_convert,
    "build-example": cmd_build_example,
    "enumerate": cmd_enumerate,
}


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return COMMANDS[args.verb](args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DeviceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DEVICE
    except (AlphabetError, EnumerationBudgetExceeded, GrammarError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
