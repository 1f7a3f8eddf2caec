"""Command-line entry point: parse, translate, eval, diff, seq and oracle."""

from __future__ import annotations

import argparse
import ast
import os
import sys

from .evaluator import (
    EvalConfig,
    EvalError,
    EvalMode,
    differential_check,
    eval_formula,
    parse_assignment,
    parse_corpus,
)
from .formula import (
    FormulaError,
    ParseError,
    dialect_of,
    free_variables,
    is_sentence,
    parse_formula,
    print_formula,
)
from .omegaset import EncodingUndefined, OmegaSet, TagMismatch, format_set, parse_set
from .oracles import DEFAULT_SEED, SUITES, run_suite
from .rewrite import RewriteError, translate
from .vecseq import (
    NumberSeqPrefix,
    VectorSeqPrefix,
    beta_prime,
    complete,
    decode_numseq,
    decode_vecseq,
    dims,
    isolate,
    lemma32_witness,
    match_one_extraction,
    numseq,
    vecseq,
)
from .words import WordError, parse_word

OK, FAILURE, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# text helpers


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _text_or_file(value: str) -> str:
    """A readable path is read; anything else is inline text where a ';'
    outside braces separates lines."""
    if value == "-" or os.path.isfile(value):
        return _read(value)
    out, depth = [], 0
    for ch in value:
        depth += (ch == "{") - (ch == "}")
        out.append("\n" if ch == ";" and depth == 0 else ch)
    return "".join(out)


def _alphabet(text: str | None):
    if not text:
        return None
    return [a.strip() for a in text.split(",") if a.strip()]


def format_numbers(s: NumberSeqPrefix) -> str:
    return "[" + ",".join(str(v) for v in s) + "]"


def format_vectors(s: VectorSeqPrefix) -> str:
    return "[" + ",".join("(" + ",".join(str(c) for c in v) + ")" for v in s) + "]"


def parse_vectors(text: str) -> VectorSeqPrefix:
    """``[(2,1),(3,2,1),()]``; ``(1)`` is read as a one-coordinate vector."""
    try:
        value = ast.literal_eval(text.strip())
    except (ValueError, SyntaxError) as exc:
        raise UsageError(f"malformed vector sequence {text!r}") from exc
    if not isinstance(value, (list, tuple)):
        raise UsageError(f"malformed vector sequence {text!r}")
    vecs = []
    for v in value:
        v = (v,) if isinstance(v, int) else v
        if not isinstance(v, tuple) or not all(isinstance(c, int) and c >= 0 for c in v):
            raise UsageError(f"malformed vector {v!r}")
        vecs.append(v)
    return vecseq(vecs)


def parse_numbers(text: str) -> NumberSeqPrefix:
    try:
        value = ast.literal_eval(text.strip())
    except (ValueError, SyntaxError) as exc:
        raise UsageError(f"malformed number sequence {text!r}") from exc
    if not isinstance(value, (list, tuple)) or not all(isinstance(v, int) and v >= 0 for v in value):
        raise UsageError(f"malformed number sequence {text!r}")
    return numseq(value)


def _set(text: str) -> OmegaSet:
    try:
        return parse_set(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _set_summary(s: OmegaSet, horizon: int, show: int = 32) -> str:
    shown = [int(x) for x in s.members_below(horizon)[:show]]
    more = ",..." if len(s.members_below(horizon)) > show else ""
    return f"{format_set(s)}\nmembers below {horizon}: {{{','.join(map(str, shown))}{more}}}"


# ---------------------------------------------------------------------------
# subcommands


def cmd_parse(args) -> int:
    f = parse_formula(_read(args.file), _alphabet(args.alphabet), allow_reserved=True)
    fo, so = free_variables(f)
    print(print_formula(f))
    print(f"dialect: {dialect_of(f).value}")
    print(f"free first-order: {{{', '.join(sorted(fo))}}}")
    print(f"free second-order: {{{', '.join(sorted(so))}}}")
    print(f"sentence: {'yes' if is_sentence(f) else 'no'}")
    return OK


def cmd_translate(args) -> int:
    alphabet = _alphabet(args.alphabet) or ()
    f = parse_formula(_read(args.file), alphabet or None, allow_reserved=True)
    g, reports = translate(f, args.source, args.target, alphabet)
    out = print_formula(g)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(out + "\n")
    else:
        print(out)
    if reports:
        print("path: " + " -> ".join(r.name for r in reports), file=sys.stderr)
    for rep in reports:
        print(rep.text(), file=sys.stderr)
    return OK


def _config(args) -> EvalConfig:
    try:
        return EvalConfig(args.horizon, args.max_period, args.max_witness, EvalMode(args.mode), args.budget)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def cmd_eval(args) -> int:
    f = parse_formula(_read(args.file), allow_reserved=True)
    word = parse_word(args.word)
    env = parse_assignment(_text_or_file(args.assign)) if args.assign else None
    verdict = eval_formula(f, word, env, _config(args))
    print(verdict)
    return OK


def cmd_diff(args) -> int:
    f = parse_formula(_read(args.left), allow_reserved=True)
    g = parse_formula(_read(args.right), allow_reserved=True)
    report = differential_check(f, g, parse_corpus(_read(args.corpus)), _config(args))
    for row in report.rows:
        mark = "CONTRADICTION" if row.contradiction else ""
        print(f"{row.index:3d} {row.left.value.name:7s} {row.right.value.name:7s} {mark}".rstrip())
    print(report.summary())
    return report.exit_status


def cmd_seq(args) -> int:
    action = args.action
    H = args.horizon
    if action in ("decode", "isolate", "complete"):
        R = _set(args.R) if args.R else OmegaSet.empty()
        I = _set(args.I) if args.I else OmegaSet.empty()
    if action == "decode":
        if args.numbers:
            seq = decode_numseq(R, I, H)
            print(format_numbers(seq))
        else:
            seq = decode_vecseq(R, I, H)
            print(format_vectors(seq))
        if seq.flag:
            print(f"note: {seq.flag}", file=sys.stderr)
    elif action == "dims":
        v = parse_vectors(args.vectors) if args.vectors else decode_vecseq(_set(args.R or "finite{}"), _set(args.I or "finite{}"), H)
        print(format_numbers(dims(v)))
    elif action == "isolate":
        print(_set_summary(isolate(I - R if args.R else I), H))
    elif action == "complete":
        print(_set_summary(complete(R, I, H), H))
    elif action == "betaprime":
        print(format_vectors(beta_prime(_need_vectors(args))))
    elif action == "match":
        if not args.numbers_in:
            raise UsageError("match needs --g")
        print(format_numbers(match_one_extraction(_need_vectors(args), parse_numbers(args.numbers_in))))
    elif action == "lemma32":
        if args.bound is None:
            raise UsageError("lemma32 needs --bound")
        w = lemma32_witness(_need_vectors(args), args.bound)
        if w is None:
            print("no coordinate is within the bound")
            return FAILURE
        print(f"kept vectors: {list(w.kept)}")
        print(f"blocks: {[list(b) for b in w.blocks]}")
        print(f"result: {format_vectors(w.result)}")
    return OK


def _need_vectors(args) -> VectorSeqPrefix:
    if not args.vectors:
        raise UsageError(f"{args.action} needs --vectors")
    return parse_vectors(args.vectors)


def cmd_oracle(args) -> int:
    report = run_suite(args.suite, args.seed)
    print(report.text())
    return OK if report.ok else FAILURE


# ---------------------------------------------------------------------------
# argument parsing


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def _add_bounds(p):
    p.add_argument("--horizon", "-H", type=_positive, default=4096)
    p.add_argument("--max-period", "-P", type=_positive, default=64)
    p.add_argument("--max-witness", "-F", type=_positive, default=64)
    p.add_argument("--mode", choices=[m.value for m in EvalMode], default=EvalMode.THREE_VALUED.value)
    p.add_argument("--budget", type=_positive, default=200_000, help="node evaluations before giving up")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="msow", description="Extended MSO over omega-words: rewrites and checks.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", help="print canonical form, dialect and free variables")
    p.add_argument("file")
    p.add_argument("--alphabet", help="comma-separated letters")
    p.set_defaults(run=cmd_parse)

    p = sub.add_parser("translate", help="rewrite between dialects")
    p.add_argument("file")
    p.add_argument("--from", dest="source", required=True)
    p.add_argument("--to", dest="target", required=True)
    p.add_argument("--alphabet", help="comma-separated letters (needed for P -> U_FLAT)")
    p.add_argument("--output", "-o")
    p.set_defaults(run=cmd_translate)

    p = sub.add_parser("eval", help="three-valued evaluation on a finitely represented word")
    p.add_argument("file")
    p.add_argument("--word", required=True)
    p.add_argument("--assign", help="assignment file, or inline 'X = proc{name=pow2}; x = 3'")
    _add_bounds(p)
    p.set_defaults(run=cmd_eval)

    p = sub.add_parser("diff", help="differential check of two formulas over a corpus file")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("--corpus", required=True)
    _add_bounds(p)
    p.set_defaults(run=cmd_diff)

    p = sub.add_parser("seq", help="vector-sequence operations")
    p.add_argument("action", choices=["decode", "dims", "isolate", "complete", "betaprime", "match", "lemma32"])
    p.add_argument("--R")
    p.add_argument("--I")
    p.add_argument("--vectors")
    p.add_argument("--g", dest="numbers_in")
    p.add_argument("--bound", type=_positive)
    p.add_argument("--numbers", action="store_true", help="decode to the number sequence")
    p.add_argument("--horizon", "-H", type=_positive, default=4096)
    p.set_defaults(run=cmd_seq)

    p = sub.add_parser("oracle", help="run a seeded oracle suite")
    p.add_argument("suite", choices=sorted(SUITES))
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.set_defaults(run=cmd_oracle)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else OK
    try:
        return args.run(args)
    except ParseError as exc:
        print(f"parse error at {exc.line}:{exc.column}: {exc.message}", file=sys.stderr)
        return USAGE
    except (UsageError, FormulaError, RewriteError, EvalError, WordError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    except (EncodingUndefined, TagMismatch, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return FAILURE


if __name__ == "__main__":
    sys.exit(main())
