"""Command-line front end.

Examples::

    eulerhopf mul --r 3 "z[1,1]" "z[1,2] z[2,1]"
    eulerhopf eval --r 1 --kind A --n 3 "z[1,0]"
    eulerhopf verify --suite all --r 2 --max-length 4 --max-n 8 --seed 7

Exit codes: 0 success, 1 verification failure, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from typing import Sequence

from .algebra import antipode, coproduct, overline, reverse_linear, star
from .cyclotomic import format_approx, format_cyclotomic
from .errors import DomainError
from .expr import parse_word_expression
from .harmonic import eval_A, eval_S
from .verify import SUITES, VerifyConfig, run_suites
from .words import enumerate_words, is_lyndon, lyndon_count, word_sort_key

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _common() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--r", type=int, help="index of the algebra (default: $EULER_DEFAULT_R)")
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")
    common.add_argument("--digits", type=int, default=12, help="decimal digits for approximations")
    common.add_argument("--stdin", action="store_true", help="read expressions from stdin, one per line")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="eulerhopf", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mul", parents=[common], help="quasi-shuffle product of two expressions")
    p.add_argument("exprs", nargs="*")
    for name, text in (("coproduct", "deconcatenation coproduct"), ("antipode", "antipode"),
                       ("overline", "sum over coarsenings"), ("reverse", "word reversal")):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("exprs", nargs="*")

    p = sub.add_parser("eval", parents=[common], help="exact multiple harmonic sum")
    p.add_argument("--kind", choices=("A", "S"), default="A")
    p.add_argument("--n", required=True, help="an integer, or an inclusive range a:b")
    p.add_argument("exprs", nargs="*")

    p = sub.add_parser("lyndon", parents=[common], help="Lyndon words of a degree")
    p.add_argument("--degree", type=int, required=True)

    p = sub.add_parser("verify", parents=[common], help="run identity checks")
    p.add_argument("--suite", choices=tuple(SUITES) + ("all",), default="all")
    p.add_argument("--max-degree", type=int, default=6)
    p.add_argument("--max-length", type=int, default=4)
    p.add_argument("--max-n", type=int, default=8)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=50)
    return parser


def _resolve_r(args) -> int:
    r = args.r
    if r is None:
        env = os.environ.get("EULER_DEFAULT_R")
        if env is None:
            raise UsageError("--r is required (or set EULER_DEFAULT_R)")
        try:
            r = int(env)
        except ValueError:
            raise UsageError(f"EULER_DEFAULT_R is not an integer: {env!r}") from None
    if r < 1:
        raise UsageError(f"--r must be positive, got {r}")
    return r


def _expressions(args, count: int, stdin) -> list[str]:
    exprs = list(args.exprs)
    if args.stdin:
        exprs += [line.strip() for line in stdin if line.strip()]
    if len(exprs) != count:
        raise UsageError(f"{args.command} takes {count} expression(s), got {len(exprs)}")
    return exprs


def _n_values(text: str) -> list[int]:
    try:
        if ":" in text:
            lo, hi = text.split(":", 1)
            values = list(range(int(lo), int(hi) + 1))
        else:
            values = [int(text)]
    except ValueError:
        raise UsageError(f"bad --n value {text!r}") from None
    if not values or min(values) < 0:
        raise UsageError(f"--n must select nonnegative integers, got {text!r}")
    return values


def _emit_json(out, command: str, r: int, result: dict) -> None:
    out.write(json.dumps({"command": command, "r": r, "result": result}, ensure_ascii=False) + "\n")


def _cmd_algebra(args, r: int, out, stdin) -> int:
    if args.format == "csv":
        raise UsageError("csv output is only available for eval")
    if args.command == "mul":
        x, y = (parse_word_expression(e, r) for e in _expressions(args, 2, stdin))
        result = star(x, y)
    else:
        (e,) = _expressions(args, 1, stdin)
        x = parse_word_expression(e, r)
        fn = {"coproduct": coproduct, "antipode": antipode,
              "overline": overline, "reverse": reverse_linear}[args.command]
        result = fn(x)
    if args.format == "json":
        _emit_json(out, args.command, r, {"exact": str(result), "approx": None})
    else:
        out.write(f"{result}\n")
    return EXIT_OK


def _cmd_eval(args, r: int, out, stdin) -> int:
    (e,) = _expressions(args, 1, stdin)
    x = parse_word_expression(e, r)
    word_text = str(x)
    rows = []
    for n in _n_values(args.n):
        value = eval_A(x, n) if args.kind == "A" else eval_S(x, n)
        rows.append((n, format_cyclotomic(value), format_approx(value, args.digits)))
    if args.format == "json":
        for n, exact, (re_, im_) in rows:
            _emit_json(out, "eval", r, {"exact": exact, "approx": [re_, im_],
                                        "word": word_text, "n": n, "kind": args.kind})
    elif args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["word", "n", "kind", "exact", "re", "im"])
        for n, exact, (re_, im_) in rows:
            writer.writerow([word_text, n, args.kind, exact, re_, im_])
        out.write(buf.getvalue())
    else:
        for n, exact, (re_, im_) in rows:
            if len(rows) > 1:
                out.write(f"n={n}: ")
            out.write(f"{exact}\n")
            out.write(f"~ ({re_}, {im_})\n")
    return EXIT_OK


def _cmd_lyndon(args, r: int, out) -> int:
    if args.format == "csv":
        raise UsageError("csv output is only available for eval")
    if args.degree < 1:
        raise UsageError("--degree must be at least 1")
    words = sorted((w for w in enumerate_words(args.degree, r) if is_lyndon(w)), key=word_sort_key)
    count = lyndon_count(args.degree, r)
    if count != len(words):
        raise RuntimeError(f"Lyndon count mismatch: formula {count}, enumeration {len(words)}")
    if args.format == "json":
        _emit_json(out, "lyndon", r, {"exact": str(count), "approx": None,
                                      "words": [str(w) for w in words]})
    else:
        out.write(f"{count}\n")
        for w in words:
            out.write(f"{w}\n")
    return EXIT_OK


def _cmd_verify(args, r: int, out, err) -> int:
    if args.format == "csv":
        raise UsageError("csv output is only available for eval")
    cfg = VerifyConfig(r=r, max_degree=args.max_degree, max_length=args.max_length,
                       max_n=args.max_n, seed=args.seed, samples=args.samples)
    names = list(SUITES) if args.suite == "all" else [args.suite]
    reports = run_suites(names, cfg)
    ok = all(rep.ok for rep in reports)
    if args.format == "json":
        _emit_json(out, "verify", r, {
            "exact": "pass" if ok else "fail",
            "approx": None,
            "config": {"max_degree": cfg.max_degree, "max_length": cfg.max_length,
                       "max_n": cfg.max_n, "seed": cfg.seed, "samples": cfg.samples},
            "suites": [rep.as_dict() for rep in reports],
        })
    else:
        out.write(f"verify r={r} max_degree={cfg.max_degree} max_length={cfg.max_length} "
                  f"max_n={cfg.max_n} seed={cfg.seed} samples={cfg.samples}\n")
        for rep in reports:
            out.write(f"{rep.suite}: {rep.cases} cases, {len(rep.failures)} failures\n")
            for f in rep.failures:
                out.write(f"  FAIL {f.check} at {f.inputs}\n    lhs: {f.lhs}\n    rhs: {f.rhs}\n")
        out.write("PASS\n" if ok else "FAIL\n")
    # timings vary between runs, so they stay off stdout
    for rep in reports:
        err.write(f"{rep.suite}: {rep.wall_time:.2f}s\n")
    return EXIT_OK if ok else EXIT_FAIL


def run(argv: Sequence[str] | None = None, out=None, err=None, stdin=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    stdin = stdin or sys.stdin
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        r = _resolve_r(args)
        if args.digits < 1:
            raise UsageError("--digits must be at least 1")
        if args.command == "eval":
            return _cmd_eval(args, r, out, stdin)
        if args.command == "lyndon":
            return _cmd_lyndon(args, r, out)
        if args.command == "verify":
            return _cmd_verify(args, r, out, err)
        return _cmd_algebra(args, r, out, stdin)
    except (UsageError, DomainError) as exc:
        err.write(f"eulerhopf {args.command}: error: {exc}\n")
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
