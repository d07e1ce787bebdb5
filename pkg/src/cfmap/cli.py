"""Command-line front end: ``cfmap <subcommand> ...``.

Exit codes: 0 success, 1 domain error, 2 usage error, 3 failed check suite.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .arith import DomainError, fib, format_rational, parse_rational
from .checks import SIZES, SUITES, run_checks
from .evaluator import Enclosure, convergents, eval_k, evaluate, expand
from .metric import dist, rho
from .symbolic import (
    DEFAULT_DEPTH_BUDGET,
    INF,
    NOT_IN_SIGMA,
    Stream,
    equivalent,
    forget,
    format_seq,
    in_cylinder,
    parse_seq,
    stratum,
)
from .topology import (
    INSIDE,
    OUTSIDE,
    PreimagePair,
    continuity_probe,
    endpoint_probe,
    fundamental_interval,
    irrational_probe,
    preimage,
)

EXIT_OK, EXIT_DOMAIN, EXIT_USAGE, EXIT_SUITE = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _digit(text: str):
    if text.strip().lower() in {"inf", "∞"}:
        return INF
    try:
        d = int(text)
    except ValueError:
        raise DomainError(f"bad digit {text!r}") from None
    if d < 1:
        raise DomainError(f"digit must be >= 1, got {d}")
    return d


def _fmt_value(v):
    if isinstance(v, Enclosure):
        return f"enclosure {v.lo} {v.hi} depth={v.depth}"
    return format_rational(v)


def _json_value(v):
    if isinstance(v, Enclosure):
        return {"lo": str(v.lo), "hi": str(v.hi), "depth": v.depth}
    return str(v)


def _seq(args, text):
    return parse_seq(text, depth_budget=args.budget)


def cmd_expand(args):
    w = expand(parse_rational(args.x))
    return format_seq(w), {"x": str(parse_rational(args.x)), "word": format_seq(w)}


def cmd_eval(args):
    v = evaluate(_seq(args, args.seq))
    return _fmt_value(v), {"seq": args.seq, "value": _json_value(v)}


def cmd_evalk(args):
    v = eval_k(_seq(args, args.seq), args.k)
    return format_rational(v), {"seq": args.seq, "k": args.k, "value": str(v)}


def cmd_conv(args):
    conv = convergents(_seq(args, args.seq), args.n)
    rows = conv.rows()
    text = "\n".join(["k\tp\tq"] + [f"{k}\t{p}\t{q}" for k, p, q in rows])
    return text, {"rows": [{"k": k, "p": p, "q": q} for k, p, q in rows]}


def cmd_dist(args):
    r = dist(_seq(args, args.s), _seq(args, args.t), depth=args.depth)
    return str(r), r.to_json()


def cmd_rho(args):
    v = rho(_digit(args.m), _digit(args.n))
    return format_rational(v), {"value": str(v)}


def cmd_fib(args):
    if args.n < 0:
        raise DomainError("fib index must be non-negative")
    v = fib(args.n)
    return str(v), {"n": args.n, "value": v}


def cmd_stratum(args):
    n = stratum(_seq(args, args.seq))
    label = "not-in-Σ" if n is NOT_IN_SIGMA else ("inf" if n == INF else str(n))
    return label, {"stratum": label}


def cmd_interval(args):
    iv = fundamental_interval(_seq(args, args.seq))
    return str(iv), {
        "lo": str(iv.lo),
        "hi": str(iv.hi),
        "lo_closed": iv.lo_closed,
        "hi_closed": iv.hi_closed,
    }


def cmd_preimage(args):
    r = preimage(parse_rational(args.x))
    if isinstance(r, PreimagePair):
        words = [format_seq(r.canonical), format_seq(r.alternate)]
    else:
        words = [format_seq(r)]
    return " ".join(words), {"x": str(parse_rational(args.x)), "preimages": words}


def cmd_gmap(args):
    w = forget(_seq(args, args.seq))
    return format_seq(w), {"seq": args.seq, "image": format_seq(w)}


def cmd_equiv(args):
    v = equivalent(_seq(args, args.s), _seq(args, args.t))
    return str(v).lower(), {"equivalent": v}


def cmd_cyl(args):
    v = in_cylinder(_seq(args, args.seq), _seq(args, args.base))
    return str(v).lower(), {"in_cylinder": v}


def cmd_probe(args):
    x = parse_rational(args.x)
    if x in (0, 1):
        report = endpoint_probe(x, args.count)
    else:
        against = _seq(args, args.against) if args.against else None
        report = continuity_probe(x, args.side, args.count, against=against)
    return report.to_table(), report.to_json()


def cmd_probe_irr(args):
    s = parse_seq(args.stream, depth_budget=args.budget_override or args.count + 2)
    if not isinstance(s, Stream):
        raise DomainError("probe-irr needs a stream such as [|1]")
    report = irrational_probe(s, args.count)
    return report.to_table(), report.to_json()


def cmd_check(args):
    results = run_checks(args.suite, args.size, args.seed)
    text = "\n".join(r.line() for r in results)
    payload = {
        "seed": args.seed,
        "size": args.size,
        "suites": [
            {
                "name": r.name,
                "cases": r.cases,
                "failures": r.failures,
                "counterexample": r.counterexample,
            }
            for r in results
        ],
    }
    code = EXIT_OK if all(r.passed for r in results) else EXIT_SUITE
    return text, payload, code


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
    common.add_argument("--budget", type=int, default=argparse.SUPPRESS,
                        help="depth budget for streams (default %d)" % DEFAULT_DEPTH_BUDGET)

    parser = _Parser(prog="cfmap", description="Extended continued fraction toolkit.")
    parser.add_argument("--json", action="store_true", default=False)
    parser.add_argument("--budget", type=int, default=DEFAULT_DEPTH_BUDGET)
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    def add(name, func, help_):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.set_defaults(func=func)
        return p

    add("expand", cmd_expand, "digits of a rational in [0,1]").add_argument("x")
    add("eval", cmd_eval, "value of a sequence").add_argument("seq")
    p = add("evalk", cmd_evalk, "value of the first k digits")
    p.add_argument("seq")
    p.add_argument("k", type=int)
    p = add("conv", cmd_conv, "convergent table p*, q*")
    p.add_argument("seq")
    p.add_argument("n", type=int)
    p = add("dist", cmd_dist, "Fibonacci-weighted distance")
    p.add_argument("s")
    p.add_argument("t")
    p.add_argument("--depth", type=int, default=None)
    p = add("rho", cmd_rho, "distance between two extended digits")
    p.add_argument("m")
    p.add_argument("n")
    add("fib", cmd_fib, "Fibonacci number").add_argument("n", type=int)
    add("stratum", cmd_stratum, "stratum index of a sequence").add_argument("seq")
    add("interval", cmd_interval, "fundamental interval of a word").add_argument("seq")
    add("preimage", cmd_preimage, "all words evaluating to x").add_argument("x")
    add("gmap", cmd_gmap, "forget everything after the first inf").add_argument("seq")
    p = add("equiv", cmd_equiv, "same image under gmap")
    p.add_argument("s")
    p.add_argument("t")
    p = add("cyl", cmd_cyl, "cylinder-set membership")
    p.add_argument("seq")
    p.add_argument("base")
    p = add("probe", cmd_probe, "one-sided continuity probe at a rational")
    p.add_argument("x")
    p.add_argument("--side", choices=[INSIDE, OUTSIDE], default=INSIDE)
    p.add_argument("--count", type=int, default=8)
    p.add_argument("--against", default=None, help="measure against this word instead")
    p = add("probe-irr", cmd_probe_irr, "continuity probe along a stream's convergents")
    p.add_argument("stream")
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--depth-budget", dest="budget_override", type=int, default=None)
    p = add("check", cmd_check, "run invariant suites")
    p.add_argument("--suite", choices=["all", *SUITES], default="all")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--size", choices=list(SIZES), default="small")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        out = args.func(args)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    code = out[2] if len(out) == 3 else EXIT_OK
    text, payload = out[0], out[1]
    if args.json:
        print(json.dumps(payload, sort_keys=True, default=str))
    else:
        print(text)
    return code


run = main

if __name__ == "__main__":
    sys.exit(main())
