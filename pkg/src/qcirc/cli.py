"""Command-line entry point.

Results go to stdout as ``key=value`` lines, each echoing the seed;
diagnostics go to stderr. Exit status: 0 success, 1 algorithm failure
(budget exhausted), 2 usage error.
"""
from __future__ import annotations

import argparse
import sys

from . import oracles
from .algorithms.deutsch import deutsch_circuit
from .algorithms.deutsch_jozsa import classify, deutsch_jozsa_circuit
from .algorithms.grover import grover_circuit, grover_iterations
from .algorithms.shor import (PrimePowerInput, default_top_size, gcd, order_finding_circuit,
                              shor_factor)
from .algorithms.simon import BudgetExhausted, simon_circuit, simon_recover
from .serial import ParseError, parse_lines, render_ascii, write_lines
from .sim import exact_distribution, make_rng, run, sample

ALGOS = ("deutsch", "dj", "simon", "grover", "shor")


class UsageError(Exception):
    pass


def _iters(text: str):
    if text in ("auto", "optimal"):
        return "optimal"
    if text == "paper":
        return "paper"
    try:
        k = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected auto, paper or an integer, got {text!r}")
    if k < 0:
        raise argparse.ArgumentTypeError("iteration count must be non-negative")
    return k


def _add_algo_flags(p: argparse.ArgumentParser, which: set[str]) -> None:
    if "oracle" in which:
        p.add_argument("--oracle", help="oracle name")
    if "n" in which:
        p.add_argument("--n", type=int, help="input register size")
    if "target" in which:
        p.add_argument("--target", type=int, help="marked item for Grover")
    if "iters" in which:
        p.add_argument("--iters", type=_iters, default="optimal",
                       help="Grover iterations: auto, paper or a count")
    if "shor" in which:
        p.add_argument("--N", type=int, dest="N", help="integer to factor")
        p.add_argument("--a", type=int, help="base for the first attempt")
        p.add_argument("--t", type=int, help="top register size")
    p.add_argument("--seed", type=int, default=1, help="PRNG seed (default 1)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qcirc", allow_abbrev=False,
                                     description="Exact quantum circuit simulation of five textbook algorithms.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("deutsch", allow_abbrev=False, help="Deutsch's algorithm")
    _add_algo_flags(p, {"oracle"})
    p = sub.add_parser("dj", allow_abbrev=False, help="Deutsch-Jozsa")
    _add_algo_flags(p, {"oracle", "n"})
    p = sub.add_parser("simon", allow_abbrev=False, help="Simon's algorithm")
    _add_algo_flags(p, {"oracle"})
    p = sub.add_parser("grover", allow_abbrev=False, help="Grover search")
    _add_algo_flags(p, {"n", "target", "iters"})
    p.add_argument("--dist", action="store_true", help="also print the exact distribution")
    p = sub.add_parser("shor", allow_abbrev=False, help="Shor factoring")
    _add_algo_flags(p, {"shor"})

    p = sub.add_parser("print", allow_abbrev=False, help="print an algorithm's circuit")
    p.add_argument("--algo", required=True, choices=ALGOS)
    p.add_argument("--format", choices=("ascii", "lines"), default="ascii")
    _add_algo_flags(p, {"oracle", "n", "target", "iters", "shor"})

    p = sub.add_parser("simulate", allow_abbrev=False, help="simulate a .qcirc file")
    p.add_argument("--file", required=True)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--dist", action="store_true", help="print the exact outcome distribution")
    p.add_argument("--runs", type=int, default=1)
    return parser


def _need(args, *names):
    for name in names:
        if getattr(args, name, None) is None:
            raise UsageError(f"--{name} is required")


def _lookup(fn, *a):
    try:
        return fn(*a)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None


def _dist_lines(dist, seed: int) -> list[str]:
    return [f"bits={b} p={p:.12f} seed={seed}" for b, p in dist.items()]


def _simon_oracle(args):
    _need(args, "oracle")
    return _lookup(oracles.simon_oracle, args.oracle, args.seed)


def _shor_oracle(args):
    if args.oracle:
        if args.oracle not in oracles.SHOR_ORACLES:
            raise UsageError(f"unknown Shor oracle {args.oracle!r}; expected one of "
                             f"{', '.join(oracles.SHOR_ORACLES)}")
        return oracles.SHOR_ORACLES[args.oracle]()
    _need(args, "N")
    n_value = args.N
    a = args.a if args.a is not None else next(x for x in range(2, n_value) if gcd(x, n_value) == 1)
    t = args.t if args.t is not None else default_top_size(n_value)
    return oracles.modexp_permutation(a, n_value, t)


def _circuit_for(args):
    algo = args.algo
    if algo == "deutsch":
        _need(args, "oracle")
        return deutsch_circuit(_lookup(oracles.deutsch_oracle, args.oracle))
    if algo == "dj":
        _need(args, "oracle", "n")
        return deutsch_jozsa_circuit(_lookup(oracles.dj_oracle, args.oracle, args.n))
    if algo == "simon":
        return simon_circuit(_simon_oracle(args)[0])
    if algo == "grover":
        _need(args, "n", "target")
        return grover_circuit(oracles.grover_marked(args.n, args.target),
                              grover_iterations(args.n, args.iters))
    return order_finding_circuit(_shor_oracle(args))


def _dispatch(args) -> tuple[list[str], int]:
    seed = args.seed
    cmd = args.command
    if cmd == "deutsch":
        _need(args, "oracle")
        oracle = _lookup(oracles.deutsch_oracle, args.oracle)
        bit = run(deutsch_circuit(oracle), seed).bits
        verdict = "Balanced" if bit == "1" else "Constant"
        return [f"algorithm=deutsch oracle={args.oracle} verdict={verdict} bits={bit} seed={seed}"], 0
    if cmd == "dj":
        _need(args, "oracle", "n")
        if args.n < 1:
            raise UsageError("--n must be positive")
        oracle = _lookup(oracles.dj_oracle, args.oracle, args.n)
        bits = run(deutsch_jozsa_circuit(oracle), seed).bits
        verdict = classify(bits)
        return [f"algorithm=dj n={args.n} oracle={args.oracle} verdict={verdict} bits={bits} seed={seed}"], 0
    if cmd == "simon":
        oracle, _ = _simon_oracle(args)
        res = simon_recover(oracle, make_rng(seed))
        return [f"algorithm=simon oracle={args.oracle} s={res.hidden} rounds={res.rounds_used} "
                f"samples={','.join(res.samples) or '-'} seed={seed}"], 0
    if cmd == "grover":
        _need(args, "n", "target")
        k = grover_iterations(args.n, args.iters)
        c = grover_circuit(oracles.grover_marked(args.n, args.target), k)
        bits = run(c, seed).bits
        found = int(bits, 2) == args.target
        lines = [f"algorithm=grover n={args.n} target={args.target} iterations={k} result={bits} "
                 f"found={str(found).lower()} seed={seed}"]
        if args.dist:
            lines += _dist_lines(exact_distribution(c), seed)
        return lines, 0
    if cmd == "shor":
        _need(args, "N")
        try:
            res = shor_factor(args.N, make_rng(seed), forced_a=args.a, t=args.t)
        except PrimePowerInput as exc:
            kind = "prime" if exc.exponent == 1 else "prime_power"
            return [f"algorithm=shor N={args.N} declared={kind} base={exc.base} "
                    f"exponent={exc.exponent} seed={seed}"], 0
        rejected = ",".join(f"{a}:{r if r is not None else '?'}" for a, r in res.rejected) or "-"
        r = res.order if res.order is not None else "-"
        return [f"algorithm=shor N={res.n_value} a={res.a_used} r={r} factor={res.factor} "
                f"cofactor={res.n_value // res.factor} attempts={res.attempts} rejected={rejected} "
                f"seed={seed}"], 0
    if cmd == "print":
        c = _circuit_for(args)
        text = write_lines(c) if args.format == "lines" else render_ascii(c) + "\n"
        return [text.rstrip("\n")], 0
    if cmd == "simulate":
        try:
            with open(args.file, encoding="utf-8") as fh:
                c = parse_lines(fh.read())
        except OSError as exc:
            raise UsageError(f"cannot read {args.file}: {exc.strerror}") from None
        except ParseError as exc:
            raise UsageError(f"{args.file}: {exc}") from None
        if args.dist:
            return _dist_lines(exact_distribution(c), seed), 0
        if args.runs < 1:
            raise UsageError("--runs must be positive")
        if args.runs == 1:
            return [f"bits={run(c, seed).bits} seed={seed}"], 0
        counts: dict[str, int] = {}
        for bits in sample(c, args.runs, seed):
            counts[bits] = counts.get(bits, 0) + 1
        return [f"bits={b} count={counts[b]} seed={seed}" for b in sorted(counts)], 0
    raise UsageError(f"unknown command {cmd!r}")


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        lines, code = _dispatch(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"qcirc: error: {exc}", file=sys.stderr)
        return 2
    except BudgetExhausted as exc:
        print(f"qcirc: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        parser.print_usage(sys.stderr)
        print(f"qcirc: error: {exc}", file=sys.stderr)
        return 2
    for line in lines:
        print(line)
    return code


if __name__ == "__main__":
    sys.exit(main())
