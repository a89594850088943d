"""``pdakit`` command-line interface.

Exit codes: 0 success, 1 domain error, 2 parse or I/O error (including bad
arguments), 3 validation or simulation failure.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import analysis
from .combinatorics import baranyai
from .constructions import group_replicate, gtst, hybrid, mn_pda, square_cyclic, tst
from .core import format_fraction, metrics, read_array, validate, write_array
from .delivery import simulate
from .errors import DomainError, ParseError, PdaError, VerificationError

EXIT_OK, EXIT_DOMAIN, EXIT_PARSE, EXIT_VERIFY = 0, 1, 2, 3


def _bool(x: bool) -> str:
    return "true" if x else "false"


def _need(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise DomainError(f"family {args.family} requires " + ", ".join("--" + n for n in missing))


def cmd_construct(args) -> int:
    fam = args.family
    trace = None
    if fam == "mn":
        _need(args, "K", "t")
        P = mn_pda(args.K, args.t)
    elif fam in ("tst", "square"):
        _need(args, "G", "L", "K", "t")
        P = (tst if fam == "tst" else square_cyclic)(args.G, args.L, args.K, args.t)
    elif fam == "group":
        _need(args, "base", "m", "L")
        P = group_replicate(read_array(args.base), args.m, args.L)
    elif fam == "gtst":
        _need(args, "G", "L", "L1", "K1", "t1", "m")
        P = gtst(args.G, args.L1, args.K1, args.t1, args.m, args.L)
    else:
        _need(args, "G", "L", "L1", "K1", "t1")
        trace = hybrid(args.G, args.L, args.L1, args.K1, args.t1)
        P = trace.P
    write_array(P, args.output)
    if trace is not None and args.trace:
        for path in trace.export(args.trace):
            print(f"trace={path}")
    print(f"wrote={args.output}")
    print("params=" + ",".join(str(v) for v in P.params))
    return EXIT_OK


def _frac_lines(key: str, value: Fraction, as_float: bool) -> list[str]:
    lines = [f"{key}={format_fraction(value)}"]
    if as_float:
        lines.append(f"{key}_float={float(value):.12g}")
    return lines


def cmd_verify(args) -> int:
    P = read_array(args.file)
    rep = validate(P)
    out = [f"{k}={v}" for k, v in zip(("G", "L", "K", "F", "Z", "S"), P.params)]
    out += [f"c1={_bool(rep.c1_ok)}", f"c2={_bool(rep.c2_ok)}", f"c3={_bool(rep.c3_ok)}",
            f"c4a={_bool(rep.c4a_ok)}", f"c4b={_bool(rep.c4b_ok)}",
            "z_per_column=" + ",".join(map(str, rep.z_per_column)),
            f"valid={_bool(rep.ok)}"]
    if rep.ok:
        m = metrics(P)
        out += _frac_lines("memory_ratio", m.memory_ratio, args.float)
        out += _frac_lines("sum_dof", m.sum_dof, args.float)
        out += [f"mu={m.mu}", f"rho={m.rho}"]
        out += _frac_lines("dof_upper_bound", m.dof_upper_bound, args.float)
        out.append(f"optimal={_bool(m.is_optimal)}")
    out.append(f"violations={len(rep.violations)}")
    out += ["violation=" + v.describe() for v in rep.violations]
    print("\n".join(out))
    return EXIT_OK if rep.ok else EXIT_VERIFY


def cmd_simulate(args) -> int:
    P = read_array(args.file)
    rep = simulate(P, seed=args.seed, trials=args.trials, tol=args.tol, threads=args.threads)
    if args.dump:
        rep.write_csv(args.dump)
    print(f"trials={rep.trials}")
    print(f"blocks_run={rep.blocks_run}")
    print(f"max_zf_residual={rep.max_zf_residual:.3e}")
    print(f"max_decode_error={rep.max_decode_error:.3e}")
    print(f"rank_ok={_bool(rep.min_precoder_rank_ok)}")
    print(f"mean_block_dof={format_fraction(rep.mean_block_dof)}")
    print(f"success={_bool(rep.success)}")
    return EXIT_OK if rep.success else EXIT_VERIFY


def cmd_bound(args) -> int:
    try:
        gamma = Fraction(args.gamma)
    except (ValueError, ZeroDivisionError):
        raise DomainError(f"--gamma must be a rational P/Q, got {args.gamma!r}") from None
    if not 0 <= gamma <= 1:
        raise DomainError(f"--gamma must lie in [0, 1], got {args.gamma}")
    print(f"theorem2={format_fraction(analysis.dof_upper_bound(args.G, args.L, args.K, gamma))}")
    t = gamma * args.K
    if t.denominator == 1 and 1 <= t < args.K:
        best, omega, beta = analysis.tmma_opt(args.G, args.L, args.K, int(t))
        print(f"lemma1={best}/1")
        print(f"lemma1_omega={omega}")
        print(f"lemma1_beta={beta}")
    else:
        print("lemma1=na")
    return EXIT_OK


def _parse_range(text: str, as_fraction: bool) -> list:
    conv = Fraction if as_fraction else int
    try:
        if ":" in text:
            parts = [conv(p) for p in text.split(":")]
            if len(parts) not in (2, 3):
                raise ValueError
            lo, hi = parts[0], parts[1]
            step = parts[2] if len(parts) == 3 else conv(1)
            if step <= 0:
                raise ValueError
            vals, v = [], lo
            while v <= hi:
                vals.append(v)
                v += step
            return vals
        return [conv(p) for p in text.split(",") if p]
    except (ValueError, ZeroDivisionError):
        raise DomainError(f"--range must be 'lo:hi[:step]' or a comma list, got {text!r}") from None


def cmd_compare(args) -> int:
    fams = [f for f in args.families.split(",") if f]
    unknown = [f for f in fams + [args.baseline] if f not in analysis.FAMILIES]
    if unknown:
        raise DomainError(f"unknown families {unknown}; choose from {', '.join(analysis.FAMILIES)}")
    grid = []
    for v in _parse_range(args.range, args.axis == "gamma"):
        t = v if args.axis == "t" else v * args.K
        if args.axis == "gamma" and Fraction(t).denominator != 1:
            raise DomainError(f"gamma={v} gives non-integer t={t} at K={args.K}")
        grid.append(analysis.GridPoint(args.G, args.L, args.K, int(t), args.L1))
    rows = analysis.sweep_compare(fams, grid, baseline=args.baseline)
    if args.output in (None, "-"):
        analysis.write_compare_csv(rows, sys.stdout)
    else:
        analysis.write_compare_csv(rows, args.output)
    return EXIT_OK


def cmd_baranyai(args) -> int:
    f = baranyai(range(1, args.v + 1), args.alpha)
    print(f"# factorization v={args.v} alpha={args.alpha} classes={f.num_classes}")
    for d, cls in enumerate(f.classes, 1):
        print(f"# class {d}: " + " ".join("{" + ",".join(map(str, b)) + "}" for b in cls))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="pdakit", description="Construct, verify and simulate MIMO-PDAs.")
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", help="build an array and write it to a file")
    c.add_argument("--family", required=True, choices=["mn", "tst", "square", "group", "gtst", "hybrid"])
    for name in ("G", "L", "K", "t", "K1", "t1", "L1", "m"):
        c.add_argument(f"--{name}", type=int)
    c.add_argument("--base", help="base array file for --family group")
    c.add_argument("-o", "--output", required=True)
    c.add_argument("--trace", metavar="DIR", help="write hybrid intermediates here")
    c.set_defaults(func=cmd_construct)

    v = sub.add_parser("verify", help="check conditions and print metrics")
    v.add_argument("file")
    v.add_argument("--float", action="store_true", help="also print decimal values")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("simulate", help="zero-forcing delivery over random channels")
    s.add_argument("file")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--trials", type=int, default=10)
    s.add_argument("--tol", type=float, default=1e-6)
    s.add_argument("--threads", type=int)
    s.add_argument("--dump", metavar="CSV")
    s.set_defaults(func=cmd_simulate)

    b = sub.add_parser("bound", help="sum-DoF upper bound and its brute-force check")
    for name in ("G", "L", "K"):
        b.add_argument(f"--{name}", type=int, required=True)
    b.add_argument("--gamma", required=True, help="memory ratio as P/Q")
    b.set_defaults(func=cmd_bound)

    cp = sub.add_parser("compare", help="subpacketization table as CSV")
    cp.add_argument("--families", required=True, help="comma list of " + ",".join(analysis.FAMILIES))
    for name in ("G", "L", "K"):
        cp.add_argument(f"--{name}", type=int, required=True)
    cp.add_argument("--L1", type=int)
    cp.add_argument("--axis", choices=["t", "gamma"], required=True)
    cp.add_argument("--range", required=True)
    cp.add_argument("--baseline", default="tst")
    cp.add_argument("-o", "--output")
    cp.set_defaults(func=cmd_compare)

    z = sub.add_parser("baranyai", help="print a canonical factorization")
    z.add_argument("--v", type=int, required=True)
    z.add_argument("--alpha", type=int, required=True)
    z.set_defaults(func=cmd_baranyai)
    return ap


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except (ParseError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except VerificationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except PdaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
