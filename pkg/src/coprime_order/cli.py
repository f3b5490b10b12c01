"""
Command-line front end.

    coprime-order rho 6 6 --exact
    coprime-order figure 6 2000 -o d6_2000.csv
    coprime-order verify y0 --samples 10000 --seed 42
    coprime-order constants 6
    coprime-order monotonicity 26 24 --amax 999 --amin 0
    coprime-order oracle 6 6

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 domain error,
4 resource-cap error.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import sys
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from pathlib import Path

from . import __version__
from .arith import make_modulus
from .asymptotics import f_mpfr, k_constant, kappa, lambda_constant
from .engine import NumericConfig, constant_C, iter_rho, rho_at, rho_series, to_mpfr
from .errors import DomainError, ResourceCapError
from .explorer import scan_monotonicity
from .oracle import (
    count_coprime_order_direct, count_coprime_order_partitions, count_no_cycle_divisible,
)
from .verify import DEFAULT_SEED, SUITES, run_suite

log = logging.getLogger(__name__)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_DOMAIN, EXIT_CAP = 0, 1, 2, 3, 4


@dataclass
class RunManifest:
    command: str
    parameters: dict
    backend: dict
    tool_version: str = __version__
    elapsed_ms: int = 0
    outputs: list = field(default_factory=list)


def _config(args) -> NumericConfig:
    return NumericConfig(
        exact_cutoff=args.exact_cutoff,
        float_precision_bits=args.precision,
        exact_form=args.exact_form,
    )


def _decimal(value, digits: int) -> str:
    return format(to_mpfr(value, int(digits * 3.33) + 32), f".{digits}g")


def _format_rho(value, args) -> str:
    if isinstance(value, Fraction):
        text = str(value)
        if args.digits:
            text += "\t" + _decimal(value, args.digits)
        return text
    return _decimal(value, args.digits or 20)


def cmd_rho(args) -> int:
    cfg = _config(args)
    backend = "exact" if args.exact else "float" if args.float else None
    if args.range:
        lo, hi = args.range
        series = rho_series(args.m, hi, cfg, backend)
        rows = [(n, _format_rho(series[n], args)) for n in range(lo, hi + 1)]
        if args.csv:
            with open(args.csv, "w", newline="") as fh:
                w = csv.writer(fh, lineterminator="\n")
                w.writerow(["n", "rho"])
                w.writerows(rows)
        else:
            for n, text in rows:
                print(f"{n}\t{text}")
        return EXIT_OK
    if args.n is None:
        raise DomainError("give n or --range LO HI")
    print(_format_rho(rho_at(args.m, args.n, cfg, backend), args))
    return EXIT_OK


def figure_rows(m: int, n_max: int, cfg: NumericConfig):
    """(n, f(n, m) to 12 significant digits) for m < n <= n_max."""
    mod = make_modulus(m)
    if n_max < m + 1:
        raise DomainError("n_max must be at least m + 1")
    bits = cfg.float_precision_bits + 64
    stream = iter_rho(mod, cfg)
    for n in range(n_max + 1):
        value = next(stream)
        if n > m:
            yield n, f"{float(f_mpfr(mod, n, value, bits)):.12g}"


def write_figure(m: int, n_max: int, path: Path, cfg: NumericConfig) -> int:
    rows = 0
    with open(path, "w", newline="", encoding="ascii") as fh:
        fh.write("X,Y\n")
        for n, y in figure_rows(m, n_max, cfg):
            fh.write(f"{n},{y}\n")
            rows += 1
    return rows


def cmd_figure(args) -> int:
    cfg = _config(args)
    start = time.perf_counter()
    path = Path(args.output or f"d{args.m}_{args.n_max}.csv")
    rows = write_figure(args.m, args.n_max, path, cfg)
    manifest = RunManifest(
        "figure", {"m": args.m, "n_max": args.n_max}, asdict(cfg),
        elapsed_ms=int((time.perf_counter() - start) * 1000), outputs=[str(path)],
    )
    path.with_name(path.name + ".manifest.json").write_text(json.dumps(asdict(manifest), indent=2) + "\n")
    print(f"wrote {rows} rows to {path}")
    return EXIT_OK


def _suite_kwargs(args, cfg: NumericConfig) -> dict:
    name = args.suite
    kw: dict = {}
    if name == "oracle":
        kw = {"nmax": args.nmax or 9, "pmax": args.pmax, "cfg": cfg}
    elif name == "theorem1":
        kw = {"nmax": args.nmax or 10_000, "cfg": cfg}
        if args.m:
            kw["moduli"] = args.m
    elif name == "lemma22":
        kw = {"grid": args.grid}
    elif name == "y0":
        kw = {"samples": args.samples, "seed": args.seed}
    elif name == "theorem32":
        kw = {"amax": args.amax or 1000, "cfg": cfg}
        if args.p:
            kw["primes"] = tuple(args.p)
    elif name == "monotonicity":
        kw = {"cfg": cfg}
        if args.amax:
            kw["amax"] = args.amax
    elif name == "constants":
        kw = {"cfg": cfg}
    return kw


def cmd_verify(args) -> int:
    cfg = _config(args)
    start = time.perf_counter()
    result = run_suite(args.suite, **_suite_kwargs(args, cfg))
    elapsed = int((time.perf_counter() - start) * 1000)
    status = "PASS" if result.passed(args.strict) else "FAIL"
    print(f"{status} {result.name}: {result.checks} checks, "
          f"{len(result.failures)} failures, {len(result.flagged)} flagged, {elapsed} ms")
    for f in result.failures[:20]:
        print(f"  failure: {f}")
    for f in result.flagged:
        print(f"  flagged: {f}")
    if args.json:
        params = {k: v for k, v in vars(args).items() if k not in ("func", "json")}
        manifest = RunManifest("verify", params, asdict(cfg), elapsed_ms=elapsed)
        payload = {"manifest": asdict(manifest), "result": result.to_dict()}
        Path(args.json).write_text(json.dumps(payload, indent=2, default=str) + "\n")
    return EXIT_OK if result.passed(args.strict) else EXIT_FAIL


def cmd_constants(args) -> int:
    cfg = _config(args)
    mod = make_modulus(args.m)
    C = constant_C(mod, cfg)
    kap, lam = kappa(args.m), lambda_constant(args.m)
    print(f"m = {args.m} (radical {mod.radical}, phi = {mod.phi}, y = {mod.y})")
    print(f"C(m)     = {C}  ({float(C):.12g})")
    if mod.is_prime:
        print(f"k(m)     = {k_constant(mod.radical):.12g}")
    print(f"kappa_m  = {kap:.12g}")
    print(f"lambda_m = {lam:.12g}")
    ok = float(C) <= lam <= 1
    print(f"C(m) <= lambda_m <= 1: {'yes' if ok else 'NO'}")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_monotonicity(args) -> int:
    report = scan_monotonicity(args.m, args.b, args.amax, _config(args), a_lo=args.amin)
    r = report.modulus.radical
    print(f"m = {args.m}, residue b = {args.b} (label {report.label}), "
          f"a in [{report.a_lo}, {report.a_hi}], n = a*{r} + {args.b}")
    for d, length in report.runs:
        print(f"  {d.value}\t{length}")
    print(f"eventually monotonic from a = {report.eventually_monotonic_from}")
    if report.unresolved:
        print(f"unresolved comparisons at a = {report.unresolved}")
    return EXIT_OK


def cmd_oracle(args) -> int:
    fn = {
        "direct": count_coprime_order_direct,
        "partitions": count_coprime_order_partitions,
        "nocycle": count_no_cycle_divisible,
    }[args.method]
    print(fn(args.n, args.m))
    return EXIT_OK


def _add_numeric(p: argparse.ArgumentParser) -> None:
    p.add_argument("--precision", type=int, default=128, help="float mantissa bits")
    p.add_argument("--exact-cutoff", type=int, default=5000)
    p.add_argument("--exact-form", choices=("rational", "integer"), default="rational")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="coprime-order",
        description="Proportions of permutations with order coprime to m.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("rho", help="rho(n, m)")
    p.add_argument("m", type=int)
    p.add_argument("n", type=int, nargs="?")
    p.add_argument("--range", type=int, nargs=2, metavar=("LO", "HI"))
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--exact", action="store_true")
    mode.add_argument("--float", action="store_true")
    p.add_argument("--digits", type=int, default=0, help="also print a decimal expansion")
    p.add_argument("--csv", help="write the range as CSV")
    _add_numeric(p)
    p.set_defaults(func=cmd_rho)

    p = sub.add_parser("figure", help="CSV of f(n, m) for m < n <= n_max")
    p.add_argument("m", type=int)
    p.add_argument("n_max", type=int)
    p.add_argument("-o", "--output")
    _add_numeric(p)
    p.set_defaults(func=cmd_figure)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=sorted(SUITES))
    p.add_argument("--nmax", type=int)
    p.add_argument("--pmax", type=int, default=40)
    p.add_argument("--m", type=int, nargs="+")
    p.add_argument("--p", type=int, nargs="+")
    p.add_argument("--amax", type=int)
    p.add_argument("--grid", type=int, default=200)
    p.add_argument("--samples", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--strict", action="store_true", help="flagged soft checks also fail")
    p.add_argument("--json", help="write a JSON summary")
    _add_numeric(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("constants", help="C(m), k(m), kappa_m, lambda_m")
    p.add_argument("m", type=int)
    _add_numeric(p)
    p.set_defaults(func=cmd_constants)

    p = sub.add_parser("monotonicity", help="run structure of f(a m + b, m)")
    p.add_argument("m", type=int)
    p.add_argument("b", type=int)
    p.add_argument("--amax", type=int, default=1000)
    p.add_argument("--amin", type=int)
    _add_numeric(p)
    p.set_defaults(func=cmd_monotonicity)

    p = sub.add_parser("oracle", help="brute-force counts")
    p.add_argument("m", type=int)
    p.add_argument("n", type=int)
    p.add_argument("--method", choices=("direct", "partitions", "nocycle"), default="partitions")
    p.set_defaults(func=cmd_oracle)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    try:
        return args.func(args)
    except ResourceCapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
