"""Command-line front end: ``cubewalk <command> [flags]``.

Every command prints a ``config:`` line first; re-running with those flags
reproduces its artifacts bit for bit.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, dataclass, field
from pathlib import Path

from . import FIXTURES, load_fixture
from .graycode import (
    ConstructionError,
    balance_class,
    build_balanced_code,
    codeword_listing,
    transition_counts,
    write_codes,
)
from .markov import (
    is_doubly_stochastic,
    markov_lazy,
    markov_uniform,
    mixing_time,
    practical_mixing_time,
)
from .metric import ExtendedPoint, distance
from .ncube import (
    BooleanMap,
    completeness_b,
    f_star,
    function_from_cycle,
    gamma,
    gamma_P,
    is_strongly_connected,
    negation,
)
from .prng import make_generator, stream_bits
from .stats import THRESHOLD, chi_square_uniformity, export_bits, monobit
from .stoptime import estimate_expected_stop, summary_csv

ANALYZE_CAP = 10
MIN_BITS = 3


@dataclass
class RunConfig:
    command: str
    seed: int
    n_bits: int | None = None
    fixture: str | None = None
    b: int | None = None
    trials: int | None = None
    eps: float | None = None
    out: str | None = None
    extra: dict = field(default_factory=dict)

    def line(self) -> str:
        payload = {k: v for k, v in asdict(self).items() if v not in (None, {})}
        return "config: " + json.dumps(payload, sort_keys=True)


class UsageError(Exception):
    pass


def _resolve_map(args) -> tuple[BooleanMap, str]:
    """Map named by --fixture, or the one built from a fresh code on --n bits."""
    fx = args.fixture
    if fx is None:
        if args.n is None:
            raise UsageError("give --fixture or --n")
        _check_n(args.n)
        return function_from_cycle(build_balanced_code(args.n, args.seed)), f"generated(n={args.n})"
    if fx in FIXTURES:
        return load_fixture(fx), fx
    if fx == "fstar":
        return f_star(), fx
    if fx == "negation":
        if args.n is None:
            raise UsageError("--fixture negation needs --n")
        return negation(args.n), fx
    path = Path(fx)
    if not path.is_file():
        raise UsageError(f"fixture {fx!r} is neither a known name nor a file")
    return BooleanMap.from_line(path.read_text().strip()), str(path)


def _check_n(n: int, cap: int | None = None):
    if n < MIN_BITS:
        raise UsageError(f"--n must be at least {MIN_BITS}, got {n}")
    if cap is not None and n > cap:
        raise UsageError(f"--n {n} exceeds the cap of {cap} for this command (override with --cap)")


def _emit(text: str, out: str | None):
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def cmd_gen_code(args) -> int:
    if args.n is None:
        raise UsageError("gen-code needs --n")
    _check_n(args.n)
    print(RunConfig("gen-code", args.seed, n_bits=args.n, out=args.out,
                    extra={"canonical": args.canonical, "format": args.format}).line())
    code = build_balanced_code(args.n, args.seed, canonical=args.canonical)
    tc = transition_counts(code)
    print(f"balance: {balance_class(code).value}")
    print("counts: " + ",".join(str(c) for c in tc.counts))
    text = codeword_listing(code) if args.format == "words" else write_codes([code])
    _emit(text, args.out)
    return 0


def cmd_gen_fun(args) -> int:
    f, label = _resolve_map(args)
    print(RunConfig("gen-fun", args.seed, n_bits=f.n_bits, fixture=label, out=args.out).line())
    if f.h is not None:
        print("h: " + ",".join(str(int(v)) for v in f.h))
    _emit(f.to_line() + "\n", args.out)
    return 0


def _safe(fn, *a):
    try:
        return fn(*a)
    except RuntimeError:
        return None


def cmd_analyze(args) -> int:
    f, label = _resolve_map(args)
    if f.n_bits > args.cap:
        raise UsageError(f"analysis of {f.n_bits} bits exceeds the cap of {args.cap} (override with --cap)")
    eps = args.eps if args.eps is not None else 1e-6
    print(RunConfig("analyze", args.seed, n_bits=f.n_bits, fixture=label, eps=eps, out=args.out,
                    extra={"cap": args.cap}).line())
    m = markov_lazy(f) if f.h is not None else markov_uniform(f)
    connected = is_strongly_connected(gamma(f))
    ds = is_doubly_stochastic(m)
    report = {
        "n_bits": f.n_bits,
        "matrix": "lazy" if f.h is not None else "uniform",
        "strongly_connected": connected,
        "doubly_stochastic": ds,
        "practical_b": _safe(practical_mixing_time, m, eps),
        "t_mix": _safe(mixing_time, m, eps),
        "completeness_b": completeness_b(f),
        "gamma_b_strongly_connected": {str(b): is_strongly_connected(gamma_P(f, [b])) for b in range(1, 7)},
    }
    _emit(json.dumps(report, indent=2, sort_keys=True) + "\n", args.out)
    return 0 if connected and ds else 1


def cmd_stoptime(args) -> int:
    ns = [int(t) for t in str(args.n).split(",")] if args.n is not None else [4, 6, 8]
    for n in ns:
        _check_n(n)
    trials = args.trials or 10_000
    print(RunConfig("stoptime", args.seed, trials=trials, out=args.out,
                    extra={"n": ns, "jobs": args.jobs}).line())
    rows = []
    for n in ns:
        f = function_from_cycle(build_balanced_code(n, args.seed))
        rows.append(estimate_expected_stop(f, trials, args.seed, jobs=args.jobs))
    _emit(summary_csv(rows), args.out)
    return 0 if all(r.mean <= r.bound for r in rows) else 1


def cmd_bits(args) -> int:
    f, label = _resolve_map(args)
    variant = args.variant
    b = args.b
    if b is None:
        m = markov_lazy(f) if variant == "chi16" else markov_uniform(f)
        b = practical_mixing_time(m)
    count = args.count
    fmt = "packed" if args.format == "packed" else "ascii"
    print(RunConfig("bits", args.seed, n_bits=f.n_bits, fixture=label, b=b, out=args.out,
                    extra={"variant": variant, "count": count, "format": fmt}).line())
    g = make_generator(f, b, args.seed, variant)
    bits = stream_bits(g, count)
    if args.out is not None:
        written = export_bits(bits, fmt, args.out)
        print(f"wrote {written} bytes to {args.out}")
    reports = [monobit(bits, args.alpha)]
    # re-read the stream as configurations for the cell test
    n = f.n_bits
    whole = bits[: (count // n) * n].reshape(-1, n)
    samples = (whole.astype("int64") << list(range(n - 1, -1, -1))).sum(axis=1)
    if samples.size >= 10 * 2**n:
        reports.append(chi_square_uniformity(samples, n, args.alpha))
    for r in reports:
        print(r.line())
    return 0 if all(r.passed for r in reports) else 1


WORKED_PAIRS = (
    (ExtendedPoint(0, (6, 11, 5), (1, 2), (1, 2, 11), 13), ExtendedPoint(0, (6, 4, 1), (2, 1), (1, 2, 11), 13)),
    (ExtendedPoint(0, (6, 7, 4, 2), (2, 2), (2, 7), 9),
     ExtendedPoint(0, (4, 9, 6, 3, 6, 6, 7, 9, 8), (7, 2), (2, 7), 9)),
)


def cmd_metric_demo(args) -> int:
    print(RunConfig("metric-demo", args.seed, extra={"depth": 2}).line())
    for x, y in WORKED_PAIRS:
        print(distance(x, y, 2))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cubewalk", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, *, n_type=int):
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--n", type=n_type)
        sp.add_argument("--out")
        return sp

    sp = common(sub.add_parser("gen-code", help="balanced cyclic Gray code"))
    sp.add_argument("--canonical", action="store_true")
    sp.add_argument("--format", choices=["sequence", "words"], default="sequence")
    sp.set_defaults(func=cmd_gen_code)

    sp = common(sub.add_parser("gen-fun", help="map whose removed cycle is a fixture or a fresh code"))
    sp.add_argument("--fixture")
    sp.set_defaults(func=cmd_gen_fun)

    sp = common(sub.add_parser("analyze", help="connectivity, stochasticity and mixing report"))
    sp.add_argument("--fixture")
    sp.add_argument("--eps", type=float)
    sp.add_argument("--cap", type=int, default=ANALYZE_CAP)
    sp.set_defaults(func=cmd_analyze)

    sp = common(sub.add_parser("stoptime", help="Monte-Carlo stopping times, CSV"), n_type=str)
    sp.add_argument("--trials", type=int)
    sp.add_argument("--jobs", type=int, default=1)
    sp.set_defaults(func=cmd_stoptime)

    sp = common(sub.add_parser("bits", help="generator bitstream with a quick quality summary"))
    sp.add_argument("--fixture")
    sp.add_argument("--b", type=int)
    sp.add_argument("--variant", choices=["chi14", "chi16"], default="chi16")
    sp.add_argument("--count", type=int, default=1_000_000)
    sp.add_argument("--format", choices=["ascii", "packed"], default="ascii")
    sp.add_argument("--alpha", type=float, default=THRESHOLD)
    sp.set_defaults(func=cmd_bits)

    sp = sub.add_parser("metric-demo", help="digit-block distances of two worked pairs")
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_metric_demo)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.error(str(exc))
    except (ConstructionError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
