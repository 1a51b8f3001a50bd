"""End-to-end acceptance checks, each at its stated tolerance.

Each check prints ``[PASS]`` or ``[FAIL]`` with its measured values. The
lines are collected again in the terminal summary. Run this file directly
to print only the criteria.
"""

import time
from collections import Counter
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from cubewalk import FIXTURES, load_fixture
from cubewalk.cli import WORKED_PAIRS, main
from cubewalk.graycode import balance_targets, build_balanced_code, is_cyclic_gray, transition_counts
from cubewalk.markov import (
    is_doubly_stochastic,
    log2_bound,
    markov_lazy,
    markov_uniform,
    mixing_time,
    practical_mixing_time,
)
from cubewalk.metric import distance
from cubewalk.ncube import f_star, function_from_cycle, gamma, gamma_P, is_strongly_connected, negation
from cubewalk.prng import make_generator, outputs, to_bit_array
from cubewalk.stats import chi_square_uniformity, monobit
from cubewalk.stoptime import estimate_expected_stop

try:
    from conftest import ACCEPTANCE_LINES
except ImportError:  # run as a script
    ACCEPTANCE_LINES = {}

TITLES = {
    1: "golden Gray codes",
    2: "balance at scale",
    3: "lazy matrix of the 3-bit example",
    4: "connectivity and double stochasticity",
    5: "practical mixing times of the reference maps",
    6: "mixing-time doubling bound",
    7: "stopping-time bound",
    8: "digit-block distance strings",
    9: "power graphs of the negation map",
    10: "generator quality at desk scale",
    11: "CLI determinism",
}


def report(k: int, ok: bool, detail: str):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {k:>2} ({TITLES[k]}): {detail}"
    ACCEPTANCE_LINES[k] = line
    print(line)
    assert ok, line


def test_criterion_01_golden_codes():
    start = time.perf_counter()
    s3 = build_balanced_code(3, canonical=True).seq
    s4 = build_balanced_code(4, canonical=True).seq
    elapsed = time.perf_counter() - start
    want3 = (1, 2, 1, 3, 1, 2, 1, 3)
    want4 = (2, 3, 4, 1, 4, 3, 2, 3, 1, 4, 1, 3, 2, 1, 2, 4)
    ok = s3 == want3 and s4 == want4 and elapsed < 1
    report(1, ok, f"S3={','.join(map(str, s3))} S4={','.join(map(str, s4))} in {elapsed:.3f}s")


def test_criterion_02_balance_at_scale():
    reference = {
        3: (2, 2, 4),
        4: (4, 4, 4, 4),
        5: (6, 6, 8, 6, 6),
        6: (10, 10, 10, 10, 12, 12),
        7: (18, 18, 20, 18, 18, 18, 18),
    }
    start = time.perf_counter()
    bad = []
    for n in range(3, 13):
        t = balance_targets(n)
        if n in reference and t.targets != reference[n]:
            bad.append(f"targets({n})")
        for seed in range(10):
            s = build_balanced_code(n, seed)
            counts = transition_counts(s).counts
            if not is_cyclic_gray(s) or not set(counts) <= {t.a, t.a + 2} or Counter(counts) != Counter(t.targets):
                bad.append(f"n={n} seed={seed}")
    elapsed = time.perf_counter() - start
    report(2, not bad and elapsed < 30, f"100 codes, N=3..12, failures={bad or 'none'}, {elapsed:.2f}s")


def test_criterion_03_lazy_matrix():
    sixths = [
        [4, 1, 1, 0, 0, 0, 0, 0],
        [1, 4, 0, 0, 0, 1, 0, 0],
        [0, 0, 4, 1, 0, 0, 1, 0],
        [0, 1, 1, 4, 0, 0, 0, 0],
        [1, 0, 0, 0, 4, 0, 1, 0],
        [0, 0, 0, 0, 1, 4, 0, 1],
        [0, 0, 0, 0, 1, 0, 4, 1],
        [0, 0, 0, 1, 0, 1, 0, 4],
    ]
    got = markov_lazy(f_star()).as_fractions()
    want = [[Fraction(v, 6) for v in row] for row in sixths]
    diffs = sum(g != w for gr, wr in zip(got, want) for g, w in zip(gr, wr))
    report(3, diffs == 0, f"{diffs} of 64 entries differ (exact rationals)")


_seen_4: list[tuple[int, int]] = []


@settings(max_examples=25, deadline=None)
@given(n=st.integers(3, 10), seed=st.integers(0, 2**31))
def _structural(n, seed):
    f = function_from_cycle(build_balanced_code(n, seed))
    _seen_4.append((n, seed))
    assert is_strongly_connected(gamma(f)), (n, seed)
    assert is_doubly_stochastic(markov_uniform(f)), (n, seed)
    assert is_doubly_stochastic(markov_lazy(f)), (n, seed)


def test_criterion_04_structure():
    _seen_4.clear()
    try:
        _structural()
        ok, err = True, ""
    except AssertionError as exc:
        ok, err = False, f" counterexample {exc}"
    ns = sorted({n for n, _ in _seen_4})
    report(4, ok, f"{len(_seen_4)} generated maps, N in {ns[0]}..{ns[-1]}{err}")


def test_criterion_05_practical_mixing():
    want = dict(zip(FIXTURES, (64, 78, 88, 99, 109)))
    start = time.perf_counter()
    got, tv = {}, {}
    for k in FIXTURES:
        m = markov_lazy(load_fixture(k))
        got[k] = practical_mixing_time(m, 1e-6)
        tv[k] = mixing_time(m, 1e-6)
    elapsed = time.perf_counter() - start
    ok = all(abs(got[k] - want[k]) <= 1 for k in FIXTURES) and elapsed < 120
    shown = " ".join(f"{k}={got[k]}/{want[k]}" for k in FIXTURES)
    tv_shown = ",".join(str(tv[k]) for k in FIXTURES)
    report(5, ok, f"measured/expected {shown}; total variation gives {tv_shown}; {elapsed:.2f}s")


def test_criterion_06_doubling_bound():
    bad = []
    for k in FIXTURES:
        m = markov_lazy(load_fixture(k))
        quarter = mixing_time(m, 0.25)
        for eps in (1e-2, 1e-4, 1e-6):
            if mixing_time(m, eps) > log2_bound(eps) * quarter:
                bad.append((k, eps))
    report(6, not bad, f"violations={bad or 'none'} over 5 maps x 3 eps")


def test_criterion_07_stopping_time():
    start = time.perf_counter()
    parts, ok = [], True
    for n in (4, 6, 8, 12, 16):
        f = function_from_cycle(build_balanced_code(n, 0))
        s = estimate_expected_stop(f, 10_000, 0)
        ok &= s.mean + 5 * s.std_error <= s.bound and 0.5 * s.curve <= s.mean <= 2 * s.curve
        parts.append(f"N={n}: {s.mean:.2f}+-{s.std_error:.2f} (bound {s.bound:.0f}, curve {s.curve:.2f})")
    elapsed = time.perf_counter() - start
    report(7, ok and elapsed < 120, "; ".join(parts) + f"; {elapsed:.1f}s")


def test_criterion_08_metric_strings():
    want = ("0.01 0004000000000000000000 01 1005", "0.5 2263667 1 5600000")
    got = [str(distance(x, y, 2)) for x, y in WORKED_PAIRS]
    hits = [g.startswith(w) for g, w in zip(got, want)]
    detail = "; ".join(f"{'ok' if h else 'MISMATCH'} got {g!r} want prefix {w!r}" for g, w, h in zip(got, want, hits))
    report(8, all(hits), detail)


def test_criterion_09_negation_power_graphs():
    connected = []
    for n in (2, 3):
        for b in range(1, 7):
            if is_strongly_connected(gamma_P(negation(n), [b])):
                connected.append((n, b))
    report(9, not connected, f"strongly connected for (N, b) = {connected or 'none'}")


def test_criterion_10_generator_quality():
    f = load_fixture("a")
    parts, ok = [], True
    for variant in ("chi16", "chi14"):
        g = make_generator(f, 64, 2024, variant)
        values = outputs(g, 10**6)
        chi = chi_square_uniformity(values, f.n_bits, alpha=1e-3)
        mono = monobit(to_bit_array(values, f.n_bits), alpha=1e-3)
        ok &= chi.passed and mono.passed
        parts.append(f"{variant}: chi2 p={chi.p_value:.3g}, monobit p={mono.p_value:.3g}")
    report(10, ok, "; ".join(parts) + " (alpha 1e-3, 10^6 outputs)")


def _artifacts(tmp, tag, capsys):
    runs = {
        "gen-code": ["gen-code", "--n", "6", "--seed", "3", "--out", f"{tmp}/{tag}-code.txt"],
        "gen-fun": ["gen-fun", "--n", "5", "--seed", "3", "--out", f"{tmp}/{tag}-fun.txt"],
        "analyze": ["analyze", "--fixture", "b", "--out", f"{tmp}/{tag}-analyze.json"],
        "stoptime": ["stoptime", "--n", "4,5", "--trials", "500", "--jobs", "2", "--out", f"{tmp}/{tag}-stop.csv"],
        "bits": ["bits", "--fixture", "a", "--b", "32", "--count", "50000", "--format", "packed",
                 "--out", f"{tmp}/{tag}-bits.bin"],
        "metric-demo": ["metric-demo"],
    }
    out = {}
    for name, argv in runs.items():
        main(argv)
        stdout = capsys.readouterr().out.replace(f"{tag}-", "")
        path = argv[argv.index("--out") + 1] if "--out" in argv else None
        out[name] = (stdout, open(path, "rb").read() if path else b"")
    return out


def test_criterion_11_cli_determinism(tmp_path, capsys):
    first = _artifacts(tmp_path, "one", capsys)
    second = _artifacts(tmp_path, "two", capsys)
    differing = [k for k in first if first[k] != second[k]]
    report(11, not differing, f"{len(first)} commands re-run, differing={differing or 'none'}")


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
