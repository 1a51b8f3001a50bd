"""Monte-Carlo estimate of the stopping time at which every component is fair.

A component becomes fair the first time it is drawn together with a set
coin while it can actually switch at the current configuration.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .ncube import BooleanMap
from .prng import WordSource

__all__ = [
    "StopSummary",
    "StopTrial",
    "bound",
    "curve",
    "estimate_expected_stop",
    "simulate_stop",
    "summary_csv",
]


@dataclass(frozen=True)
class StopTrial:
    steps: int
    seed: object
    start: int


@dataclass(frozen=True)
class StopSummary:
    n_bits: int
    trials: int
    mean: float
    std_error: float
    bound: float
    curve: float


def bound(n: int) -> float:
    """Upper bound 8n^2 + 4n ln(n+1) on the expected stopping time."""
    if n < 1:
        raise ValueError("n must be positive")
    return 8 * n * n + 4 * n * math.log(n + 1)


def curve(n: int) -> float:
    """Empirical fit 2n ln(2n+8)."""
    if n < 1:
        raise ValueError("n must be positive")
    return 2 * n * math.log(2 * n + 8)


def _run(images: np.ndarray, n: int, x0: int, src: WordSource) -> int:
    x, fair, nbit = x0, 0, 0
    chunk = 8 * n * n
    while True:
        words = src.peek(chunk)
        used, x, fair, nbit, done = _kernels.stop_run(words, images, n, x, fair, nbit)
        src.advance(int(used))
        if done:
            return int(nbit)


def simulate_stop(f: BooleanMap, x0: int, seed) -> StopTrial:
    if f.h is None:
        raise ValueError("stopping-time simulation needs the removed-edge directions h")
    if not 0 <= x0 < 2**f.n_bits:
        raise ValueError(f"start {x0} is not an {f.n_bits}-bit configuration")
    images = np.ascontiguousarray(f.images, dtype=np.int64)
    steps = _run(images, f.n_bits, x0, WordSource(seed, chunk=16 * f.n_bits**2))
    return StopTrial(steps, seed, x0)


def _trial(images: np.ndarray, n: int, seed: int, k: int) -> int:
    src = WordSource([seed, k], chunk=16 * n * n)
    x0 = 0
    for _ in range(n):
        x0 = (x0 << 1) | src.uniform_bit()
    return _run(images, n, x0, src)


def estimate_expected_stop(f: BooleanMap, trials: int, seed: int, jobs: int = 1) -> StopSummary:
    """Mean stopping time over ``trials`` runs from uniformly drawn starts.

    Trial ``k`` draws from its own source seeded with ``(seed, k)``, so
    the result does not depend on ``jobs``.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    if f.h is None:
        raise ValueError("stopping-time simulation needs the removed-edge directions h")
    n = f.n_bits
    images = np.ascontiguousarray(f.images, dtype=np.int64)
    if jobs > 1:
        with ThreadPoolExecutor(jobs) as pool:
            steps = list(pool.map(lambda k: _trial(images, n, seed, k), range(trials)))
    else:
        steps = [_trial(images, n, seed, k) for k in range(trials)]
    arr = np.asarray(steps, dtype=np.float64)
    se = float(arr.std(ddof=1) / math.sqrt(trials)) if trials > 1 else 0.0
    return StopSummary(n, trials, float(arr.mean()), se, bound(n), curve(n))


def summary_csv(rows: list[StopSummary]) -> str:
    lines = ["n,trials,mean,std_error,bound,curve"]
    for r in rows:
        lines.append(f"{r.n_bits},{r.trials},{r.mean:.6f},{r.std_error:.6f},{r.bound:.6f},{r.curve:.6f}")
    return "\n".join(lines) + "\n"
