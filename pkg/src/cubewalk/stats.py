"""Elementary randomness checks and bit export for external test suites."""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from typing import Literal

import numpy as np
from scipy.special import erfc
from scipy.stats import chi2

__all__ = [
    "THRESHOLD",
    "TestReport",
    "chi_square_uniformity",
    "export_bits",
    "import_bits",
    "monobit",
    "runs",
]

THRESHOLD = 1e-4
MIN_BITS = 100


@dataclass(frozen=True)
class TestReport:
    __test__ = False  # keep pytest from collecting this

    name: str
    statistic: float
    p_value: float
    alpha: float = THRESHOLD

    @property
    def passed(self) -> bool:
        return self.p_value >= self.alpha

    def line(self) -> str:
        verdict = "pass" if self.passed else "FAIL"
        return f"{self.name}: statistic={self.statistic:.6g} p={self.p_value:.6g} {verdict} (alpha={self.alpha:g})"


def _as_bits(bits) -> np.ndarray:
    arr = np.asarray(bits, dtype=np.uint8).ravel()
    if arr.size and arr.max() > 1:
        raise ValueError("bits must be 0 or 1")
    return arr


def monobit(bits, alpha: float = THRESHOLD) -> TestReport:
    """Frequency test: normalized excess of ones over zeros."""
    arr = _as_bits(bits)
    if arr.size < MIN_BITS:
        raise ValueError(f"monobit needs at least {MIN_BITS} bits, got {arr.size}")
    s = 2 * int(arr.sum()) - arr.size
    s_obs = abs(s) / math.sqrt(arr.size)
    return TestReport("monobit", s_obs, float(erfc(s_obs / math.sqrt(2))), alpha)


def runs(bits, alpha: float = THRESHOLD) -> TestReport:
    """Runs test; p = 0 when the ones proportion already fails the frequency prerequisite."""
    arr = _as_bits(bits)
    n = arr.size
    if n < MIN_BITS:
        raise ValueError(f"runs needs at least {MIN_BITS} bits, got {n}")
    pi = arr.mean()
    if abs(pi - 0.5) >= 2 / math.sqrt(n):
        return TestReport("runs", float("nan"), 0.0, alpha)
    v_obs = 1 + int(np.count_nonzero(arr[1:] != arr[:-1]))
    num = abs(v_obs - 2 * n * pi * (1 - pi))
    den = 2 * math.sqrt(2 * n) * pi * (1 - pi)
    return TestReport("runs", float(v_obs), float(erfc(num / den)), alpha)


def chi_square_uniformity(samples, n_bits: int, alpha: float = THRESHOLD) -> TestReport:
    cells = 2**n_bits
    arr = np.asarray(samples, dtype=np.int64).ravel()
    if arr.size < 10 * cells:
        raise ValueError(f"need at least {10 * cells} samples for {cells} cells, got {arr.size}")
    if arr.min() < 0 or arr.max() >= cells:
        raise ValueError("sample outside the cube")
    observed = np.bincount(arr, minlength=cells)
    expected = arr.size / cells
    stat = float(((observed - expected) ** 2).sum() / expected)
    return TestReport("chi_square", stat, float(chi2.sf(stat, cells - 1)), alpha)


Format = Literal["ascii", "packed"]


def encode_bits(bits, fmt: Format) -> bytes:
    arr = _as_bits(bits)
    if fmt == "ascii":
        return (arr + ord("0")).tobytes() + b"\n"
    if fmt == "packed":
        return np.packbits(arr, bitorder="big").tobytes()
    raise ValueError(f"unknown format {fmt!r}")


def export_bits(bits, fmt: Format, destination: str | os.PathLike) -> int:
    """Write bits as ASCII '0'/'1' (one line) or packed MSB-first bytes; returns bytes written."""
    data = encode_bits(bits, fmt)
    with open(destination, "wb") as fh:
        fh.write(data)
    return len(data)


def import_bits(source: str | os.PathLike, fmt: Format, count: int | None = None) -> np.ndarray:
    with open(source, "rb") as fh:
        data = fh.read()
    if fmt == "ascii":
        arr = np.frombuffer(data.strip(), dtype=np.uint8) - ord("0")
    elif fmt == "packed":
        arr = np.unpackbits(np.frombuffer(data, dtype=np.uint8), bitorder="big")
    else:
        raise ValueError(f"unknown format {fmt!r}")
    return arr[:count] if count is not None else arr
