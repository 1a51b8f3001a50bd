"""Exact transition matrices of iteration graphs and their mixing behaviour.

Matrices are built exactly (integer numerators over one denominator) and
powered in double precision. Row ``x`` is the distribution after one step
from configuration ``x``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .ncube import BooleanMap

__all__ = [
    "MixingReport",
    "StochasticMatrix",
    "distance_to_uniform",
    "is_doubly_stochastic",
    "markov_lazy",
    "markov_uniform",
    "mixing_report",
    "mixing_time",
    "practical_deviation",
    "practical_mixing_time",
    "tv_distance",
]

DEFAULT_EPS = (0.25, 1e-2, 1e-4, 1e-6)


@dataclass(frozen=True, eq=False)
class StochasticMatrix:
    numerators: np.ndarray
    denominator: int

    def __post_init__(self):
        num = np.asarray(self.numerators, dtype=np.int64).copy()
        if num.ndim != 2 or num.shape[0] != num.shape[1]:
            raise ValueError(f"square matrix expected, got shape {num.shape}")
        if self.denominator <= 0:
            raise ValueError("denominator must be positive")
        num.setflags(write=False)
        object.__setattr__(self, "numerators", num)

    @property
    def n_states(self) -> int:
        return self.numerators.shape[0]

    def __getitem__(self, key) -> Fraction:
        return Fraction(int(self.numerators[key]), self.denominator)

    def as_fractions(self) -> list[list[Fraction]]:
        d = self.denominator
        return [[Fraction(int(v), d) for v in row] for row in self.numerators]

    def to_float(self) -> np.ndarray:
        return self.numerators / self.denominator

    def rows_sum_to_one(self) -> bool:
        return bool(np.all(self.numerators.sum(axis=1) == self.denominator))


def markov_uniform(f: BooleanMap) -> StochasticMatrix:
    """Each of the N components is chosen with probability 1/N."""
    succ = f.successors()
    size = succ.shape[0]
    num = np.zeros((size, size), dtype=np.int64)
    np.add.at(num, (np.repeat(np.arange(size), f.n_bits), succ.ravel()), 1)
    return StochasticMatrix(num, f.n_bits)


def markov_lazy(f: BooleanMap) -> StochasticMatrix:
    """Half-lazy walk: 1/2 + 1/2N on the diagonal, 1/2N per permitted neighbour."""
    if f.h is None:
        raise ValueError("lazy matrix needs the removed-edge directions h")
    n = f.n_bits
    size = 2**n
    xs = np.arange(size)
    num = np.zeros((size, size), dtype=np.int64)
    num[xs, xs] = n + 1
    for i in range(1, n + 1):
        mask = 1 << (n - i)
        allowed = f.h != i
        num[xs[allowed], xs[allowed] ^ mask] += 1
    return StochasticMatrix(num, 2 * n)


def is_doubly_stochastic(m: StochasticMatrix) -> bool:
    num, d = m.numerators, m.denominator
    return bool(
        np.all(num >= 0)
        and np.all(num.sum(axis=1) == d)
        and np.all(num.sum(axis=0) == d)
    )


def tv_distance(p: Sequence[float], q: Sequence[float]) -> float:
    p = np.asarray(p, dtype=np.float64)
    q = np.asarray(q, dtype=np.float64)
    if p.shape != q.shape:
        raise ValueError(f"dimension mismatch: {p.shape} vs {q.shape}")
    return 0.5 * float(np.abs(p - q).sum())


def _worst_tv(power: np.ndarray) -> float:
    return 0.5 * float(np.abs(power - 1.0 / power.shape[0]).sum(axis=1).max())


def _worst_l2_column(power: np.ndarray) -> float:
    return float(np.sqrt(((power - 1.0 / power.shape[0]) ** 2).sum(axis=0)).max())


def distance_to_uniform(m: StochasticMatrix, t: int) -> float:
    """d(t): worst-case total variation between a row of m^t and uniform."""
    if t < 0:
        raise ValueError("t must be non-negative")
    return _worst_tv(np.linalg.matrix_power(m.to_float(), t))


def practical_deviation(m: StochasticMatrix, t: int) -> float:
    """Worst Euclidean deviation from uniform of a column of m^t.

    Equivalently the distribution propagated as a column vector
    (``v <- m @ v``) from each point mass.
    """
    if t < 0:
        raise ValueError("t must be non-negative")
    return _worst_l2_column(np.linalg.matrix_power(m.to_float(), t))


def _first_below(p: np.ndarray, eps: float, measure, t_max: int) -> int:
    """Smallest t with measure(p^t) <= eps, assuming the measure is non-increasing."""
    if measure(np.eye(p.shape[0])) <= eps:
        return 0
    powers = [p]  # powers[k] = p^(2^k)
    while measure(powers[-1]) > eps:
        if 2 ** (len(powers) - 1) > t_max:
            raise RuntimeError(f"no mixing within {t_max} steps")
        powers.append(powers[-1] @ powers[-1])
    # binary lifting: largest t with measure > eps, then + 1
    t, acc = 0, np.eye(p.shape[0])
    for k in range(len(powers) - 1, -1, -1):
        trial = acc @ powers[k]
        if measure(trial) > eps:
            acc, t = trial, t + 2**k
    return t + 1


def _check_eps(eps: float):
    if not 0 < eps < 1:
        raise ValueError(f"eps must lie in (0, 1), got {eps}")


def mixing_time(m: StochasticMatrix, eps: float, t_max: int = 1 << 20) -> int:
    """t_mix(eps) = min{t : d(t) <= eps} under total variation."""
    _check_eps(eps)
    return _first_below(m.to_float(), eps, _worst_tv, t_max)


def practical_mixing_time(m: StochasticMatrix, eps: float = 1e-6, t_max: int = 1 << 20) -> int:
    """Walk length after which :func:`practical_deviation` is at most ``eps``.

    This is the measure that reproduces the reference walk lengths for the
    reference functions; it is looser than total variation.
    """
    _check_eps(eps)
    return _first_below(m.to_float(), eps, _worst_l2_column, t_max)


@dataclass
class MixingReport:
    d_series: list[tuple[int, float]]
    t_mix: dict[float, int]
    practical_b: int
    extra: dict = field(default_factory=dict)

    def to_json(self) -> str:
        payload = {
            "t_mix": {repr(k): v for k, v in self.t_mix.items()},
            "practical_b": self.practical_b,
            **self.extra,
        }
        return json.dumps(payload, indent=2, sort_keys=True)

    def to_csv(self) -> str:
        lines = ["t,d"]
        lines += [f"{t},{d:.17g}" for t, d in self.d_series]
        return "\n".join(lines) + "\n"


def mixing_report(m: StochasticMatrix, eps: Sequence[float] = DEFAULT_EPS) -> MixingReport:
    p = m.to_float()
    t_mix = {e: mixing_time(m, e) for e in eps}
    horizon = max(t_mix.values())
    series, power = [], np.eye(p.shape[0])
    for t in range(horizon + 1):
        series.append((t, _worst_tv(power)))
        power = power @ p
    return MixingReport(series, t_mix, practical_mixing_time(m, 1e-6))


def log2_bound(eps: float) -> int:
    return math.ceil(math.log2(1.0 / eps))
