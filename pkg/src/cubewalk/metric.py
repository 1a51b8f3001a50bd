"""Points of B^N x [1,N]^IN x P^IN and the digit-block distance between them.

Infinite sequences are replaced by finite prefixes; every operation takes
an explicit depth and refuses to run past the available prefix.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .ncube import BooleanMap, compose

__all__ = ["DigitDistance", "ExtendedPoint", "distance", "gf_step", "shift_sigma"]


class DepthError(ValueError):
    """The finite prefixes are too short for the requested operation."""


@dataclass(frozen=True)
class ExtendedPoint:
    e: int
    u: tuple[int, ...]
    v: tuple[int, ...]
    P: tuple[int, ...]
    n_bits: int

    def __post_init__(self):
        object.__setattr__(self, "u", tuple(self.u))
        object.__setattr__(self, "v", tuple(self.v))
        object.__setattr__(self, "P", tuple(sorted(set(self.P))))
        if not self.P or self.P[0] < 1:
            raise ValueError("P must be a non-empty set of positive integers")
        if any(k not in self.P for k in self.v):
            raise ValueError(f"iteration counts {self.v} not all in P = {self.P}")
        if any(not 1 <= i <= self.n_bits for i in self.u):
            raise ValueError(f"strategy entries must lie in [1, {self.n_bits}]")

    def chunk(self, k: int) -> tuple[int, ...]:
        """Strategy entries consumed by the k-th output."""
        if k >= len(self.v):
            raise DepthError(f"only {len(self.v)} iteration counts available")
        start = sum(self.v[:k])
        stop = start + self.v[k]
        if stop > len(self.u):
            raise DepthError(f"strategy prefix of length {len(self.u)} ends before {stop}")
        return self.u[start:stop]


def shift_sigma(x: ExtendedPoint) -> ExtendedPoint:
    """Drop v[0] strategy entries and one iteration count."""
    if not x.v:
        raise DepthError("no iteration count left to shift")
    if len(x.u) < x.v[0]:
        raise DepthError(f"shift by {x.v[0]} needs that many strategy entries, have {len(x.u)}")
    return ExtendedPoint(x.e, x.u[x.v[0] :], x.v[1:], x.P, x.n_bits)


def gf_step(f: BooleanMap, x: ExtendedPoint) -> ExtendedPoint:
    shifted = shift_sigma(x)
    e = compose(f, x.e, x.u[: x.v[0]])
    return ExtendedPoint(e, shifted.u, shifted.v, x.P, x.n_bits)


@dataclass(frozen=True)
class DigitDistance:
    integral: int
    blocks: tuple[tuple[str, str], ...]

    @property
    def fraction_digits(self) -> str:
        return "".join(a + b for a, b in self.blocks)

    def __str__(self) -> str:
        parts = [p for block in self.blocks for p in block]
        return f"{self.integral}." + " ".join(parts)

    def value(self) -> Fraction:
        digits = self.fraction_digits
        return self.integral + Fraction(int(digits or "0"), 10 ** len(digits))

    def is_zero(self) -> bool:
        return self.integral == 0 and set(self.fraction_digits) <= {"0"}


def _widths(P: Sequence[int], n_bits: int) -> tuple[int, int]:
    p = math.floor(math.log10(max(P))) + 1
    n = math.floor(math.log10(n_bits)) + 1
    return p, n


def distance(x: ExtendedPoint, y: ExtendedPoint, depth: int) -> DigitDistance:
    """Hamming distance of the configurations, then ``depth`` digit blocks.

    Block k holds |v^k - v'^k| on p digits followed by max(P) fields of n
    digits comparing the k-th strategy chunks entry by entry; the shorter
    chunk is padded with zeros, so unmatched entries appear as themselves.
    """
    if x.n_bits != y.n_bits or x.P != y.P:
        raise ValueError("points live in different spaces")
    p, n = _widths(x.P, x.n_bits)
    width = max(x.P)
    blocks = []
    for k in range(depth):
        cx, cy = x.chunk(k), y.chunk(k)
        head = str(abs(x.v[k] - y.v[k])).zfill(p)
        cx = cx + (0,) * (width - len(cx))
        cy = cy + (0,) * (width - len(cy))
        body = "".join(str(abs(a - b)).zfill(n) for a, b in zip(cx, cy))
        blocks.append((head, body))
    return DigitDistance(bin(x.e ^ y.e).count("1"), tuple(blocks))
