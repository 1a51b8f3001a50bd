"""Random walks on the cube-minus-cycle graph used as bit generators.

``chi14`` follows b uniformly chosen components per output. ``chi16``
first flips a fair gate on every pass and only then picks a component, so
a component is applied with probability 1/2 per pass; its one-pass matrix
is the lazy matrix of :func:`cubewalk.markov.markov_lazy`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Literal

import numpy as np

from . import _kernels
from .ncube import BooleanMap, apply_component

__all__ = [
    "GeneratorState",
    "RandomSource",
    "ScriptedSource",
    "WordSource",
    "chi14_next",
    "chi16_next",
    "make_generator",
    "outputs",
    "stream_bits",
]

Variant = Literal["chi14", "chi16"]
_CHUNK = 1 << 16


class RandomSource:
    """Seedable stream offering the two draws the generators need."""

    def uniform_index(self, n: int) -> int:
        raise NotImplementedError

    def uniform_bit(self) -> int:
        raise NotImplementedError


class WordSource(RandomSource):
    """Reference source: 64-bit words from numpy's PCG64.

    Every draw consumes one word ``w``: an index is ``floor(w*n/2**64) + 1``
    and a bit is the top bit of ``w``. Bulk consumers read the same words
    through :meth:`peek` / :meth:`advance`.
    """

    def __init__(self, seed, chunk: int = _CHUNK):
        self._bitgen = np.random.PCG64(seed)
        self._chunk = chunk
        self._buf = np.empty(0, dtype=np.uint64)
        self._pos = 0

    def peek(self, k: int) -> np.ndarray:
        avail = self._buf.size - self._pos
        if avail < k:
            fresh = self._bitgen.random_raw(max(k - avail, self._chunk))
            self._buf = np.concatenate([self._buf[self._pos :], fresh])
            self._pos = 0
        return self._buf[self._pos : self._pos + k]

    def advance(self, k: int):
        if self._pos + k > self._buf.size:
            raise ValueError("advancing past peeked words")
        self._pos += k

    def next_word(self) -> np.uint64:
        w = self.peek(1)[0]
        self._pos += 1
        return w

    def uniform_index(self, n: int) -> int:
        return int(_kernels.word_index(self.next_word(), n))

    def uniform_bit(self) -> int:
        return int(self.next_word() >> np.uint64(63))


class ScriptedSource(RandomSource):
    """Replays a fixed list of draws and logs which kind each one served."""

    def __init__(self, draws: Iterable[int]):
        self._draws = list(draws)
        self._pos = 0
        self.log: list[tuple[str, int]] = []

    def _next(self, kind: str) -> int:
        if self._pos >= len(self._draws):
            raise IndexError("scripted draws exhausted")
        v = self._draws[self._pos]
        self._pos += 1
        self.log.append((kind, v))
        return v

    def uniform_index(self, n: int) -> int:
        v = self._next("index")
        if not 1 <= v <= n:
            raise ValueError(f"scripted index {v} outside [1, {n}]")
        return v

    def uniform_bit(self) -> int:
        v = self._next("bit")
        if v not in (0, 1):
            raise ValueError(f"scripted bit {v}")
        return v


@dataclass
class GeneratorState:
    f: BooleanMap
    b: int
    x: int
    src: RandomSource
    variant: Variant = "chi16"
    _images: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        if self.b < 1:
            raise ValueError("walk length b must be at least 1")
        if not 0 <= self.x < 2**self.f.n_bits:
            raise ValueError(f"start {self.x} is not an {self.f.n_bits}-bit configuration")
        if self.variant not in ("chi14", "chi16"):
            raise ValueError(f"unknown variant {self.variant!r}")
        self._images = np.ascontiguousarray(self.f.images, dtype=np.int64)


def make_generator(f: BooleanMap, b: int, seed, variant: Variant = "chi16", x0: int | None = None) -> GeneratorState:
    """Seeded generator; the start is drawn from the same source when not given."""
    src = WordSource(seed)
    if x0 is None:
        x0 = 0
        for _ in range(f.n_bits):
            x0 = (x0 << 1) | src.uniform_bit()
    return GeneratorState(f, b, x0, src, variant)


def chi14_next(g: GeneratorState) -> int:
    if g.variant != "chi14":
        raise ValueError("generator is not chi14")
    n, x = g.f.n_bits, g.x
    for _ in range(g.b):
        x = apply_component(g.f, x, g.src.uniform_index(n))
    g.x = x
    return x


def chi16_next(g: GeneratorState) -> int:
    if g.variant != "chi16":
        raise ValueError("generator is not chi16")
    n, x = g.f.n_bits, g.x
    for _ in range(g.b):
        if g.src.uniform_bit() != 0:
            x = apply_component(g.f, x, g.src.uniform_index(n))
    g.x = x
    return x


def _bulk14(g: GeneratorState, count: int) -> np.ndarray:
    out = np.empty(count, dtype=np.int64)
    per = max(1, _CHUNK * 16 // g.b)
    for start in range(0, count, per):
        block = out[start : start + per]
        words = g.src.peek(block.size * g.b)
        g.x = int(_kernels.chi14_run(words, g._images, g.f.n_bits, g.b, g.x, block))
        g.src.advance(words.size)
    return out


def _bulk16(g: GeneratorState, count: int) -> np.ndarray:
    out = np.empty(count, dtype=np.int64)
    done = 0
    while done < count:
        want = min(count - done, max(1, _CHUNK * 8 // g.b))
        words = g.src.peek(want * 2 * g.b)
        wrote, used, x = _kernels.chi16_run(words, g._images, g.f.n_bits, g.b, g.x, out[done : done + want])
        g.src.advance(int(used))
        g.x = int(x)
        done += int(wrote)
    return out


def outputs(g: GeneratorState, count: int, fast: bool = True) -> np.ndarray:
    """Next ``count`` outputs, chaining the state across calls."""
    if count < 0:
        raise ValueError("count must be non-negative")
    if fast and isinstance(g.src, WordSource) and count:
        return _bulk14(g, count) if g.variant == "chi14" else _bulk16(g, count)
    step = chi14_next if g.variant == "chi14" else chi16_next
    return np.array([step(g) for _ in range(count)], dtype=np.int64)


def to_bit_array(values: np.ndarray, n: int) -> np.ndarray:
    """Each value's n bits, most significant first, as a flat uint8 array."""
    shifts = np.arange(n - 1, -1, -1)
    return ((np.asarray(values, dtype=np.int64)[:, None] >> shifts) & 1).astype(np.uint8).ravel()


def stream_bits(g: GeneratorState, count: int, fast: bool = True) -> np.ndarray:
    if count < 0:
        raise ValueError("count must be non-negative")
    n = g.f.n_bits
    values = outputs(g, -(-count // n), fast=fast)
    return to_bit_array(values, n)[:count]
