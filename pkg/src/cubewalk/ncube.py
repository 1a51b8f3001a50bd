"""Boolean maps on the N-cube, chaotic-iteration operators and iteration graphs.

Configurations are integers. Component ``i`` (1-based) is ``x_i`` in the
left-to-right writing ``x_1 ... x_N``, so ``x_1`` is the most significant
bit. Transition sequences and the removed-edge masks count bit positions
from the right instead; :func:`position_of` converts between the two.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np
from scipy.sparse.csgraph import connected_components

from .graycode import TransitionSequence, is_cyclic_gray

__all__ = [
    "BooleanMap",
    "IterationGraph",
    "apply_component",
    "completeness_b",
    "compose",
    "f_star",
    "function_from_cycle",
    "gamma",
    "gamma_P",
    "hbar",
    "is_square_free",
    "is_strongly_connected",
    "negation",
    "position_of",
]


def position_of(i: int, n: int) -> int:
    """Component index <-> bit position counted from the right (an involution)."""
    return n + 1 - i


def component_mask(i: int, n: int) -> int:
    return 1 << (n - i)


def to_bits(x: int, n: int) -> str:
    return format(x, f"0{n}b")


def _check_index(i: int, n: int):
    if not 1 <= i <= n:
        raise IndexError(f"component {i} outside [1, {n}]")


@dataclass(frozen=True, eq=False)
class BooleanMap:
    """Truth table of f, plus the removed direction h when f comes from a cycle."""

    n_bits: int
    images: np.ndarray
    h: np.ndarray | None = None

    def __post_init__(self):
        images = np.asarray(self.images, dtype=np.int64).copy()
        if images.shape != (2**self.n_bits,):
            raise ValueError(f"expected {2**self.n_bits} images, got shape {images.shape}")
        if images.min() < 0 or images.max() >= 2**self.n_bits:
            raise ValueError("image outside the cube")
        images.setflags(write=False)
        object.__setattr__(self, "images", images)
        if self.h is not None:
            h = np.asarray(self.h, dtype=np.int64).copy()
            h.setflags(write=False)
            object.__setattr__(self, "h", h)
            diff = images ^ np.arange(images.size)
            masks = 1 << (self.n_bits - h)
            full = 2**self.n_bits - 1
            if np.any(diff & masks) or np.any((diff | masks) != full):
                raise ValueError("h is inconsistent with the images")

    @classmethod
    def from_images(cls, images: Sequence[int], n_bits: int | None = None) -> "BooleanMap":
        """Build a map, recovering h when every x has exactly one fixed component."""
        images = np.asarray(images, dtype=np.int64)
        n = n_bits if n_bits is not None else int(images.size).bit_length() - 1
        fixed = ~(images ^ np.arange(images.size)) & (2**n - 1)
        h = None
        if np.all(fixed > 0) and np.all(fixed & (fixed - 1) == 0):
            # single fixed bit per vertex: its component index
            h = n - np.log2(fixed).round().astype(np.int64)
        return cls(n, images, h)

    def __eq__(self, other):
        if not isinstance(other, BooleanMap):
            return NotImplemented
        return self.n_bits == other.n_bits and np.array_equal(self.images, other.images)

    def __call__(self, x: int) -> int:
        return int(self.images[x])

    def to_line(self) -> str:
        return ",".join(str(int(v)) for v in self.images)

    @classmethod
    def from_line(cls, line: str) -> "BooleanMap":
        return cls.from_images([int(tok) for tok in line.replace("[", "").replace("]", "").split(",")])

    def successors(self) -> np.ndarray:
        """``out[x, i-1] = F_f(x, i)`` for every vertex and component."""
        n = self.n_bits
        xs = np.arange(2**n)[:, None]
        masks = 1 << (n - np.arange(1, n + 1))[None, :]
        return (xs & ~masks) | (self.images[:, None] & masks)


def negation(n: int) -> BooleanMap:
    return BooleanMap(n, np.arange(2**n) ^ (2**n - 1))


def f_star() -> BooleanMap:
    """The 3-bit example map (x2 xor x3, !x1!x3 + x1!x2, !x1!x3 + x1x2)."""
    images = []
    for x in range(8):
        x1, x2, x3 = (x >> 2) & 1, (x >> 1) & 1, x & 1
        y1 = x2 ^ x3
        y2 = ((1 - x1) & (1 - x3)) | (x1 & (1 - x2))
        y3 = ((1 - x1) & (1 - x3)) | (x1 & x2)
        images.append(y1 << 2 | y2 << 1 | y3)
    return BooleanMap.from_images(images, 3)


def apply_component(f: BooleanMap, x: int, i: int) -> int:
    _check_index(i, f.n_bits)
    mask = component_mask(i, f.n_bits)
    return (x & ~mask) | (int(f.images[x]) & mask)


def compose(f: BooleanMap, x: int, u: Iterable[int]) -> int:
    for i in u:
        x = apply_component(f, x, i)
    return x


def function_from_cycle(s: TransitionSequence) -> BooleanMap:
    """Map whose iteration graph is the cube minus the directed cycle ``s``.

    At each vertex the outgoing cycle edge becomes a self-loop; every
    other component is negated.
    """
    if not is_cyclic_gray(s):
        raise ValueError("transition sequence is not a cyclic Gray code")
    n = s.n_bits
    full = 2**n - 1
    images = np.empty(2**n, dtype=np.int64)
    h = np.empty(2**n, dtype=np.int64)
    w = 0
    for bit in s.seq:
        i = position_of(bit, n)
        h[w] = i
        images[w] = (w ^ full) ^ component_mask(i, n)
        w ^= 1 << (bit - 1)
    return BooleanMap(n, images, h)


def cycle_from_map(f: BooleanMap) -> TransitionSequence:
    """Inverse of :func:`function_from_cycle` when hbar traces one cycle."""
    if f.h is None:
        raise ValueError("map has no removed-edge directions")
    n = f.n_bits
    seq, w = [], 0
    for _ in range(2**n):
        i = int(f.h[w])
        seq.append(position_of(i, n))
        w ^= component_mask(i, n)
    s = TransitionSequence(n, tuple(seq))
    if not is_cyclic_gray(s):
        raise ValueError("removed edges do not form a Hamiltonian cycle")
    return s


def hbar(m: BooleanMap, x: int) -> int:
    if m.h is None:
        raise ValueError("map has no removed-edge directions")
    return x ^ component_mask(int(m.h[x]), m.n_bits)


def _hbar_table(m: BooleanMap) -> np.ndarray:
    if m.h is None:
        raise ValueError("map has no removed-edge directions")
    return np.arange(2**m.n_bits) ^ (1 << (m.n_bits - m.h))


def is_square_free(m: BooleanMap) -> tuple[bool, bool]:
    """(square_free, bijective) for the removed-edge neighbour map."""
    table = _hbar_table(m)
    square_free = not np.any(table[table] == np.arange(table.size))
    bijective = np.unique(table).size == table.size
    return bool(square_free), bool(bijective)


@dataclass(frozen=True, eq=False)
class IterationGraph:
    n_bits: int
    adjacency: np.ndarray
    steps: tuple[int, ...] = (1,)
    labeled: np.ndarray | None = None

    @property
    def n_vertices(self) -> int:
        return self.adjacency.shape[0]


def _bool_power(a: np.ndarray, p: int) -> np.ndarray:
    result = np.eye(a.shape[0], dtype=bool)
    base = a.astype(np.float64)
    acc = result.astype(np.float64)
    while p:
        if p & 1:
            acc = ((acc @ base) > 0).astype(np.float64)
        p >>= 1
        if p:
            base = ((base @ base) > 0).astype(np.float64)
    return acc > 0


def gamma(f: BooleanMap) -> IterationGraph:
    succ = f.successors()
    adj = np.zeros((succ.shape[0],) * 2, dtype=bool)
    adj[np.arange(succ.shape[0])[:, None], succ] = True
    return IterationGraph(f.n_bits, adj, (1,), succ)


def gamma_P(f: BooleanMap, P: Iterable[int]) -> IterationGraph:
    steps = tuple(sorted(set(int(p) for p in P)))
    if not steps:
        raise ValueError("P must be non-empty")
    if steps[0] < 1:
        raise ValueError("iteration counts must be positive")
    one = gamma(f).adjacency
    adj = np.zeros_like(one)
    for p in steps:
        adj |= _bool_power(one, p)
    return IterationGraph(f.n_bits, adj, steps)


def is_strongly_connected(g: IterationGraph) -> bool:
    if g.n_vertices <= 1:
        return True
    count, _ = connected_components(g.adjacency, directed=True, connection="strong")
    return count == 1


def completeness_b(f: BooleanMap, b_max: int | None = None) -> int | None:
    """Smallest b with every entry of M^b positive, i.e. Gamma_{b}(f) complete."""
    if b_max is None:
        b_max = 4 * f.n_bits**2
    one = gamma(f).adjacency.astype(np.float64)
    acc = one
    for b in range(1, b_max + 1):
        if acc.all():
            return b
        acc = ((acc @ one) > 0).astype(np.float64)
    return None
