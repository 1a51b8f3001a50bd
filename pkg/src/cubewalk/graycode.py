"""Balanced cyclic Gray codes via the Robinson-Cohn extension.

A code on N bits is stored as its transition sequence: the 1-based bit
positions flipped between consecutive codewords, counted from the least
significant bit (position 1 flips value 1, position N flips 2**(N-1)).
Walking the sequence from codeword 0 lists the code.
"""

from __future__ import annotations

import enum
import itertools
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "BalanceClass",
    "BalanceTargets",
    "ConstructionError",
    "ExtensionPlan",
    "SearchExhaustedError",
    "TransitionCounts",
    "TransitionSequence",
    "balance_class",
    "balance_targets",
    "build_balanced_code",
    "codewords",
    "is_cyclic_gray",
    "robinson_cohn_extend",
    "solve_plan",
    "transition_counts",
]

# Explicit count vectors for small N; the generic a_N / a_N+2 split only
# guarantees z_i >= 0 from N = 8 onwards.
_SMALL_TARGETS = {
    3: (2, 2, 4),
    4: (4, 4, 4, 4),
    5: (6, 6, 8, 6, 6),
    6: (10, 10, 10, 10, 12, 12),
    7: (18, 18, 20, 18, 18, 18, 18),
}


class ConstructionError(ValueError):
    """An extension plan cannot be built or does not fit the sequence."""


class SearchExhaustedError(ConstructionError):
    """No singleton position set realizes the requested counts."""


@dataclass(frozen=True)
class TransitionSequence:
    n_bits: int
    seq: tuple[int, ...]

    def __post_init__(self):
        if self.n_bits < 1:
            raise ValueError(f"n_bits must be positive, got {self.n_bits}")
        seq = tuple(int(s) for s in self.seq)
        object.__setattr__(self, "seq", seq)
        if len(seq) != 2**self.n_bits:
            raise ValueError(
                f"a {self.n_bits}-bit code has {2**self.n_bits} transitions, got {len(seq)}"
            )
        bad = [s for s in seq if not 1 <= s <= self.n_bits]
        if bad:
            raise ValueError(f"transition {bad[0]} outside [1, {self.n_bits}]")

    def __len__(self):
        return len(self.seq)

    def __iter__(self):
        return iter(self.seq)

    def to_line(self) -> str:
        return ",".join(map(str, self.seq))

    @classmethod
    def from_line(cls, line: str) -> "TransitionSequence":
        seq = [int(tok) for tok in line.strip().split(",") if tok.strip()]
        n = len(seq).bit_length() - 1
        return cls(n, tuple(seq))


@dataclass(frozen=True)
class TransitionCounts:
    counts: tuple[int, ...]

    def __getitem__(self, i: int) -> int:
        """Count for bit position ``i`` (1-based)."""
        return self.counts[i - 1]

    def __len__(self):
        return len(self.counts)

    @property
    def total(self) -> int:
        return sum(self.counts)


class BalanceClass(str, enum.Enum):
    TOTALLY_BALANCED = "totally_balanced"
    BALANCED = "balanced"
    UNBALANCED = "unbalanced"


@dataclass(frozen=True)
class BalanceTargets:
    n_bits: int
    a: int
    c: int
    d: int
    targets: tuple[int, ...]

    def __post_init__(self):
        n, a, c, d = self.n_bits, self.a, self.c, self.d
        assert a == 2 * (2**n // (2 * n))
        assert c + d == n and c * a + d * (a + 2) == 2**n
        assert sorted(self.targets) == [a] * c + [a + 2] * d


@dataclass(frozen=True)
class ExtensionPlan:
    """Step-one choices for extending an (N-2)-bit code to N bits.

    ``z[i-1]`` copies of element ``i`` go inside the ``u_j`` runs and
    ``t[i-1]`` copies sit at singleton positions; ``l`` is the number of
    singletons (and the final count of elements N-1 and N).
    """

    n_bits: int
    z: tuple[int, ...]
    t: tuple[int, ...]
    l: int
    singleton_positions: tuple[int, ...]
    assignment: tuple[int, ...] = field(default=(), compare=False)


def transition_counts(s: TransitionSequence) -> TransitionCounts:
    hist = Counter(s.seq)
    return TransitionCounts(tuple(hist.get(i, 0) for i in range(1, s.n_bits + 1)))


def codewords(s: TransitionSequence) -> list[int]:
    """Codewords visited from 0, one per transition (the closing 0 excluded)."""
    words = [0]
    for bit in s.seq[:-1]:
        words.append(words[-1] ^ (1 << (bit - 1)))
    return words


def is_cyclic_gray(s: TransitionSequence) -> bool:
    seen = bytearray(2**s.n_bits)
    w = 0
    for bit in s.seq:
        if seen[w]:
            return False
        seen[w] = 1
        w ^= 1 << (bit - 1)
    return w == 0


def balance_class(s: TransitionSequence) -> BalanceClass:
    counts = transition_counts(s).counts
    n = s.n_bits
    if 2**n % n == 0 and all(c == 2**n // n for c in counts):
        return BalanceClass.TOTALLY_BALANCED
    if max(counts) - min(counts) <= 2:
        return BalanceClass.BALANCED
    return BalanceClass.UNBALANCED


def balance_targets(n: int) -> BalanceTargets:
    if n < 3:
        raise ValueError(f"balance targets are defined for n >= 3, got {n}")
    a = 2 * (2**n // (2 * n))
    d = (2**n - n * a) // 2
    c = n - d
    if n in _SMALL_TARGETS:
        targets = _SMALL_TARGETS[n]
    else:
        targets = (a,) * c + (a + 2,) * d
    return BalanceTargets(n, a, c, d, targets)


def _assignments(prev: Sequence[int], values: Sequence[int], rng, canonical: bool):
    """Yield target vectors for indices 1..N-2, best candidate first.

    The first candidate hands the largest targets to the largest previous
    counts; later candidates enumerate the remaining placements of the
    larger value.
    """
    m = len(prev)
    order = list(range(m))
    if not canonical:
        rng.shuffle(order)
    order.sort(key=lambda i: -prev[i])
    ranked = sorted(values, reverse=True)
    first = [0] * m
    for rank, i in enumerate(order):
        first[i] = ranked[rank]
    yield tuple(first)
    hi = max(values)
    n_hi = sum(v == hi for v in values)
    lo = [v for v in values if v != hi]
    for chosen in itertools.combinations(order, n_hi):
        rest = iter(sorted(lo, reverse=True))
        vec = [hi if i in chosen else 0 for i in range(m)]
        for i in order:
            if i not in chosen:
                vec[i] = next(rest)
        if vec != first:
            yield tuple(vec)


def _split_counts(prev: Sequence[int], assigned: Sequence[int]):
    z, t = [], []
    for i, (p, tc) in enumerate(zip(prev, assigned), start=1):
        diff = tc - 2 * p
        if diff < 0 or diff % 2:
            raise ConstructionError(
                f"index {i}: target {tc} needs z = ({tc} - 2*{p})/2, which is not a non-negative integer"
            )
        zi = diff // 2
        if zi > p:
            raise ConstructionError(f"index {i}: z = {zi} exceeds its {p} occurrences")
        z.append(zi)
        t.append(p - zi)
    return tuple(z), tuple(t)


def _pick_positions(seq: Sequence[int], t: Sequence[int], rng, canonical: bool):
    size = len(seq)
    forced = sorted({1, 2, size})
    need = list(t)
    for pos in forced:
        need[seq[pos - 1] - 1] -= 1
    if any(k < 0 for k in need):
        i = next(i for i, k in enumerate(need, start=1) if k < 0)
        raise SearchExhaustedError(
            f"index {i}: forced singleton positions already exceed t_{i} = {t[i - 1]}"
        )
    chosen = set(forced)
    for i, k in enumerate(need, start=1):
        if k == 0:
            continue
        pool = [p for p in range(1, size + 1) if seq[p - 1] == i and p not in chosen]
        if len(pool) < k:
            raise SearchExhaustedError(f"index {i}: {k} more singletons wanted, {len(pool)} free")
        if canonical:
            chosen.update(pool[:k])
        else:
            chosen.update(int(p) for p in rng.choice(pool, size=k, replace=False))
    return tuple(sorted(chosen))


def solve_plan(
    s_prev: TransitionSequence,
    targets: BalanceTargets,
    seed: int = 0,
    canonical: bool = False,
) -> ExtensionPlan:
    """Choose z, t, l and the singleton positions for one extension step.

    Elements N-1 and N both end with ``l`` occurrences; ``l`` takes the
    smaller target value whenever at least two entries carry it. The
    remaining targets are matched to indices 1..N-2.
    """
    n = targets.n_bits
    if s_prev.n_bits != n - 2:
        raise ConstructionError(f"need an {n - 2}-bit code to build {n} bits, got {s_prev.n_bits}")
    rng = np.random.default_rng([seed, n])
    prev = transition_counts(s_prev).counts
    a = targets.a
    l = a if targets.c >= 2 else a + 2
    rest = Counter(targets.targets)
    rest[l] -= 2
    values = sorted(rest.elements())

    last_error: ConstructionError | None = None
    for assigned in _assignments(prev, values, rng, canonical):
        try:
            z, t = _split_counts(prev, assigned)
            assert sum(t) == l, (t, l)
            positions = _pick_positions(s_prev.seq, t, rng, canonical)
        except ConstructionError as exc:
            last_error = exc
            continue
        return ExtensionPlan(n, z, t, l, positions, assigned)
    assert last_error is not None
    raise last_error


def _runs(seq: Sequence[int], positions: Sequence[int]):
    """Split ``seq`` into the runs u_0..u_{l-2} between singleton positions."""
    runs = []
    for lo, hi in zip(positions, positions[1:]):
        runs.append(list(seq[lo : hi - 1]))
    return runs


def robinson_cohn_extend(s_prev: TransitionSequence, plan: ExtensionPlan) -> TransitionSequence:
    n = plan.n_bits
    seq = s_prev.seq
    pos = plan.singleton_positions
    if s_prev.n_bits != n - 2:
        raise ConstructionError("plan and sequence disagree on the bit count")
    if len(pos) != plan.l or pos[:2] != (1, 2) or pos[-1] != len(seq):
        raise ConstructionError(f"singleton positions {pos[:3]}... do not fit a length-{len(seq)} sequence")
    realized = Counter(seq[p - 1] for p in pos)
    if tuple(realized.get(i, 0) for i in range(1, n - 1)) != plan.t:
        raise ConstructionError("singleton elements do not realize t")

    runs = _runs(seq, pos)
    u = [seq[pos[0] - 1], n - 1]  # u_0 is empty and becomes N-1
    for j, run in enumerate(runs[1:], start=1):
        u.append(seq[pos[j] - 1])
        x, y = (n - 1, n) if j % 2 else (n, n - 1)
        u.extend(run + [x] + run[::-1] + [y] + run)
    u.append(seq[pos[-1] - 1])

    w = [n - 1, *seq, n]
    w[0], w[1] = w[1], w[0]
    out = u[::-1] + [n] + w
    result = TransitionSequence(n, tuple(out))

    counts = transition_counts(result)
    assert len(out) == 4 * len(seq)
    assert counts[n - 1] == counts[n] == plan.l, (counts, plan.l)
    return result


def _base(n: int) -> TransitionSequence:
    return TransitionSequence(1, (1, 1)) if n % 2 else TransitionSequence(2, (1, 2, 1, 2))


def build_balanced_code(n: int, seed: int = 0, canonical: bool = False) -> TransitionSequence:
    """Balanced cyclic Gray code on ``n`` bits, deterministic in ``seed``.

    Every transition count lands on ``a_n`` or ``a_n + 2``.
    """
    if n < 3:
        raise ValueError(f"balanced construction needs n >= 3, got {n}")
    s = _base(n)
    for m in range(s.n_bits + 2, n + 1, 2):
        plan = solve_plan(s, balance_targets(m), seed=seed, canonical=canonical)
        s = robinson_cohn_extend(s, plan)
    return s


def read_codes(lines: Iterable[str]) -> list[TransitionSequence]:
    return [TransitionSequence.from_line(ln) for ln in lines if ln.strip()]


def write_codes(codes: Iterable[TransitionSequence]) -> str:
    return "".join(c.to_line() + "\n" for c in codes)


def codeword_listing(s: TransitionSequence) -> str:
    return "".join(format(w, f"0{s.n_bits}b") + "\n" for w in codewords(s))
