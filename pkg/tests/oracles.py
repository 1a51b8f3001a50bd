"""Slow, obviously-correct reimplementations used to cross-check the package.

Everything here works on bit strings and Python lists, independent of the
integer/bitmask code paths in ``cubewalk``.
"""

from collections import deque
from fractions import Fraction
import math


def bits_of(x, n):
    return [int(c) for c in format(x, f"0{n}b")]  # x_1 first


def from_bits(bs):
    return int("".join(map(str, bs)), 2)


def F(images, n, x, i):
    """Update component i (1 = leftmost) of x with component i of f(x)."""
    xs, fx = bits_of(x, n), bits_of(images[x], n)
    xs[i - 1] = fx[i - 1]
    return from_bits(xs)


def gray_walk(seq, n):
    """Visit words by flipping bit position s (1 = rightmost) for each s."""
    w, seen = [0] * n, []
    for s in seq:
        seen.append(tuple(w))
        w[n - s] ^= 1
    return seen, tuple(w)


def is_cyclic_gray(seq, n):
    seen, end = gray_walk(seq, n)
    return len(seq) == 2**n and len(set(seen)) == 2**n and end == (0,) * n


def adjacency_sets(images, n):
    return {x: {F(images, n, x, i) for i in range(1, n + 1)} for x in range(2**n)}


def walk_sets(images, n, b):
    """Endpoints of every length-b strategy from each vertex."""
    one = adjacency_sets(images, n)
    out = {}
    for x in range(2**n):
        frontier = {x}
        for _ in range(b):
            frontier = {y for v in frontier for y in one[v]}
        out[x] = frontier
    return out


def reachable(adj, start):
    seen, todo = {start}, deque([start])
    while todo:
        v = todo.popleft()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                todo.append(w)
    return seen


def strongly_connected(adj):
    verts = list(adj)
    rev = {v: set() for v in verts}
    for v, ws in adj.items():
        for w in ws:
            rev[w].add(v)
    full = set(verts)
    return reachable(adj, verts[0]) == full and reachable(rev, verts[0]) == full


def lazy_matrix(images, h, n):
    """Exact lazy chain: stay with 1/2 + 1/(2n), each kept neighbour 1/(2n)."""
    size = 2**n
    m = [[Fraction(0)] * size for _ in range(size)]
    for x in range(size):
        m[x][x] += Fraction(1, 2)
        for i in range(1, n + 1):
            m[x][F(images, n, x, i)] += Fraction(1, 2 * n)
    return m


def mat_mul(a, b):
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]))] for i in range(len(a))]


def worst_tv(m):
    size = len(m)
    return max(sum(abs(v - Fraction(1, size)) for v in row) / 2 for row in m)


def monobit_p(bits):
    s = sum(1 if b else -1 for b in bits)
    return math.erfc(abs(s) / math.sqrt(len(bits)) / math.sqrt(2))


def runs_p(bits):
    n = len(bits)
    pi = sum(bits) / n
    if abs(pi - 0.5) >= 2 / math.sqrt(n):
        return 0.0
    v = 1 + sum(1 for k in range(n - 1) if bits[k] != bits[k + 1])
    return math.erfc(abs(v - 2 * n * pi * (1 - pi)) / (2 * math.sqrt(2 * n) * pi * (1 - pi)))
