"""Compiled inner loops. Each consumes 64-bit words exactly as the scalar
draws in :mod:`cubewalk.prng` would, so both paths give identical streams."""

import numpy as np
from numba import njit

MASK32 = np.uint64(0xFFFFFFFF)
SHIFT32 = np.uint64(32)
SHIFT63 = np.uint64(63)


@njit(cache=True, nogil=True)
def word_index(w, n):
    """floor(w * n / 2**64) + 1, computed without 128-bit arithmetic."""
    nn = np.uint64(n)
    hi = (w >> SHIFT32) * nn
    lo = (w & MASK32) * nn
    return np.int64((hi + (lo >> SHIFT32)) >> SHIFT32) + 1


@njit(cache=True, nogil=True)
def chi14_run(words, images, n, b, x, out):
    """Fill ``out`` with successive outputs; uses exactly len(out)*b words."""
    k = 0
    for j in range(out.shape[0]):
        for _ in range(b):
            s = word_index(words[k], n)
            k += 1
            mask = np.int64(1) << (n - s)
            x = (x & ~mask) | (images[x] & mask)
        out[j] = x
    return x


@njit(cache=True, nogil=True)
def chi16_run(words, images, n, b, x, out):
    """Gate word, then an index word only when the gate is set.

    Stops once fewer than 2*b words remain; returns
    (outputs written, words consumed, state).
    """
    k = 0
    j = 0
    limit = words.shape[0]
    while j < out.shape[0] and limit - k >= 2 * b:
        for _ in range(b):
            gate = words[k] >> SHIFT63
            k += 1
            if gate != 0:
                s = word_index(words[k], n)
                k += 1
                mask = np.int64(1) << (n - s)
                x = (x & ~mask) | (images[x] & mask)
        out[j] = x
        j += 1
    return j, k, x


@njit(cache=True, nogil=True)
def stop_run(words, images, n, x, fair, nbit):
    """Stopping-time passes: index word then coin word per pass.

    Returns (words consumed, state, fair bitmask, pass count, done).
    """
    full = (np.int64(1) << n) - 1
    k = 0
    limit = words.shape[0] - 1
    while fair != full and k < limit:
        s = word_index(words[k], n)
        coin = words[k + 1] >> SHIFT63
        k += 2
        mask = np.int64(1) << (n - s)
        if coin != 0 and ((images[x] ^ x) & mask) != 0:
            fair |= np.int64(1) << (s - 1)
            x ^= mask
        nbit += 1
    return k, x, fair, nbit, fair == full
