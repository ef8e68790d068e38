"""Hot loops over bit-packed codewords.

Every kernel exists twice: a numba ``@njit`` version and a pure-numpy
version.  ``SDCODES_NO_NUMBA=1`` in the environment forces the numpy path
(also used automatically when numba cannot be imported).  Words are
``uint64`` with coordinate 0 in the least-significant bit, so kernels only
serve codes of length n <= 64; longer codes go through the pure-Python
path in :mod:`sdcodes.gf2core`.
"""

from __future__ import annotations

import os

import numpy as np

_WANT_NUMBA = os.environ.get("SDCODES_NO_NUMBA", "").strip() not in ("1", "true", "yes")

try:
    if not _WANT_NUMBA:
        raise ImportError("numba disabled by SDCODES_NO_NUMBA")
    from numba import njit
    HAVE_NUMBA = True
except ImportError:
    HAVE_NUMBA = False

BACKEND = "numba" if HAVE_NUMBA else "numpy"

MAX_WORD_BITS = 64
UNREACHED = np.uint8(255)


def as_words(values) -> np.ndarray:
    return np.asarray([int(v) for v in values], dtype=np.uint64)


# ---------------------------------------------------------------- numpy path

def _span_words_np(rows: np.ndarray, offset: int) -> np.ndarray:
    words = np.array([offset], dtype=np.uint64)
    for r in rows:
        words = np.concatenate([words, words ^ r])
    return words


def _weight_hist_np(rows: np.ndarray, offset: int, n: int) -> np.ndarray:
    hist = np.zeros(n + 1, dtype=np.int64)
    k = rows.shape[0]
    low = min(k, 20)
    base = _span_words_np(rows[:low], offset)
    for hi in _span_words_np(rows[low:], 0):
        hist += np.bincount(np.bitwise_count(base ^ hi), minlength=n + 1)[: n + 1]
    return hist


def _min_weight_np(rows: np.ndarray, offset: int, stop_at: int) -> int:
    words = _span_words_np(rows, offset)
    wts = np.bitwise_count(words).astype(np.int64)
    if offset == 0:
        wts = wts[1:]
    if wts.size == 0:
        return -1
    return int(wts.min())


def _coset_leaders_np(cols: np.ndarray, m: int) -> np.ndarray:
    dist = np.full(1 << m, UNREACHED, dtype=np.uint8)
    dist[0] = 0
    frontier = np.zeros(1, dtype=np.uint64)
    level = 0
    while frontier.size:
        level += 1
        nxt = np.unique((frontier[:, None] ^ cols[None, :]).ravel())
        nxt = nxt[dist[nxt] == UNREACHED]
        dist[nxt] = level
        frontier = nxt
    return dist


# ---------------------------------------------------------------- numba path

if HAVE_NUMBA:
    _M1 = np.uint64(0x5555555555555555)
    _M2 = np.uint64(0x3333333333333333)
    _M4 = np.uint64(0x0F0F0F0F0F0F0F0F)
    _H01 = np.uint64(0x0101010101010101)
    _ONE = np.uint64(1)
    _S56 = np.uint64(56)

    @njit(cache=True, nogil=True)
    def _popcount(x):
        x = x - ((x >> _ONE) & _M1)
        x = (x & _M2) + ((x >> np.uint64(2)) & _M2)
        x = (x + (x >> np.uint64(4))) & _M4
        return np.int64((x * _H01) >> _S56)

    @njit(cache=True, nogil=True)
    def _ctz(i):
        j = 0
        while (i & 1) == 0:
            i >>= 1
            j += 1
        return j

    @njit(cache=True, nogil=True)
    def _span_words_nb(rows, offset):
        k = rows.shape[0]
        out = np.empty(1 << k, dtype=np.uint64)
        w = offset
        out[0] = w
        for i in range(1, 1 << k):
            w ^= rows[_ctz(i)]
            out[i ^ (i >> 1)] = w
        return out

    @njit(cache=True, nogil=True)
    def _weight_hist_nb(rows, offset, n):
        k = rows.shape[0]
        hist = np.zeros(n + 1, dtype=np.int64)
        w = offset
        hist[_popcount(w)] += 1
        for i in range(1, 1 << k):
            w ^= rows[_ctz(i)]
            hist[_popcount(w)] += 1
        return hist

    @njit(cache=True, nogil=True)
    def _min_weight_nb(rows, offset, stop_at):
        k = rows.shape[0]
        best = 1 << 30
        w = offset
        if offset != 0:
            best = _popcount(w)
            if best <= stop_at:
                return best
        for i in range(1, 1 << k):
            w ^= rows[_ctz(i)]
            c = _popcount(w)
            if c < best:
                best = c
                if best <= stop_at:
                    return best
        if best == (1 << 30):
            return -1
        return best

    @njit(cache=True, nogil=True)
    def _coset_leaders_nb(cols, m):
        size = 1 << m
        dist = np.full(size, 255, dtype=np.uint8)
        dist[0] = 0
        frontier = np.zeros(1, dtype=np.uint64)
        nxt = np.empty(size, dtype=np.uint64)
        level = 0
        nf = 1
        while nf > 0:
            level += 1
            cnt = 0
            for a in range(nf):
                s = frontier[a]
                for c in range(cols.shape[0]):
                    t = s ^ cols[c]
                    if dist[t] == 255:
                        dist[t] = level
                        nxt[cnt] = t
                        cnt += 1
            frontier = nxt[:cnt].copy()
            nf = cnt
        return dist


# ---------------------------------------------------------------- dispatch

def span_words(rows: np.ndarray, offset: int = 0) -> np.ndarray:
    """All 2^k words ``offset + span(rows)``; index bit i selects rows[i]."""
    rows = np.ascontiguousarray(rows, dtype=np.uint64)
    if HAVE_NUMBA:
        return _span_words_nb(rows, np.uint64(offset))
    return _span_words_np(rows, np.uint64(offset))


def weight_hist(rows: np.ndarray, n: int, offset: int = 0) -> np.ndarray:
    rows = np.ascontiguousarray(rows, dtype=np.uint64)
    if HAVE_NUMBA:
        return _weight_hist_nb(rows, np.uint64(offset), n)
    return _weight_hist_np(rows, np.uint64(offset), n)


def min_weight(rows: np.ndarray, offset: int = 0, stop_at: int = -1) -> int:
    """Least weight in ``offset + span(rows)`` (zero word skipped when offset=0).

    Returns early with any weight <= ``stop_at``; -1 when the set is {0}.
    """
    rows = np.ascontiguousarray(rows, dtype=np.uint64)
    if HAVE_NUMBA:
        return int(_min_weight_nb(rows, np.uint64(offset), stop_at))
    return _min_weight_np(rows, np.uint64(offset), stop_at)


def coset_leader_weights(cols: np.ndarray, m: int) -> np.ndarray:
    """Breadth-first closure over the 2^m syndromes.

    ``cols`` are the parity-check columns packed as m-bit words; entry s of
    the result is the least number of columns summing to s (255 if none).
    """
    cols = np.ascontiguousarray(cols, dtype=np.uint64)
    if HAVE_NUMBA:
        return _coset_leaders_nb(cols, m)
    return _coset_leaders_np(cols, m)


def popcount(words: np.ndarray) -> np.ndarray:
    return np.bitwise_count(np.asarray(words, dtype=np.uint64))
