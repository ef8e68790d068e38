"""Independent reference implementations used as test oracles.

Nothing here imports the package under test; everything is brute force over
lists of ints (bit i of a word = coordinate i).
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product

import numpy as np


def span(rows: list[int]) -> list[int]:
    out = []
    for coeffs in product((0, 1), repeat=len(rows)):
        v = 0
        for c, r in zip(coeffs, rows):
            if c:
                v ^= r
        out.append(v)
    return out


def weight_dist(rows: list[int], n: int, offset: int = 0) -> list[int]:
    hist = [0] * (n + 1)
    for v in span(rows):
        hist[bin(v ^ offset).count("1")] += 1
    return hist


def min_weight(rows: list[int]) -> int:
    return min(bin(v).count("1") for v in span(rows) if v)


def rank(rows: list[int]) -> int:
    basis: list[int] = []
    for r in rows:
        for b in basis:
            r = min(r, r ^ b)
        if r:
            basis.append(r)
    return len(basis)


def is_self_dual(rows: list[int], n: int) -> bool:
    if rank(rows) != n // 2 or n % 2:
        return False
    return all(bin(a & b).count("1") % 2 == 0 for a in rows for b in rows)


def covering_radius(rows: list[int], n: int) -> int:
    """max over all 2^n vectors of the distance to the code."""
    code = np.array(span(rows), dtype=np.int64)
    vecs = np.arange(1 << n, dtype=np.int64)
    best = np.full(vecs.size, n + 1)
    for c in code:
        x = vecs ^ c
        w = np.zeros(vecs.size, dtype=np.int64)
        for i in range(n):
            w += (x >> i) & 1
        best = np.minimum(best, w)
    return int(best.max())


@lru_cache(maxsize=None)
def all_permutations(n: int) -> np.ndarray:
    """Every permutation of range(n) as rows of an (n!, n) int8 array."""
    perms = np.zeros((1, 0), dtype=np.int8)
    for m in range(n):
        # insert symbol m at every position of each permutation of 0..m-1
        blocks = []
        for pos in range(m + 1):
            blk = np.empty((perms.shape[0], m + 1), dtype=np.int8)
            blk[:, :pos] = perms[:, :pos]
            blk[:, pos] = m
            blk[:, pos + 1:] = perms[:, pos:]
            blocks.append(blk)
        perms = np.concatenate(blocks)
    return perms


def _images_in(rows_a: list[int], member_b: np.ndarray, n: int) -> np.ndarray:
    """Mask over all permutations p with p(a) contained in b (coordinate i -> p[i])."""
    perms = all_permutations(n).astype(np.int64)
    ok = np.ones(perms.shape[0], dtype=bool)
    for r in rows_a:
        img = np.zeros(perms.shape[0], dtype=np.int64)
        for i in range(n):
            if (r >> i) & 1:
                img |= np.int64(1) << perms[:, i]
        ok &= member_b[img]
    return ok


def _membership(rows: list[int], n: int) -> np.ndarray:
    member = np.zeros(1 << n, dtype=bool)
    member[span(rows)] = True
    return member


def aut_order(rows: list[int], n: int) -> int:
    """|Aut| by testing all n! coordinate permutations."""
    return int(np.count_nonzero(_images_in(rows, _membership(rows, n), n)))


def equivalent(rows_a: list[int], rows_b: list[int], n: int) -> bool:
    if rank(rows_a) != rank(rows_b):
        return False
    return bool(_images_in(rows_a, _membership(rows_b, n), n).any())


def rref_key(rows: list[int]) -> tuple[int, ...]:
    """Reduced echelon basis with pivot = lowest set bit, as a sorted tuple."""
    basis: list[int] = []
    for r in rows:
        for b in basis:
            if r & (b & -b):
                r ^= b
        if r:
            low = r & -r
            basis = [b ^ r if b & low else b for b in basis]
            basis.append(r)
    return tuple(sorted(basis, key=lambda b: b & -b))


def all_self_dual_codes(n: int) -> set[tuple[int, ...]]:
    """Every self-dual code of length n, as reduced echelon bases.

    Grows self-orthogonal codes containing the all-ones word one dimension
    at a time by adjoining even vectors of the dual, deduplicating exactly.
    """
    ones = (1 << n) - 1
    vecs = np.arange(1 << n, dtype=np.int64)
    par = np.zeros(vecs.size, dtype=np.int64)
    for i in range(n):
        par ^= (vecs >> i) & 1
    level = {rref_key([ones])}
    for _ in range(n // 2 - 1):
        nxt = set()
        for basis in level:
            ok = par == 0
            for b in basis:
                x = vecs & b
                p = np.zeros(vecs.size, dtype=np.int64)
                for i in range(n):
                    p ^= (x >> i) & 1
                ok &= p == 0
            ok[span(list(basis))] = False
            for v in np.nonzero(ok)[0].tolist():
                nxt.add(rref_key(list(basis) + [v]))
        level = nxt
    return level
