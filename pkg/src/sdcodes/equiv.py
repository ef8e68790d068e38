"""Permutation equivalence of binary codes.

Canonical labelling by individualization and refinement.  Coordinates are
coloured by how they meet an invariant set of low-weight codewords; the
colouring is refined to a stable ordered partition, and a search tree
individualizes one coordinate at a time until the partition is discrete.
Each leaf is a labelling; its certificate is the RREF of the relabelled
code, and the least certificate is the canonical form.  Leaves with equal
certificates give automorphisms, which prune the tree and, along the first
path, yield |Aut| as a product of orbit lengths.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .gf2core import BudgetExceeded, GenMatrix, permute_word, rank, rref_rows

DEFAULT_NODE_BUDGET = 500_000


class ShapeMismatch(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class CanonicalCert:
    canon: GenMatrix
    perm: tuple[int, ...]  # input coordinate i goes to position perm[i]
    aut_order: int
    generators: tuple[tuple[int, ...], ...] = ()
    nodes: int = 0

    @property
    def key(self) -> tuple[int, ...]:
        return self.canon.rows


def _collect_words(rows: tuple[int, ...], n: int) -> tuple[np.ndarray, np.ndarray]:
    """Words of the lightest nonzero weights, until >= 4n words spanning the code."""
    k = len(rows)
    words = _kernels.span_words(_kernels.as_words(rows))
    wts = _kernels.popcount(words).astype(np.int64)
    chosen: list[np.ndarray] = []
    classes: list[np.ndarray] = []
    basis: list[int] = []
    count = 0
    for w in np.unique(wts):
        if w == 0:
            continue
        sel = words[wts == w]
        chosen.append(sel)
        classes.append(np.full(sel.size, w, dtype=np.int64))
        count += sel.size
        if len(basis) < k:
            basis = list(rref_rows(basis + [int(v) for v in sel]))
        if count >= 4 * n and len(basis) == k:
            break
    sel = np.concatenate(chosen)
    inc = (sel[:, None] >> np.arange(n, dtype=np.uint64)[None, :]) & np.uint64(1)
    return inc, np.concatenate(classes)


def _dense(labels: np.ndarray) -> np.ndarray:
    _, inv = np.unique(labels, return_inverse=True)
    return inv.reshape(-1)


_CELL_KEYS = np.random.default_rng(0x5D0C0DE5).integers(1, 2**63, size=4096, dtype=np.uint64) | np.uint64(1)


def _mix(h: np.ndarray) -> np.ndarray:
    """splitmix64 finalizer, applied elementwise with wrap-around."""
    h = h ^ (h >> np.uint64(30))
    h = h * np.uint64(0xBF58476D1CE4E5B9)
    h = h ^ (h >> np.uint64(27))
    h = h * np.uint64(0x94D049BB133111EB)
    return h ^ (h >> np.uint64(31))


def _rank_pairs(primary: np.ndarray, secondary: np.ndarray) -> np.ndarray:
    """Dense ranks of (primary, secondary) in lexicographic order."""
    order = np.lexsort((secondary, primary))
    p, s = primary[order], secondary[order]
    step = np.empty(order.size, dtype=np.int64)
    step[0] = 0
    step[1:] = (p[1:] != p[:-1]) | (s[1:] != s[:-1])
    out = np.empty(order.size, dtype=np.int64)
    out[order] = np.cumsum(step)
    return out


class _Refiner:
    """Equitable refinement of coordinates against the chosen word set.

    A word's signature is the sum of random per-cell keys over its
    coordinates; a coordinate's signature is the sum of mixed signatures of
    the words through it.  Every step depends only on invariant data, so
    hash collisions merely coarsen the partition.
    """

    def __init__(self, inc: np.ndarray, wclass: np.ndarray):
        self.inc = inc.astype(np.uint64)
        self.inc_t = np.ascontiguousarray(self.inc.T)
        self.salt = _mix(wclass.astype(np.uint64) + np.uint64(0x9E3779B97F4A7C15))

    def refine(self, colors: np.ndarray) -> np.ndarray:
        ncells = int(colors.max()) + 1
        with np.errstate(over="ignore"):
            while True:
                keys = _CELL_KEYS[colors % _CELL_KEYS.size] + colors.astype(np.uint64)
                wsig = _mix((self.inc @ keys) ^ self.salt)
                csig = self.inc_t @ wsig
                new = _rank_pairs(colors, csig)
                nnew = int(new.max()) + 1
                if nnew == ncells:
                    return colors
                colors, ncells = new, nnew


def _individualize(colors: np.ndarray, v: int) -> np.ndarray:
    lab = colors * 2 + 1
    lab[v] -= 1
    return _dense(lab)


def _target_cell(colors: np.ndarray) -> np.ndarray | None:
    counts = np.bincount(colors)
    big = np.nonzero(counts > 1)[0]
    if big.size == 0:
        return None
    cell = big[np.argmin(counts[big])]
    return np.nonzero(colors == cell)[0]


def _orbit_labels(n: int, gens: list[np.ndarray]) -> np.ndarray:
    """Smallest point of each orbit, by min-label propagation."""
    lab = np.arange(n)
    if not gens:
        return lab
    stack = np.stack(gens)
    flat = stack.ravel()
    while True:
        new = np.minimum(lab, lab[stack].min(axis=0))
        np.minimum.at(new, flat, np.tile(lab, len(gens)))
        new = new[new]
        if np.array_equal(new, lab):
            return lab
        lab = new


class _Search:
    def __init__(self, m: GenMatrix, node_budget: int):
        self.n = m.n
        self.rows = tuple(m.rows)
        inc, wclass = _collect_words(self.rows, m.n)
        self.refiner = _Refiner(inc, wclass)
        self.node_budget = node_budget
        self.nodes = 0
        self.first_cert = None
        self.first_perm = None
        self.best_cert = None
        self.best_perm = None
        self.gens: list[np.ndarray] = []
        self.order = 1

    def cert(self, perm: np.ndarray) -> tuple[int, ...]:
        return rref_rows(permute_word(r, perm) for r in self.rows)

    def orbits(self, fixed: list[int]) -> np.ndarray:
        """Orbit labels of the group generated by automorphisms fixing ``fixed``."""
        if fixed:
            idx = np.asarray(fixed)
            gens = [g for g in self.gens if np.array_equal(g[idx], idx)]
        else:
            gens = self.gens
        return _orbit_labels(self.n, gens)

    def add_automorphism(self, p_from: np.ndarray, p_to: np.ndarray) -> None:
        inv = np.empty(self.n, dtype=np.int64)
        inv[p_from] = np.arange(self.n)
        g = inv[p_to]
        if not np.array_equal(g, np.arange(self.n)):
            self.gens.append(g)

    def leaf(self, colors: np.ndarray) -> bool:
        """Process a discrete partition; True means 'matched the first leaf'."""
        perm = colors.astype(np.int64)
        c = self.cert(perm.tolist())
        if self.first_cert is None:
            self.first_cert = self.best_cert = c
            self.first_perm = self.best_perm = perm
            return False
        if c == self.first_cert:
            self.add_automorphism(self.first_perm, perm)
            return True
        if c == self.best_cert:
            self.add_automorphism(self.best_perm, perm)
        elif c < self.best_cert:
            self.best_cert, self.best_perm = c, perm
        return False

    def search(self, colors: np.ndarray, prefix: list[int], on_first: bool) -> bool:
        self.nodes += 1
        if self.nodes > self.node_budget:
            raise BudgetExceeded(f"canonical search passed {self.node_budget} nodes")
        cell = _target_cell(colors)
        if cell is None:
            return self.leaf(colors)
        explored: list[int] = []
        lab, known = None, -1
        for idx, v in enumerate(cell.tolist()):
            if explored and self.gens:
                if known != len(self.gens):
                    lab, known = self.orbits(prefix), len(self.gens)
                if any(lab[v] == lab[u] for u in explored):
                    continue
            explored.append(v)
            child = self.refiner.refine(_individualize(colors, v))
            hit = self.search(child, prefix + [v], on_first and idx == 0)
            if hit and not on_first:
                return True
        if on_first:
            lab = self.orbits(prefix)
            self.order *= int(np.count_nonzero(lab[cell] == lab[cell[0]]))
        return False

    def run(self) -> CanonicalCert:
        colors = self.refiner.refine(np.zeros(self.n, dtype=np.int64))
        self.search(colors, [], True)
        perm = tuple(int(p) for p in self.best_perm)
        return CanonicalCert(
            canon=GenMatrix(self.best_cert, self.n),
            perm=perm,
            aut_order=self.order,
            generators=tuple(tuple(int(x) for x in g) for g in self.gens),
            nodes=self.nodes,
        )


def canonical_form(m: GenMatrix, node_budget: int = DEFAULT_NODE_BUDGET) -> CanonicalCert:
    if m.n > _kernels.MAX_WORD_BITS:
        raise ValueError("canonical form supports n <= 64")
    m = GenMatrix(rref_rows(m.rows), m.n)
    if m.k == 0:
        raise ValueError("zero code")
    limit = sys.getrecursionlimit()
    if limit < 4 * m.n + 100:
        sys.setrecursionlimit(4 * m.n + 100)
    return _Search(m, node_budget).run()


def aut_order(m: GenMatrix) -> int:
    return canonical_form(m).aut_order


@dataclass(frozen=True)
class Equivalence:
    equivalent: bool
    perm: tuple[int, ...] | None  # maps coordinates of a onto those of b

    def __bool__(self) -> bool:
        return self.equivalent


def are_equivalent(a: GenMatrix, b: GenMatrix) -> Equivalence:
    if a.n != b.n or rank(a.rows) != rank(b.rows):
        raise ShapeMismatch(f"[{a.n},{rank(a.rows)}] vs [{b.n},{rank(b.rows)}]")
    ca, cb = canonical_form(a), canonical_form(b)
    if ca.key != cb.key:
        return Equivalence(False, None)
    inv_b = [0] * b.n
    for i, p in enumerate(cb.perm):
        inv_b[p] = i
    return Equivalence(True, tuple(inv_b[p] for p in ca.perm))
