"""Bit-packed GF(2) vectors and matrices.

A word of length n is a Python ``int`` whose bit i holds coordinate i
(coordinate 0 is the least-significant bit).  In the text format the
leftmost character is coordinate 0, so a row reads exactly as printed.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from . import _kernels

MAX_LENGTH = 128
EXHAUSTIVE_MAX_DIM = 24


class ParseError(ValueError):
    pass


class RankDeficient(ValueError):
    pass


class BudgetExceeded(RuntimeError):
    pass


def weight(v: int) -> int:
    return v.bit_count()


def inner(u: int, v: int) -> int:
    return (u & v).bit_count() & 1


def word_from_str(s: str) -> int:
    v = 0
    for i, ch in enumerate(s):
        if ch == "1":
            v |= 1 << i
        elif ch != "0":
            raise ParseError(f"bad character {ch!r} in row {s!r}")
    return v


def word_to_str(v: int, n: int) -> str:
    return "".join("1" if (v >> i) & 1 else "0" for i in range(n))


@dataclass(frozen=True)
class BitWord:
    value: int
    n: int

    def __post_init__(self):
        if not 1 <= self.n <= MAX_LENGTH:
            raise ValueError(f"length {self.n} outside 1..{MAX_LENGTH}")
        if self.value >> self.n:
            raise ValueError("value has bits beyond the word length")

    @classmethod
    def from_str(cls, s: str) -> "BitWord":
        s = s.strip()
        return cls(word_from_str(s), len(s))

    @property
    def weight(self) -> int:
        return weight(self.value)

    def inner(self, other: "BitWord") -> int:
        return inner(self.value, other.value)

    def __add__(self, other: "BitWord") -> "BitWord":
        if self.n != other.n:
            raise ValueError("length mismatch")
        return BitWord(self.value ^ other.value, self.n)

    def __getitem__(self, i: int) -> int:
        return (self.value >> i) & 1

    def __str__(self) -> str:
        return word_to_str(self.value, self.n)


@dataclass(frozen=True)
class GenMatrix:
    """k x n matrix over GF(2); ``rows`` are packed words."""

    rows: tuple[int, ...]
    n: int

    def __post_init__(self):
        if not 1 <= self.n <= MAX_LENGTH:
            raise ValueError(f"length {self.n} outside 1..{MAX_LENGTH}")
        object.__setattr__(self, "rows", tuple(int(r) for r in self.rows))
        for r in self.rows:
            if r < 0 or r >> self.n:
                raise ValueError("row has bits beyond the matrix width")

    @property
    def k(self) -> int:
        return len(self.rows)

    def word(self, i: int) -> BitWord:
        return BitWord(self.rows[i], self.n)

    def validate(self) -> "GenMatrix":
        if self.k == 0:
            raise RankDeficient("empty matrix")
        if rank(self.rows) != self.k:
            raise RankDeficient(f"rows are dependent (rank {rank(self.rows)} < {self.k})")
        return self

    def contains(self, v: int) -> bool:
        return reduce_word(v, rref_rows(self.rows)) == 0

    def same_space(self, other: "GenMatrix") -> bool:
        return self.n == other.n and rref_rows(self.rows) == rref_rows(other.rows)

    def permute(self, perm: Sequence[int]) -> "GenMatrix":
        """Move coordinate i to position ``perm[i]``."""
        return GenMatrix(tuple(permute_word(r, perm) for r in self.rows), self.n)

    @classmethod
    def from_strings(cls, lines: Iterable[str]) -> "GenMatrix":
        lines = [ln.strip() for ln in lines]
        if not lines:
            raise ParseError("no rows")
        n = len(lines[0])
        for ln in lines:
            if len(ln) != n:
                raise ParseError(f"ragged rows: {len(ln)} != {n}")
        if n == 0:
            raise ParseError("empty row")
        return cls(tuple(word_from_str(ln) for ln in lines), n)

    @classmethod
    def from_text(cls, text: str) -> "GenMatrix":
        lines = []
        for raw in text.splitlines():
            ln = raw.strip()
            if not ln:
                if lines:
                    break
                continue
            lines.append(ln)
        return cls.from_strings(lines)

    def to_text(self) -> str:
        return "".join(word_to_str(r, self.n) + "\n" for r in self.rows)

    def __str__(self) -> str:
        return self.to_text()


@dataclass(frozen=True)
class WeightEnum:
    """Coefficients A_0..A_n, usually ints.

    Enumerators computed from a Gleason expansion may carry ``Fraction`` or
    negative entries; :attr:`is_feasible` tells them apart.
    """

    coeffs: tuple

    def __post_init__(self):
        norm = []
        for c in self.coeffs:
            if isinstance(c, Fraction):
                c = int(c) if c.denominator == 1 else c
            else:
                c = int(c)
            norm.append(c)
        object.__setattr__(self, "coeffs", tuple(norm))

    @property
    def n(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, w: int):
        return self.coeffs[w]

    @property
    def total(self):
        return sum(self.coeffs)

    @property
    def is_feasible(self) -> bool:
        return all(isinstance(c, int) and c >= 0 for c in self.coeffs)

    def support(self) -> list[int]:
        return [w for w, c in enumerate(self.coeffs) if c != 0]

    def min_weight(self, nonzero: bool = True) -> int | None:
        for w, c in enumerate(self.coeffs):
            if c and (w or not nonzero):
                return w
        return None

    def as_dict(self) -> dict[int, int]:
        return {w: c for w, c in enumerate(self.coeffs) if c}

    def to_text(self) -> str:
        return "".join(f"{w}:{c}\n" for w, c in enumerate(self.coeffs) if c)

    @classmethod
    def from_text(cls, text: str, n: int) -> "WeightEnum":
        coeffs = [0] * (n + 1)
        last = -1
        for ln in text.split():
            w, c = ln.split(":")
            w = int(w)
            if w <= last or w > n:
                raise ParseError(f"weight {w} out of order or range")
            coeffs[w] = Fraction(c) if "/" in c else int(c)
            last = w
        return cls(tuple(coeffs))


# ------------------------------------------------------------------ helpers

def permute_word(v: int, perm: Sequence[int]) -> int:
    out = 0
    i = 0
    while v:
        if v & 1:
            out |= 1 << perm[i]
        v >>= 1
        i += 1
    return out


def rref_rows(rows: Iterable[int]) -> tuple[int, ...]:
    """Fully reduced echelon basis; pivots are lowest set bits, ascending."""
    basis: list[int] = []
    for v in rows:
        for b in basis:
            if v & (b & -b):
                v ^= b
        if v:
            low = v & -v
            for i, b in enumerate(basis):
                if b & low:
                    basis[i] = b ^ v
            basis.append(v)
    basis.sort(key=lambda b: b & -b)
    return tuple(basis)


def reduce_word(v: int, basis: Sequence[int]) -> int:
    """Reduce v against an RREF basis (pivot = lowest bit)."""
    for b in basis:
        if v & (b & -b):
            v ^= b
    return v


def rank(rows: Iterable[int]) -> int:
    return len(rref_rows(rows))


def high_echelon(rows: Iterable[int]) -> list[int]:
    """Echelon basis keyed on the highest set bit, descending."""
    basis: list[int] = []
    for v in rows:
        for b in basis:
            if v >> (b.bit_length() - 1) & 1:
                v ^= b
        if v:
            basis.append(v)
            basis.sort(key=int.bit_length, reverse=True)
    return basis


def coset_minimum(v: int, basis_rows: Iterable[int]) -> int:
    """Smallest integer in the coset ``v + span(basis_rows)``."""
    for b in high_echelon(basis_rows):
        if v >> (b.bit_length() - 1) & 1:
            v ^= b
    return v


def coordinates_in_basis(v: int, rows: Sequence[int]) -> int | None:
    """Bitmask c with XOR of rows[i] over set bits i equal to v, or None."""
    basis: list[tuple[int, int]] = []
    for i, r in enumerate(rows):
        tag = 1 << i
        for b, bt in basis:
            if r & (b & -b):
                r ^= b
                tag ^= bt
        if r:
            basis.append((r, tag))
    tag = 0
    for b, bt in basis:
        if v & (b & -b):
            v ^= b
            tag ^= bt
    return tag if v == 0 else None


def _words_array(m: GenMatrix) -> np.ndarray:
    return _kernels.as_words(m.rows)


def all_codewords(m: GenMatrix, offset: int = 0) -> list[int]:
    """Every word of ``offset + rowspace(m)``; index bit i selects row i."""
    if m.n <= _kernels.MAX_WORD_BITS:
        return [int(w) for w in _kernels.span_words(_words_array(m), offset)]
    words = [offset]
    for r in m.rows:
        words += [w ^ r for w in words]
    return words


def _check_budget(k: int, time_budget: float | None) -> None:
    if k > EXHAUSTIVE_MAX_DIM and time_budget is None:
        raise BudgetExceeded(
            f"dimension {k} exceeds the exhaustive limit {EXHAUSTIVE_MAX_DIM}; pass time_budget to opt in"
        )


def _chunked_hist(m: GenMatrix, offset: int, time_budget: float | None) -> np.ndarray:
    """Split the sweep on the top rows so a time budget can be honoured."""
    rows = m.rows
    low = min(len(rows), 20)
    hist = np.zeros(m.n + 1, dtype=object)
    start = time.monotonic()
    high = GenMatrix(rows[low:], m.n) if len(rows) > low else None
    tops = all_codewords(high) if high else [0]
    lowm = GenMatrix(rows[:low], m.n)
    for top in tops:
        hist += _hist_once(lowm, offset ^ top).astype(object)
        if time_budget is not None and time.monotonic() - start > time_budget:
            raise BudgetExceeded(f"sweep exceeded {time_budget} s")
    return hist


def _hist_once(m: GenMatrix, offset: int) -> np.ndarray:
    if m.n <= _kernels.MAX_WORD_BITS:
        return _kernels.weight_hist(_words_array(m), m.n, offset)
    hist = np.zeros(m.n + 1, dtype=np.int64)
    w = offset
    hist[weight(w)] += 1
    for i in range(1, 1 << m.k):
        w ^= m.rows[(i & -i).bit_length() - 1]
        hist[weight(w)] += 1
    return hist


# ---------------------------------------------------------------- operations

def rref(m: GenMatrix) -> GenMatrix:
    """Reduced row-echelon form; zero rows are dropped so ``k`` is the rank."""
    return GenMatrix(rref_rows(m.rows), m.n)


def dual(m: GenMatrix) -> GenMatrix:
    """Basis of the orthogonal complement (empty for the full space)."""
    basis = rref_rows(m.rows)
    pivots = [(b & -b).bit_length() - 1 for b in basis]
    pivset = set(pivots)
    out = []
    for f in range(m.n):
        if f in pivset:
            continue
        v = 1 << f
        for b, p in zip(basis, pivots):
            if (b >> f) & 1:
                v |= 1 << p
        out.append(v)
    return GenMatrix(tuple(out), m.n)


def min_weight(m: GenMatrix, time_budget: float | None = None) -> int:
    """Minimum nonzero weight by exhaustive sweep of the row space."""
    m = rref(m)
    if m.k == 0:
        raise RankDeficient("zero code has no minimum weight")
    _check_budget(m.k, time_budget)
    if m.k > EXHAUSTIVE_MAX_DIM or m.n > _kernels.MAX_WORD_BITS:
        return weight_distribution(m, time_budget).min_weight()
    return _kernels.min_weight(_words_array(m))


def min_weight_at_least(m: GenMatrix, bound: int, offset: int = 0) -> bool:
    """True iff every (nonzero) word of offset + rowspace has weight >= bound.

    Stops at the first lighter word.
    """
    m = rref(m)
    if m.n <= _kernels.MAX_WORD_BITS:
        got = _kernels.min_weight(_words_array(m), offset, bound - 1)
        return got == -1 or got >= bound
    words = all_codewords(m, offset)
    if offset == 0:
        words = words[1:]
    return all(weight(w) >= bound for w in words)


def weight_distribution(m: GenMatrix, time_budget: float | None = None, offset: int = 0) -> WeightEnum:
    """Exact A_0..A_n of the row space (or of the coset ``offset + C``).

    Gray-code sweep: consecutive words differ by one row, so each step is a
    single XOR and popcount.
    """
    m = rref(m)
    _check_budget(m.k, time_budget)
    if m.k <= EXHAUSTIVE_MAX_DIM and time_budget is None:
        hist = _hist_once(m, offset)
    else:
        hist = _chunked_hist(m, offset, time_budget)
    return WeightEnum(tuple(int(c) for c in hist))


def read_matrix(path) -> GenMatrix:
    with open(path, encoding="utf-8") as fh:
        return GenMatrix.from_text(fh.read())


def write_matrix(path, m: GenMatrix) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(m.to_text())


def direct_sum(a: GenMatrix, b: GenMatrix) -> GenMatrix:
    """``a`` on the first a.n coordinates, ``b`` shifted after it."""
    return GenMatrix(a.rows + tuple(r << a.n for r in b.rows), a.n + b.n)
