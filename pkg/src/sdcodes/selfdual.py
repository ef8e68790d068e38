"""Self-dual structure: Type, doubly-even subcode, shadow, Gleason expansion,
extremality bounds and the mass formula."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import comb, factorial, prod

from .gf2core import (
    GenMatrix,
    WeightEnum,
    BudgetExceeded,
    coset_minimum,
    dual,
    inner,
    reduce_word,
    rref,
    rref_rows,
    weight,
    weight_distribution,
)

SHADOW_MAX_HALF = 24


class NotSelfDual(ValueError):
    pass


class WrongDimension(ValueError):
    pass


class TypeIIInput(ValueError):
    pass


class NoSolution(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class SelfDualCode:
    gen: GenMatrix
    d: int
    wenum: WeightEnum
    type_tag: str  # "I" or "II"

    @property
    def n(self) -> int:
        return self.gen.n

    @property
    def k(self) -> int:
        return self.gen.k

    @cached_property
    def shadow(self) -> "ShadowDecomp | None":
        """Decomposition for Type I codes; None for Type II (S = C)."""
        if self.type_tag == "II":
            return None
        return doubly_even_subcode(self)

    @property
    def s(self) -> int | None:
        sd = self.shadow
        return None if sd is None else sd.s

    def __repr__(self) -> str:
        return f"SelfDualCode([{self.n},{self.k},{self.d}] Type {self.type_tag})"


@dataclass(frozen=True, eq=False)
class ShadowDecomp:
    """C0 = doubly-even subcode; x in C \\ C0, y in S = C0-perp \\ C."""

    code: SelfDualCode
    c0: GenMatrix
    x: int
    y: int

    @cached_property
    def shadow_wenum(self) -> WeightEnum:
        return shadow_weight_distribution(self)

    @property
    def s(self) -> int:
        return self.shadow_wenum.min_weight(nonzero=False)

    def in_shadow(self, v: int) -> bool:
        gen = rref_rows(self.code.gen.rows)
        return reduce_word(v, gen) == reduce_word(self.y, gen)

    def in_c0(self, v: int) -> bool:
        return self.c0.contains(v)


@dataclass(frozen=True)
class GleasonCoeffs:
    c: tuple[Fraction, ...]
    n: int = field(default=0)


# ---------------------------------------------------------------- validation

def validate_self_dual(m: GenMatrix) -> SelfDualCode:
    if m.n % 2:
        raise WrongDimension(f"odd length {m.n}")
    rows = rref_rows(m.rows)
    if len(rows) != m.n // 2:
        raise WrongDimension(f"rank {len(rows)} != n/2 = {m.n // 2}")
    for i, a in enumerate(rows):
        for b in rows[i:]:
            if inner(a, b):
                raise NotSelfDual("basis rows are not mutually orthogonal")
    g = GenMatrix(rows, m.n)
    wenum = weight_distribution(g)
    type_tag = "II" if all(c == 0 for w, c in enumerate(wenum.coeffs) if w % 4) else "I"
    return SelfDualCode(g, wenum.min_weight(), wenum, type_tag)


def _half_weight_parity(v: int) -> int:
    # wt/2 mod 2 is linear on a self-orthogonal code.
    return (weight(v) >> 1) & 1


def doubly_even_subcode(c: SelfDualCode) -> ShadowDecomp:
    """Deterministic decomposition: x and y are the smallest integers in
    their cosets (C \\ C0 and C1 u C3 respectively)."""
    if c.type_tag == "II":
        raise TypeIIInput("Type II code: shadow equals the code, nothing to decompose")
    rows = c.gen.rows
    odd = [r for r in rows if _half_weight_parity(r)]
    pivot = odd[0]
    c0_rows = [r ^ pivot if _half_weight_parity(r) else r for r in rows if r != pivot]
    c0 = rref(GenMatrix(tuple(c0_rows), c.n))
    x = coset_minimum(pivot, c0.rows)
    c0_perp = dual(c0)
    gen = rref_rows(rows)
    y0 = next(v for v in c0_perp.rows if reduce_word(v, gen))
    y = min(coset_minimum(y0, c0.rows), coset_minimum(y0 ^ x, c0.rows))
    return ShadowDecomp(c, c0, x, y)


def shadow_weight_distribution(sd: ShadowDecomp) -> WeightEnum:
    """Weights of S = y + C, swept exhaustively (2^{n/2} words)."""
    if sd.code.n // 2 > SHADOW_MAX_HALF:
        raise BudgetExceeded(f"shadow sweep over 2^{sd.code.n // 2} words exceeds the budget")
    return weight_distribution(sd.code.gen, offset=sd.y)


# ------------------------------------------------------------------ Gleason

def _poly_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_pow(a: list[int], e: int) -> list[int]:
    out = [1]
    for _ in range(e):
        out = _poly_mul(out, a)
    return out


def gleason_basis(n: int) -> list[list[int]]:
    """(1+y^2)^{n/2-4i} (y^2 (1-y^2)^2)^i as coefficient lists of length n+1."""
    basis = []
    for i in range(n // 8 + 1):
        p = _poly_mul(_poly_pow([1, 0, 1], n // 2 - 4 * i), _poly_pow([0, 0, 1, 0, -2, 0, 1], i))
        p = (p + [0] * (n + 1))[: n + 1]
        basis.append(p)
    return basis


def gleason_solve(w: WeightEnum, n: int) -> GleasonCoeffs:
    """Exact rational coefficients of w in the Gleason basis.

    Gaussian elimination over the full coefficient-matching system; any
    nonzero residual raises :class:`NoSolution`.
    """
    if n % 2 or w.n != n:
        raise NoSolution(f"enumerator of length {w.n} does not match n={n}")
    basis = gleason_basis(n)
    m = len(basis)
    # augmented rows: one equation per weight
    eqs = [[Fraction(basis[i][j]) for i in range(m)] + [Fraction(w.coeffs[j])] for j in range(n + 1)]
    piv_cols = []
    r = 0
    for col in range(m):
        p = next((i for i in range(r, len(eqs)) if eqs[i][col] != 0), None)
        if p is None:
            continue
        eqs[r], eqs[p] = eqs[p], eqs[r]
        lead = eqs[r][col]
        eqs[r] = [v / lead for v in eqs[r]]
        for i in range(len(eqs)):
            if i != r and eqs[i][col] != 0:
                f = eqs[i][col]
                eqs[i] = [a - f * b for a, b in zip(eqs[i], eqs[r])]
        piv_cols.append(col)
        r += 1
    for i in range(r, len(eqs)):
        if eqs[i][m] != 0:
            raise NoSolution("enumerator is not in the span of the Gleason basis")
    if len(piv_cols) != m:
        raise NoSolution("degenerate Gleason system")
    c = [Fraction(0)] * m
    for i, col in enumerate(piv_cols):
        c[col] = eqs[i][m]
    return GleasonCoeffs(tuple(c), n)


def shadow_from_gleason(g: GleasonCoeffs, n: int) -> WeightEnum:
    """Expand sum c_i (-1)^i 2^{n/2-6i} (xy)^{n/2-4i} (x^4-y^4)^{2i} at x=1."""
    coeffs = [Fraction(0)] * (n + 1)
    for i, ci in enumerate(g.c):
        if not ci:
            continue
        scale = ci * (-1) ** i * Fraction(2) ** (n // 2 - 6 * i)
        base = n // 2 - 4 * i
        for j in range(2 * i + 1):
            coeffs[base + 4 * j] += scale * comb(2 * i, j) * (-1) ** j
    return WeightEnum(tuple(coeffs))


def gleason_shadow(wenum: WeightEnum) -> WeightEnum:
    return shadow_from_gleason(gleason_solve(wenum, wenum.n), wenum.n)


# ------------------------------------------------------------------- bounds

def extremal_bound(n: int) -> int:
    if n < 2 or n % 2:
        raise ValueError("n must be even and >= 2")
    return 4 * (n // 24) + (6 if n % 24 == 22 else 4)


def s_extremal_check(c: SelfDualCode) -> bool:
    if c.type_tag != "I":
        return False
    n, d, s = c.n, c.d, c.s
    if n % 24 == 22 and d == 4 * (n // 24) + 6:
        return 2 * d + s == 8 + n // 2
    return 2 * d + s == 4 + n // 2


def mass_total(n: int, type_: str = "I") -> int:
    """Number of distinct self-dual codes of length n (not up to equivalence).

    ``"I"`` (alias ``"all"``/``"both"``) is the product over i=1..n/2-1 of
    (2^i+1) and counts every self-dual code; ``"II"`` counts the doubly-even
    ones and needs 8 | n.
    """
    if n % 2:
        raise ValueError("n must be even")
    if type_ in ("I", "all", "both"):
        return prod(2**i + 1 for i in range(1, n // 2))
    if type_ == "II":
        if n % 8:
            return 0
        return prod(2**i + 1 for i in range(0, n // 2 - 1))
    raise ValueError(f"unknown type {type_!r}")


@dataclass(frozen=True)
class MassAudit:
    n: int
    type_: str
    found: Fraction
    expected: Fraction

    @property
    def complete(self) -> bool:
        return self.found == self.expected

    @property
    def deficit(self) -> Fraction:
        return self.expected - self.found


def mass_audit(db, n: int, type_: str = "I") -> MassAudit:
    """Compare sum 1/|Aut| over the classes in ``db`` with N(n)/n!.

    ``db`` is anything with an ``entries`` sequence whose items expose
    ``aut_order`` and ``type_tag``.
    """
    entries = [e for e in db.entries if type_ != "II" or e.type_tag == "II"]
    found = sum((Fraction(1, e.aut_order) for e in entries), Fraction(0))
    return MassAudit(n, type_, found, Fraction(mass_total(n, type_), factorial(n)))
