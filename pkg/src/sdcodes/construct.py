"""Length-changing constructions between self-dual codes of length n and n+2.

Convention for extensions: the two new coordinates are placed first
(positions 0 and 1) and the old coordinate j moves to j + 2.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .equiv import canonical_form
from .gf2core import (
    GenMatrix,
    coordinates_in_basis,
    dual,
    inner,
    min_weight_at_least,
    rank,
    reduce_word,
    rref_rows,
    weight,
)
from .selfdual import SelfDualCode, validate_self_dual

ALL = 0b11


class DegenerateColumns(ValueError):
    pass


class HypothesisViolated(ValueError):
    pass


class EvenWeightVector(ValueError):
    pass


def _delete_two(v: int, i: int, j: int) -> int:
    lo, hi = min(i, j), max(i, j)
    a = v & ((1 << lo) - 1)
    b = (v >> (lo + 1)) & ((1 << (hi - lo - 1)) - 1)
    c = v >> (hi + 1)
    return a | (b << lo) | (c << (hi - 1))


def _extend(tags: int, v: int) -> int:
    return (v << 2) | tags


# --------------------------------------------------------------- subtraction

def subtract_11(c: SelfDualCode, i: int, j: int) -> SelfDualCode:
    """Keep the codewords reading 00 or 11 on columns i, j and delete them.

    Fails only when e_i + e_j lies in the code (the two columns are equal),
    which minimum weight >= 3 rules out.
    """
    n = c.n
    if i == j or not (0 <= i < n and 0 <= j < n):
        raise DegenerateColumns(f"bad column pair ({i}, {j})")
    rows = c.gen.rows
    odd = [r for r in rows if ((r >> i) ^ (r >> j)) & 1]
    if not odd:
        raise DegenerateColumns(f"columns {i} and {j} coincide on the code")
    p = odd[0]
    keep = [r ^ p if ((r >> i) ^ (r >> j)) & 1 else r for r in rows if r != p]
    out = GenMatrix(tuple(_delete_two(r, i, j) for r in keep), n - 2)
    return validate_self_dual(out)


@dataclass(frozen=True, eq=False)
class TrackedSubtraction:
    code: SelfDualCode
    coords: tuple[int, int]
    x: int  # weight d+2 word of C2 reading 11 on coords
    y: int  # minimum-weight shadow word reading 10 on coords


def _first_word_of_weight(rows: tuple[int, ...], n: int, w: int, offset: int = 0) -> int:
    words = _kernels.span_words(_kernels.as_words(rows), offset)
    hit = np.nonzero(_kernels.popcount(words) == w)[0]
    return int(words[hit[0]])


def subtract_11_shadow_tracked(c: SelfDualCode) -> TrackedSubtraction:
    """Shadow-aware subtraction on a [4m+2, 2m+1, d+2] Type I code.

    Picks y in the shadow of weight s and x of weight d+2; they meet oddly,
    so some column i has x_i = y_i = 1 and some j has x_j = 1, y_j = 0.
    Subtracting on (i, j) leaves minimum weight exactly d and shadow
    minimum weight exactly s - 1; both are asserted.
    """
    n = c.n
    if c.type_tag != "I":
        raise HypothesisViolated("needs a Type I code")
    if n % 4 != 2:
        raise HypothesisViolated(f"length {n} is not 2 mod 4")
    d = c.d - 2
    if d <= 0 or d % 4:
        raise HypothesisViolated(f"d = {d} (minimum weight minus 2) must be a positive multiple of 4")
    s = c.s
    if s < 3:
        raise HypothesisViolated(f"shadow weight {s} < 3")
    y = _first_word_of_weight(c.gen.rows, n, s, offset=c.shadow.y)
    x = _first_word_of_weight(c.gen.rows, n, d + 2)
    assert inner(x, y) == 1
    both = x & y
    i = (both & -both).bit_length() - 1
    only_x = x & ~y
    j = (only_x & -only_x).bit_length() - 1
    out = subtract_11(c, i, j)
    if out.k != n // 2 - 1 or out.d != d or out.s != s - 1:
        raise AssertionError(
            f"subtraction postcondition failed: k={out.k} d={out.d} s={out.s}, expected d={d} s={s - 1}"
        )
    return TrackedSubtraction(out, (i, j), x, y)


# ---------------------------------------------------------------- building up

def build_up(c: SelfDualCode, x: int) -> SelfDualCode:
    """Rows (1,0|x) and (y_i,y_i|r_i) with y_i = x.r_i; x must have odd weight."""
    if x >> c.n:
        raise ValueError("x is longer than the code")
    if weight(x) % 2 == 0:
        raise EvenWeightVector("x must have odd weight")
    return validate_self_dual(_build_up_matrix(c.gen.rows, c.n, x))


def _build_up_matrix(rows, n: int, x: int) -> GenMatrix:
    out = [_extend(0b01, x)]
    out += [_extend(ALL if inner(x, r) else 0, r) for r in rows]
    return GenMatrix(tuple(out), n + 2)


def odd_coset_representatives(c: SelfDualCode) -> list[int]:
    """One odd-weight x per coset of C in GF(2)^n.

    x and x + c give equal or column-swapped codes under building-up, so
    these 2^{n/2-1} vectors exhaust the construction.
    """
    pivots = {(r & -r).bit_length() - 1 for r in c.gen.rows}
    free = [f for f in range(c.n) if f not in pivots]
    out = []
    for mask in range(1 << len(free)):
        v = 0
        for b, f in enumerate(free):
            if (mask >> b) & 1:
                v |= 1 << f
        if weight(v) & 1:
            out.append(v)
    return out


# ---------------------------------------------------------------- completions

def self_dual_completions(so: GenMatrix, skip_weight_two: bool = False) -> list[GenMatrix]:
    """All self-dual codes between a self-orthogonal [N, N/2 - 1] code and its dual.

    These are so + v for the isotropic nonzero classes v of so-perp / so.
    With ``skip_weight_two`` a class whose minimum weight is <= 2 is dropped.
    """
    base = rref_rows(so.rows)
    perp = dual(so)
    quot: list[int] = []
    for v in perp.rows:
        red = reduce_word(v, rref_rows(base + tuple(quot)))
        if red:
            quot.append(red)
    if len(quot) != 2:
        raise ValueError(f"expected a 2-dimensional quotient, got {len(quot)}")
    out = []
    for v in (quot[0], quot[1], quot[0] ^ quot[1]):
        if weight(v) % 2:
            continue
        if skip_weight_two and not min_weight_at_least(GenMatrix(base, so.n), 3, offset=v):
            continue
        out.append(GenMatrix(base + (v,), so.n))
    return out


# ------------------------------------------------------------------ recursion

@dataclass(frozen=True, eq=False)
class ExtensionPlan:
    """Step 1-2 data for one seed: weight-d basis G_d and complement G_E."""

    seed: SelfDualCode
    gd: tuple[int, ...]
    ge: tuple[int, ...]
    feasible: bool  # every weight-d word has odd G_d-parity

    @property
    def k(self) -> int:
        return len(self.gd)


def extension_plan(c: SelfDualCode) -> ExtensionPlan:
    d = c.d
    words = _kernels.span_words(_kernels.as_words(c.gen.rows))
    light = [int(w) for w in words[_kernels.popcount(words) == d]]
    gd: list[int] = []
    basis: list[int] = []
    for w in light:
        red = reduce_word(w, basis)
        if red:
            gd.append(w)
            basis = list(rref_rows(basis + [w]))
    assert gd, "minimum-weight words always exist"
    ge: list[int] = []
    for r in sorted(c.gen.rows):
        if reduce_word(r, basis):
            ge.append(r)
            basis = list(rref_rows(basis + [r]))
    feasible = True
    for w in light:
        coords = coordinates_in_basis(w, gd)
        if coords is None or weight(coords) % 2 == 0:
            feasible = False
            break
    return ExtensionPlan(c, tuple(gd), tuple(ge), feasible)


def weight_d_subcode_dim(c: SelfDualCode) -> int:
    """Dimension of the span of the minimum-weight codewords."""
    words = _kernels.span_words(_kernels.as_words(c.gen.rows))
    light = [int(w) for w in words[_kernels.popcount(words) == c.d]]
    return rank(light)


def recursive_matrix(plan: ExtensionPlan, a: int) -> GenMatrix:
    """Generator of the self-orthogonal code: (11|G_d) over (a_i a_i|G_E)."""
    rows = [_extend(ALL, g) for g in plan.gd]
    rows += [_extend(ALL if (a >> i) & 1 else 0, e) for i, e in enumerate(plan.ge)]
    return GenMatrix(tuple(rows), plan.seed.n + 2)


def _leader_table(plan: ExtensionPlan) -> np.ndarray:
    """Coset-leader weight for every syndrome w.r.t. the rows G_d, G_E."""
    rows = plan.gd + plan.ge
    m = len(rows)
    cols = []
    for j in range(plan.seed.n):
        col = 0
        for i, r in enumerate(rows):
            if (r >> j) & 1:
                col |= 1 << i
        cols.append(col)
    return _kernels.coset_leader_weights(_kernels.as_words(cols), m)


def _solve_tag_vector(rows: tuple[int, ...], n: int, syndrome: int) -> int:
    """Some x with x . rows[i] = bit i of syndrome."""
    # rows span a self-dual code, so the system has full row rank
    aug = [(r, (syndrome >> i) & 1) for i, r in enumerate(rows)]
    piv: list[tuple[int, int]] = []
    for r, t in aug:
        for b, bt in piv:
            if r & (b & -b):
                r ^= b
                t ^= bt
        assert r
        low = r & -r
        piv = [(b ^ r, bt ^ t) if b & low else (b, bt) for b, bt in piv]
        piv.append((r, t))
    x = 0
    for b, t in piv:
        if t:
            x |= b & -b
    return x


@dataclass(frozen=True, eq=False)
class Extension:
    code: SelfDualCode
    a: int
    x: int  # completion row is (1,0|x)


def recursive_extensions(c: SelfDualCode) -> list[Extension]:
    """Every completion of minimum weight d+2, before deduplication.

    For sign vector a the completion (1,0|x) needs x.g = 1 on G_d and
    x.e_i = a_i on G_E, i.e. x has syndrome (1..1, a).  The resulting code
    has minimum weight d+2 iff every weight-d word gets tag 1 and the coset
    x + C has no word lighter than d+1, which the coset-leader table
    answers for all a at once.  (0,1|x) gives the column-swapped code.
    """
    plan = extension_plan(c)
    if not plan.feasible:
        return []
    k = plan.k
    leaders = _leader_table(plan)
    rows = plan.gd + plan.ge
    ones = (1 << k) - 1
    all_ones = (1 << c.n) - 1
    ones_coords = coordinates_in_basis(all_ones, rows)
    out = []
    for a in range(1 << (c.n // 2 - k)):
        syn = ones | (a << k)
        # x has odd weight iff x.1 = 1
        if weight(syn & ones_coords) % 2 == 0:
            continue
        if leaders[syn] < c.d + 1:
            continue
        x = _solve_tag_vector(rows, c.n, syn)
        so = recursive_matrix(plan, a)
        code = validate_self_dual(GenMatrix(so.rows + (_extend(0b01, x),), c.n + 2))
        assert code.d == c.d + 2
        out.append(Extension(code, a, x))
    return out


def recursive_extend(c: SelfDualCode) -> list[SelfDualCode]:
    """Inequivalent [n+2, n/2+1, d+2] codes subtracting back to c, in canonical form."""
    seen = {}
    for ext in recursive_extensions(c):
        cert = canonical_form(ext.code.gen)
        if cert.key not in seen:
            seen[cert.key] = validate_self_dual(cert.canon)
    return [seen[k] for k in sorted(seen)]


# ---------------------------------------------------------- Harada-Munemasa

def harada_munemasa_matrix(c: SelfDualCode, a: int) -> GenMatrix:
    """[n+2, n/2] self-orthogonal code: (1,1|1) then (a_i,a_i|r_i).

    The basis of c is taken with the all-ones word first; the remaining
    n/2 - 1 rows carry the free tags a_1..a_{n/2-1}.  Tagging the all-ones
    row with 1 is what lets an odd completion exist.
    """
    n = c.n
    all_ones = (1 << n) - 1
    rest = []
    basis = [all_ones]
    for r in c.gen.rows:
        red = reduce_word(r, rref_rows(basis))
        if red:
            rest.append(r)
            basis.append(r)
    if a >> len(rest):
        raise ValueError(f"tag vector needs {len(rest)} bits")
    rows = [_extend(ALL, all_ones)]
    rows += [_extend(ALL if (a >> i) & 1 else 0, r) for i, r in enumerate(rest)]
    return GenMatrix(tuple(rows), n + 2)


def harada_munemasa_extend(c: SelfDualCode, a: int, skip_weight_two: bool = False) -> list[SelfDualCode]:
    """All self-dual completions of the tagged code, any minimum weight."""
    so = harada_munemasa_matrix(c, a)
    return [validate_self_dual(m) for m in self_dual_completions(so, skip_weight_two)]
