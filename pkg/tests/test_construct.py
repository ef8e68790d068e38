import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from sdcodes.construct import (
    DegenerateColumns,
    EvenWeightVector,
    HypothesisViolated,
    build_up,
    extension_plan,
    harada_munemasa_extend,
    harada_munemasa_matrix,
    odd_coset_representatives,
    recursive_extend,
    recursive_extensions,
    self_dual_completions,
    subtract_11,
    subtract_11_shadow_tracked,
    weight_d_subcode_dim,
)
from sdcodes.equiv import are_equivalent, canonical_form
from sdcodes.gf2core import GenMatrix, direct_sum, rref, word_from_str
from sdcodes.selfdual import validate_self_dual

E2 = GenMatrix((0b11,), 2)
H8 = GenMatrix.from_strings(["11110000", "00111100", "00001111", "10101010"])


def _e2_power(m: int) -> GenMatrix:
    g = E2
    for _ in range(m - 1):
        g = direct_sum(g, E2)
    return g


def _keys(codes) -> set:
    return {canonical_form(c.gen).key for c in codes}


# --------------------------------------------------------------- subtraction

def test_subtract_hamming_gives_e2_cubed():
    h = validate_self_dual(H8)
    e2_3 = _e2_power(3)
    for i in range(8):
        for j in range(8):
            if i != j:
                out = subtract_11(h, i, j)
                assert (out.n, out.k, out.d) == (6, 3, 2)
                assert are_equivalent(out.gen, e2_3)


def test_subtract_smallest_case():
    # e2 + e2 on columns 0 and 2 leaves e2
    out = subtract_11(validate_self_dual(_e2_power(2)), 0, 2)
    assert rref(out.gen).rows == (0b11,)


def test_subtract_degenerate_columns():
    c = validate_self_dual(_e2_power(2))
    with pytest.raises(DegenerateColumns):
        subtract_11(c, 0, 1)
    with pytest.raises(DegenerateColumns):
        subtract_11(c, 1, 1)
    with pytest.raises(DegenerateColumns):
        subtract_11(c, 0, 9)


def test_subtract_keeps_exactly_the_00_11_words(corpus):
    for e in corpus[12].entries:
        c = e.code
        words = oracles.span(list(c.gen.rows))
        for i, j in ((0, 1), (2, 7), (5, 11)):
            if (1 << i) | (1 << j) in words:
                continue
            out = subtract_11(c, i, j)
            kept = {w for w in words if ((w >> i) ^ (w >> j)) & 1 == 0}
            lo, hi = min(i, j), max(i, j)
            shrunk = set()
            for w in kept:
                bits = [(w >> t) & 1 for t in range(12) if t not in (lo, hi)]
                shrunk.add(sum(b << t for t, b in enumerate(bits)))
            assert set(oracles.span(list(out.gen.rows))) == shrunk
            assert out.d >= c.d - 2


def test_shadow_tracked_rejects_hypotheses(corpus):
    # no code of length <= 16 has d - 2 a positive multiple of 4
    for n, db in corpus.items():
        for e in db.entries:
            with pytest.raises(HypothesisViolated):
                subtract_11_shadow_tracked(e.code)


# ---------------------------------------------------------------- building up

def test_build_up_small_examples():
    e2 = validate_self_dual(E2)
    c = build_up(e2, 0b01)
    assert (c.n, c.k) == (4, 2) and are_equivalent(c.gen, _e2_power(2))
    c = build_up(validate_self_dual(_e2_power(2)), 0b0001)
    assert (c.n, c.k) == (6, 3) and are_equivalent(c.gen, _e2_power(3))
    with pytest.raises(EvenWeightVector):
        build_up(e2, 0b11)
    with pytest.raises(ValueError):
        build_up(e2, 0b100)


@given(idx=st.integers(0, 100), x=st.integers(0, 2**16 - 1))
@settings(max_examples=80, deadline=None)
def test_build_up_is_self_dual_and_subtracts_back(corpus, idx, x):
    codes = [e.code for n in sorted(corpus) for e in corpus[n].entries]
    c = codes[idx % len(codes)]
    x &= (1 << c.n) - 1
    if bin(x).count("1") % 2 == 0:
        x ^= 1
    out = build_up(c, x)
    assert oracles.is_self_dual(list(out.gen.rows), c.n + 2)
    # the new coordinates sit first, so subtracting on (0, 1) recovers c
    assert rref(subtract_11(out, 0, 1).gen).rows == rref(c.gen).rows


def test_odd_coset_representatives(corpus):
    for n in (4, 8, 10):
        for e in corpus[n].entries:
            reps = odd_coset_representatives(e.code)
            assert len(reps) == 2 ** (n // 2 - 1)
            assert all(bin(x).count("1") % 2 for x in reps)
            basis = rref(e.code.gen).rows
            cosets = {oracles.rref_key(list(basis) + [x]) for x in reps}
            assert len(cosets) == len(reps)


# ---------------------------------------------------------------- recursion

def test_weight_d_subcode_dim():
    assert weight_d_subcode_dim(validate_self_dual(H8)) == 4
    assert weight_d_subcode_dim(validate_self_dual(E2)) == 1


def test_recursive_small_examples(corpus):
    assert recursive_extend(validate_self_dual(E2)) == []
    out = recursive_extend(corpus[6].entries[0].code)
    assert [(c.n, c.d) for c in out] == [(8, 4)]
    assert are_equivalent(out[0].gen, H8)


def test_recursive_from_length_14_gives_three_optimal_codes(corpus):
    keys = set()
    for e in corpus[14].entries:
        keys |= _keys(recursive_extend(e.code))
    assert len(keys) == 3
    assert keys == {e.key for e in corpus[16].entries if e.d == 4}


def test_recursive_matches_exhaustive_building_up(corpus):
    """The coset-leader shortcut finds every building-up of distance d+2."""
    for n in range(2, 13, 2):
        for e in corpus[n].entries:
            c = e.code
            brute = set()
            seen = set()
            for x in range(1, 1 << n):
                if bin(x).count("1") % 2 == 0:
                    continue
                out = build_up(c, x)
                if out.d != c.d + 2:
                    continue
                r = rref(out.gen).rows
                if r not in seen:
                    seen.add(r)
                    brute.add(canonical_form(out.gen).key)
            assert _keys(recursive_extend(c)) == brute, (n, e.prov)


def test_extension_plan_structure(corpus):
    for e in corpus[12].entries:
        plan = extension_plan(e.code)
        assert all(bin(g).count("1") == e.d for g in plan.gd)
        assert oracles.rank(list(plan.gd + plan.ge)) == e.code.k
        for ext in recursive_extensions(e.code):
            assert ext.code.d == e.d + 2
            assert bin(ext.x).count("1") % 2 == 1


# ---------------------------------------------------------- Harada-Munemasa

def test_hm_smallest_case():
    out = harada_munemasa_extend(validate_self_dual(E2), 0)
    assert len(out) >= 1
    assert all(are_equivalent(c.gen, _e2_power(2)) for c in out)


def test_hm_zero_tags_include_direct_sum(corpus):
    for n in (6, 8, 10):
        for e in corpus[n].entries:
            out = harada_munemasa_extend(e.code, 0)
            target = canonical_form(direct_sum(E2, e.code.gen)).key
            assert target in _keys(out)


def test_hm_union_over_tags_gives_every_length_8_class(corpus):
    c = corpus[6].entries[0].code
    keys = set()
    for a in range(4):
        keys |= _keys(harada_munemasa_extend(c, a))
    assert keys == {e.key for e in corpus[8].entries}


def test_hm_skip_weight_two(corpus):
    c = corpus[6].entries[0].code
    for a in range(4):
        for out in harada_munemasa_extend(c, a, skip_weight_two=True):
            assert out.d > 2


def test_hm_matrix_shape():
    c = validate_self_dual(H8)
    m = harada_munemasa_matrix(c, 0b101)
    assert (m.n, m.k) == (10, 4)
    assert m.rows[0] == (0xFF << 2) | 0b11
    with pytest.raises(ValueError):
        harada_munemasa_matrix(c, 0b1000)


def test_completions_are_self_dual():
    so = GenMatrix((word_from_str("111111"), word_from_str("110000")), 6)
    outs = self_dual_completions(so)
    assert outs
    for m in outs:
        assert oracles.is_self_dual(list(m.rows), 6)
