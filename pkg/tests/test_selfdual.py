from fractions import Fraction

import pytest

import oracles
from sdcodes.gf2core import GenMatrix, WeightEnum, rank
from sdcodes.selfdual import (
    GleasonCoeffs,
    NoSolution,
    NotSelfDual,
    TypeIIInput,
    WrongDimension,
    doubly_even_subcode,
    extremal_bound,
    gleason_basis,
    gleason_shadow,
    gleason_solve,
    mass_audit,
    mass_total,
    s_extremal_check,
    shadow_from_gleason,
    validate_self_dual,
)

E2 = GenMatrix((0b11,), 2)
H8 = GenMatrix.from_strings(["11110000", "00111100", "00001111", "10101010"])


def test_validate_small_codes():
    c = validate_self_dual(E2)
    assert (c.n, c.k, c.d, c.type_tag) == (2, 1, 2, "I")
    h = validate_self_dual(H8)
    assert (h.d, h.type_tag) == (4, "II")
    assert h.wenum.as_dict() == {0: 1, 4: 14, 8: 1}
    assert h.shadow is None and h.s is None


def test_validate_errors():
    with pytest.raises(WrongDimension):
        validate_self_dual(GenMatrix.from_strings(["111"]))
    with pytest.raises(WrongDimension):
        validate_self_dual(GenMatrix.from_strings(["1111"]))
    with pytest.raises(NotSelfDual):
        validate_self_dual(GenMatrix.from_strings(["1100", "1010"]))


def test_type_ii_has_no_decomposition():
    with pytest.raises(TypeIIInput):
        doubly_even_subcode(validate_self_dual(H8))


def _shadow_oracle(code):
    """C0-perp minus C, by enumerating the whole space."""
    n = code.n
    words = oracles.span(list(code.gen.rows))
    c0 = [w for w in words if bin(w).count("1") % 4 == 0]
    in_c = set(words)
    hist = [0] * (n + 1)
    for v in range(1 << n):
        if v in in_c:
            continue
        if all(bin(v & w).count("1") % 2 == 0 for w in c0):
            hist[bin(v).count("1")] += 1
    return hist


def test_shadow_against_oracle(corpus):
    for n in range(2, 13, 2):
        for e in corpus[n].entries:
            c = e.code
            if c.type_tag == "II":
                continue
            assert list(c.shadow.shadow_wenum.coeffs) == _shadow_oracle(c), (n, e.prov)


def test_doubly_even_subcode_structure(corpus):
    for n in sorted(corpus):
        for e in corpus[n].entries:
            c = e.code
            if c.type_tag == "II":
                continue
            sd = c.shadow
            assert sd.c0.k == c.k - 1
            words = oracles.span(list(sd.c0.rows))
            assert all(bin(w).count("1") % 4 == 0 for w in words)
            # C0 holds every doubly-even word of C
            n_doubly_even = sum(c.wenum[w] for w in range(0, n + 1, 4))
            assert len(words) == n_doubly_even
            assert not sd.in_c0(sd.x) and c.gen.contains(sd.x)
            assert not c.gen.contains(sd.y) and sd.in_shadow(sd.y)
            # every shadow weight is n/2 mod 4
            assert all(w % 4 == (n // 2) % 4 for w in sd.shadow_wenum.support())


def test_decomposition_is_deterministic(corpus):
    c = corpus[14].entries[0].code
    a, b = doubly_even_subcode(c), doubly_even_subcode(c)
    assert (a.x, a.y, a.c0.rows) == (b.x, b.y, b.c0.rows)


def test_gleason_route_matches_sweep(corpus):
    for n in sorted(corpus):
        for e in corpus[n].entries:
            c = e.code
            if c.type_tag == "I":
                assert gleason_shadow(c.wenum) == c.shadow.shadow_wenum


def test_gleason_basis_shape():
    b = gleason_basis(16)
    assert len(b) == 3 and all(len(p) == 17 for p in b)
    assert b[0][:5] == [1, 0, 8, 0, 28]


def test_gleason_round_trip():
    w = validate_self_dual(H8).wenum
    g = gleason_solve(w, 8)
    # y^2 coefficient: 4 + c_1 = 0
    assert g.c == (Fraction(1), Fraction(-4))
    # rebuild the enumerator from the coefficients
    rebuilt = [sum(ci * p[j] for ci, p in zip(g.c, gleason_basis(8))) for j in range(9)]
    assert rebuilt == list(w.coeffs)


def test_gleason_rejects_non_enumerators():
    with pytest.raises(NoSolution):
        gleason_solve(WeightEnum((1, 1, 0, 0, 0, 0, 0, 0, 0)), 8)
    with pytest.raises(NoSolution):
        gleason_solve(WeightEnum((1, 0, 1)), 4)


def test_shadow_from_gleason_can_be_infeasible():
    # arbitrary coefficients give fractional or negative "shadows"
    s = shadow_from_gleason(GleasonCoeffs((Fraction(1), Fraction(1, 3)), 8), 8)
    assert not s.is_feasible


def test_extremal_bound():
    assert [extremal_bound(n) for n in (8, 22, 24, 38, 46, 48)] == [4, 6, 8, 8, 10, 12]
    with pytest.raises(ValueError):
        extremal_bound(7)


def test_s_extremal_check():
    assert s_extremal_check(validate_self_dual(E2))
    assert not s_extremal_check(validate_self_dual(H8))


def test_mass_formula_against_enumeration(brute_codes):
    for n, codes in brute_codes.items():
        assert mass_total(n, "I") == len(codes) == mass_total(n, "all")
        doubly_even = sum(
            1 for basis in codes if all(bin(w).count("1") % 4 == 0 for w in oracles.span(list(basis)))
        )
        assert mass_total(n, "II") == doubly_even


def test_mass_total_type_ii_values():
    assert mass_total(8, "II") == 30
    assert mass_total(16, "II") == 2 * 3 * 5 * 9 * 17 * 33 * 65
    assert mass_total(12, "II") == 0
    with pytest.raises(ValueError):
        mass_total(8, "III")


def test_mass_audit_on_corpus(corpus):
    for n, db in corpus.items():
        a = mass_audit(db, n)
        assert a.complete and a.deficit == 0
    # dropping a class leaves a positive deficit
    db = corpus[12]
    short = db.select(lambda e: e.d == 2)
    assert mass_audit(short, 12).deficit > 0


def test_brute_codes_are_self_dual(brute_codes):
    for n, codes in brute_codes.items():
        for basis in list(codes)[:50]:
            assert oracles.is_self_dual(list(basis), n)
            assert rank(basis) == n // 2
