from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from permbinom import symbolic
from permbinom.gf import FpPoly
from permbinom.symbolic import (
    CYCLOTOMIC_FACTOR,
    FixtureError,
    InexactDivision,
    FIXTURE_ALPHAS,
    Poly,
    appendix_g,
    bareiss_det,
    diff_coefficients,
    expand_P,
    extract_g,
    factor_small,
    format_factorization,
    format_fixture,
    fp_gcd,
    gen_binomial,
    parse_fixture,
    poly_div_exact,
    poly_divmod,
    resultant,
    sylvester_matrix,
    zpoly_mod_p,
)

small_polys = st.lists(st.integers(-9, 9), min_size=1, max_size=6).map(Poly)


def test_poly_basics():
    f = Poly([1, 2, 0, 0])
    assert f.degree == 1
    assert Poly([]).is_zero()
    assert (f * f).coeffs == (1, 4, 4)
    assert f(3) == 7
    assert (f - f).is_zero()


@settings(max_examples=60, deadline=None)
@given(small_polys, small_polys)
def test_divmod_roundtrip(f, g):
    if g.is_zero():
        return
    q, r = poly_divmod(f, g)
    assert q * g + r == f
    assert r.is_zero() or r.degree < g.degree


def test_exact_division():
    f = Poly([-1, 0, 1])
    assert poly_div_exact(f, Poly([1, 1])) == Poly([-1, 1])
    with pytest.raises(InexactDivision):
        poly_div_exact(f, Poly([2, 1]))


def test_gen_binomial():
    assert gen_binomial(5, 2) == 10
    assert gen_binomial(Fraction(1, 2), 2) == Fraction(-1, 8)
    assert gen_binomial(-1, 3) == -1
    assert gen_binomial(7, 0) == 1


def test_resultant_small():
    assert resultant(Poly([-2, 1]), Poly([1, 0, 1])) == 5
    assert resultant(Poly([0, 1]), Poly([0, 1])) == 0


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(-6, 6), min_size=1, max_size=4), small_polys, st.integers(1, 3))
def test_resultant_product_formula(roots, g, lead):
    """R(f, g) = lead(f)^deg(g) * prod g(root) for f = lead * prod (x - root)."""
    if g.degree < 1:
        return
    f = Poly([lead])
    for t in roots:
        f = f * Poly([-t, 1])
    want = lead ** g.degree
    for t in roots:
        want *= g(t)
    assert resultant(f, g) == want


@settings(max_examples=30, deadline=None)
@given(small_polys, small_polys)
def test_resultant_is_sylvester_determinant(f, g):
    if f.degree < 1 or g.degree < 1:
        return
    assert resultant(f, g) == sympy.Matrix(sylvester_matrix(f, g)).det()


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 5).flatmap(lambda n: st.lists(st.lists(st.integers(-20, 20), min_size=n, max_size=n),
                                                      min_size=n, max_size=n)))
def test_bareiss_against_sympy(mat):
    assert bareiss_det(mat) == sympy.Matrix(mat).det()


def test_sylvester_shape():
    m = sylvester_matrix(Poly([1, 2, 3]), Poly([4, 5]))
    assert len(m) == 3 and all(len(row) == 3 for row in m)


def test_factor_small():
    assert factor_small(360, 10) == ({2: 3, 3: 2, 5: 1}, 1)
    assert factor_small(-2 * 1009, 1000) == ({2: 1}, -1009)
    assert format_factorization({2: 15, 3: 3, 5: 197}) == "2^15 * 3^3 * 5^197"
    assert format_factorization({}, 7) == "7"
    with pytest.raises(ValueError):
        factor_small(0, 10)


def test_zpoly_mod_p():
    assert zpoly_mod_p(Poly([3, -1, 4]), 3) == FpPoly(3, [0, 2, 1])
    with pytest.raises(ValueError):
        zpoly_mod_p(Poly([Fraction(1, 2)]), 3)


def test_expand_p_divisible_by_cyclotomic_factor():
    for alpha in (4, 9, 14):
        poly_div_exact(expand_P(alpha), CYCLOTOMIC_FACTOR)


def test_expand_p_rejects_bad_alpha():
    for bad in (0, 5, -1):
        with pytest.raises(ValueError):
            expand_P(bad)


@pytest.mark.parametrize("alpha,e", [(4, 4), (9, 10), (14, 16), (24, 28)])
def test_extract_g_matches_appendix(alpha, e):
    ga = extract_g(alpha)
    assert ga.e == e
    assert ga.g.is_integral()
    assert ga.g.degree == 5 * alpha - 1
    assert ga.g.lead > 0
    assert not diff_coefficients(ga.g, appendix_g(alpha))


def test_g4_tail():
    assert extract_g(4).g.coeffs[-1] == 38454
    assert len(extract_g(4).g.coeffs) == 20


def test_g9_sign():
    # the raw quotient for alpha = 9 is the negative of the reference polynomial
    assert extract_g(9).sign == -1
    assert extract_g(4).sign == 1


def test_g19_experimental():
    ga = extract_g(19)
    assert ga.g.is_integral()
    assert 19 not in FIXTURE_ALPHAS
    with pytest.raises(ValueError):
        appendix_g(19)


def test_char_gcds():
    g4, g9, g24 = (extract_g(a).g for a in (4, 9, 24))
    assert fp_gcd(zpoly_mod_p(g4, 2), zpoly_mod_p(g24, 2)) == FpPoly(2, [0, 1])
    assert fp_gcd(zpoly_mod_p(g4, 3), zpoly_mod_p(g9, 3)) == FpPoly(3, [1])


def test_fixture_roundtrip_and_checksum():
    polys = {4: Poly([1, -2, 3]), 9: Poly([5])}
    text = format_fixture(polys)
    assert parse_fixture(text) == polys
    with pytest.raises(FixtureError):
        parse_fixture(text.replace("-2", "-3"))
    with pytest.raises(FixtureError):
        parse_fixture("g 4 1\n1\n2\n")
    body = "g 4 2\n1\n2\n"
    import hashlib

    bad = body + f"sha256 {hashlib.sha256(body.encode()).hexdigest()}\n"
    with pytest.raises(FixtureError):
        parse_fixture(bad)


def test_fixture_env_override(tmp_path, monkeypatch):
    path = tmp_path / "appendix_g.txt"
    path.write_text(format_fixture({4: Poly([7]), 9: Poly([1]), 14: Poly([1]), 24: Poly([1])}))
    monkeypatch.setenv(symbolic.FIXTURE_ENV, str(tmp_path))
    symbolic._fixtures.cache_clear()
    try:
        assert appendix_g(4) == Poly([7])
        assert diff_coefficients(extract_g(4).g, appendix_g(4))
    finally:
        monkeypatch.delenv(symbolic.FIXTURE_ENV)
        symbolic._fixtures.cache_clear()
    assert not diff_coefficients(extract_g(4).g, appendix_g(4))
