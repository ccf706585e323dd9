from math import comb

import pytest

from permbinom.binomial import BinomialSpec, eval_f, is_permutation
from permbinom.gf import quadratic_extension
from permbinom.hermite import (
    exceptional_alphas,
    gamma,
    gamma_window,
    hermite_check,
    hermite_exponent,
    lambda_at_fifth_root,
    lambda_closed,
    lambda_direct,
    lambda_terms,
    lemma26_special,
    lucas_binomial,
    power_sum,
    special_alphas,
)
from permbinom.search import enumerate_prime_powers


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_lucas_against_comb(p):
    for n in range(60):
        for m in range(-1, n + 2):
            want = comb(n, m) % p if 0 <= m <= n else 0
            assert lucas_binomial(n, m, p) == want


def test_lucas_example():
    assert lucas_binomial(6, 3, 2) == 0
    assert lucas_binomial(10, 3, 5) == comb(10, 3) % 5


def _gamma_oracle(q, alpha, r):
    vals = {-alpha - 1 + r * (i - j) for i in range(alpha + 1) for j in range(q - alpha)}
    lo, hi = min(vals), max(vals)
    return tuple(n for n in range(lo, hi + 1) if n % (q + 1) == 0)


@pytest.mark.parametrize("q,alpha,r", [(19, 4, 5), (19, 9, 5), (29, 14, 5), (13, 6, 7), (9, 0, 5), (64, 24, 5)])
def test_gamma_matches_enumeration(q, alpha, r):
    g = gamma(q, alpha, r)
    assert g.members == _gamma_oracle(q, alpha, r)
    assert gamma_window(q, alpha, r) == (min(_gamma_oracle_window(q, alpha, r)), max(_gamma_oracle_window(q, alpha, r)))


def _gamma_oracle_window(q, alpha, r):
    return {-alpha - 1 + r * (i - j) for i in range(alpha + 1) for j in range(q - alpha)}


def test_gamma_examples():
    assert gamma(29, 4).ks == (-4, -3, -2, -1, 0)
    assert gamma(19, 4).ks == (-3, -2, -1, 0)  # alpha = (q-3)/4
    assert gamma(19, 9).ks == (-2, -1, 0, 1)  # alpha = (q-1)/2
    assert gamma(19, 14).ks == (-1, 0, 1, 2)  # alpha = (3q-1)/4
    with pytest.raises(ValueError):
        gamma(19, 19)


def test_gamma_cardinality_exhaustive():
    """|Gamma| is 4 or 5 when 5 | alpha+1, and 4 exactly at the three exceptional alpha."""
    for pp in enumerate_prime_powers(128, 5):
        q = pp.q
        for alpha in range(4, q, 5):
            n = len(gamma(q, alpha))
            assert n in (4, 5)
            assert (n == 4) == (alpha in exceptional_alphas(q))


def test_three_quarter_alpha_has_four_members():
    # a third exceptional value beyond (q-1)/2 and (q-3)/4
    for q in (19, 59, 79):
        alpha = (3 * q - 1) // 4
        assert alpha not in special_alphas(q)
        assert len(gamma(q, alpha)) == 4


def test_terms_empty_when_five_does_not_divide_alpha_plus_one():
    for pp in enumerate_prime_powers(64, 5):
        for alpha in range(1, pp.q):
            if (alpha + 1) % 5:
                terms, count = lambda_terms(pp.q, alpha, 5, pp.p)
                assert count == 0 and terms == ()


@pytest.mark.parametrize("q", [4, 5, 7, 9])
def test_power_sum_against_naive(q, rng):
    ctx = quadratic_extension(q)
    for _ in range(3):
        a = ctx.element(rng.randrange(1, ctx.size))
        spec = BinomialSpec.make(q, 5, a)
        for s in (1, 2, q, q * q - 2, hermite_exponent(q, q // 2)):
            acc = ctx.zero
            for x in ctx.elements():
                acc = acc + eval_f(spec, x) ** s
            assert power_sum(spec, s) == acc
    with pytest.raises(ValueError):
        power_sum(BinomialSpec.make(q, 5, 1), 0)


def test_lambda_rejects_zero():
    ctx = quadratic_extension(9)
    with pytest.raises(ValueError):
        lambda_direct(9, 4, ctx.zero)


def test_alpha_zero_values():
    for q, e in ((5, 5), (7, 21)):
        ctx = quadratic_extension(q)
        for a in ctx.nonzero():
            assert lambda_direct(q, 0, a).value == -(a ** -e)


@pytest.mark.parametrize("q,r", [(9, 5), (4, 5), (8, 3)])
def test_hermite_check_matches_brute(q, r):
    ctx = quadratic_extension(q)
    for a in ctx.nonzero():
        spec = BinomialSpec.make(q, r, a)
        assert hermite_check(spec) == is_permutation(spec)


def test_lambda_closed_preconditions():
    ctx = quadratic_extension(29)
    a = ctx.gen_pow(3)
    with pytest.raises(ValueError):
        lambda_closed(29, 9, a)  # 29 < 4*9 + 8
    with pytest.raises(ValueError):
        lambda_closed(29, 5, a)
    with pytest.raises(ValueError):
        lambda_closed(31, 4, quadratic_extension(31).one)


@pytest.mark.parametrize("q", [29, 49, 59, 64, 79, 89])
def test_lambda_closed_equals_direct(q, rng):
    ctx = quadratic_extension(q)
    for alpha in range(4, q, 5):
        if q < 4 * alpha + 8:
            break
        for _ in range(20):
            a = ctx.element(rng.randrange(1, ctx.size))
            assert lambda_closed(q, alpha, a) == lambda_direct(q, alpha, a).value


def test_closed_form_at_unconjugated_point_is_wrong():
    """Evaluating g_alpha at v = a^(-(q+1)/5) instead of v^q fails for generic a."""
    ctx = quadratic_extension(29)
    a = ctx.canonical_generator
    assert a ** ((29 * 29 - 1) // 5) != ctx.one
    assert lambda_closed(29, 4, a, unconjugated=True) != lambda_direct(29, 4, a).value
    # it is fine when v lies in F_q
    b = a ** 5
    assert lambda_closed(29, 4, b, unconjugated=True) == lambda_direct(29, 4, b).value


def _fifth_roots(q):
    ctx = quadratic_extension(q)
    m = (q + 1) // 5
    return [a for a in ctx.nonzero() if a ** m != ctx.one and (a ** m) ** 5 == ctx.one]


@pytest.mark.parametrize("q", [19, 29, 49])
def test_fifth_root_general_form(q):
    for a in _fifth_roots(q)[:40]:
        for alpha in range(1, q):
            assert lambda_at_fifth_root(q, alpha, a) == lambda_direct(q, alpha, a).value


@pytest.mark.parametrize("q", [19, 29, 49, 59, 79])
def test_exceptional_closed_forms(q):
    for a in _fifth_roots(q)[:40]:
        for alpha in exceptional_alphas(q):
            assert lemma26_special(q, alpha, a) == lambda_direct(q, alpha, a).value


def test_three_quarter_alpha_nonzero_at_q19():
    a = _fifth_roots(19)[0]
    assert (3 * 19 - 1) // 4 == 14
    assert not lambda_direct(19, 14, a).value.is_zero()


def test_exceptional_closed_form_rejects_ordinary_alpha():
    a = _fifth_roots(19)[0]
    with pytest.raises(ValueError):
        lemma26_special(29, 9, _fifth_roots(29)[0])
    with pytest.raises(ValueError):
        lemma26_special(19, 9, quadratic_extension(19).one)


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9, 16])
def test_homogeneity(q):
    ctx = quadratic_extension(q)
    zetas = [z for z in ctx.nonzero() if z ** (q - 1) == ctx.one]
    assert len(zetas) == q - 1
    spec = BinomialSpec.from_power(q, 5 if q != 5 else 3, 1)
    for z in zetas:
        for x in ctx.elements():
            assert eval_f(spec, z * x) == z * eval_f(spec, x)


def test_power_sum_vanishes_off_multiples_of_q_minus_one():
    q = 9
    ctx = quadratic_extension(q)
    for k in (1, 7, 33):
        spec = BinomialSpec.from_power(q, 5, k)
        for s in range(1, q * q - 1):
            if s % (q - 1):
                assert power_sum(spec, s).is_zero()


def test_two_value_cardinality_statement_misses_one_alpha():
    """Where |Gamma| = 4 outside (q-1)/2 and (q-3)/4, alpha is always (3q-1)/4."""
    extra = {}
    for pp in enumerate_prime_powers(128, 5):
        q = pp.q
        named = set(special_alphas(q))
        for alpha in range(4, q, 5):
            if len(gamma(q, alpha)) == 4 and alpha not in named:
                extra.setdefault(q, []).append(alpha)
    assert extra == {19: [14], 59: [44], 79: [59]}
