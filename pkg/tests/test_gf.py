import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from permbinom.gf import (
    MAX_FIELD_SIZE,
    FieldCtx,
    FpPoly,
    PrimePower,
    element_order,
    eval_fp_poly,
    field,
    find_irreducible,
    fp_gcd,
    fp_powmod,
    is_irreducible,
    is_prime,
    prime_factors,
    prime_power,
    quadratic_extension,
)


def _brute_irreducible(f: FpPoly) -> bool:
    # no monic factor of degree 1..deg/2
    p, d = f.p, f.degree
    for k in range(1, d // 2 + 1):
        for tail in itertools.product(range(p), repeat=k):
            g = FpPoly(p, list(tail) + [1])
            if (f % g).is_zero():
                return False
    return True


def test_is_prime_and_factors():
    assert [n for n in range(30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert prime_factors(3480) == [2, 3, 5, 29]
    assert prime_factors(1) == []


@pytest.mark.parametrize("q,p,n", [(2, 2, 1), (4, 2, 2), (9, 3, 2), (64, 2, 6), (49, 7, 2), (59, 59, 1)])
def test_prime_power(q, p, n):
    assert prime_power(q) == PrimePower(q, p, n)


@pytest.mark.parametrize("q", [0, 1, 6, 12, 100, 124])
def test_not_prime_power(q):
    assert prime_power(q) is None
    with pytest.raises(ValueError):
        PrimePower.from_q(q)


def test_fppoly_arithmetic():
    f = FpPoly(3, [1, 0, 1])  # x^2 + 1
    g = FpPoly(3, [2, 1])  # x + 2
    q, r = divmod(f, g)
    assert q * g + r == f
    assert (f * g).degree == 3
    assert (f - f).is_zero()
    assert f(1) == 2
    assert FpPoly(5, [2, 4]).monic() == FpPoly(5, [3, 1])
    with pytest.raises(ZeroDivisionError):
        divmod(f, FpPoly(3, []))


def test_fp_gcd():
    x = FpPoly(2, [0, 1])
    a = x * FpPoly(2, [1, 1])
    b = x * FpPoly(2, [1, 1, 1])
    assert fp_gcd(a, b) == x
    with pytest.raises(ValueError):
        fp_gcd(FpPoly(2, []), FpPoly(2, []))


def test_powmod_matches_repeated_multiplication():
    m = FpPoly(5, [2, 0, 1, 1])
    x = FpPoly(5, [0, 1])
    acc = FpPoly(5, [1])
    for e in range(30):
        assert fp_powmod(x, e, m) == acc
        acc = (acc * x) % m


@pytest.mark.parametrize("p,d", [(2, 2), (2, 3), (2, 4), (3, 2), (3, 4), (5, 2), (7, 2), (2, 6)])
def test_find_irreducible_is_lex_smallest(p, d):
    """Brute-force oracle: the first irreducible in tail order c0 + c1 p + ..."""
    f = find_irreducible(p, d)
    assert _brute_irreducible(f)
    for n in range(p ** d):
        tail = [(n // p ** i) % p for i in range(d)]
        g = FpPoly(p, tail + [1])
        if g == f:
            break
        assert not _brute_irreducible(g)


def test_find_irreducible_known():
    assert find_irreducible(3, 4) == FpPoly(3, [2, 1, 0, 0, 1])  # x^4 + x + 2
    assert find_irreducible(2, 2) == FpPoly(2, [1, 1, 1])


def test_is_irreducible_agrees_with_brute_force():
    for tail in itertools.product(range(3), repeat=3):
        f = FpPoly(3, list(tail) + [1])
        assert is_irreducible(f) == _brute_irreducible(f)


def test_field_rejects_bad_input():
    with pytest.raises(ValueError):
        FieldCtx(4, 1)
    with pytest.raises(ValueError):
        FieldCtx(2, 21)
    with pytest.raises(ValueError):
        FieldCtx(3, 2, modulus=FpPoly(3, [2, 0, 1]))  # x^2 + 2 = (x+1)(x+2)
    assert 2 ** 20 == MAX_FIELD_SIZE


@pytest.mark.parametrize("q", [2, 3, 4, 5, 9, 19, 27, 64])
def test_generator_and_tables(q):
    ctx = quadratic_extension(q)
    g = ctx.canonical_generator
    assert element_order(ctx, g) == ctx.size - 1
    for i in range(1, g.index):
        assert element_order(ctx, ctx.element(i)) != ctx.size - 1
    t = ctx.tables
    assert sorted(t.exp) == list(range(1, ctx.size))
    assert t.log[0] == -1
    x = ctx.one
    for k in range(0, ctx.size - 1, max(1, ctx.size // 50)):
        assert ctx.gen_pow(k) == g ** k
    for n in range(0, ctx.size - 1, max(1, ctx.size // 50)):
        s = ctx.one + ctx.element(t.exp[n])
        assert t.zech[n] == (-1 if s.is_zero() else t.log[s.index])
    assert x == ctx.one


def test_element_index_roundtrip():
    ctx = field(3, 2)
    assert [ctx.element(i).index for i in range(9)] == list(range(9))
    with pytest.raises(ValueError):
        ctx.element(9)


def test_frobenius_fixes_subfield():
    ctx = quadratic_extension(7)
    fixed = [x for x in ctx.elements() if x ** 7 == x]
    assert len(fixed) == 7


def test_inverse_and_errors():
    ctx = quadratic_extension(5)
    for x in ctx.nonzero():
        assert x * x.inv() == ctx.one
        assert x ** -3 * x ** 3 == ctx.one
    with pytest.raises(ZeroDivisionError):
        ctx.zero.inv()
    with pytest.raises(ValueError):
        element_order(ctx, ctx.zero)


def test_eval_fp_poly_characteristic_mismatch():
    ctx = quadratic_extension(5)
    with pytest.raises(ValueError):
        eval_fp_poly(ctx, FpPoly(3, [1, 1]), ctx.one)
    assert eval_fp_poly(ctx, FpPoly(5, [4, 0, 1]), ctx(1)).is_zero()


F = quadratic_extension(9)
elems = st.integers(min_value=0, max_value=F.size - 1).map(F.element)


@settings(max_examples=200, deadline=None)
@given(elems, elems, elems)
def test_field_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == F.zero
    if not a.is_zero():
        assert a / a == F.one
        assert a ** (F.size - 1) == F.one


@settings(max_examples=100, deadline=None)
@given(elems, elems)
def test_frobenius_is_additive(a, b):
    assert F.frobenius(a + b) == F.frobenius(a) + F.frobenius(b)


@pytest.mark.parametrize("q", [4, 8, 9, 25])
def test_frobenius_exhaustive(q):
    ctx = quadratic_extension(q)
    els = list(ctx.elements())
    phi = {x.index: ctx.frobenius(x) for x in els}
    step = max(1, len(els) // 60)
    for x in els:
        for y in els[::step]:
            assert phi[(x + y).index] == phi[x.index] + phi[y.index]
            assert phi[(x * y).index] == phi[x.index] * phi[y.index]
