"""Exact integer/rational polynomial algebra for the g_alpha family.

g_alpha is the integer polynomial obtained from the rational-index binomial
sum P_alpha(v) after dividing out v(1 + v + v^2 + v^3 + v^4) and clearing a
power of 5.  The module also computes Sylvester resultants by fraction-free
elimination, gcds mod p, and small-prime factorizations.
"""

from __future__ import annotations

import hashlib
import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from math import comb, gcd
from typing import Iterable, Sequence, Union

from .gf import FpPoly, fp_gcd, is_prime  # noqa: F401  (fp_gcd re-exported)

Number = Union[int, Fraction]

FIXTURE_ALPHAS = (4, 9, 14, 24)
FIXTURE_ENV = "PERMBINOM_FIXTURES"


class Poly:
    """Dense univariate polynomial with exact (int or Fraction) coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Number] = ()):
        c = list(coeffs)
        while c and c[-1] == 0:
            c.pop()
        self.coeffs: tuple[Number, ...] = tuple(c)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self) -> Number:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_integral(self) -> bool:
        return all(isinstance(c, int) or c.denominator == 1 for c in self.coeffs)

    def to_int(self) -> "Poly":
        if not self.is_integral():
            raise ValueError("polynomial has non-integer coefficients")
        return Poly(int(c) for c in self.coeffs)

    def __eq__(self, other):
        return isinstance(other, Poly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other: "Poly") -> "Poly":
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return Poly((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n))

    def __neg__(self) -> "Poly":
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            return Poly(c * other for c in self.coeffs)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly()
        out: list[Number] = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return Poly(out)

    __rmul__ = __mul__

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __repr__(self):
        return f"Poly({list(self.coeffs)!r})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if i == 0 else ("*x" if i == 1 else f"*x^{i}")
            parts.append(f"{c}{mono}")
        return " + ".join(parts).replace("+ -", "- ")


# Both names are used for readability at call sites; there is one class.
QPolynomial = Poly
ZPolynomial = Poly


class InexactDivision(ArithmeticError):
    def __init__(self, remainder: Poly):
        super().__init__(f"nonzero remainder {remainder}")
        self.remainder = remainder


def poly_divmod(num: Poly, den: Poly) -> tuple[Poly, Poly]:
    if den.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    r = [Fraction(c) for c in num.coeffs]
    db = den.degree
    if len(r) - 1 < db:
        return Poly(), num
    lead = Fraction(den.lead)
    q = [Fraction(0)] * (len(r) - db)
    for k in range(len(r) - 1 - db, -1, -1):
        c = r[k + db] / lead
        q[k] = c
        if c:
            for j, b in enumerate(den.coeffs):
                r[k + j] -= c * b
    return Poly(q), Poly(r[:db])


def poly_div_exact(num: Poly, den: Poly) -> Poly:
    """Quotient num/den; raises ``InexactDivision`` carrying the remainder."""
    quo, rem = poly_divmod(num, den)
    if not rem.is_zero():
        raise InexactDivision(rem)
    return quo


def gen_binomial(x: Number, n: int) -> Fraction:
    """Generalized binomial x(x-1)...(x-n+1)/n! for rational x."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    num = Fraction(1)
    for t in range(n):
        num *= x - t
    for t in range(2, n + 1):
        num /= t
    return num


def _check_alpha(alpha: int):
    if alpha <= 0 or (alpha + 1) % 5:
        raise ValueError(f"alpha must be positive with 5 | alpha+1, got {alpha}")


@lru_cache(maxsize=None)
def expand_P(alpha: int) -> Poly:
    """sum_i (-1)^i C(alpha,i) sum_{l<5} C(i + (4 alpha - 1 + l)/5, alpha) v^(5i+l)."""
    _check_alpha(alpha)
    c: list[Number] = [Fraction(0)] * (5 * alpha + 5)
    for i in range(alpha + 1):
        s = -comb(alpha, i) if i % 2 else comb(alpha, i)
        for l in range(5):
            c[5 * i + l] += s * gen_binomial(i + Fraction(4 * alpha - 1 + l, 5), alpha)
    return Poly(c)


CYCLOTOMIC_FACTOR = Poly([0, 1, 1, 1, 1, 1])  # v(1 + v + v^2 + v^3 + v^4)


def _five_adic(den: int) -> int:
    """Exponent k with den = 5^k; ValueError if den has another prime factor."""
    k = 0
    while den % 5 == 0:
        den //= 5
        k += 1
    if den != 1:
        raise ValueError(f"denominator has a prime factor other than 5 (cofactor {den})")
    return k


@dataclass(frozen=True)
class GAlpha:
    """P_alpha(v) = sign * v(1+v+...+v^4) * g(v) / 5^e with lead(g) > 0."""

    alpha: int
    e: int
    g: Poly
    sign: int


@lru_cache(maxsize=None)
def extract_g(alpha: int) -> GAlpha:
    """Regenerate g_alpha from the binomial sum.

    Raises ``InexactDivision`` if v(1+...+v^4) does not divide P_alpha and
    ``ValueError`` if a quotient denominator is not a pure power of 5.
    """
    quo = poly_div_exact(expand_P(alpha), CYCLOTOMIC_FACTOR)
    e = max(_five_adic(Fraction(c).denominator) for c in quo.coeffs)
    g = (quo * 5 ** e).to_int()
    sign = 1 if g.lead > 0 else -1
    return GAlpha(alpha, e, g * sign, sign)


# ---------------------------------------------------------------------------
# resultants, reductions, factoring
# ---------------------------------------------------------------------------


def sylvester_matrix(f: Poly, g: Poly) -> list[list[int]]:
    """Standard Sylvester matrix, deg g rows of f then deg f rows of g."""
    m, n = f.degree, g.degree
    size = m + n
    fr = list(reversed(f.coeffs))
    gr = list(reversed(g.coeffs))
    rows = []
    for k in range(n):
        rows.append([0] * k + fr + [0] * (size - k - len(fr)))
    for k in range(m):
        rows.append([0] * k + gr + [0] * (size - k - len(gr)))
    return rows


def bareiss_det(mat: Sequence[Sequence[int]]) -> int:
    """Determinant of an integer matrix by Bareiss fraction-free elimination.

    Pivot: first nonzero entry at or below the diagonal in the current column.
    """
    a = [list(row) for row in mat]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        rowk = a[k]
        for i in range(k + 1, n):
            rowi = a[i]
            aik = rowi[k]
            for j in range(k + 1, n):
                rowi[j] = (akk * rowi[j] - aik * rowk[j]) // prev
            rowi[k] = 0
        prev = akk
    return sign * a[n - 1][n - 1]


def resultant(f: Poly, g: Poly) -> int:
    if f.is_zero() or g.is_zero():
        raise ValueError("resultant of a zero polynomial")
    if not (f.is_integral() and g.is_integral()):
        raise ValueError("resultant expects integer polynomials")
    return bareiss_det(sylvester_matrix(f.to_int(), g.to_int()))


def zpoly_mod_p(f: Poly, p: int) -> FpPoly:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    return FpPoly(p, [int(c) for c in f.to_int().coeffs])


def factor_small(n: int, bound: int) -> tuple[dict[int, int], int]:
    """Trial division by primes <= bound; returns (exponents, signed cofactor)."""
    if n == 0:
        raise ValueError("cannot factor zero")
    if bound < 2:
        raise ValueError("bound must be >= 2")
    sign = -1 if n < 0 else 1
    n = abs(n)
    out = {}
    for p in range(2, bound + 1):
        if not is_prime(p):
            continue
        k = 0
        while n % p == 0:
            n //= p
            k += 1
        if k:
            out[p] = k
    return out, sign * n


def format_factorization(fac: dict[int, int], cofactor: int = 1) -> str:
    s = " * ".join(f"{p}^{k}" if k > 1 else str(p) for p, k in sorted(fac.items()))
    if cofactor != 1:
        s = f"{s} * ({cofactor})" if s else str(cofactor)
    return s or "1"


def resultant_gcd() -> int:
    """gcd(R(g_4, g_9), R(g_4, g_14)) from regenerated polynomials."""
    g4, g9, g14 = (extract_g(a).g for a in (4, 9, 14))
    return gcd(resultant(g4, g9), resultant(g4, g14))


# ---------------------------------------------------------------------------
# appendix fixtures
# ---------------------------------------------------------------------------


class FixtureError(ValueError):
    pass


def format_fixture(polys: dict[int, Poly]) -> str:
    """Serialize: ``g <alpha> <degree>`` then one coefficient per line, then checksum."""
    lines = []
    for alpha in sorted(polys):
        f = polys[alpha]
        lines.append(f"g {alpha} {f.degree}")
        lines.extend(str(int(c)) for c in f.coeffs)
    body = "\n".join(lines) + "\n"
    return body + f"sha256 {hashlib.sha256(body.encode()).hexdigest()}\n"


def parse_fixture(text: str) -> dict[int, Poly]:
    lines = text.splitlines()
    if not lines or not lines[-1].startswith("sha256 "):
        raise FixtureError("missing checksum line")
    body = "\n".join(lines[:-1]) + "\n"
    digest = hashlib.sha256(body.encode()).hexdigest()
    if lines[-1].split()[1] != digest:
        raise FixtureError("checksum mismatch")
    out = {}
    i = 0
    body_lines = lines[:-1]
    while i < len(body_lines):
        head = body_lines[i].split()
        if len(head) != 3 or head[0] != "g":
            raise FixtureError(f"bad header at line {i + 1}: {body_lines[i]!r}")
        alpha, deg = int(head[1]), int(head[2])
        coeffs = [int(c) for c in body_lines[i + 1 : i + 2 + deg]]
        if len(coeffs) != deg + 1:
            raise FixtureError(f"g {alpha}: expected {deg + 1} coefficients")
        out[alpha] = Poly(coeffs)
        if out[alpha].degree != deg:
            raise FixtureError(f"g {alpha}: leading coefficient is zero")
        i += deg + 2
    return out


def fixture_text() -> str:
    override = os.environ.get(FIXTURE_ENV)
    if override:
        path = override if os.path.isfile(override) else os.path.join(override, "appendix_g.txt")
        with open(path) as fh:
            return fh.read()
    return resources.files("permbinom").joinpath("data/appendix_g.txt").read_text()


@lru_cache(maxsize=None)
def _fixtures() -> dict[int, Poly]:
    return parse_fixture(fixture_text())


def appendix_g(alpha: int) -> Poly:
    """Reference g_alpha from the bundled fixture, alpha in {4, 9, 14, 24}."""
    if alpha not in FIXTURE_ALPHAS:
        raise ValueError(f"no reference g_{alpha}; available: {FIXTURE_ALPHAS}")
    return _fixtures()[alpha]


def diff_coefficients(computed: Poly, expected: Poly) -> list[tuple[int, Number, Number]]:
    """(degree, computed, expected) for every disagreeing coefficient."""
    n = max(len(computed.coeffs), len(expected.coeffs))
    out = []
    for i in range(n):
        a = computed.coeffs[i] if i < len(computed.coeffs) else 0
        b = expected.coeffs[i] if i < len(expected.coeffs) else 0
        if a != b:
            out.append((i, a, b))
    return out
