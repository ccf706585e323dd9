"""Hermite-criterion machinery for f = a x + x^(r(q-1)+1).

For 0 <= alpha <= q-1 the power sum of f^(alpha + (q-1-alpha)q) over F_{q^2}
reduces to -a^((alpha+1)(1-q)) * Lambda(q, alpha, a), where Lambda is a finite
double sum of binomial coefficients times powers of a^-1.  f permutes F_{q^2}
iff 0 is its only root and every Lambda vanishes.
"""

from __future__ import annotations

from array import array
from dataclasses import dataclass
from functools import lru_cache

from . import kernels
from .binomial import BinomialSpec, zero_only_root
from .gf import FieldElem, PrimePower, quadratic_extension
from .symbolic import CYCLOTOMIC_FACTOR, extract_g


@dataclass(frozen=True)
class GammaSet:
    q: int
    alpha: int
    r: int
    members: tuple[int, ...]

    @property
    def ks(self) -> tuple[int, ...]:
        return tuple(n // (self.q + 1) for n in self.members)

    def __len__(self):
        return len(self.members)


@dataclass(frozen=True)
class LambdaValue:
    value: FieldElem
    term_count: int


def _q(q) -> int:
    return q.q if isinstance(q, PrimePower) else int(q)


def gamma_window(q: int, alpha: int, r: int) -> tuple[int, int]:
    """Range of -alpha-1 + r(i-j) over 0 <= i <= alpha, 0 <= j <= q-1-alpha."""
    return (r - 1) * (alpha + 1) - r * q, (r - 1) * alpha - 1


def gamma(q, alpha: int, r: int = 5) -> GammaSet:
    q = _q(q)
    if not 0 <= alpha <= q - 1:
        raise ValueError(f"alpha must lie in [0, q-1], got {alpha}")
    lo, hi = gamma_window(q, alpha, r)
    m = q + 1
    k0 = -(-lo // m)
    return GammaSet(q, alpha, r, tuple(k * m for k in range(k0, hi // m + 1)))


def lucas_binomial(n: int, m: int, p: int) -> int:
    """C(n, m) mod p via base-p digits."""
    if m < 0 or m > n or n < 0:
        return 0
    out = 1
    while n or m:
        nd, md = n % p, m % p
        if md > nd:
            return 0
        out = out * _small_binom(nd, md, p) % p
        n //= p
        m //= p
    return out


@lru_cache(maxsize=None)
def _small_binom(n: int, m: int, p: int) -> int:
    num = den = 1
    for t in range(m):
        num = num * (n - t) % p
        den = den * (t + 1) % p
    return num * pow(den, -1, p) % p


@lru_cache(maxsize=None)
def lambda_terms(q: int, alpha: int, r: int, p: int) -> tuple[tuple[tuple[int, int], ...], int]:
    """Nonzero terms (coefficient mod p, exponent i + jq) of Lambda and the pair count.

    Iteration is k outer (ascending Gamma), i inner.
    """
    terms = []
    visited = 0
    beta = q - 1 - alpha
    for n in gamma(q, alpha, r).members:
        t = alpha + 1 + n
        if t % r:
            continue
        shift = t // r
        for i in range(alpha + 1):
            j = i - shift
            if 0 <= j <= beta:
                visited += 1
                c = lucas_binomial(alpha, i, p) * lucas_binomial(beta, j, p) % p
                if c:
                    terms.append((c, i + j * q))
    return tuple(terms), visited


@lru_cache(maxsize=None)
def _kernel_terms(q: int, alpha: int, r: int):
    ctx = quadratic_extension(q)
    t = ctx.tables
    terms, visited = lambda_terms(q, alpha, r, ctx.p)
    coef_logs = array("q", (t.log[c] for c, _ in terms))
    exps = array("q", (e % t.order for _, e in terms))
    return coef_logs, exps, visited


def lambda_direct(q, alpha: int, a: FieldElem, r: int = 5) -> LambdaValue:
    """Lambda(q, alpha, a) summed term by term in F_{q^2}."""
    q = _q(q)
    if a.is_zero():
        raise ValueError("a must be nonzero")
    ctx = a.ctx
    t = ctx.tables
    coef_logs, exps, visited = _kernel_terms(q, alpha, r)
    lg = kernels.lambda_sum_log(t.zech, coef_logs, exps, t.log[a.index], t.order)
    value = ctx.zero if lg < 0 else ctx.element(t.exp[lg])
    return LambdaValue(value, visited)


def power_sum(spec: BinomialSpec, s: int) -> FieldElem:
    """sum over all x in F_{q^2} of f(x)^s, for s >= 1 (f(0)^s = 0)."""
    if s < 1:
        raise ValueError("power_sum needs s >= 1")
    ctx = spec.ctx
    t = ctx.tables
    lg = kernels.power_sum_log(t.zech, t.log[spec.a.index], spec.exponent, s, t.order)
    return ctx.zero if lg < 0 else ctx.element(t.exp[lg])


def hermite_exponent(q: int, alpha: int) -> int:
    return alpha + (q - 1 - alpha) * q


def lambda_closed(q, alpha: int, a: FieldElem, unconjugated: bool = False) -> FieldElem:
    """Closed form of Lambda for r = 5 through the integer polynomial g_alpha.

    Valid when 5 | q+1, alpha > 0, 5 | alpha+1 and q >= 4 alpha + 8.  Then
    Lambda = (-a)^(((alpha+1)/5) q) * P_alpha(u) with u = a^(-q(q+1)/5), and
    P_alpha(u) = sign * u(1+u+...+u^4) * g_alpha(u) / 5^e.

    u is the Frobenius conjugate v^q of v = a^(-(q+1)/5).  Evaluating at v
    itself is only correct when v lies in F_q, i.e. a^((q^2-1)/5) = 1;
    ``unconjugated=True`` does that anyway, for comparison.
    """
    q = _q(q)
    if (q + 1) % 5 or alpha <= 0 or (alpha + 1) % 5 or q < 4 * alpha + 8:
        raise ValueError(f"closed form needs 5 | q+1, alpha > 0, 5 | alpha+1, q >= 4 alpha + 8 (q={q}, alpha={alpha})")
    if a.is_zero():
        raise ValueError("a must be nonzero")
    u = a ** (-((q + 1) // 5) * (1 if unconjugated else q))
    return (-a) ** ((alpha + 1) // 5 * q) * g_alpha_factor(alpha, u)


def g_alpha_factor(alpha: int, u: FieldElem) -> FieldElem:
    """P_alpha(u) evaluated through sign * u(1+...+u^4) * g_alpha(u) * 5^-e."""
    ga = extract_g(alpha)
    ctx = u.ctx
    gv = ctx.zero
    for c in reversed(ga.g.coeffs):
        gv = gv * u + c
    cyc = ctx.zero
    for c in reversed(CYCLOTOMIC_FACTOR.coeffs):
        cyc = cyc * u + c
    return ctx(ga.sign) * ctx(5) ** (-ga.e) * cyc * gv


def special_alphas(q) -> tuple[int, ...]:
    """The integer values among (q-1)/2 and (q-3)/4."""
    q = _q(q)
    out = []
    if (q - 1) % 2 == 0:
        out.append((q - 1) // 2)
    if (q - 3) % 4 == 0 and q >= 3:
        out.append((q - 3) // 4)
    return tuple(out)


def exceptional_alphas(q) -> tuple[int, ...]:
    """All alpha in [1, q-1] where Gamma(q, alpha) (r = 5) has four members.

    Besides (q-1)/2 and (q-3)/4 this includes (3q-1)/4 when q = 3 mod 4.
    Only alpha with 5 | alpha+1 are listed; 5 | q+1 is assumed.
    """
    q = _q(q)
    out = set(special_alphas(q))
    if (3 * q - 1) % 4 == 0:
        out.add((3 * q - 1) // 4)
    return tuple(sorted(al for al in out if 1 <= al <= q - 1 and (al + 1) % 5 == 0))


def lambda_at_fifth_root(q, alpha: int, a: FieldElem) -> FieldElem:
    """Lambda when y = a^((q+1)/5) is a 5th root of unity other than 1.

    Equals -a^(-(alpha+1)/5) * sum_{k in K} y^(-k) where Gamma = K(q+1); the
    sum vanishes whenever |K| = 5.
    """
    q = _q(q)
    if (q + 1) % 5:
        raise ValueError("needs 5 | q+1")
    ctx = a.ctx
    y = a ** ((q + 1) // 5)
    if y == ctx.one or y ** 5 != ctx.one:
        raise ValueError("a^((q+1)/5) must be a 5th root of unity other than 1")
    if alpha <= 0 or (alpha + 1) % 5:
        return ctx.zero
    yi = y.inv()
    total = ctx.zero
    for k in gamma(q, alpha, 5).ks:
        total = total + yi ** k
    return -(a ** (-((alpha + 1) // 5))) * total


def lemma26_special(q, alpha: int, a: FieldElem) -> FieldElem:
    """Closed forms of Lambda at the exceptional alpha when y is a nontrivial 5th root of unity.

    alpha = (q-1)/2:  -a^(-(alpha+1)/5) (y^-1 + 1 + y + y^2)
    alpha = (q-3)/4:  -a^(-(alpha+1)/5) (1 + y + y^2 + y^3)
    alpha = (3q-1)/4: -a^(-(alpha+1)/5) (y^-2 + y^-1 + 1 + y)
    """
    q = _q(q)
    if (q + 1) % 5:
        raise ValueError("needs 5 | q+1")
    ctx = a.ctx
    y = a ** ((q + 1) // 5)
    if y == ctx.one or y ** 5 != ctx.one:
        raise ValueError("a^((q+1)/5) must be a 5th root of unity other than 1")
    if alpha not in exceptional_alphas(q):
        raise ValueError(f"alpha={alpha} is not an exceptional value for q={q}")
    lead = -(a ** (-((alpha + 1) // 5)))
    if 2 * alpha == q - 1:
        return lead * (y.inv() + 1 + y + y * y)
    if 4 * alpha == q - 3:
        return lead * (1 + y + y * y + y ** 3)
    yi = y.inv()
    return lead * (yi * yi + yi + 1 + y)


def hermite_check(spec: BinomialSpec) -> bool:
    """PP test via Hermite's criterion: one root and Lambda(q, alpha, a) = 0 for all alpha."""
    if not zero_only_root(spec):
        return False
    q = spec.q.q
    return all(lambda_direct(q, alpha, spec.a, spec.r).value.is_zero() for alpha in range(q))
