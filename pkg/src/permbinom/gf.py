"""Prime-power finite fields GF(p^d) with exact element arithmetic.

Elements are coefficient vectors with respect to the power basis of a fixed
monic irreducible modulus.  The modulus is the lexicographically smallest
irreducible of the requested degree, so every field built here is
bit-reproducible.  A field can also produce log/antilog/Zech tables relative
to its canonical generator; the fast kernels work on those tables.
"""

from __future__ import annotations

from array import array
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

MAX_FIELD_SIZE = 1 << 20


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    k = 3
    while k * k <= n:
        if n % k == 0:
            return False
        k += 2
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of ``n`` by trial division, ascending."""
    out = []
    k = 2
    while k * k <= n:
        if n % k == 0:
            out.append(k)
            while n % k == 0:
                n //= k
        k += 1
    if n > 1:
        out.append(n)
    return out


@dataclass(frozen=True, order=True)
class PrimePower:
    q: int
    p: int
    n: int

    def __post_init__(self):
        if not is_prime(self.p) or self.n < 1 or self.p ** self.n != self.q:
            raise ValueError(f"not a prime power: {self.p}^{self.n} != {self.q}")

    @classmethod
    def from_q(cls, q: int) -> "PrimePower":
        pp = prime_power(q)
        if pp is None:
            raise ValueError(f"{q} is not a prime power")
        return pp

    def __str__(self):
        return str(self.q) if self.n == 1 else f"{self.q}={self.p}^{self.n}"


def prime_power(q: int) -> PrimePower | None:
    """Return ``PrimePower`` for ``q`` or ``None`` if ``q`` is not one."""
    if q < 2:
        return None
    fs = prime_factors(q)
    if len(fs) != 1:
        return None
    p = fs[0]
    n = 0
    m = q
    while m > 1:
        m //= p
        n += 1
    return PrimePower(q, p, n)


# ---------------------------------------------------------------------------
# Polynomials over F_p
# ---------------------------------------------------------------------------


def _trim(c: list[int]) -> tuple[int, ...]:
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


@dataclass(frozen=True)
class FpPoly:
    """Polynomial over F_p, ascending coefficients, no trailing zeros."""

    p: int
    coeffs: tuple[int, ...]

    def __init__(self, p: int, coeffs: Iterable[int] = ()):
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "coeffs", _trim([c % p for c in coeffs]))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_monic(self) -> bool:
        return self.lead == 1

    def _check(self, other: "FpPoly"):
        if self.p != other.p:
            raise ValueError("characteristic mismatch")

    def __add__(self, other: "FpPoly") -> "FpPoly":
        self._check(other)
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return FpPoly(self.p, [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])

    def __neg__(self) -> "FpPoly":
        return FpPoly(self.p, [-c for c in self.coeffs])

    def __sub__(self, other: "FpPoly") -> "FpPoly":
        return self + (-other)

    def __mul__(self, other: "FpPoly") -> "FpPoly":
        self._check(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return FpPoly(self.p)
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return FpPoly(self.p, out)

    def __divmod__(self, other: "FpPoly") -> tuple["FpPoly", "FpPoly"]:
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        p = self.p
        r = list(self.coeffs)
        db = other.degree
        inv_lead = pow(other.lead, -1, p)
        if len(r) - 1 < db:
            return FpPoly(p), self
        q = [0] * (len(r) - db)
        for k in range(len(r) - 1 - db, -1, -1):
            c = r[k + db] * inv_lead % p
            q[k] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    r[k + j] = (r[k + j] - c * b) % p
        return FpPoly(p, q), FpPoly(p, r[:db])

    def __mod__(self, other: "FpPoly") -> "FpPoly":
        return divmod(self, other)[1]

    def __floordiv__(self, other: "FpPoly") -> "FpPoly":
        return divmod(self, other)[0]

    def monic(self) -> "FpPoly":
        if self.is_zero():
            return self
        inv = pow(self.lead, -1, self.p)
        return FpPoly(self.p, [c * inv for c in self.coeffs])

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * x + c) % self.p
        return acc

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if i == 0:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            else:
                terms.append(f"{c}*{mono}")
        return " + ".join(terms)


def fp_gcd(f: FpPoly, g: FpPoly) -> FpPoly:
    """Monic gcd by the Euclidean algorithm; gcd(0, 0) is rejected."""
    f._check(g)
    if f.is_zero() and g.is_zero():
        raise ValueError("gcd(0, 0) is undefined")
    while not g.is_zero():
        f, g = g, f % g
    return f.monic()


def fp_powmod(base: FpPoly, e: int, mod: FpPoly) -> FpPoly:
    result = FpPoly(base.p, [1]) % mod
    base = base % mod
    while e:
        if e & 1:
            result = result * base % mod
        base = base * base % mod
        e >>= 1
    return result


def is_irreducible(f: FpPoly) -> bool:
    """Irreducibility over F_p: no factor of degree <= deg f / 2.

    Uses gcd(x^(p^k) - x, f) for k = 1..deg f // 2.
    """
    if not f.is_monic():
        raise ValueError("is_irreducible expects a monic polynomial")
    d = f.degree
    if d < 1:
        raise ValueError("is_irreducible expects degree >= 1")
    x = FpPoly(f.p, [0, 1])
    h = x
    for _ in range(d // 2):
        h = fp_powmod(h, f.p, f)
        if fp_gcd(h - x, f).degree > 0:
            return False
    return True


@lru_cache(maxsize=None)
def find_irreducible(p: int, d: int) -> FpPoly:
    """Lexicographically smallest monic irreducible of degree ``d`` over F_p.

    Candidate tails c_0 + c_1 x + ... + c_{d-1} x^{d-1} are ordered as the
    base-p integer with c_0 least significant.
    """
    if not is_prime(p) or d < 1:
        raise ValueError(f"bad field parameters p={p}, d={d}")
    for n in range(p ** d):
        tail = []
        m = n
        for _ in range(d):
            tail.append(m % p)
            m //= p
        f = FpPoly(p, tail + [1])
        if is_irreducible(f):
            return f
    raise AssertionError("unreachable: irreducibles exist in every degree")


# ---------------------------------------------------------------------------
# Fields
# ---------------------------------------------------------------------------


class FieldTables:
    """Log/antilog/Zech tables relative to the canonical generator.

    ``exp[k]`` is the canonical index of g^k, ``log[i]`` the discrete log of
    the element with index ``i`` (``log[0] == -1``), and ``zech[n]`` the log
    of 1 + g^n, or -1 where 1 + g^n = 0.  All are ``array('q')`` so they
    index quickly from Python and expose a buffer to the compiled kernels.
    """

    def __init__(self, ctx: "FieldCtx"):
        from . import kernels

        self.order = ctx.size - 1
        self.generator = ctx.canonical_generator
        self.exp = kernels.build_exp_table(
            ctx.p, ctx.d, array("q", ctx.modulus.coeffs), array("q", self.generator.coeffs), self.order
        )
        log = array("q", [-1]) * ctx.size
        for k, idx in enumerate(self.exp):
            log[idx] = k
        self.log = log
        p = ctx.p
        zech = array("q", [0]) * self.order
        for n, idx in enumerate(self.exp):
            low = idx % p
            shifted = idx - low + (low + 1) % p
            zech[n] = log[shifted]
        self.zech = zech


class FieldCtx:
    """GF(p^d) defined by a monic irreducible modulus of degree d."""

    def __init__(self, p: int, d: int, modulus: FpPoly | None = None, max_size: int = MAX_FIELD_SIZE):
        if not is_prime(p) or d < 1:
            raise ValueError(f"bad field parameters p={p}, d={d}")
        if p ** d > max_size:
            raise ValueError(f"field size {p}^{d} exceeds cap {max_size}")
        if modulus is None:
            modulus = find_irreducible(p, d)
        elif modulus.p != p or modulus.degree != d or not is_irreducible(modulus):
            raise ValueError("modulus must be monic irreducible of degree d over F_p")
        self.p = p
        self.d = d
        self.modulus = modulus
        self.size = p ** d
        self._red = [(-c) % p for c in modulus.coeffs[:d]]

    def __repr__(self):
        return f"GF({self.p}^{self.d}, modulus={self.modulus})"

    def __eq__(self, other):
        return isinstance(other, FieldCtx) and (self.p, self.d, self.modulus) == (other.p, other.d, other.modulus)

    def __hash__(self):
        return hash((self.p, self.d, self.modulus))

    # construction -------------------------------------------------------

    def __call__(self, value: int | Sequence[int]) -> "FieldElem":
        """Embed a prime-field integer, or build from a coefficient vector."""
        if isinstance(value, int):
            return self.from_coeffs([value])
        return self.from_coeffs(value)

    def from_coeffs(self, coeffs: Sequence[int]) -> "FieldElem":
        coeffs = list(coeffs)
        if len(coeffs) > self.d:
            coeffs = list((FpPoly(self.p, coeffs) % self.modulus).coeffs)
        c = [x % self.p for x in coeffs] + [0] * (self.d - len(coeffs))
        return FieldElem(self, tuple(c))

    def element(self, index: int) -> "FieldElem":
        """Element whose coefficient vector is the base-p expansion of ``index``."""
        if not 0 <= index < self.size:
            raise ValueError(f"index {index} out of range for GF({self.size})")
        c = []
        for _ in range(self.d):
            c.append(index % self.p)
            index //= self.p
        return FieldElem(self, tuple(c))

    @property
    def zero(self) -> "FieldElem":
        return FieldElem(self, (0,) * self.d)

    @property
    def one(self) -> "FieldElem":
        return self.from_coeffs([1])

    def elements(self):
        for i in range(self.size):
            yield self.element(i)

    def nonzero(self):
        for i in range(1, self.size):
            yield self.element(i)

    # arithmetic on raw tuples -------------------------------------------

    def _mul(self, a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
        p, d = self.p, self.d
        prod = [0] * (2 * d - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] += x * y
        red = self._red
        for k in range(2 * d - 2, d - 1, -1):
            c = prod[k] % p
            if c:
                base = k - d
                for j in range(d):
                    prod[base + j] += c * red[j]
        return tuple(v % p for v in prod[:d])

    def _inv(self, a: tuple[int, ...]) -> tuple[int, ...]:
        if not any(a):
            raise ZeroDivisionError("inverse of zero in finite field")
        p = self.p
        r0, r1 = self.modulus, FpPoly(p, a)
        s0, s1 = FpPoly(p), FpPoly(p, [1])
        while not r1.is_zero():
            quo, rem = divmod(r0, r1)
            r0, r1 = r1, rem
            s0, s1 = s1, s0 - quo * s1
        # r0 is a nonzero constant
        inv_c = pow(r0.coeffs[0], -1, p)
        c = [x * inv_c % p for x in s0.coeffs]
        return tuple(c + [0] * (self.d - len(c)))

    # group structure ----------------------------------------------------

    def order_of(self, x: "FieldElem") -> int:
        return element_order(self, x)

    @cached_property
    def canonical_generator(self) -> "FieldElem":
        """First element in index order whose multiplicative order is p^d - 1."""
        n = self.size - 1
        for i in range(1, self.size):
            x = self.element(i)
            if element_order(self, x) == n:
                return x
        raise AssertionError("unreachable: F* is cyclic")

    @cached_property
    def tables(self) -> FieldTables:
        return FieldTables(self)

    def gen_pow(self, k: int) -> "FieldElem":
        """g^k for the canonical generator g."""
        t = self.tables
        return self.element(t.exp[k % t.order])

    def log(self, x: "FieldElem") -> int:
        if x.is_zero():
            raise ValueError("log of zero")
        return self.tables.log[x.index]

    def frobenius(self, x: "FieldElem") -> "FieldElem":
        return x ** self.p


class FieldElem:
    """Element of a ``FieldCtx``; immutable value type."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: FieldCtx, coeffs: tuple[int, ...]):
        self.ctx = ctx
        self.coeffs = coeffs

    def _coerce(self, other) -> "FieldElem":
        if isinstance(other, FieldElem):
            if other.ctx is not self.ctx and other.ctx != self.ctx:
                raise ValueError("elements of different fields")
            return other
        if isinstance(other, int):
            return self.ctx(other)
        return NotImplemented

    @property
    def index(self) -> int:
        """Canonical index: the coefficient vector read as a base-p integer."""
        p = self.ctx.p
        n = 0
        for c in reversed(self.coeffs):
            n = n * p + c
        return n

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ctx(other)
        if not isinstance(other, FieldElem):
            return NotImplemented
        return self.coeffs == other.coeffs and self.ctx == other.ctx

    def __hash__(self):
        return hash(self.coeffs)

    def __bool__(self):
        return not self.is_zero()

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.ctx.p
        return FieldElem(self.ctx, tuple((a + b) % p for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        p = self.ctx.p
        return FieldElem(self.ctx, tuple((-a) % p for a in self.coeffs))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return FieldElem(self.ctx, self.ctx._mul(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def inv(self) -> "FieldElem":
        return FieldElem(self.ctx, self.ctx._inv(self.coeffs))

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inv()

    def __rtruediv__(self, other):
        return self.inv() * other

    def __pow__(self, e: int) -> "FieldElem":
        base = self
        if e < 0:
            base = self.inv()
            e = -e
        if e == 0:
            return self.ctx.one
        if base.is_zero():
            return base
        e %= self.ctx.size - 1
        if e == 0:
            e = self.ctx.size - 1
        ctx = self.ctx
        result = ctx.one.coeffs
        b = base.coeffs
        while e:
            if e & 1:
                result = ctx._mul(result, b)
            b = ctx._mul(b, b)
            e >>= 1
        return FieldElem(ctx, result)

    def __repr__(self):
        return f"FieldElem({list(self.coeffs)})"

    def __str__(self):
        if self.ctx.d == 1:
            return str(self.coeffs[0])
        return str(FpPoly(self.ctx.p, self.coeffs)).replace("x", "t") or "0"


def element_order(ctx: FieldCtx, x: FieldElem) -> int:
    """Multiplicative order of a nonzero element."""
    if x.is_zero():
        raise ValueError("zero has no multiplicative order")
    order = ctx.size - 1
    for ell in prime_factors(order):
        while order % ell == 0 and (x ** (order // ell)) == ctx.one:
            order //= ell
    return order


def eval_fp_poly(ctx: FieldCtx, f: FpPoly, x: FieldElem) -> FieldElem:
    """Horner evaluation of a prime-field polynomial at an extension element."""
    if f.p != ctx.p:
        raise ValueError(f"characteristic mismatch: poly over F_{f.p}, field of char {ctx.p}")
    acc = ctx.zero
    for c in reversed(f.coeffs):
        acc = acc * x + c
    return acc


@lru_cache(maxsize=None)
def field(p: int, d: int) -> FieldCtx:
    """Shared canonical GF(p^d)."""
    return FieldCtx(p, d)


def quadratic_extension(q: int | PrimePower) -> FieldCtx:
    """The canonical F_{q^2} = GF(p^(2n))."""
    pp = q if isinstance(q, PrimePower) else PrimePower.from_q(q)
    return field(pp.p, 2 * pp.n)
