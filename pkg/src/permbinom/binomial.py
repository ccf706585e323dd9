"""The binomial f(x) = a x + x^(r(q-1)+1) over F_{q^2} and its brute-force PP oracle."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field

from . import kernels
from .gf import FieldCtx, FieldElem, PrimePower, is_prime, quadratic_extension


def _as_pp(q) -> PrimePower:
    return q if isinstance(q, PrimePower) else PrimePower.from_q(q)


def check_r(r: int) -> int:
    if r < 3 or not is_prime(r):
        raise ValueError(f"r must be an odd prime, got {r}")
    return r


@dataclass(frozen=True)
class BinomialSpec:
    q: PrimePower
    r: int
    a: FieldElem

    def __post_init__(self):
        check_r(self.r)
        if self.a.is_zero():
            raise ValueError("a must be nonzero")
        ctx = self.a.ctx
        if ctx.p != self.q.p or ctx.d != 2 * self.q.n:
            raise ValueError("a must lie in F_{q^2}")

    @classmethod
    def make(cls, q, r: int, a: FieldElem | int) -> "BinomialSpec":
        pp = _as_pp(q)
        if isinstance(a, int):
            a = quadratic_extension(pp)(a)
        return cls(pp, r, a)

    @classmethod
    def from_power(cls, q, r: int, k: int) -> "BinomialSpec":
        """Spec with a = g^k for the canonical generator g of F_{q^2}."""
        pp = _as_pp(q)
        return cls(pp, r, quadratic_extension(pp).gen_pow(k))

    @property
    def ctx(self) -> FieldCtx:
        return self.a.ctx

    @property
    def exponent(self) -> int:
        return self.r * (self.q.q - 1) + 1

    @property
    def b_power(self) -> int:
        """(q+1)/r; only meaningful when r | q+1."""
        return (self.q.q + 1) // self.r

    def __str__(self):
        return f"f = ({self.a})x + x^{self.exponent} over F_{self.q.q}^2"


@dataclass(frozen=True)
class BClass:
    """The class of all a sharing b = a^((q+1)/r); ``a`` is a representative."""

    b: FieldElem
    a: FieldElem = dc_field(compare=False)

    @property
    def index(self) -> int:
        return self.b.index


def eval_f(spec: BinomialSpec, x: FieldElem) -> FieldElem:
    return spec.a * x + x ** spec.exponent


def is_permutation(spec: BinomialSpec) -> bool:
    """Exhaustive injectivity test over all q^2 elements (table kernel)."""
    t = spec.ctx.tables
    return bool(kernels.is_permutation_log(t.exp, t.zech, t.log[spec.a.index], spec.exponent, t.order))


def is_permutation_naive(spec: BinomialSpec) -> bool:
    """Same question answered with plain vector arithmetic; slow, table-free."""
    seen = set()
    for x in spec.ctx.elements():
        y = eval_f(spec, x).coeffs
        if y in seen:
            return False
        seen.add(y)
    return True


def zero_root_bruteforce(spec: BinomialSpec) -> bool:
    """True iff no nonzero x has f(x) = 0, by scanning F*_{q^2}."""
    t = spec.ctx.tables
    target = t.log[(-spec.a).index]
    step = (spec.exponent - 1) % t.order
    s = 0
    for _ in range(t.order):
        # f(x) = 0 with x != 0  <=>  x^(e-1) = -a
        if s == target:
            return False
        s = (s + step) % t.order
    return True


def zero_only_root(spec: BinomialSpec) -> bool:
    """0 is the only root of f.

    With r | q+1 this is a^((q+1)/r) != 1.  Roots come from x^(r(q-1)) = -a,
    i.e. (-a)^((q+1)/r) = 1; the sign drops out because (q+1)/r is even for
    odd q and -1 = 1 for even q.
    """
    q = spec.q.q
    if (q + 1) % spec.r == 0:
        return spec.a ** spec.b_power != spec.ctx.one
    return zero_root_bruteforce(spec)


def b_class(spec: BinomialSpec) -> BClass:
    if (spec.q.q + 1) % spec.r:
        raise ValueError(f"r={spec.r} does not divide q+1={spec.q.q + 1}")
    return BClass(spec.a ** spec.b_power, spec.a)


def class_representative_logs(q, r: int) -> list[int]:
    """Discrete logs k of the representatives a = g^k, one per b-class.

    Enumerating k = 0, 1, ... and keeping the first a for each b gives
    exactly k < r(q-1): b = g^(k(q+1)/r) repeats with period r(q-1).
    """
    pp = _as_pp(q)
    check_r(r)
    if (pp.q + 1) % r:
        raise ValueError(f"r={r} does not divide q+1={pp.q + 1}")
    return list(range(r * (pp.q - 1)))


def _perm_logs(q: int, r: int, logs: list[int]) -> list[bool]:
    ctx = quadratic_extension(q)
    t = ctx.tables
    e = r * (q - 1) + 1
    return [bool(kernels.is_permutation_log(t.exp, t.zech, k, e, t.order)) for k in logs]


def permutation_verdicts(q, r: int, logs: list[int], jobs: int = 1) -> list[bool]:
    """is_permutation for a = g^k, k in ``logs``; order preserved for any ``jobs``."""
    pp = _as_pp(q)
    if jobs <= 1 or len(logs) < 2 * jobs:
        return _perm_logs(pp.q, r, logs)
    size = -(-len(logs) // jobs)
    chunks = [logs[i : i + size] for i in range(0, len(logs), size)]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        parts = pool.map(_perm_logs, [pp.q] * len(chunks), [r] * len(chunks), chunks)
        return [v for part in parts for v in part]


def classify_classes(q, r: int, jobs: int = 1) -> dict[BClass, bool]:
    """PP verdict for every achievable b, keyed by class, sorted by b index."""
    pp = _as_pp(q)
    logs = class_representative_logs(pp, r)
    ctx = quadratic_extension(pp)
    m = (pp.q + 1) // r
    verdicts = permutation_verdicts(pp, r, logs, jobs)
    classes = {}
    for k, ok in zip(logs, verdicts):
        a = ctx.gen_pow(k)
        b = ctx.gen_pow(k * m)
        cls = BClass(b, a)
        if cls in classes:
            raise AssertionError("duplicate b-class among representatives")
        classes[cls] = ok
    return dict(sorted(classes.items(), key=lambda kv: kv[0].index))
