"""Classification over prime powers, checked against machine-readable PP case lists."""

from __future__ import annotations

import random
import re
import time
from dataclasses import dataclass, field
from enum import Enum

from .binomial import (
    BinomialSpec,
    check_r,
    class_representative_logs,
    permutation_verdicts,
)
from .gf import FieldElem, FpPoly, PrimePower, eval_fp_poly, prime_power, quadratic_extension
from .hermite import hermite_check

EXHAUSTIVE_NEGATIVE_LIMIT = 30
NEGATIVE_SAMPLES = 256
DEFAULT_Q_MAX = {5: 128, 7: 100}


def enumerate_prime_powers(max_q: int, r: int | None = None) -> list[PrimePower]:
    """Prime powers 2 <= q <= max_q, optionally only those with q = -1 mod r."""
    if max_q < 2:
        raise ValueError("max_q must be >= 2")
    out = []
    for q in range(2, max_q + 1):
        if r is not None and (q + 1) % r:
            continue
        pp = prime_power(q)
        if pp is not None:
            out.append(pp)
    return out


# ---------------------------------------------------------------------------
# theorem predicates
# ---------------------------------------------------------------------------


class Condition(Enum):
    NONTRIVIAL_RTH_ROOT_OF_UNITY = "nontrivial_rth_root_of_unity"
    ROOT_OF_PRODUCT = "root_of_product"
    MEMBER_OF_SET = "member_of_set"


_TERM = re.compile(r"([+-]?)(\d*)(x(?:\^(\d+))?)?$")


def parse_fp_poly(text: str, p: int) -> FpPoly:
    """Parse '1+4x+x^2' style polynomials into an ``FpPoly``."""
    coeffs: dict[int, int] = {}
    for term in re.findall(r"[+-]?[^+-]+", text.replace(" ", "")):
        m = _TERM.match(term)
        if not m or (not m.group(2) and not m.group(3)):
            raise ValueError(f"cannot parse term {term!r} in {text!r}")
        sign = -1 if m.group(1) == "-" else 1
        c = int(m.group(2)) if m.group(2) else 1
        deg = 0 if not m.group(3) else int(m.group(4) or 1)
        coeffs[deg] = coeffs.get(deg, 0) + sign * c
    return FpPoly(p, [coeffs.get(i, 0) for i in range(max(coeffs) + 1)])


@dataclass(frozen=True)
class TheoremCase:
    """One enumerated case; ``q is None`` marks the q = 2^(4k+2) family.

    The condition is applied to a^a_power; ``a_power=None`` means
    b = a^((q+1)/r).
    """

    theorem: str
    label: str
    r: int
    q: int | None
    condition: Condition
    factors: tuple[str, ...] = ()
    values: tuple[int, ...] = ()
    a_power: int | None = None

    def applies(self, q: int) -> bool:
        if self.q is not None:
            return q == self.q
        # q = 2^(4k+2) <=> q a power of 2 with r | q+1 (r = 5: ord_5(2) = 4)
        pp = prime_power(q)
        return pp is not None and pp.p == 2 and (q + 1) % self.r == 0

    def predicate(self, q: int) -> "TheoremPredicate":
        pp = PrimePower.from_q(q)
        polys = tuple(parse_fp_poly(f, pp.p) for f in self.factors)
        power = (q + 1) // self.r if self.a_power is None else self.a_power
        return TheoremPredicate(pp, power, self.r, self.condition, polys, self.values, self.label)


@dataclass(frozen=True)
class TheoremPredicate:
    q: PrimePower
    power: int
    r: int
    condition: Condition
    polys: tuple[FpPoly, ...] = ()
    values: tuple[int, ...] = ()
    label: str = ""

    def holds(self, a: FieldElem) -> bool:
        """Evaluate the condition on a^power."""
        ctx = a.ctx
        x = a ** self.power
        if self.condition is Condition.NONTRIVIAL_RTH_ROOT_OF_UNITY:
            return x != ctx.one and x ** self.r == ctx.one
        if self.condition is Condition.MEMBER_OF_SET:
            return any(x == ctx(v) for v in self.values)
        return any(eval_fp_poly(ctx, f, x).is_zero() for f in self.polys)


CASES_R5 = (
    TheoremCase("1.1", "1", 5, None, Condition.NONTRIVIAL_RTH_ROOT_OF_UNITY),
    TheoremCase(
        "1.1", "2", 5, 9, Condition.ROOT_OF_PRODUCT,
        ("1+x", "1+x^2", "2+x+x^2", "2+2x+x^2", "1+x+x^2+x^4", "1+x^2+x^3+x^4", "1+2x+x^2+2x^3+x^4"),
    ),
    TheoremCase(
        "1.1", "3", 5, 19, Condition.ROOT_OF_PRODUCT,
        ("1+x", "2+x", "3+x", "4+x", "5+x", "9+x", "10+x", "13+x", "17+x",
         "16+3x+x^2", "1+4x+x^2", "6+18x+x^2"),
    ),
    TheoremCase("1.1", "4", 5, 29, Condition.MEMBER_OF_SET, values=(15, 18, 22, 23)),
    TheoremCase("1.1", "5", 5, 49, Condition.ROOT_OF_PRODUCT, ("1+4x+x^2",)),
    TheoremCase("1.1", "6", 5, 59, Condition.ROOT_OF_PRODUCT, ("4+x", "55+x", "x^2+36")),
    TheoremCase("1.1", "7", 5, 64, Condition.ROOT_OF_PRODUCT, ("1+x+x^2", "1+x+x^3")),
)

CASES_R7 = (
    TheoremCase(
        "1.2", "1", 7, 13, Condition.ROOT_OF_PRODUCT,
        ("1+x", "2+x", "3+x", "4+x", "5+x", "6+x", "7+x", "8+x", "9+x", "10+x", "11+x",
         "12+x+x^2", "9+2x+x^2", "10+3x+x^2", "9+4x+x^2", "12+4x+x^2", "10+5x+x^2",
         "3+6x+x^2", "1+7x+x^2", "4+7x+x^2", "1+8x+x^2", "12+9x+x^2", "1+10x+x^2",
         "3+12x+x^2", "4+12x+x^2", "12+12x+x^2"),
    ),
    TheoremCase(
        "1.2", "2", 7, 27, Condition.ROOT_OF_PRODUCT,
        ("2+x+x^2+x^3", "1+2x+x^2+x^3", "1+x+2x^2+x^3", "2+2x+2x^2+x^3",
         "1+2x+x^2+2x^3+x^4+2x^5+x^6"),
    ),
    TheoremCase(
        "1.2", "3", 7, 41, Condition.ROOT_OF_PRODUCT,
        ("9+x", "10+x", "26+x", "30+x", "32+x", "34+x", "35+x", "37+x",
         "39+2x+x^2", "1+14x+x^2", "20+40x+x^2"),
    ),
)

THEOREMS = {"1.1": CASES_R5, "1.2": CASES_R7}

# r = 5, q = 59: the case list puts the condition on a^12 = b; brute force over all
# a in F_{59^2} shows it holds for a^6.  The root set {4, -4, 6i, -6i} is closed
# under negation, so the corrected condition still depends on b only.
ERRATA = {
    ("1.1", "6"): TheoremCase("1.1", "6*", 5, 59, Condition.ROOT_OF_PRODUCT, ("4+x", "55+x", "x^2+36"), a_power=6),
}


def theorem_cases(theorem_id: str, errata: bool = False) -> tuple[TheoremCase, ...]:
    cases = THEOREMS[theorem_id]
    if not errata:
        return cases
    return tuple(ERRATA.get((c.theorem, c.label), c) for c in cases)


THEOREM_R = {"1.1": 5, "1.2": 7}


def theorem_for_r(r: int) -> str | None:
    for tid, rr in THEOREM_R.items():
        if rr == r:
            return tid
    return None


def applicable_predicates(q: int, cases) -> list[TheoremPredicate]:
    return [c.predicate(q) for c in cases if c.applies(q)]


# ---------------------------------------------------------------------------
# classification
# ---------------------------------------------------------------------------


@dataclass
class ClassRow:
    b_index: int
    a_rep_index: int
    a_rep_power: int
    is_pp: bool
    matched_case: str | None = None
    b_coeffs: tuple[int, ...] = ()
    a_rep_coeffs: tuple[int, ...] = ()


@dataclass
class ClassificationReport:
    q: PrimePower
    r: int
    rows: list[ClassRow]
    seconds: float = 0.0
    theorem: str | None = None
    # b indices found PP but not predicted, and predicted but not found
    unexpected: list[int] = field(default_factory=list)
    missing: list[int] = field(default_factory=list)
    hermite_checked: int = 0
    hermite_disagreements: list[int] = field(default_factory=list)

    @property
    def pp_rows(self) -> list[ClassRow]:
        return [row for row in self.rows if row.is_pp]

    @property
    def diff_empty(self) -> bool:
        return not self.unexpected and not self.missing

    def summary(self) -> dict:
        return {
            "q": self.q.q,
            "p": self.q.p,
            "n": self.q.n,
            "r": self.r,
            "classes": len(self.rows),
            "pp_classes": len(self.pp_rows),
            "theorem": self.theorem,
            "unexpected": self.unexpected,
            "missing": self.missing,
            "hermite_checked": self.hermite_checked,
            "hermite_disagreements": self.hermite_disagreements,
        }


def classify(q, r: int, jobs: int = 1, cases=None, hermite_fraction: float = 0.0) -> ClassificationReport:
    """PP verdict per b-class of f = a x + x^(r(q-1)+1), compared with the theorem for r.

    ``cases`` overrides the theorem cases used for the comparison (None picks
    the theorem for r, if any).  ``hermite_fraction`` re-checks that share of
    classes, evenly spaced, with the Hermite-criterion test.
    """
    pp = q if isinstance(q, PrimePower) else PrimePower.from_q(q)
    check_r(r)
    start = time.perf_counter()
    logs = class_representative_logs(pp, r)
    verdicts = permutation_verdicts(pp, r, logs, jobs)
    ctx = quadratic_extension(pp)
    m = (pp.q + 1) // r
    tid = theorem_for_r(r)
    if cases is None and tid is not None:
        cases = THEOREMS[tid]
    preds = applicable_predicates(pp.q, cases) if cases is not None else []
    rows = []
    for k, ok in zip(logs, verdicts):
        a = ctx.gen_pow(k)
        b = ctx.gen_pow(k * m)
        matched = next((pr.label for pr in preds if pr.holds(a)), None)
        rows.append(ClassRow(b.index, a.index, k, ok, matched, b.coeffs, a.coeffs))
    rows.sort(key=lambda row: row.b_index)
    report = ClassificationReport(pp, r, rows, theorem=tid if cases is not None else None)
    if cases is not None:
        report.unexpected = [row.b_index for row in rows if row.is_pp and row.matched_case is None]
        report.missing = [row.b_index for row in rows if not row.is_pp and row.matched_case is not None]
    if hermite_fraction > 0 and rows:
        stride = max(1, round(1 / min(hermite_fraction, 1.0)))
        for row in rows[::stride]:
            spec = BinomialSpec(pp, r, ctx.element(row.a_rep_index))
            report.hermite_checked += 1
            if hermite_check(spec) != row.is_pp:
                report.hermite_disagreements.append(row.b_index)
    report.seconds = time.perf_counter() - start
    return report


def report_records(report: ClassificationReport) -> list[dict]:
    """One flat record per (q, b-class)."""
    return [
        {
            "q": report.q.q,
            "p": report.q.p,
            "n": report.q.n,
            "r": report.r,
            "b_index": row.b_index,
            "b_coeffs": list(row.b_coeffs),
            "a_rep_index": row.a_rep_index,
            "a_rep_power": row.a_rep_power,
            "a_rep_coeffs": list(row.a_rep_coeffs),
            "is_pp": row.is_pp,
            "matched_theorem_case": row.matched_case,
        }
        for row in report.rows
    ]


# ---------------------------------------------------------------------------
# theorem verification
# ---------------------------------------------------------------------------


@dataclass
class QVerdict:
    q: PrimePower
    r: int
    kind: str  # "classified" or "negative"
    in_scope: bool  # q >= r, the range the theorem's argument covers
    ok: bool
    pp_classes: int = 0
    checked: int = 0
    pp_found: int = 0
    exhaustive: bool = True
    unexpected: list[int] = field(default_factory=list)
    missing: list[int] = field(default_factory=list)

    def describe(self) -> str:
        if self.kind == "negative":
            how = "all" if self.exhaustive else "sampled"
            return f"q={self.q.q}: r∤q+1, {self.pp_found} PP among {self.checked} {how} a"
        text = f"q={self.q.q}: {self.pp_classes} PP classes"
        if self.unexpected or self.missing:
            text += f", unexpected b={self.unexpected[:8]}, missing b={self.missing[:8]}"
        return text


@dataclass
class TheoremVerification:
    theorem: str
    r: int
    q_max: int
    verdicts: list[QVerdict]
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        """All q >= r agree with the theorem."""
        return all(v.ok for v in self.verdicts if v.in_scope)

    @property
    def literal_passed(self) -> bool:
        """All q <= q_max agree, including q < r."""
        return all(v.ok for v in self.verdicts)

    @property
    def mismatches(self) -> list[QVerdict]:
        return [v for v in self.verdicts if v.in_scope and not v.ok]

    @property
    def out_of_scope_mismatches(self) -> list[QVerdict]:
        return [v for v in self.verdicts if not v.in_scope and not v.ok]


def negative_check(pp: PrimePower, r: int, seed: int = 0, exhaustive_limit: int = EXHAUSTIVE_NEGATIVE_LIMIT,
                   samples: int = NEGATIVE_SAMPLES, jobs: int = 1) -> tuple[int, int, bool]:
    """Count PP among a in F*_{q^2}: every a when q <= exhaustive_limit, else a seeded sample.

    Returns (pp_found, checked, exhaustive).
    """
    order = pp.q * pp.q - 1
    if pp.q <= exhaustive_limit or order <= samples:
        logs = list(range(order))
        exhaustive = True
    else:
        rng = random.Random(f"{seed}:{pp.q}:{r}")
        logs = sorted(rng.sample(range(order), samples))
        exhaustive = False
    verdicts = permutation_verdicts(pp, r, logs, jobs)
    return sum(verdicts), len(logs), exhaustive


def verify_theorem(theorem_id: str, q_max: int | None = None, jobs: int = 1, cases=None,
                   seed: int = 0, errata: bool = False) -> TheoremVerification:
    """Compare brute force with the theorem's case list for every prime power q <= q_max.

    ``errata`` swaps in the corrected cases from ``ERRATA``; ``cases``
    replaces the case list outright.
    """
    if theorem_id not in THEOREMS:
        raise ValueError(f"unknown theorem {theorem_id!r}; choose from {sorted(THEOREMS)}")
    r = THEOREM_R[theorem_id]
    q_max = DEFAULT_Q_MAX[r] if q_max is None else q_max
    cases = theorem_cases(theorem_id, errata) if cases is None else cases
    start = time.perf_counter()
    verdicts = []
    for pp in enumerate_prime_powers(q_max):
        in_scope = pp.q >= r
        if (pp.q + 1) % r:
            found, checked, exhaustive = negative_check(pp, r, seed=seed, jobs=jobs)
            listed = any(c.applies(pp.q) for c in cases)
            verdicts.append(QVerdict(pp, r, "negative", in_scope, found == 0 and not listed,
                                     checked=checked, pp_found=found, exhaustive=exhaustive))
            continue
        rep = classify(pp, r, jobs=jobs, cases=cases)
        verdicts.append(QVerdict(pp, r, "classified", in_scope, rep.diff_empty, pp_classes=len(rep.pp_rows),
                                 checked=len(rep.rows), unexpected=rep.unexpected, missing=rep.missing))
    return TheoremVerification(theorem_id, r, q_max, verdicts, time.perf_counter() - start)


# ---------------------------------------------------------------------------
# conjecture scan
# ---------------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class Finding:
    q: int
    b_index: int
    a_rep_index: int
    a_rep_power: int
    root_of_unity: bool


@dataclass
class ScanResult:
    r: int
    q_max: int
    sporadic: list[Finding]
    roots_of_unity: list[Finding]
    qs: list[int]

    @property
    def sporadic_qs(self) -> list[int]:
        return sorted({f.q for f in self.sporadic})


def conjecture_scan(r: int, q_max: int, jobs: int = 1) -> ScanResult:
    """PP classes for each q = -1 mod r, split by whether b is an r-th root of unity."""
    check_r(r)
    sporadic, roots = [], []
    qs = []
    for pp in enumerate_prime_powers(q_max, r):
        qs.append(pp.q)
        rep = classify(pp, r, jobs=jobs, cases=())
        ctx = quadratic_extension(pp)
        for row in rep.pp_rows:
            b = ctx.element(row.b_index)
            is_root = b ** r == ctx.one
            f = Finding(pp.q, row.b_index, row.a_rep_index, row.a_rep_power, is_root)
            (roots if is_root else sporadic).append(f)
    return ScanResult(r, q_max, sorted(sporadic), sorted(roots), qs)
