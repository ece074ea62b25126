"""Cross-check battery behind ``connectors verify``.

Every check compares two independently computed quantities: enumeration,
the transfer recurrence, closed-form generating functions, determinant
elimination and closed-form determinant sums.
"""
from __future__ import annotations

import functools
import logging
from dataclasses import dataclass, field
from typing import Callable, Iterator

from . import linsys
from .algebra import Poly, X, ratgf, derivative_q_at_1
from .genfunc import (
    closed_form_gf,
    gkcon_gf,
    gkcon_total_gf,
    kcon_gf,
    kcon_total_gf,
    transfer_distribution,
)
from .totals import floor_sum_claim_holds, total
from .words import ConnectorStat, EnumerationTooLarge, brute_distribution, gkcon, kcon

log = logging.getLogger(__name__)

COFACTOR_ORACLE_KMAX = 6
FLOOR_SUM_KMAX = 100

# verify enumerates each (n, k, stat) cell twice otherwise
_brute = functools.lru_cache(maxsize=256)(brute_distribution)


@dataclass
class CheckResult:
    check: str
    k: int | None
    n: int | None
    passed: bool
    detail: str = ""

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        where = []
        if self.k is not None:
            where.append(f"k={self.k}")
        if self.n is not None:
            where.append(f"n={self.n}")
        loc = " ".join(where)
        return f"{tag}  {self.check:<24} {loc:<12} {self.detail}".rstrip()

    def to_json(self) -> dict:
        return {
            "check": self.check,
            "k": self.k,
            "n": self.n,
            "passed": self.passed,
            "detail": self.detail,
        }


@dataclass
class VerifyReport:
    results: list[CheckResult] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    permutations: dict[int, list[int | None]] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    @property
    def first_failure(self) -> CheckResult | None:
        return next((r for r in self.results if not r.passed), None)

    def to_json(self) -> dict:
        first = self.first_failure
        return {
            "passed": self.passed,
            "checks": [r.to_json() for r in self.results],
            "notes": list(self.notes),
            "permutations": {str(k): v for k, v in sorted(self.permutations.items())},
            "first_failure": first.to_json() if first else None,
        }


def _stats(k: int) -> list[ConnectorStat]:
    return [kcon(k), gkcon(k)]


def check_distributions(
    k: int, nmax: int, s: ConnectorStat, cap: int | None = None, workers: int = 1
) -> CheckResult:
    """Brute force, transfer recurrence and GF coefficients agree for n = 0..nmax."""
    series = closed_form_gf(s, k).series(nmax)
    skipped = []
    for n in range(nmax + 1):
        via_transfer = transfer_distribution(n, k, s)
        if via_transfer != series[n]:
            return CheckResult(f"distribution[{s.name}]", k, n, False,
                               f"transfer {via_transfer} != gf {series[n]}")
        if via_transfer(1) != k**n:
            return CheckResult(f"distribution[{s.name}]", k, n, False, "q=1 value is not k^n")
        try:
            via_brute = _brute(n, k, s, cap, workers)
        except EnumerationTooLarge:
            skipped.append(n)
            continue
        if via_brute != via_transfer:
            return CheckResult(f"distribution[{s.name}]", k, n, False,
                               f"brute {via_brute} != transfer {via_transfer}")
    detail = f"n=0..{nmax} three-way"
    if skipped:
        detail += f" (brute skipped for n={skipped})"
    return CheckResult(f"distribution[{s.name}]", k, None, True, detail)


def check_q1_specialization(k: int) -> CheckResult:
    geometric = ratgf(1, 1 - X * k)
    ok = all(closed_form_gf(s, k).eval_q(1).equivalent(geometric) for s in _stats(k))
    return CheckResult("q=1 specialization", k, None, ok, "both GFs reduce to 1/(1-kx)")


def check_gk_recurrence(k: int, nmax: int) -> CheckResult:
    """``(1-kx) GC - x(q-1) sum_i sum_{j>=k-i+1} GC(.|j) = 1`` and ``GC = 1 + sum GC(.|l)``."""
    gc = gkcon_gf(k)
    cond = linsys.solve_conditional_gfs(k)
    b = X * Poly((-1, 1))
    # letter j appears in the double sum once for each i >= k-j+1, i.e. j times
    weighted = ratgf(0)
    plain = ratgf(0)
    for j, g in enumerate(cond, start=1):
        weighted = weighted + g * j
        plain = plain + g
    lhs = gc * (1 - X * k) - weighted * b
    if not lhs.equivalent(1):
        return CheckResult("gk recurrence identity", k, None, False, "rational identity fails")
    if not (plain + 1).equivalent(gc):
        return CheckResult("gk recurrence identity", k, None, False, "GC != 1 + sum GC(.|l)")
    lhs_series = lhs.series(nmax)
    if lhs_series != [Poly((1,))] + [Poly()] * nmax:
        bad = next(i for i, c in enumerate(lhs_series) if c != int(i == 0))
        return CheckResult("gk recurrence identity", k, bad, False, "series disagreement")
    return CheckResult("gk recurrence identity", k, None, True,
                       f"exact identity; series through x^{nmax}")


def check_determinant(k: int) -> CheckResult:
    A = linsys.build_system_matrix(k)
    det = linsys.poly_det(A)
    closed = linsys.detA_closed_form(k)
    if det != closed:
        return CheckResult("det closed form", k, None, False, f"bareiss {det} != closed {closed}")
    if det(0) != 1:
        return CheckResult("det closed form", k, None, False, "det A at b=0 is not 1")
    detail = "bareiss == closed form"
    if k <= COFACTOR_ORACLE_KMAX:
        if linsys.cofactor_det(A) != det:
            return CheckResult("det closed form", k, None, False, "cofactor expansion disagrees")
        detail += " == cofactor"
    return CheckResult("det closed form", k, None, True, detail)


def check_cramer_sum(k: int) -> CheckResult:
    nums = linsys.cramer_numerators(k)
    s = Poly((), "b")
    for n in nums:
        s = s + n
    expected = linsys.lemma_term_sum(k)
    if s != expected:
        return CheckResult("cramer sum identity", k, None, False, f"{s} != {expected}")
    if not linsys.multiset_match(k):
        return CheckResult("cramer sum identity", k, None, False,
                           "numerators are not a permutation of the terms")
    return CheckResult("cramer sum identity", k, None, True, "sum and multiset match")


def check_reconstruction(k: int) -> CheckResult:
    """GF rebuilt from elimination determinants equals the closed-form GF."""
    det = linsys.poly_det(linsys.build_system_matrix(k))
    num_sum = Poly((), "b")
    for n in linsys.cramer_numerators(k):
        num_sum = num_sum + n
    rebuilt = linsys.reconstruct_gkcon_gf(det, num_sum)
    closed = linsys.reconstruct_gkcon_gf(linsys.detA_closed_form(k), linsys.lemma_term_sum(k))
    ok = rebuilt.equivalent(gkcon_gf(k)) and closed.equivalent(gkcon_gf(k))
    return CheckResult("gkcon gf reconstruction", k, None, ok, "det/(det - x*sum) == GC_k")


def check_total_gfs(k: int) -> CheckResult:
    ok_k = derivative_q_at_1(kcon_gf(k)).equivalent(kcon_total_gf(k))
    ok_g = derivative_q_at_1(gkcon_gf(k)).equivalent(gkcon_total_gf(k))
    detail = "d/dq at q=1 matches c*x^2/(1-kx)^2"
    if not ok_k:
        detail = "kcon derivative mismatch"
    elif not ok_g:
        detail = "gkcon derivative mismatch"
    return CheckResult("total gf derivative", k, None, ok_k and ok_g, detail)


def check_totals_brute(
    k: int, nmax: int, s: ConnectorStat, cap: int | None = None, workers: int = 1
) -> CheckResult:
    name = f"totals vs brute[{s.name}]"
    skipped = []
    for n in range(nmax + 1):
        try:
            dist = _brute(n, k, s, cap, workers)
        except EnumerationTooLarge:
            skipped.append(n)
            continue
        brute_total = dist.derivative()(1)
        if brute_total != total(s.name, n, k):
            return CheckResult(name, k, n, False, f"brute {brute_total} != formula {total(s.name, n, k)}")
    detail = f"n=0..{nmax}" + (f" (skipped n={skipped})" if skipped else "")
    return CheckResult(name, k, None, True, detail)


def check_totals_series(k: int, nseries: int, s: ConnectorStat) -> CheckResult:
    name = f"totals vs gf[{s.name}]"
    coeffs = derivative_q_at_1(closed_form_gf(s, k)).series(nseries)
    for n, c in enumerate(coeffs):
        if c != total(s.name, n, k):
            return CheckResult(name, k, n, False, f"gf {c} != formula {total(s.name, n, k)}")
    return CheckResult(name, k, None, True, f"n=0..{nseries}")


def check_floor_sums(kmax: int = FLOOR_SUM_KMAX) -> CheckResult:
    bad = [k for k in range(1, kmax + 1) if not floor_sum_claim_holds(k)]
    if bad:
        return CheckResult("floor-sum identities", bad[0], None, False, f"fails for k={bad}")
    return CheckResult("floor-sum identities", None, None, True, f"k=1..{kmax}")


def published_value_notes(kdet: int) -> tuple[list[str], dict[int, list[int | None]]]:
    notes = [f"erratum: {d.describe()}" for d in linsys.published_discrepancies()]
    perms: dict[int, list[int | None]] = {}
    for k in range(1, kdet + 1):
        perms[k] = linsys.numerator_permutation(k)
        prefix = linsys.column_prefix_claim_holds(k)
        if not all(prefix):
            holds = [ell for ell, ok in enumerate(prefix, start=1) if ok]
            where = f"only for l in {holds}" if holds else "for no l"
            notes.append(
                f"k={k}: prefix form det(A_l)/a == t_0+...+t_(l-1) holds {where}; "
                f"instead det(A_l)/a == t_sigma(l) with sigma={perms[k]}"
            )
    return notes, perms


def iter_checks(
    kmax: int = 6,
    nmax: int = 8,
    kdet: int = 14,
    nseries: int = 50,
    cap: int | None = None,
    workers: int = 1,
) -> Iterator[CheckResult]:
    for k in range(1, kmax + 1):
        for s in _stats(k):
            yield check_distributions(k, nmax, s, cap, workers)
        yield check_q1_specialization(k)
        yield check_gk_recurrence(k, nmax)
        yield check_reconstruction(k)
        yield check_total_gfs(k)
        for s in _stats(k):
            yield check_totals_brute(k, nmax, s, cap, workers)
            yield check_totals_series(k, nseries, s)
    for k in range(1, kdet + 1):
        yield check_determinant(k)
        yield check_cramer_sum(k)
    yield check_floor_sums()


def run_verify(
    kmax: int = 6,
    nmax: int = 8,
    kdet: int = 14,
    nseries: int = 50,
    cap: int | None = None,
    workers: int = 1,
    on_result: Callable[[CheckResult], None] | None = None,
) -> VerifyReport:
    if kmax < 1 or nmax < 0 or kdet < 1:
        raise ValueError("need kmax >= 1, nmax >= 0, kdet >= 1")
    report = VerifyReport()
    for r in iter_checks(kmax, nmax, kdet, nseries, cap, workers):
        log.debug(r.line())
        report.results.append(r)
        if on_result:
            on_result(r)
    report.notes, report.permutations = published_value_notes(kdet)
    return report
