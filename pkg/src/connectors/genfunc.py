"""Closed-form generating functions and the transfer-matrix recurrence.

Both statistics depend only on adjacent pairs, so the state of the
recurrence is the last letter of the word.
"""
from __future__ import annotations

from dataclasses import dataclass

from .algebra import BiPoly, Poly, RationalGF, X, qpoly, ratgf, substitute_b
from .linsys import detA_closed_form, lemma_term_sum
from .words import ConnectorStat, gkcon, kcon


def kcon_gf(k: int) -> RationalGF:
    """``C_k(x,q) = 1 / (1 - x - (k-1)(x + x^2(q-1)) / (1 - x^2(q-1)^2))``.

    The inner fraction is cleared by multiplying through with
    ``1 - x^2(q-1)^2``, which then becomes the numerator.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if k == 1:
        return ratgf(1, 1 - X)
    b = X * qpoly(-1, 1)
    inner_den = 1 - b * b
    inner_num = X + X * b
    return ratgf(inner_den, inner_den * (1 - X) - inner_num * (k - 1))


def kcon_total_gf(k: int) -> RationalGF:
    """``(k-1) x^2 / (1 - kx)^2``: total k-connectors over words of length n."""
    if k < 1:
        raise ValueError("k must be >= 1")
    den = 1 - X * k
    return ratgf(BiPoly.x_power(2, k - 1), den * den)


def gkcon_gf(k: int) -> RationalGF:
    """``GC_k(x,q) = D(b) / (D(b) - x * T(b))`` under ``b = x(q-1)``.

    D is the closed-form determinant and T the parity-dependent term sum.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    d = substitute_b(detA_closed_form(k))
    t = substitute_b(lemma_term_sum(k))
    return ratgf(d, d - X * t)


def gkcon_total_coefficient(k: int) -> int:
    if k % 2 == 0:
        return (k + 1) // 2 * k + k // 2
    return (k + 1) // 2 * k


def gkcon_total_gf(k: int) -> RationalGF:
    """``c x^2 / (1 - kx)^2`` with ``c = k(k+1)/2``."""
    den = 1 - X * k
    return ratgf(BiPoly.x_power(2, gkcon_total_coefficient(k)), den * den)


def closed_form_gf(stat: ConnectorStat, k: int) -> RationalGF:
    """Closed-form GF for kcon/gkcon at the default threshold t = k."""
    if stat.threshold != k:
        raise ValueError("closed forms exist only for threshold t = k")
    return kcon_gf(k) if stat == kcon(k) else gkcon_gf(k)


@dataclass(frozen=True)
class ConditionalDistribution:
    """Distribution polynomials of length-n words, split by last letter."""

    by_last_letter: tuple[Poly, ...]
    n: int

    @classmethod
    def initial(cls, k: int) -> "ConditionalDistribution":
        return cls((qpoly(1),) * k, 1)

    @property
    def k(self) -> int:
        return len(self.by_last_letter)

    def total(self) -> Poly:
        acc = qpoly()
        for p in self.by_last_letter:
            acc = acc + p
        return acc


def transfer_step(d: ConditionalDistribution, s: ConnectorStat) -> ConditionalDistribution:
    """Append one letter: entry i becomes ``sum_j w(j,i) * old_j``, ``w = q`` on hits."""
    k = d.k
    q = qpoly(0, 1)
    new = []
    for i in range(1, k + 1):
        plain, marked = qpoly(), qpoly()
        for j, old in enumerate(d.by_last_letter, start=1):
            if s.holds(j, i):
                marked = marked + old
            else:
                plain = plain + old
        new.append(plain + q * marked)
    return ConditionalDistribution(tuple(new), d.n + 1)


def transfer_distribution(n: int, k: int, s: ConnectorStat) -> Poly:
    if n < 0 or k < 1:
        raise ValueError("need n >= 0 and k >= 1")
    if n == 0:
        return qpoly(1)
    d = ConditionalDistribution.initial(k)
    for _ in range(n - 1):
        d = transfer_step(d, s)
    return d.total()


def gf_distribution(n: int, k: int, s: ConnectorStat) -> Poly:
    """Coefficient of x^n in the closed-form GF."""
    return closed_form_gf(s, k).coefficient(n)

