"""Exact polynomial arithmetic over Python integers.

Three layers:

* :class:`Poly` -- dense univariate polynomial, tagged with its variable name
  (``"q"`` for distribution polynomials, ``"b"`` for the matrix ring).
* :class:`BiPoly` -- polynomial in ``x`` whose coefficients are ``q``-polynomials.
* :class:`RationalGF` -- numerator/denominator pair of :class:`BiPoly`, expanded
  as a power series in ``x``.

No floating point is used anywhere.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence, Union


class NotNormalizable(ValueError):
    """Denominator constant term is not +-1, so the series is not integral."""


class InexactDivision(ArithmeticError):
    pass


def _strip(coeffs: Iterable[int]) -> tuple[int, ...]:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


@dataclass(frozen=True, eq=False)
class Poly:
    """Dense univariate integer polynomial, ascending coefficients.

    The zero polynomial has ``coeffs == ()``.
    """

    coeffs: tuple[int, ...] = ()
    var: str = "q"

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", _strip(int(c) for c in self.coeffs))

    @classmethod
    def const(cls, c: int, var: str = "q") -> "Poly":
        return cls((c,), var)

    @classmethod
    def monomial(cls, deg: int, c: int = 1, var: str = "q") -> "Poly":
        return cls((0,) * deg + (c,), var)

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.var != self.var and other.degree > 0 and self.degree > 0:
                raise TypeError(f"variable mismatch: {self.var} vs {other.var}")
            return other
        if isinstance(other, int):
            return Poly((other,), self.var)
        return NotImplemented

    def _var_with(self, other: "Poly") -> str:
        # constants adopt the variable of the non-constant operand
        return self.var if self.degree > 0 or other.degree <= 0 else other.var

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        n = max(len(self.coeffs), len(o.coeffs))
        return Poly((self[i] + o[i] for i in range(n)), self._var_with(o))

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly((-c for c in self.coeffs), self.var)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self.is_zero() or o.is_zero():
            return Poly((), self._var_with(o))
        out = [0] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    out[i + j] += a * b
        return Poly(out, self._var_with(o))

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "Poly":
        if e < 0:
            raise ValueError("negative exponent")
        result, base = Poly.const(1, self.var), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = Poly((other,), self.var)
        if not isinstance(other, Poly):
            return NotImplemented
        if self.var != other.var and self.degree > 0 and other.degree > 0:
            return False
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __call__(self, value):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    def derivative(self) -> "Poly":
        return Poly((i * c for i, c in enumerate(self.coeffs) if i), self.var)

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        """Long division over the integers; raises unless every step is exact."""
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        lead = other.coeffs[-1]
        dq = other.degree
        quot = [0] * max(0, len(rem) - dq)
        for i in range(len(rem) - 1, dq - 1, -1):
            c = rem[i]
            if c == 0:
                continue
            if c % lead:
                raise InexactDivision(f"{self} / {other} is not integral")
            f = c // lead
            quot[i - dq] = f
            for j, oc in enumerate(other.coeffs):
                rem[i - dq + j] -= f * oc
        return Poly(quot, self.var), Poly(rem, self.var)

    def exact_div(self, other) -> "Poly":
        o = self._coerce(other)
        quot, rem = self.divmod(o)
        if not rem.is_zero():
            raise InexactDivision(f"{self} is not divisible by {o}")
        return quot

    def to_json(self) -> list[str]:
        return [str(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, data: Sequence[str], var: str = "q") -> "Poly":
        return cls(tuple(int(s) for s in data), var)

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                mono = ""
            elif i == 1:
                mono = self.var
            else:
                mono = f"{self.var}^{i}"
            mag = abs(c)
            body = mono if (mag == 1 and mono) else f"{mag}{mono}"
            if not parts:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append(("- " if c < 0 else "+ ") + body)
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"Poly({self.coeffs!r}, var={self.var!r})"


# Type aliases used in signatures; both are Poly with a different ``var``.
QPolynomial = Poly
BPolynomial = Poly


def qpoly(*coeffs: int) -> Poly:
    return Poly(coeffs, "q")


def bpoly(*coeffs: int) -> Poly:
    return Poly(coeffs, "b")


Scalar = Union[int, Poly]


def _qcoerce(c: Scalar) -> Poly:
    if isinstance(c, Poly):
        return c if c.var == "q" or c.degree <= 0 else _bad_var(c)
    return Poly((c,), "q")


def _bad_var(c: Poly):
    raise TypeError(f"x-coefficients must be polynomials in q, got one in {c.var}")


@dataclass(frozen=True, eq=False)
class BiPoly:
    """Polynomial in x with q-polynomial coefficients (dense, ascending in x)."""

    xcoeffs: tuple[Poly, ...] = ()

    def __post_init__(self) -> None:
        cs = [_qcoerce(c) for c in self.xcoeffs]
        cs = [Poly(c.coeffs, "q") for c in cs]
        while cs and cs[-1].is_zero():
            cs.pop()
        object.__setattr__(self, "xcoeffs", tuple(cs))

    @classmethod
    def const(cls, c: Scalar) -> "BiPoly":
        return cls((_qcoerce(c),))

    @classmethod
    def x_power(cls, m: int, c: Scalar = 1) -> "BiPoly":
        return cls((Poly(),) * m + (_qcoerce(c),))

    @property
    def degree(self) -> int:
        return len(self.xcoeffs) - 1

    def is_zero(self) -> bool:
        return not self.xcoeffs

    def __getitem__(self, i: int) -> Poly:
        return self.xcoeffs[i] if 0 <= i < len(self.xcoeffs) else Poly()

    @staticmethod
    def _coerce(other) -> "BiPoly":
        if isinstance(other, BiPoly):
            return other
        if isinstance(other, (int, Poly)):
            return BiPoly.const(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        n = max(len(self.xcoeffs), len(o.xcoeffs))
        return BiPoly(tuple(self[i] + o[i] for i in range(n)))

    __radd__ = __add__

    def __neg__(self) -> "BiPoly":
        return BiPoly(tuple(-c for c in self.xcoeffs))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self.is_zero() or o.is_zero():
            return BiPoly()
        out = [Poly()] * (len(self.xcoeffs) + len(o.xcoeffs) - 1)
        for i, a in enumerate(self.xcoeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(o.xcoeffs):
                out[i + j] = out[i + j] + a * b
        return BiPoly(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "BiPoly":
        result = BiPoly.const(1)
        for _ in range(e):
            result = result * self
        return result

    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.xcoeffs == o.xcoeffs

    def __hash__(self) -> int:
        return hash(self.xcoeffs)

    def truncate(self, nmax: int) -> "BiPoly":
        return BiPoly(self.xcoeffs[: nmax + 1])

    def eval_q(self, value: int) -> "BiPoly":
        """Specialize q := value; the result has constant coefficients."""
        return BiPoly(tuple(Poly.const(c(value)) for c in self.xcoeffs))

    def dq_at(self, value: int) -> "BiPoly":
        """Partial derivative in q, evaluated at q = value."""
        return BiPoly(tuple(Poly.const(c.derivative()(value)) for c in self.xcoeffs))

    def to_json(self) -> list[list[str]]:
        return [c.to_json() for c in self.xcoeffs]

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        terms = []
        for i, c in enumerate(self.xcoeffs):
            if c.is_zero():
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if not mono:
                terms.append(f"({c})")
            elif c == 1:
                terms.append(mono)
            else:
                terms.append(f"({c})*{mono}")
        return " + ".join(terms)

    def __repr__(self) -> str:
        return f"BiPoly({str(self)!r})"


X = BiPoly.x_power(1)


def substitute_b(p: Poly) -> BiPoly:
    """Expand ``p(b)`` under ``b = x(q - 1)`` as a bivariate polynomial."""
    qm1 = qpoly(-1, 1)
    return BiPoly(tuple(c * qm1**i for i, c in enumerate(p.coeffs)))


@dataclass(frozen=True, eq=False)
class RationalGF:
    """Rational function ``numerator / denominator`` in x (and q).

    Instances built through :func:`ratgf` or the arithmetic operators are
    normalized: the denominator's x^0 coefficient is the constant 1.
    Equality of functions is :meth:`equivalent` (cross-multiplication);
    ``==`` is deliberately left as identity.
    """

    numerator: BiPoly
    denominator: BiPoly

    @property
    def is_normalized(self) -> bool:
        return self.denominator[0] == 1

    def normalized(self) -> "RationalGF":
        c0 = self.denominator[0]
        if c0 == 1:
            return self
        if c0 == -1:
            return RationalGF(-self.numerator, -self.denominator)
        raise NotNormalizable(f"denominator constant term {c0} is not +-1")

    @staticmethod
    def _coerce(other) -> "RationalGF":
        if isinstance(other, RationalGF):
            return other
        if isinstance(other, (int, Poly, BiPoly)):
            return RationalGF(BiPoly._coerce(other), BiPoly.const(1))
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self.denominator == o.denominator:
            return ratgf(self.numerator + o.numerator, self.denominator)
        return ratgf(
            self.numerator * o.denominator + o.numerator * self.denominator,
            self.denominator * o.denominator,
        )

    __radd__ = __add__

    def __neg__(self) -> "RationalGF":
        return RationalGF(-self.numerator, self.denominator)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ratgf(self.numerator * o.numerator, self.denominator * o.denominator)

    __rmul__ = __mul__

    def divide(self, other) -> "RationalGF":
        """Quotient; the divisor's numerator must have x^0 term +-1."""
        o = self._coerce(other)
        return ratgf(self.numerator * o.denominator, self.denominator * o.numerator)

    def equivalent(self, other) -> bool:
        o = self._coerce(other)
        return self.numerator * o.denominator == o.numerator * self.denominator

    def is_zero(self) -> bool:
        return self.numerator.is_zero()

    def eval_q(self, value: int) -> "RationalGF":
        return ratgf(self.numerator.eval_q(value), self.denominator.eval_q(value))

    def series(self, nmax: int) -> list[Poly]:
        return series_coefficients(self, nmax)

    def coefficient(self, n: int) -> Poly:
        return series_coefficients(self, n)[n]

    def __str__(self) -> str:
        return f"[{self.numerator}] / [{self.denominator}]"


def ratgf(numerator, denominator=1) -> RationalGF:
    return RationalGF(BiPoly._coerce(numerator), BiPoly._coerce(denominator)).normalized()


def series_coefficients(gf: RationalGF, nmax: int) -> list[Poly]:
    """First ``nmax + 1`` power-series coefficients of ``gf`` in x.

    Uses ``c_n = num_n - sum_{m=1..n} den_m * c_{n-m}``, exact throughout.
    """
    if not gf.is_normalized:
        raise NotNormalizable("series extraction needs a denominator with x^0 term 1")
    if nmax < 0:
        return []
    num, den = gf.numerator, gf.denominator
    out: list[Poly] = []
    for n in range(nmax + 1):
        c = num[n]
        for m in range(1, min(n, den.degree) + 1):
            d = den[m]
            if not d.is_zero():
                c = c - d * out[n - m]
        out.append(c)
    return out


def derivative_q_at_1(gf: RationalGF) -> RationalGF:
    """``d gf / dq`` at ``q = 1`` by the quotient rule; univariate in x."""
    if not gf.is_normalized:
        raise NotNormalizable("derivative expects a normalized generating function")
    n1 = gf.numerator.eval_q(1)
    d1 = gf.denominator.eval_q(1)
    dn = gf.numerator.dq_at(1)
    dd = gf.denominator.dq_at(1)
    return ratgf(dn * d1 - n1 * dd, d1 * d1)
