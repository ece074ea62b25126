import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from connectors.algebra import (
    BiPoly,
    InexactDivision,
    NotNormalizable,
    Poly,
    RationalGF,
    X,
    bpoly,
    derivative_q_at_1,
    qpoly,
    ratgf,
    series_coefficients,
    substitute_b,
)
from connectors.genfunc import gkcon_gf, kcon_gf

small_polys = st.lists(st.integers(-20, 20), max_size=6).map(lambda c: Poly(tuple(c)))


def test_basic_ring_examples():
    assert qpoly(1, 1) * qpoly(1, -1) == qpoly(1, 0, -1)
    p = qpoly(3, 0, 2)
    assert p + 0 == p and p + qpoly() == p
    assert bpoly(1, -1, -1) * 1 == bpoly(1, -1, -1)


def test_canonical_form_strips_trailing_zeros():
    assert qpoly(1, 2, 0, 0).coeffs == (1, 2)
    assert qpoly(0, 0).coeffs == ()
    assert (qpoly(1, 1) - qpoly(1, 1)).is_zero()


def test_variables_do_not_mix():
    with pytest.raises(TypeError):
        qpoly(0, 1) + bpoly(0, 1)
    assert bpoly(0, 1) != qpoly(0, 1)
    # constants are variable-free
    assert bpoly(7) == qpoly(7) == 7


def test_exact_division():
    p = bpoly(1, -1) * bpoly(2, 3, 1)
    assert p.exact_div(bpoly(1, -1)) == bpoly(2, 3, 1)
    with pytest.raises(InexactDivision):
        bpoly(1, 1).exact_div(bpoly(0, 2))
    with pytest.raises(InexactDivision):
        bpoly(1, 0, 1).exact_div(bpoly(1, 1))


def test_pretty_and_json():
    assert str(qpoly(5, 2, 1)) == "5 + 2q + q^2"
    assert str(bpoly(1, -1, -1)) == "1 - b - b^2"
    assert str(qpoly()) == "0"
    assert qpoly(5, 2, 1).to_json() == ["5", "2", "1"]
    assert Poly.from_json(["5", "2", "1"]) == qpoly(5, 2, 1)
    big = qpoly(10**40)
    assert Poly.from_json(big.to_json()) == big


@given(small_polys, small_polys, small_polys)
@settings(max_examples=200)
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a + b == b + a
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert a - a == 0


@given(small_polys, st.integers(-5, 5))
def test_evaluation_is_a_homomorphism(a, v):
    assert (a * a)(v) == a(v) ** 2
    assert (a + 1)(v) == a(v) + 1


def test_substitute_b():
    assert substitute_b(bpoly(0, 1)) == BiPoly((qpoly(), qpoly(-1, 1)))
    s = substitute_b(bpoly(1, -1, -1))
    qm1 = qpoly(-1, 1)
    assert s == 1 - X * qm1 - BiPoly.x_power(2, qm1 * qm1)
    assert substitute_b(bpoly(7)) == BiPoly.const(7)


@given(st.lists(st.integers(-9, 9), max_size=6))
def test_substitute_b_degree_and_q1(coeffs):
    p = bpoly(*coeffs)
    s = substitute_b(p)
    assert s.degree == p.degree
    # b vanishes at q = 1
    assert s.eval_q(1) == BiPoly.const(p[0])


def test_geometric_series():
    assert series_coefficients(ratgf(1, 1 - X * 3), 3) == [1, 3, 9, 27]


def test_series_rejects_unnormalized():
    raw = RationalGF(BiPoly.const(1), BiPoly.const(2) - X)
    with pytest.raises(NotNormalizable):
        series_coefficients(raw, 3)
    with pytest.raises(NotNormalizable):
        raw.normalized()
    neg = RationalGF(BiPoly.const(1), X - 1).normalized()
    assert neg.series(3) == [-1, -1, -1, -1]


def test_kcon_total_series_spot_value():
    gf = ratgf(BiPoly.x_power(2, 1), (1 - X * 2) * (1 - X * 2))
    assert gf.coefficient(3) == 4


def _sympy_series(gf: RationalGF, nmax: int, q_value=None):
    x, q = sympy.symbols("x q")

    def to_expr(bp):
        return sum(sum(c * q**j for j, c in enumerate(p.coeffs)) * x**i for i, p in enumerate(bp.xcoeffs))

    expr = to_expr(gf.numerator) / to_expr(gf.denominator)
    if q_value is not None:
        expr = expr.subs(q, q_value)
    ser = sympy.series(expr, x, 0, nmax + 1).removeO()
    return [sympy.expand(ser.coeff(x, i)) for i in range(nmax + 1)], q


@pytest.mark.parametrize("k", [2, 3, 4])
def test_series_against_sympy(k):
    gf = gkcon_gf(k)
    got = gf.series(6)
    want, q = _sympy_series(gf, 6)
    for p, w in zip(got, want):
        assert sympy.expand(sum(c * q**j for j, c in enumerate(p.coeffs)) - w) == 0


@pytest.mark.parametrize("k", [1, 2, 5])
def test_q1_series_against_integer_series(k):
    gf = kcon_gf(k)
    at1 = [p(1) for p in gf.series(8)]
    want, _ = _sympy_series(gf, 8, q_value=1)
    assert at1 == [int(w) for w in want]


@pytest.mark.parametrize("k", [2, 3, 6])
def test_series_times_denominator_reproduces_numerator(k):
    gf = gkcon_gf(k)
    nmax = 10
    prod = (BiPoly(tuple(gf.series(nmax))) * gf.denominator).truncate(nmax)
    assert prod == gf.numerator.truncate(nmax)


def test_derivative_examples():
    d = derivative_q_at_1(kcon_gf(2))
    assert d.equivalent(ratgf(BiPoly.x_power(2), (1 - X * 2) * (1 - X * 2)))
    assert derivative_q_at_1(ratgf(1, 1 - X * 4)).is_zero()
    d3 = derivative_q_at_1(gkcon_gf(3))
    assert d3.equivalent(ratgf(BiPoly.x_power(2, 6), (1 - X * 3) * (1 - X * 3)))


def test_derivative_matches_termwise_q_derivative():
    # each series coefficient p(q) differentiated directly: p'(1) = sum i*c_i
    gf = gkcon_gf(4)
    series = gf.series(7)
    d = derivative_q_at_1(gf).series(7)
    for p, dp in zip(series, d):
        assert dp == sum(i * c for i, c in enumerate(p.coeffs))


def test_rational_arithmetic():
    a = ratgf(1, 1 - X)
    b = ratgf(1, 1 + X)
    # 1/(1-x) + 1/(1+x) = 2/(1-x^2)
    assert (a + b).equivalent(ratgf(2, 1 - X * X))
    assert (a * b).equivalent(ratgf(1, 1 - X * X))
    assert (a - a).is_zero()
    assert a.divide(b).equivalent(ratgf(1 + X, 1 - X))
