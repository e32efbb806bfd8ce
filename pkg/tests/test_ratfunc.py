import pytest
from hypothesis import given
from hypothesis import strategies as st

from carlitz_tate import LaurentSeries, RationalFunction, TateElement, get_context

C3 = get_context(3)


def R(text, s=0):
    return RationalFunction.parse(C3, text, s)


def test_parse_and_reduce():
    r = R("(θ^2-1)/(θ-1)")
    assert r == R("θ+1") and r.is_polynomial()
    assert R("2θ") == R("2*θ")
    assert str(R("1/(θ^3-θ)")) == "(1)/(θ^3 + 2θ)"
    assert R("(2θ+1)/(2θ)").den == {(1,): 1}
    assert R("t1*t2", 2).has_t() and not R("θ^2").has_t()
    for bad in ("θ +", "x", "θ^θ", "1.5", "t3"):
        with pytest.raises(ValueError):
            R(bad, 2)
    with pytest.raises(ZeroDivisionError):
        R("1/(θ-θ)")


def test_constants():
    assert R("4").constant_value() == 1
    assert R("2").in_fp()
    g = R("g")
    assert g.is_constant() and not g.in_fp()
    with pytest.raises(ValueError):
        R("θ").constant_value()


def test_mu_and_tau():
    assert R("(t-θ)/(θ+1)", 1).mu(1) == R("(t-θ^3)/(θ^3+1)", 1)
    assert R("g").mu(2) == R("g")
    assert R("θ").tau(2) == R("θ^9")


def test_expansions():
    r = R("(θ^2+1)/(θ^3+2θ)")
    e = r.to_laurent(10)
    assert (e * LaurentSeries.from_poly(C3, [0, 2, 0, 1])).agrees(LaurentSeries.from_poly(C3, [1, 0, 1]), 8)
    x = R("1/(θ-t)", 1).to_tate(6)
    assert (x * R("θ-t", 1).to_tate()).agrees(TateElement.one(C3, 1), 5)
    with pytest.raises(ValueError):
        R("1/θ").to_tate()


def polys():
    return st.lists(st.integers(0, 2), min_size=1, max_size=4).map(
        lambda cs: RationalFunction.from_theta_poly(C3, cs))


@given(polys(), polys(), polys())
def test_field_laws(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    if not b.is_zero():
        assert (a / b) * b == a
        assert ((a / b).to_laurent(12) * b.to_laurent(12 + 4)).agrees(a.to_laurent(12), 8)
    assert (a - a).is_zero()
    assert (a * b).mu(1) == a.mu(1) * b.mu(1)
