import json
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from carlitz_tate import (IndistinguishableFromZero, LaurentSeries, PrecisionError, RationalFunction,
                          ZeroDivisorError, context_for_q, expand_rational)
from carlitz_tate.laurent import from_lattice, to_lattice

CTXS = {q: context_for_q(q) for q in (2, 3, 4, 5)}


@st.composite
def series(draw, q=3, exact=None, nonzero=False):
    """Random series on the lattice; returns (series, list of (k, code)) with k the lattice index."""
    ctx = CTXS[q]
    start = draw(st.integers(-12, 12))
    data = draw(st.lists(st.integers(0, ctx.Q - 1), min_size=1 if nonzero else 0, max_size=16))
    if nonzero:
        data[0] = data[0] or 1
    end = start + len(data)
    is_exact = draw(st.booleans()) if exact is None else exact
    N = None if is_exact else end + draw(st.integers(0 if not nonzero else 1, 8))
    terms = {Fraction(start + i, ctx.D): c for i, c in enumerate(data) if c}
    Nf = None if N is None else Fraction(N, ctx.D)
    return LaurentSeries.from_terms(ctx, terms, Nf)


def naive_mul(a, b):
    ctx = a.ctx
    out = {}
    for j1, c1 in a.terms().items():
        for j2, c2 in b.terms().items():
            out[j1 + j2] = ctx.add(out.get(j1 + j2, 0), ctx.mul(c1, c2))
    return out


def with_noise(a, extra, seed):
    """Same known terms, plus arbitrary terms in the window [N, N + extra)."""
    if a.is_exact:
        return a
    ctx = a.ctx
    terms = dict(a.terms())
    step = Fraction(1, ctx.D)
    for i in range(extra * ctx.D):
        terms[a.precision + i * step] = (seed * 7 + i * 13) % ctx.Q
    return LaurentSeries.from_terms(ctx, terms, a.precision + extra)


# -- spec-style examples -----------------------------------------------------------------

def test_add_examples(ctx3):
    a = LaurentSeries.from_terms(ctx3, {1: 1}, 5)
    z = LaurentSeries.zero(ctx3, 7)
    assert (a + z).agrees(a) and (a + z).precision == 5
    th = LaurentSeries.theta_power(ctx3, 1)
    s = th + th * 2
    assert s.is_zero() and s.is_exact
    b = LaurentSeries.from_terms(ctx3, {4: 1}, 3)
    r = a + b
    assert r.precision == 3 and r.terms() == {Fraction(1): 1}


def test_mul_examples(ctx3):
    a = LaurentSeries.from_terms(ctx3, {-2: 1, Fraction(1, 2): 2}, 9)
    assert a * LaurentSeries.one(ctx3) == a
    x = LaurentSeries.from_poly(ctx3, [0, 1, 0, 2])  # θ - θ³
    prod = x * x.invert(20)
    assert prod.agrees(LaurentSeries.one(ctx3)) and prod.precision == 17


def test_invert_examples(ctx3):
    assert LaurentSeries.one(ctx3).invert() == LaurentSeries.one(ctx3)
    x = LaurentSeries.from_poly(ctx3, [0, 2, 0, 1])  # θ³ - θ
    inv = x.invert(12)
    assert inv.terms() == {Fraction(k): 1 for k in (3, 5, 7, 9, 11)}
    assert inv.precision == 12
    with pytest.raises(PrecisionError):
        x.invert()
    with pytest.raises(ZeroDivisorError, match="zero divisor at working precision"):
        LaurentSeries.zero(ctx3, 4).invert()


def test_mu_examples(ctx3):
    th = LaurentSeries.theta_power(ctx3, 1)
    assert th.mu(1) == LaurentSeries.theta_power(ctx3, 3)
    a = LaurentSeries.from_terms(ctx3, {1: 1, 2: 1})
    assert a.mu(1) == LaurentSeries.from_terms(ctx3, {3: 1, 6: 1})
    assert a.mu(1).mu(-1) == a
    with pytest.raises(ValueError, match="not in the image"):
        LaurentSeries.from_terms(ctx3, {1: 1}).mu(-1)


def test_expand_rational_examples(ctx3):
    r = RationalFunction.parse(ctx3, "1/θ")
    assert expand_rational(r, 10).terms() == {Fraction(1): 1}
    r = RationalFunction.parse(ctx3, "1/(θ^3-θ)")
    e = expand_rational(r, 8)
    assert e.terms() == {Fraction(3): 1, Fraction(5): 1, Fraction(7): 1}
    assert e.agrees(LaurentSeries.from_poly(ctx3, [0, 2, 0, 1]).invert(8))
    r2 = RationalFunction.parse(ctx3, "(θ^2+1)/(θ^4+2θ+2)")
    prod = expand_rational(r2, 10) * expand_rational(1 / r2, 10)
    assert prod.agrees(LaurentSeries.one(ctx3))


def test_valuation_of_empty_is_flagged(ctx3):
    z = LaurentSeries.zero(ctx3, 4)
    with pytest.raises(IndistinguishableFromZero):
        z.valuation()
    with pytest.raises(PrecisionError):
        LaurentSeries.from_terms(ctx3, {1: 1}, 2).coefficient(2)


def test_lattice_conversions(ctx4):
    assert to_lattice(ctx4, Fraction(5, 3)) == 5
    assert from_lattice(ctx4, 5) == Fraction(5, 3)
    with pytest.raises(ValueError):
        to_lattice(ctx4, Fraction(1, 2))


def test_text_and_json(ctx3):
    a = LaurentSeries.from_terms(ctx3, {Fraction(-3, 2): 1, 2: 2}, 5)
    assert str(a) == "θ^(3/2) + 2θ^-2 + O(θ^-5)"
    js = a.to_json()
    assert js == {"lattice_den": 2, "precision": "5",
                  "terms": [{"exp": "-3/2", "coeff": "1"}, {"exp": "2", "coeff": "2"}]}
    assert LaurentSeries.from_json(ctx3, json.loads(json.dumps(js))) == a


# -- properties ------------------------------------------------------------------------------

@given(series(), series())
def test_mul_matches_naive_convolution(a, b):
    prod = a * b
    expect = naive_mul(a, b)
    if prod.is_exact:
        assert prod.terms() == {j: c for j, c in expect.items() if c}
    else:
        assert prod.terms() == {j: c for j, c in expect.items() if c and j < prod.precision}


@given(series(nonzero=True), series(nonzero=True))
def test_valuation_additive(a, b):
    assert (a * b).valuation() == a.valuation() + b.valuation()


@given(series(), series(), st.integers(0, 5))
def test_mul_and_add_precision_sound(a, b, seed):
    a2, b2 = with_noise(a, 4, seed), with_noise(b, 4, seed + 1)
    for op in (lambda x, y: x * y, lambda x, y: x + y, lambda x, y: x - y):
        lo, hi = op(a, b), op(a2, b2)
        assert hi.agrees(lo, lo.precision)


@given(series(nonzero=True, exact=False), st.integers(0, 5))
def test_invert_precision_sound(a, seed):
    lo = a.invert()
    assert lo.precision == a.precision - 2 * a.valuation()
    hi = with_noise(a, 4, seed).invert()
    assert hi.agrees(lo, lo.precision)
    assert (a * lo).agrees(LaurentSeries.one(a.ctx))


@given(series(nonzero=True, exact=False))
def test_double_inverse(a):
    assert a.invert().invert().agrees(a)


@given(series(), series(), st.integers(1, 2))
def test_mu_is_ring_morphism(a, b, m):
    assert (a * b).mu(m) == a.mu(m) * b.mu(m)
    assert (a + b).mu(m) == a.mu(m) + b.mu(m)


@given(series(nonzero=True))
def test_mu_scales_valuation(a):
    assert a.mu(1).valuation() == a.ctx.p * a.valuation()
    if a.precision is not None:
        assert a.mu(1).precision == a.ctx.p * a.precision


@pytest.mark.parametrize("q", sorted(CTXS))
@given(data=st.data())
def test_lattice_closure(q, data):
    a = data.draw(series(q))
    b = data.draw(series(q, nonzero=True, exact=False))
    out = (a * b + b.invert()).mu(1) - a
    D = CTXS[q].D
    assert all((j * D).denominator == 1 for j in out.terms())
    assert all(c != 0 for c in out.terms().values())
    if out.precision is not None:
        assert all(j < out.precision for j in out.terms())
