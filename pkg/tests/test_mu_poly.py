import json
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from carlitz_tate import (DigitPolynomial, FieldRing, MuPolynomial, RationalFunction, RationalRing, TateElement,
                          classify, context_for_q, digit_multiply, evaluate, get_context, omega, phi_to_mu,
                          reduce_mod_P, shift, torsion_point, twist_coefficients)
from carlitz_tate.mu_poly import (CRITICAL_CANDIDATE, REGULAR_BY_DEPTH_ZERO, TAME, UNKNOWN, carry_add, digits,
                                  phi_monomial, undigits)

C3 = get_context(3)
N = 12


def P(text, n=1, s=1, ctx=C3):
    return MuPolynomial.parse(ctx, text, n, s)


def omega_relation(ctx=C3):
    return P("m(X1) - (t-θ)*X1", ctx=ctx)


# -- construction and text ----------------------------------------------------------------

def test_parse_and_structure():
    f = P("m(X1) - (t-θ)*X1")
    assert f.depth == 1 and f.n == 1 and f.s == 1
    g = P("X1^2 * m2(X1) + θ", n=1, s=0)
    assert g.depth == 2
    assert g.exponent_table(((((0, 0), 2), ((0, 2), 1)))) == [[2, 0, 1]]
    assert P("X1*X2", n=2, s=0).n == 2
    assert str(P("2*X1^2*m(X1)", s=0)) == "2 * X1^2 * m(X1)"
    with pytest.raises(ValueError):
        MuPolynomial(C3, 1, {((((0, 0), -1),)): RationalFunction.constant(C3, 1)})


def test_arithmetic_and_json_round_trip():
    f = omega_relation()
    assert f - f == MuPolynomial(C3, 1, {}, 1)
    assert (f * f) == f ** 2
    assert f + 0 == f
    js = json.loads(json.dumps(f.to_json()))
    assert js["symbols"] == 1 and js["depth"] == 1
    assert MuPolynomial.from_json(C3, js, 1) == f


# -- evaluation ----------------------------------------------------------------------------

def test_evaluate_examples():
    w = omega(C3, N + 2)
    assert evaluate(P("X1"), [w], N).agrees(w, N)
    res = evaluate(omega_relation(), [w], N)
    assert res.is_zero() and res.precision == N
    crit = P("m(X1) - X1^3", s=0)
    for c in range(C3.Q):
        assert evaluate(crit, [c], N).is_zero()


def test_evaluate_rational_coefficient():
    f = P("(1/(θ-t))*X1")
    x = TateElement.one(C3, 1)
    got = evaluate(f, [x], 8)
    expect = RationalFunction.parse(C3, "1/(θ-t)", 1).to_tate(8)
    assert got.agrees(expect, 8)


def test_twist_examples():
    f = P("2*X1*m(X1) + X1^2", s=0)
    assert twist_coefficients(f) == f
    assert twist_coefficients(P("(t-θ)*X1")) == P("(t-θ^3)*X1")
    # Z(P^μ) = μ(Z(P))
    w = omega(C3, N)
    twisted = twist_coefficients(omega_relation())
    assert evaluate(twisted, [w.mu(1)], N).is_zero()


def test_shift_examples():
    assert shift(P("X1", s=0)) == P("m(X1)", s=0)
    sh = shift(omega_relation())
    assert sh == P("m2(X1) - (t-θ^3)*m(X1)")
    assert sh.depth == omega_relation().depth + 1
    w = omega(C3, N)
    assert evaluate(sh, [w], N).is_zero()


def test_zero_sets_on_torsion_points():
    # C_θ(X) = θX + X^q is a μ-polynomial (e = 1); torsion points of θ are zeros, as are their twists
    ct = P("θ*X1 + X1^3", s=0)
    x = torsion_point(RationalFunction.parse(C3, "θ", 0), 0, N)
    assert evaluate(ct, [x], N).is_zero()
    assert evaluate(twist_coefficients(ct), [x.mu(1)], 3 * N).is_zero()
    assert evaluate(shift(ct), [x], N).is_zero()


# -- classification ------------------------------------------------------------------------

def test_classify_examples():
    assert classify(omega_relation()) == TAME
    assert classify(P("m(X1) - X1^3", s=0)) == CRITICAL_CANDIDATE
    assert classify(P("X1^2 + θ*X1 + 1", s=0)) == REGULAR_BY_DEPTH_ZERO
    assert classify(P("m(X1) - X1^4", s=0)) == UNKNOWN
    assert classify(P("m(X1)*X2^3 - X1^3*m(X2)", n=2, s=0)) == CRITICAL_CANDIDATE
    with pytest.raises(ValueError):
        classify(MuPolynomial(C3, 1, {}))


@st.composite
def mu_polys(draw, p=3, max_depth=2, max_exp=6):
    terms = {}
    for _ in range(draw(st.integers(1, 4))):
        factors = {(0, j): draw(st.integers(0, max_exp)) for j in range(max_depth + 1)}
        mono = tuple(sorted((k, e) for k, e in factors.items() if e))
        terms[mono] = RationalFunction.constant(C3, draw(st.integers(1, 2)))
    return MuPolynomial(C3, 1, terms)


@given(mu_polys())
def test_classify_monotone(f):
    if f.is_zero():
        return
    if classify(f) == TAME:
        assert all(e < 3 for mono in f.terms for _, e in mono)


# -- reduction modulo the Frobenius ideal ----------------------------------------------------

def test_reduce_examples():
    assert reduce_mod_P(P("X1^4", s=0)) == P("X1*m(X1)", s=0)
    assert reduce_mod_P(P("X1^9", s=0)) == P("m2(X1)", s=0)
    assert reduce_mod_P(P("m(X1)^3*X1^5", s=0)) == P("X1^2*m(X1)*m2(X1)", s=0)
    with pytest.raises(ValueError):
        reduce_mod_P(P("X1*X2", n=2, s=0))


def weight(mono, p):
    return sum(e * p ** j for (_, j), e in mono)


@given(mu_polys())
def test_reduce_idempotent_and_weight_preserving(f):
    r = reduce_mod_P(f)
    assert reduce_mod_P(r) == r
    assert all(e < 3 for mono in r.terms for _, e in mono)
    assert {weight(m, 3) for m in r.terms} <= {weight(m, 3) for m in f.terms}


@given(mu_polys(max_depth=1, max_exp=5))
def test_evaluation_compatible_with_reduction(f):
    r = reduce_mod_P(f)
    for c in range(C3.Q):
        assert evaluate(f, [c], 4).agrees(evaluate(r, [c], 4))


# -- digit ring ------------------------------------------------------------------------------

def test_digits_and_carries():
    assert digits(0, 3) == () and digits(5, 3) == (2, 1)
    assert undigits((2, 1), 3) == 5
    k, carries = carry_add((2, 2), (1,), 3)
    assert k == (0, 0, 1) and carries == (1, 1)
    for a in range(60):
        for b in range(60):
            assert undigits(carry_add(digits(a, 2), digits(b, 2), 2)[0], 2) == a + b


def test_digit_product_example():
    ring = FieldRing(C3)
    y2 = DigitPolynomial.monomial(ring, 2)
    assert y2 * y2 == DigitPolynomial.monomial(ring, 4)
    assert str(y2 * y2) == "Y0*Y1"
    one = DigitPolynomial.monomial(ring, 0)
    f = DigitPolynomial(ring, {1: 2, 7: 5})
    assert f * one == f
    with pytest.raises(ValueError):
        f * DigitPolynomial.monomial(RationalRing(C3), 0)


@pytest.mark.parametrize("p", [2, 3])
def test_phi_multiplicative_brute_force(p):
    ctx = get_context(p)
    for i in range(p ** 3 + 1):
        for j in range(p ** 3 + 1):
            assert reduce_mod_P(phi_monomial(ctx, i) * phi_monomial(ctx, j)) == phi_monomial(ctx, i + j)


def rz_mul(ctx, a, b):
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = ctx.add(out[i + j], ctx.mul(x, y))
    return out


@pytest.mark.parametrize("q", [2, 3, 4])
def test_isomorphism_with_polynomial_ring(q):
    ctx = context_for_q(q)
    ring = FieldRing(ctx)
    rng = random.Random(q)
    for _ in range(20):
        a = [rng.randrange(ctx.Q) for _ in range(rng.randint(1, 21))]
        b = [rng.randrange(ctx.Q) for _ in range(rng.randint(1, 21))]
        fa, fb = DigitPolynomial.from_rz(ring, a), DigitPolynomial.from_rz(ring, b)
        prod = digit_multiply(fa, fb)
        expect = DigitPolynomial.from_rz(ring, rz_mul(ctx, a, b))
        assert prod == expect
        assert fb * fa == prod
        assert DigitPolynomial.from_rz(ring, prod.to_rz()) == prod
        c = DigitPolynomial.from_rz(ring, [rng.randrange(ctx.Q) for _ in range(5)])
        assert (fa * fb) * c == fa * (fb * c)
        assert fa * (fb + c) == fa * fb + fa * c


def test_phi_to_mu_rational_ring():
    ring = RationalRing(C3, 1)
    f = DigitPolynomial(ring, {4: RationalFunction.parse(C3, "t+θ", 1), 0: ring.one})
    mu = phi_to_mu(f)
    assert mu == P("(t+θ)*X1*m(X1) + 1")
    assert classify(mu) == TAME
    g = f * f
    assert reduce_mod_P(phi_to_mu(f) * phi_to_mu(f)) == phi_to_mu(g)
