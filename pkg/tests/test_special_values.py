from fractions import Fraction

import pytest

from carlitz_tate import (BudgetExceeded, LaurentSeries, RationalFunction, TateElement, ZetaRequest, capital_omega,
                          context_for_q, enumerate_monic, euler_carlitz_check, exp_carlitz, omega, omega_inverse,
                          omega_product, pi_bar, torsion_point, verify_theorem5, zeta, zeta_degree_bound,
                          zeta_term_count)
from carlitz_tate.special_values import (as_polynomial, euler_product_check, omega_product_inverse,
                                         rational_reconstruction, residue_formula, residue_via_tau,
                                         weierstrass_check, zeta_request)

CTXS = {q: context_for_q(q) for q in (2, 3, 4, 5)}
C3 = CTXS[3]


def th(ctx, e):
    return LaurentSeries.theta_power(ctx, e)


def R(ctx, text, s=1):
    return RationalFunction.parse(ctx, text, s)


def naive_pi(ctx, N):
    """ζ θ^(q/(q-1)) Π (1 - θ^(1-q^i))^(-1) built from LaurentSeries operations."""
    q = ctx.q
    acc = LaurentSeries.constant(ctx, ctx.zeta) * th(ctx, Fraction(q, q - 1))
    work = N + Fraction(2 * q, q - 1)
    i = 1
    while q ** i - 1 < work + 2:
        acc = acc * (LaurentSeries.one(ctx) - th(ctx, 1 - q ** i)).invert(work)
        i += 1
    return acc.truncate(N)


def naive_omega(ctx, N):
    """ζ θ^(1/(q-1)) Π_{i>=0} (1 - t/θ^(q^i))^(-1) from TateElement operations."""
    q = ctx.q
    t = TateElement.variable(ctx, 0, 1)
    acc = TateElement.from_laurent(LaurentSeries.constant(ctx, ctx.zeta) * th(ctx, Fraction(1, q - 1)), 1)
    i = 0
    while q ** i < N + 2:
        fac = TateElement.one(ctx, 1) - t * th(ctx, -q ** i)
        acc = acc * fac.invert(N + 2)
        i += 1
    return acc.truncate(N)


def naive_zeta(ctx, n, N, s=0, evaluation=None, extra=0):
    """Direct enumeration with d_max = max{d : n d < N} (plus ``extra`` degrees)."""
    dmax = max(d for d in range(0, 64) if n * d < N) + extra
    ks = evaluation or ()
    free = s - len(ks)
    acc = TateElement.zero(ctx, free, N)
    ts = [TateElement.variable(ctx, i, free) for i in range(free)]
    for d in range(dmax + 1):
        for a in enumerate_monic(ctx, d):
            A = LaurentSeries.from_poly(ctx, a)
            term = TateElement.from_laurent(A.invert(N + n * d) ** n if n else LaurentSeries.one(ctx), free)
            for k in ks:
                term = term * TateElement.from_laurent(A.tau(k), free)
            for t in ts:
                at = sum((t ** i * c for i, c in enumerate(a) if c), TateElement.zero(ctx, free))
                term = term * at
            acc = acc + term.truncate(N)
    return acc.to_laurent() if free == 0 else acc


def test_zeta_matches_tate_form_of_naive(ctx3):
    # the oracle itself: invert(A)^n equals the inverse of A^n
    A = LaurentSeries.from_poly(ctx3, (1, 2, 1))
    assert (A.invert(10) ** 2).agrees((A ** 2).invert(10))


# -- π̃ and ω -----------------------------------------------------------------------------

@pytest.mark.parametrize("q", sorted(CTXS))
def test_pi_bar(q):
    ctx = CTXS[q]
    pi = pi_bar(ctx, 16)
    assert pi.valuation() == -Fraction(q, q - 1)
    assert pi.agrees(naive_pi(ctx, 16)) and pi.precision == 16
    assert exp_carlitz(pi, 12).is_zero()


def test_pi_bar_q2_unramified():
    ctx = CTXS[2]
    pi = pi_bar(ctx, 20)
    assert ctx.D == 1 and all(j.denominator == 1 for j in pi.terms())
    assert all(c in (0, 1) for c in pi.terms().values())


@pytest.mark.parametrize("q", [2, 3, 4])
def test_omega(q):
    ctx = CTXS[q]
    N = 14
    w = omega(ctx, N)
    assert w.agrees(naive_omega(ctx, N)) and w.precision == N
    tmt = R(ctx, "t-θ").to_tate()
    assert w.tau().agrees(tmt * omega(ctx, N + 1), N)
    assert w.agrees(torsion_point(R(ctx, "θ-t"), 0, N))
    assert (w * omega_inverse(ctx, N + Fraction(2, ctx.D))).agrees(TateElement.one(ctx, 1), N)


def test_omega_q3_leading_terms():
    w = omega(C3, 3)
    # ζ θ^(1/2) (1 + tθ^-1 + t^2θ^-2 + ...)(1 + tθ^-3 + ...)
    flat = {(e, j): c for e, ser in w.terms.items() for j, c in ser.terms().items()}
    z = C3.zeta
    assert flat[((0,), Fraction(-1, 2))] == z
    assert flat[((1,), Fraction(1, 2))] == z
    assert flat[((2,), Fraction(3, 2))] == z
    assert flat[((1,), Fraction(5, 2))] == z
    assert flat[((3,), Fraction(5, 2))] == z


def test_omega_product_relations():
    N = 10
    assert omega_product(C3, 0, N) == TateElement.one(C3, 0)
    w2 = omega_product(C3, 2, N)
    lin = R(C3, "(t1-θ)*(t2-θ)", 2).to_tate()
    assert w2.tau().agrees(lin * omega_product(C3, 2, N + 2), N)
    assert (w2 * omega_product_inverse(C3, 2, N + 2)).agrees(TateElement.one(C3, 2), N)


@pytest.mark.parametrize("q", [2, 3])
def test_capital_omega(q):
    ctx = CTXS[q]
    N = 12
    Om = capital_omega(ctx, N)
    assert Om.precision == N
    prod = Om * omega(ctx, N + Fraction(2 * q, ctx.D)).tau()
    assert prod.agrees(TateElement.one(ctx, 1), N - Fraction(q, ctx.D))
    # τ((t-θ)Ω) = Ω
    tmt = R(ctx, "t-θ").to_tate()
    assert (tmt * capital_omega(ctx, 3 * N)).tau().agrees(Om, N - 3)


@pytest.mark.parametrize("q", [2, 3, 4])
def test_residue(q):
    ctx = CTXS[q]
    N = 20
    r1, r2 = residue_formula(ctx, N), residue_via_tau(ctx, N)
    minus_pi = -pi_bar(ctx, N)
    assert r1.agrees(minus_pi, N) and r1.precision >= N
    assert r2.agrees(minus_pi, N) and r2.precision >= N


# -- zeta ---------------------------------------------------------------------------------

def test_zeta_example():
    z = zeta(C3, 1, 0, 4)
    assert z.terms() == {Fraction(0): 1, Fraction(3): 2} and z.precision == 4


@pytest.mark.parametrize("q", [2, 3, 4])
@pytest.mark.parametrize("n", [1, 2, 3])
def test_zeta_against_enumeration(q, n):
    ctx = CTXS[q]
    N = {2: 12, 3: 8, 4: 6}[q]
    assert zeta(ctx, n, 0, N).agrees(naive_zeta(ctx, n, N)) and zeta(ctx, n, 0, N).precision == N


@pytest.mark.parametrize("q,n,s,N", [(2, 1, 1, 10), (2, 1, 2, 8), (3, 1, 1, 6), (3, 2, 1, 8), (3, 1, 2, 5)])
def test_zeta_free_variables_against_extra_degrees(q, n, s, N):
    ctx = CTXS[q]
    got = zeta(ctx, n, s, N)
    assert got.agrees(naive_zeta(ctx, n, N, s, extra=2)) and got.precision == N


@pytest.mark.parametrize("n,ks", [(2, (0,)), (4, (1,)), (5, (0, 1)), (1, (0,)), (1, (1,)), (1, (0, 1)),
                                  (1, (1, 1)), (2, (1,))])
def test_zeta_evaluations_against_brute_force(n, ks):
    N = 10
    got = zeta(C3, n, len(ks), N, evaluation=ks)
    dmax = zeta_degree_bound(3, n, N, 0, ks)
    acc = LaurentSeries.zero(C3, N)
    n_eff = n - sum(3 ** k for k in ks)
    for d in range(dmax + 3):
        for a in enumerate_monic(C3, d):
            A = LaurentSeries.from_poly(C3, a)
            acc = acc + ((A ** -n_eff) if n_eff <= 0 else A.invert(N + n_eff * d) ** n_eff).truncate(N)
    assert got.agrees(acc) and got.precision == N


def test_zeta_interpolation_and_frobenius():
    N = 16
    z1 = zeta(C3, 1, 0, N)
    for n, ks in ((2, (0,)), (4, (1,)), (5, (0, 1))):
        assert zeta(C3, n, len(ks), N, evaluation=ks).agrees(z1, N)
    for n in (1, 2, 3):
        assert zeta(C3, 3 * n, 0, 3 * N).agrees(zeta(C3, n, 0, N).mu(1))


def test_goss_nonvanishing():
    for ks in ((0,), (0, 1), (1, 1), (0, 0)):
        assert not zeta(C3, 1, len(ks), 10, evaluation=ks).is_zero()


def test_zeta_budget_and_request():
    dmax = zeta_degree_bound(3, 1, 16)
    count = zeta_term_count(3, dmax)
    with pytest.raises(BudgetExceeded) as err:
        zeta(C3, 1, 0, 16, budget=count - 1)
    assert err.value.required == count
    assert zeta_request(C3, ZetaRequest(1, 0, Fraction(8))) == zeta(C3, 1, 0, 8)
    with pytest.raises(ValueError):
        ZetaRequest(0)
    with pytest.raises(ValueError):
        ZetaRequest(1, 2, Fraction(8), (0,))


def test_euler_product():
    for q in (2, 3, 4, 5):
        for deg in (1, 2, 3, 4) if q <= 3 else (1, 2):
            assert euler_product_check(CTXS[q], 1, deg).ok
    assert euler_product_check(C3, 2, 3).ok


# -- theorem 5, Euler-Carlitz ---------------------------------------------------------------

THEOREM5_Q3 = {0: "1", 1: "1", 2: "1", 3: "2"}


@pytest.mark.parametrize("s", range(4))
def test_theorem5_q3(s):
    rep = verify_theorem5(C3, s, 12)
    assert rep.ok, "\n".join(rep.lines())
    assert str(rep.witness) == THEOREM5_Q3[s]
    names = [c.name for c in rep.checks]
    if s == 3:
        assert "P_s = 0" in names and "B_s polynomial and non-zero" in names
    if s == 1:
        assert "ζ(1;1)(θ-t)ω = π̃" in names


def test_theorem5_q2_b3():
    ctx = CTXS[2]
    rep = verify_theorem5(ctx, 3, 10)
    assert rep.ok
    assert rep.witness == R(ctx, "θ + t1*t2 + t1*t3 + t2*t3", 3)


EULER_CARLITZ = {
    (2, 1): "1/(θ^2+θ)", (3, 1): "2/(θ^3+2θ)", (4, 1): "1/(θ^4+θ)", (5, 1): "4/(θ^5+4θ)",
    (2, 2): "1/(θ^4+θ^2)", (3, 2): "1/(θ^6+θ^4+θ^2)",
}


@pytest.mark.parametrize("q,k", sorted(EULER_CARLITZ))
def test_euler_carlitz(q, k):
    ctx = CTXS[q]
    rep = euler_carlitz_check(ctx, k, 16 * k)
    assert rep.ok, "\n".join(rep.lines())
    assert rep.witness == R(ctx, EULER_CARLITZ[q, k], 0)


def test_rational_reconstruction_round_trip(ctx3):
    r = R(ctx3, "(θ^2+1)/(θ^3+2θ+1)", 0)
    e = r.to_laurent(20)
    coeffs = [e.coefficient(1 + i) for i in range(19)]
    R_, T_ = rational_reconstruction(ctx3, coeffs)
    assert T_[0] == 1
    assert rational_reconstruction(ctx3, [1, 2]) is None


def test_as_polynomial(ctx3):
    assert as_polynomial(R(ctx3, "θ^2 + t*θ + 2").to_tate()) == R(ctx3, "θ^2 + t*θ + 2")
    assert as_polynomial(omega(ctx3, 6)) is None


def test_weierstrass_check(ctx3):
    rep = weierstrass_check(ctx3, th(ctx3, -1), 2, 24)
    assert rep.ok
