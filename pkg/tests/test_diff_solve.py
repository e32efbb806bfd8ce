import json
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from carlitz_tate import (DomainError, LaurentSeries, RationalFunction, TateElement, capital_omega, get_context,
                          solve_polylog_system, solve_tau_applied, solve_tau_inverse)
from carlitz_tate.diff_solve import OUT_OF_RANGE, uniqueness_check

C3 = get_context(3)
N = 12


def R(text, s=1, ctx=C3):
    return RationalFunction.parse(ctx, text, s)


def residual(x, g):
    """τ(x) - x + τ(g) computed independently of the report."""
    gt = g.to_tate(N + 8, 1) if isinstance(g, RationalFunction) else g
    return x.tau() - x + gt.tau()


def test_homogeneous_case():
    rep = solve_tau_inverse(R("0"), N)
    assert rep.ok and rep.x.is_zero()
    assert "F_q(t)" in rep.checks[0].detail


def test_theta_minus_two():
    g = R("θ^-2")
    rep = solve_tau_inverse(g, N, steps=True)
    assert rep.ok and rep.precision >= N
    assert len(rep.checks) == 8 and all(c.ok for c in rep.checks)
    r = residual(rep.x, g)
    assert r.is_zero() and r.precision >= N


@pytest.mark.parametrize("g", ["θ^-1", "t*θ^-1", "(t^2+1)/θ^2", "1/(θ^2+t)", "2*t*θ^-3 + θ^-1"])
def test_forcing_terms(g):
    rf = R(g)
    rep = solve_tau_inverse(rf, N)
    assert rep.ok, [c.lines() for c in rep.checks]
    assert residual(rep.x, rf).agrees(TateElement.zero(C3, 1), N)


@pytest.mark.parametrize("q", [2, 4])
def test_other_fields(q):
    from carlitz_tate import context_for_q
    ctx = context_for_q(q)
    rf = R("t*θ^-1 + θ^-2", ctx=ctx)
    rep = solve_tau_inverse(rf, 10)
    assert rep.ok


@settings(max_examples=8)
@given(st.lists(st.integers(0, 2), min_size=2, max_size=2), st.integers(1, 3), st.integers(0, 2))
def test_random_forcing(coeffs, k, tdeg):
    text = f"({coeffs[0]} + {coeffs[1]}*t^{tdeg} + 1)*θ^-{k}"
    rf = R(text)
    rep = solve_tau_inverse(rf, 10)
    assert rep.ok
    assert residual(rep.x, rf).agrees(TateElement.zero(C3, 1), 10)


def test_out_of_range():
    with pytest.raises(DomainError, match=OUT_OF_RANGE):
        solve_tau_inverse(R("θ"), N)
    with pytest.raises(DomainError):
        solve_tau_applied(R("1").to_tate(), N)


def test_uniqueness_modulo_constants():
    rep = uniqueness_check(R("θ^-2"), N)
    assert rep.ok


def test_solve_report_json():
    rep = solve_tau_inverse(R("θ^-2"), 8)
    js = json.loads(json.dumps(rep.to_json()))
    assert js["status"] == "verified" and js["precision"] == "8"
    assert js["checks"] == {"τ(x) = x - τ(g)": True}


def test_polylog_d1():
    rep = solve_polylog_system([1], [R("1")], N)
    assert rep.ok
    M = rep.matrix(1)
    Om = capital_omega(C3, N)
    assert M[0][0].agrees(Om, N)
    assert M[1][1].agrees(TateElement.one(C3, 1), N)
    assert M[0][1] is None


def test_polylog_d2_entrywise():
    rep = solve_polylog_system([1, 1], [R("1"), R("1")], N)
    assert rep.ok, "\n".join(rep.report().lines())
    M = rep.matrix(2)
    Om = capital_omega(C3, N + 4)
    assert M[0][0].agrees(Om ** 2, N)
    assert M[1][1].agrees(Om, N)
    assert M[2][2].agrees(TateElement.one(C3, 1), N)
    assert all(M[i][j] is None for i in range(3) for j in range(3) if j > i)
    # independent re-check of one off-diagonal relation
    tq = R("t - θ^3").to_tate()
    lhs = M[1][0]
    rhs = tq ** 2 * M[1][0].tau() + tq * M[0][0].tau()
    assert lhs.agrees(rhs, N - 4)
    names = [c.name for c in rep.checks]
    assert "x[2,0] relation" in names


def test_polylog_rejects_bad_input():
    with pytest.raises(ValueError):
        solve_polylog_system([], [], N)
    with pytest.raises(ValueError):
        solve_polylog_system([0], [R("1")], N)


def test_solution_is_not_trivially_zero():
    rep = solve_tau_inverse(R("θ^-2"), N)
    assert not rep.x.is_zero()
    assert isinstance(rep.x.coefficient((0,)), LaurentSeries)
    assert rep.precision == Fraction(N)
