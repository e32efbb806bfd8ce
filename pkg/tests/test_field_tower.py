import itertools

import pytest

from carlitz_tate import FieldElement, context_for_q, enumerate_monic, frobenius, get_context, zeta_ram
from carlitz_tate.field_tower import (poly_divmod, poly_gcd, poly_is_irreducible, poly_mul, poly_powmod,
                                      poly_trim)


def naive_mul(ctx, a, b):
    """Schoolbook product of digit vectors reduced by the modulus (independent of the log tables)."""
    p, n = ctx.p, ctx.deg
    da = [(a // p ** i) % p for i in range(n)]
    db = [(b // p ** i) % p for i in range(n)]
    prod = [0] * (2 * n - 1)
    for i, x in enumerate(da):
        for j, y in enumerate(db):
            prod[i + j] = (prod[i + j] + x * y) % p
    mod = ctx.modulus
    for k in range(2 * n - 2, n - 1, -1):
        c = prod[k]
        if c:
            for i in range(n + 1):
                prod[k - n + i] = (prod[k - n + i] - c * mod[i]) % p
    return sum(prod[i] * p ** i for i in range(n))


@pytest.mark.parametrize("p,e", [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1)])
def test_multiplication_matches_schoolbook(p, e):
    ctx = get_context(p, e)
    for a in range(ctx.Q):
        for b in range(ctx.Q):
            assert ctx.mul(a, b) == naive_mul(ctx, a, b)


@pytest.mark.parametrize("p,e", [(2, 1), (3, 1), (2, 2), (5, 1)])
def test_field_axioms_exhaustive(p, e):
    ctx = get_context(p, e)
    for a in range(1, ctx.Q):
        assert ctx.mul(a, ctx.inv(a)) == 1
        assert ctx.add(a, ctx.neg(a)) == 0
    for a, b in itertools.product(range(ctx.Q), repeat=2):
        assert ctx.frob(ctx.add(a, b)) == ctx.add(ctx.frob(a), ctx.frob(b))
        assert ctx.frob(ctx.mul(a, b)) == ctx.mul(ctx.frob(a), ctx.frob(b))


@pytest.mark.parametrize("p,e", [(2, 1), (3, 1), (2, 2), (5, 1)])
def test_frobenius_round_trip_and_power(p, e):
    ctx = get_context(p, e)
    for a in range(ctx.Q):
        assert ctx.frob(ctx.frob(a, 1), -1) == a
        assert ctx.frob(ctx.frob(a, -1), 1) == a
        assert ctx.frob(a, 1) == ctx.pow(a, p)


def test_frobenius_examples(ctx3):
    assert frobenius(FieldElement(ctx3, 1), 5) == FieldElement(ctx3, 1)
    assert frobenius(FieldElement(ctx3, 2), 1) == FieldElement(ctx3, 2)
    g = FieldElement(ctx3, ctx3.parse("g"))
    assert frobenius(frobenius(g, -1), 1) == g


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9, 11, 13, 16])
def test_zeta_ram(q):
    ctx = context_for_q(q)
    z = zeta_ram(ctx)
    assert ctx.add(ctx.pow(z.v, q - 1), 1) == 0
    # smallest code with the property
    assert all(ctx.pow(x, q - 1) != ctx.minus_one for x in range(1, z.v))


def test_zeta_ram_examples():
    assert zeta_ram(get_context(2)).v == 1
    z3 = zeta_ram(get_context(3))
    assert z3 ** 2 == FieldElement(get_context(3), 2)  # ζ² = -1, order 4
    assert z3 ** 4 == FieldElement(get_context(3), 1)
    c5 = get_context(5)
    assert zeta_ram(c5) ** 4 == FieldElement(c5, c5.minus_one)


def test_fq_subfield(ctx):
    assert len(ctx.fq) == ctx.q
    assert all(ctx.in_fq(ctx.add(a, b)) and ctx.in_fq(ctx.mul(a, b)) for a in ctx.fq for b in ctx.fq)


def test_enumerate_monic_examples(ctx3, ctx2):
    assert list(enumerate_monic(ctx3, 0)) == [(1,)]
    assert list(enumerate_monic(ctx3, 1)) == [(0, 1), (1, 1), (2, 1)]
    assert sorted(enumerate_monic(ctx2, 2)) == sorted([(0, 0, 1), (1, 0, 1), (0, 1, 1), (1, 1, 1)])
    with pytest.raises(ValueError):
        list(enumerate_monic(ctx3, -1))


@pytest.mark.parametrize("q", [2, 3])
@pytest.mark.parametrize("d", range(7))
def test_enumerate_monic_counts(q, d):
    ctx = context_for_q(q)
    polys = list(enumerate_monic(ctx, d))
    assert len(polys) == len(set(polys)) == q ** d
    assert all(len(a) == d + 1 and a[-1] == 1 and all(ctx.in_fq(c) for c in a) for a in polys)


def test_enumerate_monic_order_is_base_q_counting(ctx3):
    order = [a[:-1][::-1] for a in enumerate_monic(ctx3, 2)]
    assert order == sorted(order)


def test_parse_fmt_round_trip(ctx):
    for a in range(ctx.Q):
        assert ctx.parse(ctx.fmt(a)) == a


def test_config_moduli_irreducible(ctx):
    cfg = ctx.config
    js = cfg.to_json()
    assert js["p"] == ctx.p and js["e"] == ctx.e
    assert poly_is_irreducible(get_context(ctx.p, 1), tuple(cfg.subfield_modulus)) or ctx.e == 1


def test_rejects_bad_parameters():
    with pytest.raises(ValueError):
        get_context(4, 1)
    with pytest.raises(ValueError):
        context_for_q(6)
    with pytest.raises(ValueError):
        get_context(17, 1)  # q^2 > 256


def test_polynomial_helpers(ctx3):
    a = (1, 0, 1)  # θ² + 1, irreducible over F_3
    b = (2, 1)     # θ + 2
    qt, r = poly_divmod(ctx3, poly_mul(ctx3, a, b), b)
    assert qt == a and r == ()
    assert poly_gcd(ctx3, poly_mul(ctx3, a, b), a) == a
    assert poly_is_irreducible(ctx3, a)
    assert not poly_is_irreducible(ctx3, poly_mul(ctx3, b, b))
    assert poly_trim((1, 2, 0, 0)) == (1, 2)
    # θ^9 ≡ θ mod an irreducible quadratic over F_3
    assert poly_powmod(ctx3, (0, 1), 9, a) == (0, 1)
