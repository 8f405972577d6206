from functools import reduce

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from carlitz_forms.algebra import PolyA, RatK, ctx_for_q, is_irreducible, monic_enumerate
from carlitz_forms.carlitz import AdditivePoly, carlitz_exp, carlitz_factorials, carlitz_poly, torsion_exp
from carlitz_forms.errors import DomainError

from strategies import polys


def _apply(ap: AdditivePoly, x: PolyA) -> PolyA:
    q = ap.ctx.q
    return reduce(lambda acc, ic: acc + ic[1] * x ** (q ** ic[0]), enumerate(ap.coeffs), PolyA(ap.ctx))


def _carlitz_action(a: PolyA, x: PolyA) -> PolyA:
    """C_a(x) by iterating C_theta(y) = theta*y + y^q directly on elements of A."""
    ctx = a.ctx
    T = PolyA.theta(ctx)
    out = PolyA(ctx)
    y = x
    for coeff in a.c.tolist():
        out = out + y.scale(coeff)
        y = T * y + y**ctx.q
    return out


def test_carlitz_theta_and_theta_squared(f3):
    T = PolyA.theta(f3)
    assert carlitz_poly(T).coeffs == (T, PolyA.const(f3, 1))
    assert carlitz_poly(T * T).coeffs == (T * T, T + T**3, PolyA.const(f3, 1))


@pytest.mark.parametrize("q", [2, 3, 4])
@given(data=st.data())
@settings(max_examples=25, deadline=None)
def test_carlitz_poly_matches_direct_action(q, data):
    ctx = ctx_for_q(q)
    a = data.draw(polys(ctx, 3))
    x = data.draw(polys(ctx, 2))
    assert _apply(carlitz_poly(a), x) == _carlitz_action(a, x)


@given(data=st.data())
@settings(max_examples=25, deadline=None)
def test_carlitz_is_a_ring_homomorphism(data):
    ctx = ctx_for_q(3)
    a, b = data.draw(polys(ctx, 2)), data.draw(polys(ctx, 2))
    assert carlitz_poly(a * b) == carlitz_poly(a).compose(carlitz_poly(b))
    assert carlitz_poly(a + b) == carlitz_poly(a) + carlitz_poly(b)


@pytest.mark.parametrize("q,i", [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (4, 1), (4, 2)])
def test_carlitz_factorial_is_product_of_monics(q, i):
    ctx = ctx_for_q(q)
    _, facts, _ = carlitz_factorials(ctx, i)
    prod = reduce(lambda x, y: x * y, monic_enumerate(ctx, i))
    assert facts[i] == prod


@pytest.mark.parametrize("q", [2, 3])
def test_exponential_functional_equation(q):
    # e(theta z) = theta e(z) + e(z)^q, coefficientwise
    ctx = ctx_for_q(q)
    T = PolyA.theta(ctx)
    alphas = carlitz_exp(ctx, 6).alphas
    for i in range(1, 7):
        assert alphas[i] * RatK(T ** (q**i)) == alphas[i] * RatK(T) + alphas[i - 1] ** q


def test_torsion_exponential(f2, f3):
    T2 = PolyA.theta(f2)
    assert torsion_exp(T2).alphas == (RatK.one(f2), RatK(1, T2))
    for g in monic_enumerate(f3, 2):
        if is_irreducible(g):
            e = torsion_exp(g)
            assert e.alphas[0] == RatK.one(f3)
            assert e.alphas[-1] == RatK(1, g)
            assert len(e.alphas) == 3
    with pytest.raises(DomainError):
        torsion_exp(PolyA.theta(f3) ** 2)
