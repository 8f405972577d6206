import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from carlitz_forms.algebra import KVector, PolyA, RatK, ctx_for_q
from carlitz_forms.errors import DomainError, PrecisionError
from carlitz_forms.forms import delta_form, h_form, petrov_form
from carlitz_forms.hecke import (
    HeckeCtx,
    compare_report,
    decompose,
    eigen_check,
    hecke_hat,
    hecke_hat_many,
    hecke_T,
    output_trunc,
)
from carlitz_forms.useries import USeriesK


def _hat_from_goss_table(hctx, f):
    """sum_j a_j G_(j, Lambda_g)(g u), read off the recursively built Goss table."""
    ctx, g = hctx.ctx, hctx.g
    table = hctx.goss_g
    total = USeriesK.zero(ctx, hctx.out_trunc)
    for j in range(1, hctx.N):
        G = table[j]
        terms = [G.entry(i) * RatK(g**i) if i < len(G) else 0 for i in range(hctx.out_trunc)]
        total = total + USeriesK(KVector.from_elements(ctx, terms)).scale(f.coefficient(j))
    return total


def test_output_truncation():
    assert output_trunc(100, 3) == 34
    assert output_trunc(298, 3) == 100
    assert output_trunc(892, 9) == 100
    assert output_trunc(1, 9) == 1


@pytest.mark.parametrize("q", [2, 3])
def test_generating_function_matches_goss_recursion(q):
    ctx = ctx_for_q(q)
    T = PolyA.theta(ctx)
    N = 3 * q**2
    h = h_form(ctx, N)
    for g in (T, T + 1, T * T + T + (1 if q == 2 else 2)):
        hctx = HeckeCtx(g, q + 1, N)
        assert hecke_hat(hctx, h) == _hat_from_goss_table(hctx, h)


@pytest.mark.parametrize("q", [2, 3])
def test_h_and_delta_are_eigenforms(q):
    ctx = ctx_for_q(q)
    T = PolyA.theta(ctx)
    N = 3 * q**2
    h, delta = h_form(ctx, N), delta_form(ctx, N)
    for g in (T, T + 1):
        assert eigen_check(h, HeckeCtx(g, q + 1, N), g)["pass"]
        assert eigen_check(delta, HeckeCtx(g, q * q - 1, N), g ** (q - 1))["pass"]


def test_wrong_eigenvalue_is_reported(f3):
    T = PolyA.theta(f3)
    h = h_form(f3, 40)
    report = eigen_check(h, HeckeCtx(T, 4, 40), T + 1)
    assert not report["pass"] and report["first_mismatch"] == 1
    assert report["checked_window"] == 14


@given(st.sampled_from([1, 2, PolyA.theta(ctx_for_q(3)), RatK(1, PolyA.theta(ctx_for_q(3)) + 1)]))
@settings(max_examples=4, deadline=None)
def test_hecke_is_linear(lam):
    ctx = ctx_for_q(3)
    T = PolyA.theta(ctx)
    f = petrov_form(ctx, 8, 1, 28)[0]
    g = petrov_form(ctx, 8, 2, 28)[0]
    hctx = HeckeCtx(T + 1, 8, 28)
    lhs = hecke_T(hctx, f + g.scale(lam))
    assert lhs == hecke_T(hctx, f) + hecke_T(hctx, g).scale(lam)
    many = hecke_hat_many(hctx, [f, g])
    assert many[0] == hecke_hat(hctx, f) and many[1] == hecke_hat(hctx, g)


def test_hecke_input_checks(f2, f3):
    T = PolyA.theta(f3)
    hctx = HeckeCtx(T, 4, 30)
    with pytest.raises(PrecisionError):
        hecke_T(hctx, h_form(f3, 20))
    with pytest.raises(DomainError):
        hecke_T(hctx, h_form(f2, 30))
    with pytest.raises(DomainError):
        HeckeCtx(T * T, 4, 30)
    with pytest.raises(PrecisionError):
        HeckeCtx(T, 4, 0)


def test_compare_report_window(f3):
    a = USeriesK.from_coeffs(f3, [0, 1, 2, 0, 1])
    b = USeriesK.from_coeffs(f3, [0, 1, 0, 0])
    report = compare_report(a, b)
    assert report == {"pass": False, "first_mismatch": 2, "checked_window": 4, "mismatches": [2]}


def test_decomposition(f3):
    T = PolyA.theta(f3)
    dec = decompose(f3, 8, 1, [T], 60)
    assert dec.sum_check()["pass"] and dec.closed_check()["pass"]
    assert dec.f0 + dec.f1 == dec.f
    two = decompose(f3, 4, 1, [T, T + 1], 40)
    assert len(two.parts) == 4 and two.sum_check()["pass"]
    with pytest.raises(DomainError):
        two.f1
    with pytest.raises(DomainError):
        decompose(f3, 4, 1, [T, T], 20)
    with pytest.raises(DomainError):
        decompose(f3, 5, 2, [T], 20)
    with pytest.raises(DomainError):
        decompose(f3, 4, 1, [], 20)
