import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from carlitz_forms.algebra import PolyA, RatK, ctx_for_q, is_irreducible, monic_enumerate
from carlitz_forms.carlitz import carlitz_exp, torsion_exp
from carlitz_forms.errors import DomainError, PrecisionError
from carlitz_forms.goss import binom_mod_p, goss_table, power_sums, verify_goss_identity
from carlitz_forms.useries import USeriesK


def _genfunc_oracle(lattice, n_max):
    """G_j from sum_j G_j(X) Y^j = X Y / (1 - X e(Y)), as dicts {X-degree: RatK}.

    Expanding the geometric series: X Y sum_m X^m e(Y)^m, so the coefficient
    of X^(m+1) Y^j is [Y^(j-1)] e(Y)^m.
    """
    ctx = lattice.ctx
    q = ctx.q
    e = [RatK.zero(ctx)] * n_max
    for i, a in enumerate(lattice.alphas):
        if q**i < n_max:
            e[q**i] = a

    def mul(x, y):
        out = [RatK.zero(ctx)] * n_max
        for i, a in enumerate(x):
            if a.is_zero():
                continue
            for j in range(n_max - i):
                if not y[j].is_zero():
                    out[i + j] = out[i + j] + a * y[j]
        return out

    power = [RatK.one(ctx)] + [RatK.zero(ctx)] * (n_max - 1)  # e^0
    G = {j: {} for j in range(1, n_max + 1)}
    for m in range(n_max):
        for j in range(1, n_max + 1):
            c = power[j - 1] if j - 1 < n_max else RatK.zero(ctx)
            if not c.is_zero():
                G[j][m + 1] = c
        power = mul(power, e)
    return G


@pytest.mark.parametrize("q", [2, 3, 4])
def test_goss_matches_generating_function(q):
    ctx = ctx_for_q(q)
    T = PolyA.theta(ctx)
    n_max = 30
    for lattice in (carlitz_exp(ctx, 4), torsion_exp(T)):
        table = goss_table(lattice, n_max)
        oracle = _genfunc_oracle(lattice, n_max)
        for j in range(1, n_max + 1):
            got = {i: c for i, c in enumerate(table.coefficients(j)) if not c.is_zero()}
            assert got == oracle[j], (q, j)


def test_small_goss_polynomials(f3):
    table = goss_table(carlitz_exp(f3, 1), 4)
    a1 = carlitz_exp(f3, 1).alphas[1]
    assert table.coefficients(3) == [RatK.zero(f3)] * 3 + [RatK.one(f3)]
    assert table.coefficients(4) == [RatK.zero(f3)] * 2 + [a1, RatK.zero(f3), RatK.one(f3)]
    assert table[0].is_zero() and table[-2].is_zero()
    with pytest.raises(PrecisionError):
        table[5]


def test_goss_table_errors(f3):
    with pytest.raises(DomainError):
        goss_table(carlitz_exp(f3, 2), 0)
    with pytest.raises(PrecisionError):
        goss_table(carlitz_exp(f3, 1), 40)


@given(st.integers(1, 20), st.sampled_from([2, 3]))
@settings(max_examples=20, deadline=None)
def test_frobenius_property_on_torsion_lattice(n, q):
    ctx = ctx_for_q(q)
    T = PolyA.theta(ctx)
    table = goss_table(torsion_exp(T * T + T + (1 if q == 2 else 2)), ctx.p * n)
    g = USeriesK(table[n])
    assert (g**ctx.p).truncate(ctx.p * n + 1) == USeriesK(table[ctx.p * n])


def test_x_truncation_is_exact(f3):
    lattice = carlitz_exp(f3, 3)
    full, cut = goss_table(lattice, 40), goss_table(lattice, 40, x_trunc=7)
    for n in range(1, 41):
        assert cut.coefficients(n) == full.coefficients(n)[:7]


def test_power_sums_of_theta_torsion(f2):
    # C_theta = theta x + x^2 has roots 0 and theta
    T = PolyA.theta(f2)
    sums = power_sums(T, 6)
    assert [sums[j] for j in range(1, 7)] == [T**j for j in range(1, 7)]


def test_power_sums_degree_two(f3):
    # brute force: the nonzero roots of C_g in F_9[theta]... are not in A; use the
    # symmetric function identity p_1 = -(coefficient of X^(deg-1)) instead
    T = PolyA.theta(f3)
    g = T * T + 1
    sums = power_sums(g, 3)
    assert sums[0] == PolyA.const(f3, 2)  # 8 nonzero roots, 8 = 2 mod 3
    assert sums[1] == PolyA(f3)  # C_g(X)/X has no X^7 term


@given(st.integers(0, 60), st.integers(0, 30), st.sampled_from([2, 3, 5]))
def test_binomials_mod_p(n, k, p):
    assert binom_mod_p(n, k, p) == math.comb(n, k) % p
    neg = (-1) ** k * math.comb(n + k - 1, k) if n > 0 else int(k == 0)
    assert binom_mod_p(-n, k, p) == neg % p


def test_goss_identity_on_degree_three_prime(f2):
    T = PolyA.theta(f2)
    g = T**3 + T + 1
    assert is_irreducible(g)
    for k in (1, 2, 3, 5, 7):
        assert verify_goss_identity(g, k, k + 16)


def test_goss_identity_detects_wrong_polynomial(f3, monkeypatch):
    import carlitz_forms.goss as goss

    T = PolyA.theta(f3)
    real = goss.power_sums

    def wrong(g, j_max):
        s = real(g, j_max)
        return goss.PowerSums(g, (s[0],) + tuple(x + 1 for x in s.sums[1:]))

    monkeypatch.setattr(goss, "power_sums", wrong)
    assert not verify_goss_identity(T + 1, 2, 6)


def test_goss_identity_all_small_primes():
    for q in (2, 3):
        ctx = ctx_for_q(q)
        for g in monic_enumerate(ctx, 1):
            assert all(verify_goss_identity(g, k, k + 2 * q) for k in range(1, 8))
