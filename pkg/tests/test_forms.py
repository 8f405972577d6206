import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from carlitz_forms.algebra import LaurentInf, PolyA, RatK, ctx_for_q, monic_enumerate
from carlitz_forms.errors import DomainError, PrecisionError
from carlitz_forms.forms import (
    AExpansionSpec,
    Custom,
    DivisibilityPetrov,
    Petrov,
    _digits,
    a_expansion,
    a_expansions,
    admissibility_violation,
    admissible,
    admissible_pairs,
    delta_form,
    digit_admissible,
    eisenstein_tail,
    goss_polynomial,
    h_delta_constant,
    h_form,
    petrov_form,
    zeta_partial,
)
from carlitz_forms.useries import USeriesK, compose_poly, u_sub_a


def _naive_expansion(ctx, n, coeff, trunc):
    """sum_a coeff(a) G_n(u_a), one monic a at a time."""
    G = goss_polynomial(ctx, n)
    total = USeriesK.zero(ctx, trunc)
    d = 0
    while ctx.q**d < trunc:
        for a in monic_enumerate(ctx, d):
            c = coeff(a)
            if c is not None:
                total = total + compose_poly(G, u_sub_a(a, trunc)).truncate(trunc).scale(c)
        d += 1
    return total


def test_admissibility_rules():
    assert admissible(4, 1, 3) and admissible(12, 3, 3)
    assert not admissible(8, 3, 3)  # 3 > 3^ord_3(5) = 1
    msg = admissibility_violation(5, 2, 3)
    assert msg is not None and "k-2n" in msg and "q-1" in msg
    assert "exceeds" in admissibility_violation(8, 3, 3)
    assert admissibility_violation(0, 1, 3) is not None
    assert admissible_pairs(3, 12) == [(4, 1), (6, 1), (8, 1), (8, 2), (10, 1), (12, 1), (12, 3)]


def _ceil_log(n, p):
    e = 0
    while p**e < n:
        e += 1
    return e


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_corrected_digit_equivalences(q):
    # n <= p^v  <=> digits agree through index ceil(log_p n) - 1, and
    # n <  p^v  <=> digits agree through index floor(log_p n) (the digit test used here)
    from carlitz_forms.forms import _char, _ord_p, digit_condition, power_condition

    p = _char(q)
    for k in range(2, 301):
        for n in range(1, k):
            c = _ceil_log(n, p)
            assert power_condition(k, n, p) == (_digits(k, p, c) == _digits(n, p, c))
            assert digit_condition(k, n, p) == (n < p ** _ord_p(k - n, p))


def test_digit_form_differs_exactly_at_powers_of_p():
    # the inclusive digit test and n <= p^v disagree only when n = p^v
    from carlitz_forms.forms import _ord_p, digit_condition, power_condition

    for p in (2, 3):
        for k in range(2, 200):
            for n in range(1, k):
                if power_condition(k, n, p) != digit_condition(k, n, p):
                    assert n == p ** _ord_p(k - n, p)
    assert admissible(6, 1, 3) and not digit_admissible(6, 1, 3)


@pytest.mark.parametrize("q,k,n,trunc", [(3, 4, 1, 30), (3, 8, 2, 30), (2, 5, 1, 20), (4, 5, 1, 20)])
def test_petrov_against_naive_sum(q, k, n, trunc):
    ctx = ctx_for_q(q)
    f, meta = petrov_form(ctx, k, n, trunc)
    assert meta.weight == k and meta.type == n % (q - 1) and meta.cuspidal
    assert f == _naive_expansion(ctx, n, lambda a: a ** (k - n), trunc)


def test_inadmissible_petrov_is_rejected(f3):
    with pytest.raises(DomainError, match="k-2n"):
        petrov_form(f3, 5, 2, 10)
    with pytest.raises(PrecisionError):
        a_expansion(AExpansionSpec(f3, 1, Petrov(4)), 0)
    with pytest.raises(DomainError):
        AExpansionSpec(f3, 0, Petrov(4))


def test_h_and_delta_first_terms(f2, f3):
    for ctx in (f2, f3):
        q = ctx.q
        h = h_form(ctx, 2 * q**2)
        assert h.valuation == 1 and h.coefficient(1) == RatK.one(ctx)
        delta = delta_form(ctx, 2 * q**2)
        assert delta.valuation == q - 1
        c, holds = h_delta_constant(ctx, 2 * q**2)
        assert c == RatK.one(ctx) and holds


@given(st.data())
@settings(max_examples=15, deadline=None)
def test_custom_rule_is_linear(data):
    ctx = ctx_for_q(3)
    T = PolyA.theta(ctx)
    monics = [a for d in range(3) for a in monic_enumerate(ctx, d)]
    elems = st.sampled_from([RatK(PolyA.const(ctx, 1)), RatK(T), RatK(1, T + 1), RatK(T * T, T + 2), RatK(2, T)])
    picks = data.draw(st.lists(st.tuples(st.sampled_from(monics), elems, elems), min_size=1, max_size=4, unique_by=lambda t: t[0]))
    n = data.draw(st.sampled_from([1, 2, 4]))
    left = Custom.from_mapping({a: x for a, x, _ in picks})
    right = Custom.from_mapping({a: y for a, _, y in picks})
    both = Custom.from_mapping({a: x + y for a, x, y in picks})
    fx, fy, fxy = a_expansions([AExpansionSpec(ctx, n, r) for r in (left, right, both)], 30)
    assert fx + fy == fxy
    lookup = dict((a, x) for a, x, _ in picks)
    assert fx == _naive_expansion(ctx, n, lookup.get, 30)


def test_custom_rule_rejects_non_monic(f3):
    T = PolyA.theta(f3)
    with pytest.raises(DomainError):
        a_expansion(AExpansionSpec(f3, 1, Custom.from_mapping({2 * T: RatK.one(f3)})), 10)


def test_constant_term_and_divisibility_split(f3):
    T = PolyA.theta(f3)
    f = a_expansion(AExpansionSpec(f3, 1, Petrov(4), c0=RatK(1, T)), 20)
    assert f.coefficient(0) == RatK(1, T)
    parts = a_expansions(
        [AExpansionSpec(f3, 1, DivisibilityPetrov(8, (T, T + 1), pat)) for pat in ((0, 0), (0, 1), (1, 0), (1, 1))],
        40,
    )
    whole = petrov_form(f3, 8, 1, 40)[0]
    assert parts[0] + parts[1] + parts[2] + parts[3] == whole


def test_eisenstein_tail(f3):
    tail = eisenstein_tail(f3, 2, 20)
    assert tail == _naive_expansion(f3, 2, lambda a: 1, 20)
    with pytest.raises(DomainError):
        eisenstein_tail(f3, 3, 10)


@pytest.mark.parametrize("q,k", [(2, 1), (3, 2), (3, 4), (4, 3)])
def test_zeta_partial_against_direct_sum(q, k):
    ctx = ctx_for_q(q)
    P = 9
    want = LaurentInf(ctx, 0, [], P)
    d = 0
    while d * k < P:
        for a in monic_enumerate(ctx, d):
            want = want + (LaurentInf.from_poly(a, P + d).inverse() ** k).truncate(P)
        d += 1
    assert zeta_partial(ctx, k, P) == want
