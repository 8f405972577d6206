"""A-expansions c0 + sum_a c_a G_n(u_a) and the families built from them."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import fft as sp_fft

from .algebra import INF, KVector, LaurentInf, PolyA, RatK, as_ratk, monic_enumerate, poly_gcd
from .algebra import arrays
from .algebra.kvector import _field_sum_rows
from .carlitz import carlitz_exp
from .errors import DomainError, PrecisionError
from .goss import goss_table
from .useries import USeriesK, _stack, rho_inverse_powers, rowwise_scale


# admissibility


def _ord_p(m: int, p: int):
    if m == 0:
        return INF
    e = 0
    while m % p == 0:
        m //= p
        e += 1
    return e


def _digits(m: int, p: int, count: int) -> list[int]:
    out = []
    for _ in range(count):
        out.append(m % p)
        m //= p
    return out


def _floor_log(n: int, p: int) -> int:
    e = 0
    while p ** (e + 1) <= n:
        e += 1
    return e


def weight_condition(k: int, n: int, q: int) -> bool:
    """k - 2n is a positive multiple of q - 1."""
    return k - 2 * n > 0 and (k - 2 * n) % (q - 1) == 0


def power_condition(k: int, n: int, p: int) -> bool:
    """n <= p^(ord_p(k - n))."""
    e = _ord_p(k - n, p)
    return e == INF or n <= p**e


def digit_condition(k: int, n: int, p: int) -> bool:
    """Base-p digits of k and n agree at every index 0..floor(log_p n)."""
    top = _floor_log(n, p)
    return _digits(k, p, top + 1) == _digits(n, p, top + 1)


def admissibility_violation(k: int, n: int, q: int) -> str | None:
    """Message naming the first failed condition, or None if (k, n) is admissible."""
    if n < 1 or k < 1:
        return "k and n must be positive"
    p = _char(q)
    if not weight_condition(k, n, q):
        return f"k-2n = {k - 2 * n} is not a positive multiple of q-1 = {q - 1}"
    if not power_condition(k, n, p):
        return f"n = {n} exceeds p^ord_p(k-n) = {p ** _ord_p(k - n, p)}"
    return None


def admissible(k: int, n: int, q: int) -> bool:
    return admissibility_violation(k, n, q) is None


def digit_admissible(k: int, n: int, q: int) -> bool:
    """Weight condition plus the base-p digit form of the second condition."""
    return n >= 1 and weight_condition(k, n, q) and digit_condition(k, n, _char(q))


def _char(q: int) -> int:
    for p in range(2, q + 1):
        if q % p == 0:
            return p
    raise DomainError(f"q = {q} is not a prime power")


def admissible_pairs(q: int, k_max: int) -> list[tuple[int, int]]:
    return [(k, n) for k in range(1, k_max + 1) for n in range(1, k) if admissible(k, n, q)]


# coefficient rules


@dataclass(frozen=True)
class Petrov:
    """c_a = a^(k - n)."""

    k: int

    def coeff(self, a: PolyA, n: int):
        return a ** (self.k - n)


@dataclass(frozen=True)
class HForm:
    """c_a = a^q with n = 1."""

    def coeff(self, a: PolyA, n: int):
        return a ** a.ctx.q


@dataclass(frozen=True)
class DeltaForm:
    """c_a = a^(q(q-1)) with n = q - 1."""

    def coeff(self, a: PolyA, n: int):
        q = a.ctx.q
        return a ** (q * (q - 1))


@dataclass(frozen=True)
class EisensteinTail:
    """c_a = 1 with n = k."""

    k: int

    def coeff(self, a: PolyA, n: int):
        return PolyA.const(a.ctx, 1)


@dataclass(frozen=True)
class DivisibilityPetrov:
    """c_a = a^(k - n) on monic a whose divisibility by each prime matches ``pattern``."""

    k: int
    primes: tuple
    pattern: tuple

    def coeff(self, a: PolyA, n: int):
        for v, divisible in zip(self.primes, self.pattern):
            if (a % v).is_zero() != divisible:
                return None
        return a ** (self.k - n)


def VRestrictedPetrov(k: int, v: PolyA) -> DivisibilityPetrov:
    """c_a = a^(k - n) for a prime to v, 0 otherwise."""
    return DivisibilityPetrov(k, (v,), (False,))


def VDivisiblePetrov(k: int, v: PolyA) -> DivisibilityPetrov:
    """c_a = a^(k - n) for a divisible by v, 0 otherwise."""
    return DivisibilityPetrov(k, (v,), (True,))


@dataclass(frozen=True)
class Custom:
    """Finitely many prescribed coefficients; absent monic a get 0."""

    values: tuple  # of (PolyA, RatK)

    @classmethod
    def from_mapping(cls, mapping):
        return cls(tuple(mapping.items()))

    def coeff(self, a: PolyA, n: int):
        for b, c in self.values:
            if b == a:
                return c
        return None


@dataclass(frozen=True)
class AExpansionSpec:
    ctx: object
    n: int
    rule: object
    c0: object = 0

    def __post_init__(self):
        if self.n < 1:
            raise DomainError("Goss index n must be positive")


@dataclass(frozen=True)
class FormMeta:
    weight: int
    type: int
    cuspidal: bool

    def to_json(self):
        return {"weight": self.weight, "type": self.type, "cuspidal": self.cuspidal}


# expansion engine


def _max_degree(q: int, trunc: int) -> int:
    """Largest d with q^d < trunc (u_a vanishes mod u^trunc beyond it)."""
    d = -1
    while q ** (d + 1) < trunc:
        d += 1
    return d


def _custom_den(rule, ctx) -> PolyA:
    den = PolyA.const(ctx, 1)
    if isinstance(rule, Custom):
        for a, c in rule.values:
            if a.is_zero() or not a.is_monic():
                raise DomainError(f"custom coefficient attached to non-monic {a}")
            c = as_ratk(c, ctx)
            den = den * (c.den // poly_gcd(den, c.den))
    return den


def goss_polynomial(ctx, n: int) -> KVector:
    """G_n for the Carlitz lattice."""
    i = 0
    while ctx.q ** (i + 1) <= n - 1:
        i += 1
    return goss_table(carlitz_exp(ctx, i), n)[n]


def _batch_sum(ctx, x: np.ndarray) -> np.ndarray:
    """Field sum over the leading (batch) axis."""
    if ctx.m0 == 1:
        return x.sum(axis=0) % ctx.p
    flat = x.reshape(x.shape[0], -1)
    return _field_sum_rows(ctx, flat).reshape(x.shape[1:])


_CHUNK_ENTRIES = 1 << 23


def _goss_terms(ctx, g: KVector, powers: dict, lead: int, length: int, bsz: int) -> np.ndarray:
    """Numerators of D*G_n(u_a) / u^lead for a batch, from u_a^m = u^(m*lead) rho_a^(-m)."""
    term = np.zeros((bsz, length, 0), dtype=np.int64)
    for m in g.nonzero_indices().tolist():
        off = (m - 1) * lead
        if m == 0 or off >= length:
            continue
        part = arrays.scale(ctx, powers[m][:, : length - off], g.num[m])
        part = np.pad(part, ((0, 0), (off, 0), (0, 0)))
        if term.shape[-1] == 0:
            term = part
            continue
        w = max(term.shape[-1], part.shape[-1])
        term = ctx.add(arrays.pad_last(term, w), arrays.pad_last(part, w))
    return term


def weighted_batch_sums(ctx, x: np.ndarray, kerns) -> list[np.ndarray]:
    """[sum_b kern[b] * x[b] for kern in kerns]; x has shape (B, L, W), kern (B, K).

    One FFT of x along the theta axis is shared by all weightings.
    """
    if ctx.m0 > 1 or x.shape[-1] == 0:
        return [_batch_sum(ctx, rowwise_scale(ctx, x, k)) for k in kerns]
    kmax = max(k.shape[-1] for k in kerns)
    size = x.shape[-1] + kmax - 1
    bound = (ctx.p - 1) ** 2 * x.shape[0] * min(x.shape[-1], kmax)
    if bound >= arrays._FFT_MAX_BOUND:
        return [_batch_sum(ctx, rowwise_scale(ctx, x, k)) for k in kerns]
    nfft = sp_fft.next_fast_len(size, real=True)
    xf = sp_fft.rfft(x.astype(np.float64), n=nfft, axis=-1)
    out = []
    for k in kerns:
        kf = sp_fft.rfft(k.astype(np.float64), n=nfft, axis=-1)
        prod = np.einsum("blf,bf->lf", xf, kf)
        res = np.rint(sp_fft.irfft(prod, n=nfft, axis=-1)[:, :size]).astype(np.int64) % ctx.p
        out.append(arrays.trim(res))
    return out


def a_expansions(specs, trunc: int) -> list[USeriesK]:
    """Evaluate several A-expansions over the same context in one pass over A_+.

    Monic a of equal degree d are processed as one batch: G_n(u_a) is assembled
    from the powers u_a^m = u^(m q^d) rho_a^(-m) and then weighted by the
    per-a coefficients of every specification.
    """
    if not specs:
        return []
    ctx = specs[0].ctx
    if any(s.ctx != ctx for s in specs):
        raise DomainError("all specifications must share one context")
    if trunc < 1:
        raise PrecisionError("truncation must be at least 1")
    q = ctx.q
    goss = {n: goss_polynomial(ctx, n) for n in {s.n for s in specs}}
    dens = [_custom_den(s.rule, ctx) for s in specs]
    acc = [np.zeros((trunc, 0), dtype=np.int64) for _ in specs]
    for d in range(_max_degree(q, trunc) + 1):
        lead = q**d
        length = trunc - lead
        monics = monic_enumerate(ctx, d)
        weights = []
        for idx, s in enumerate(specs):
            kern = []
            for a in monics:
                c = s.rule.coeff(a, s.n)
                c = None if c is None else as_ratk(c, ctx)
                kern.append(None if c is None or c.is_zero() else c.num * (dens[idx] // c.den))
            weights.append(kern)
        chunk = max(1, _CHUNK_ENTRIES // max(1, length * (length // 2 + d + 2)))
        for lo in range(0, len(monics), chunk):
            hi = min(lo + chunk, len(monics))
            live = [idx for idx in range(len(specs)) if any(k is not None for k in weights[idx][lo:hi])]
            if not live:
                continue
            ns = {specs[idx].n for idx in live}
            wanted = sorted({m for n in ns for m in goss[n].nonzero_indices().tolist() if m})
            powers = rho_inverse_powers(ctx, monics[lo:hi], wanted, length)
            for n in ns:
                term = _goss_terms(ctx, goss[n], powers, lead, length, hi - lo)
                group = [idx for idx in live if specs[idx].n == n]
                kerns = [_stack([k if k is not None else PolyA(ctx) for k in weights[idx][lo:hi]]) for idx in group]
                for idx, contrib in zip(group, weighted_batch_sums(ctx, term, kerns)):
                    contrib = np.pad(contrib, ((lead, 0), (0, 0)))
                    w = max(acc[idx].shape[1], contrib.shape[1])
                    acc[idx] = arrays.add(ctx, arrays.pad_last(acc[idx], w), arrays.pad_last(contrib, w))
    out = []
    for idx, s in enumerate(specs):
        series = USeriesK(KVector(ctx, acc[idx], goss[s.n].den * dens[idx]))
        c0 = as_ratk(s.c0, ctx)
        if not c0.is_zero():
            series = series + c0
        out.append(series)
    return out


def a_expansion(spec: AExpansionSpec, trunc: int) -> USeriesK:
    """c0 + sum over monic a with q^deg(a) < trunc of c_a G_n(u_a), mod u^trunc."""
    return a_expansions([spec], trunc)[0]


def h_form(ctx, trunc: int) -> USeriesK:
    return a_expansion(AExpansionSpec(ctx, 1, HForm()), trunc)


def delta_form(ctx, trunc: int) -> USeriesK:
    return a_expansion(AExpansionSpec(ctx, ctx.q - 1, DeltaForm()), trunc)


def _petrov_check(ctx, k: int, n: int):
    why = admissibility_violation(k, n, ctx.q)
    if why is not None:
        raise DomainError(f"(k, n) = ({k}, {n}) is not admissible: {why}")
    return FormMeta(k, n % (ctx.q - 1), True)


def petrov_form(ctx, k: int, n: int, trunc: int):
    """f_(k,n) = sum_a a^(k-n) G_n(u_a) to u^trunc, with its metadata."""
    meta = _petrov_check(ctx, k, n)
    return a_expansion(AExpansionSpec(ctx, n, Petrov(k)), trunc), meta


def petrov_forms(ctx, pairs, trunc: int):
    """Several Petrov forms sharing one enumeration of A_+."""
    metas = [_petrov_check(ctx, k, n) for k, n in pairs]
    series = a_expansions([AExpansionSpec(ctx, n, Petrov(k)) for k, n in pairs], trunc)
    return list(zip(series, metas))


def eisenstein_tail(ctx, k: int, trunc: int) -> USeriesK:
    """sum_a G_k(u_a); the constant term of the Eisenstein series is left out."""
    if k < 1 or k % (ctx.q - 1):
        raise DomainError(f"Eisenstein tail needs (q-1) | k, got k = {k}")
    return a_expansion(AExpansionSpec(ctx, k, EisensteinTail(k)), trunc)


def h_delta_constant(ctx, trunc: int):
    """The c in F_q^x with h^(q-1) = c*Delta, read off at the first nonzero term.

    Returns (c, holds) where ``holds`` says whether the identity is exact to u^trunc.
    """
    h = h_form(ctx, trunc)
    delta = delta_form(ctx, trunc)
    lhs = h ** (ctx.q - 1)
    lhs = lhs.truncate(min(lhs.trunc, trunc))
    v = delta.valuation
    if v >= trunc:
        raise PrecisionError("Delta vanishes on the window")
    ratio = lhs.coefficient(v) / delta.coefficient(v)
    if ratio.den.degree != 0 or ratio.num.degree != 0:
        return ratio, False
    return ratio, lhs == delta.scale(ratio)


# zeta partial sums


def _series_inverse_power(ctx, rev: np.ndarray, k: int, length: int) -> np.ndarray:
    """Rows of R^(-k) mod t^length, R given by rows of ascending coefficients with R(0) = 1."""
    rows, d1 = rev.shape
    inv = np.zeros((rows, length), dtype=np.int64)
    if length == 0:
        return inv
    inv[:, 0] = 1
    for j in range(1, length):
        acc = np.zeros(rows, dtype=np.int64)
        for i in range(1, min(j, d1 - 1) + 1):
            acc = ctx.add(acc, ctx.mul(rev[:, i], inv[:, j - i]))
        inv[:, j] = ctx.neg(acc)
    result = None
    base = inv
    e = k
    while e:
        if e & 1:
            result = base if result is None else _row_mul(ctx, result, base, length)
        e >>= 1
        if e:
            base = _row_mul(ctx, base, base, length)
    return result


def _row_mul(ctx, x: np.ndarray, y: np.ndarray, length: int) -> np.ndarray:
    out = np.zeros_like(x)
    for j in range(length):
        acc = np.zeros(x.shape[0], dtype=np.int64)
        for i in range(j + 1):
            acc = ctx.add(acc, ctx.mul(x[:, i], y[:, j - i]))
        out[:, j] = acc
    return out


def zeta_partial(ctx, k: int, precision: int) -> LaurentInf:
    """sum of a^(-k) over monic a of degree d with d*k < precision, mod (1/theta)^precision.

    The degree-d block has (1/theta)-adic order at least d*k, so the result is
    the value of zeta_A(k) to the stated precision.
    """
    if k < 1 or precision < 1:
        raise DomainError("need k >= 1 and precision >= 1")
    total = LaurentInf(ctx, 0, [], precision)
    d = 0
    while d * k < precision:
        monics = monic_enumerate(ctx, d)
        rev = np.array([a.c[::-1] for a in monics], dtype=np.int64)
        length = precision - d * k
        block = _series_inverse_power(ctx, rev, k, length)
        coeffs = _field_sum_rows(ctx, block)
        total = total + LaurentInf(ctx, d * k, coeffs, precision)
        d += 1
    return total
