"""Hecke operators on truncated u-expansions and the prime-indexed decomposition.

For a monic prime g of degree d, T_g f = g^k f(u_g) + That_g f with
That_g f = sum_j a_j G_(j, Lambda_g)(g u).  The Goss polynomials of any lattice
have the generating function sum_j G_j(X) Y^j = X Y / (1 - X e(Y)); with
e = C_g / g this gives

    coefficient of X^i in G_(j, Lambda_g)(g X) = g * [Y^(j-1)] C_g(Y)^(i-1),   i >= 1,

so That_g only needs powers of the additive polynomial C_g.  Since C_g(Y)^m
starts at Y^m, the u^i coefficient of That_g f reads a_j only for
j <= (i-1) q^d + 1: a series known to u^N yields That_g f to u^ceil(N / q^d).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from itertools import product

import numpy as np
from scipy import fft as sp_fft

from .algebra import KVector, PolyA, arrays, require_prime
from .carlitz import carlitz_poly, torsion_exp
from .errors import DomainError, PrecisionError
from .forms import (
    AExpansionSpec,
    DivisibilityPetrov,
    Petrov,
    _petrov_check,
    a_expansions,
)
from .goss import goss_table
from .useries import USeriesK, u_sub_a


def output_trunc(trunc: int, q_d: int) -> int:
    """Trusted truncation of That_g f for f known to u^trunc."""
    return -(-trunc // q_d)


class HeckeCtx:
    """Data shared by every application of T_g at weight k to series known to u^trunc."""

    def __init__(self, g: PolyA, k: int, trunc: int):
        require_prime(g)
        if trunc < 1:
            raise PrecisionError("truncation must be at least 1")
        self.g = g
        self.k = k
        self.N = trunc
        self.d = int(g.degree)
        self.q_d = g.ctx.q ** self.d
        self.out_trunc = output_trunc(trunc, self.q_d)

    @property
    def ctx(self):
        return self.g.ctx

    @cached_property
    def u_g(self) -> USeriesK:
        return u_sub_a(self.g, self.out_trunc)

    @cached_property
    def goss_g(self):
        """Goss polynomials of Lambda_g through index N - 1, X-truncated to the output window."""
        return goss_table(torsion_exp(self.g), max(self.N - 1, 1), x_trunc=self.out_trunc)

    @property
    def _cg_powers(self) -> list[np.ndarray]:
        return _cg_powers(self.g, self.N, self.out_trunc)


@lru_cache(maxsize=8)
def _cg_powers(g: PolyA, trunc: int, n_out: int) -> list[np.ndarray]:
    """C_g(Y)^m for m = 0..n_out-2 as (Y-degree, theta-degree) arrays, Y-degree < trunc - 1."""
    ctx = g.ctx
    ydeg = max(trunc - 1, 1)
    terms = [(ctx.q**i, c) for i, c in enumerate(carlitz_poly(g).coeffs) if not c.is_zero()]
    cur = np.zeros((ydeg, 1), dtype=np.int64)
    cur[0, 0] = 1
    out = [cur]
    for _ in range(max(n_out - 2, 0)):
        nxt = np.zeros((ydeg, 0), dtype=np.int64)
        for shift, c in terms:
            if shift >= ydeg:
                continue
            part = arrays.scale(ctx, cur[: ydeg - shift], c.c)
            part = np.pad(part, ((shift, 0), (0, 0)))
            w = max(nxt.shape[1], part.shape[1])
            nxt = ctx.add(arrays.pad_last(nxt, w), arrays.pad_last(part, w))
        cur = arrays.trim(nxt)
        out.append(cur)
    return out


def _check_input(hctx: HeckeCtx, f: USeriesK) -> USeriesK:
    if f.ctx != hctx.ctx:
        raise DomainError("series and Hecke context belong to different fields")
    if f.trunc < hctx.N:
        raise PrecisionError(f"series known to u^{f.trunc}, Hecke context expects u^{hctx.N}")
    return f.truncate(hctx.N)


def hecke_hat_many(hctx: HeckeCtx, series) -> list[USeriesK]:
    """That_g applied to several series at once (they share the powers of C_g)."""
    ctx = hctx.ctx
    fs = [_check_input(hctx, f) for f in series]
    n_out = hctx.out_trunc
    jlen = max(hctx.N - 1, 1)
    nums = [f.vec.num[1 : jlen + 1] for f in fs]  # a_j for j = 1..N-1, row j-1
    nums = [arrays.pad_to(a, (jlen, a.shape[1])) for a in nums]
    rows = [[np.zeros(0, dtype=np.int64)] * n_out for _ in fs]
    powers = hctx._cg_powers
    use_fft = ctx.m0 == 1 and all(a.shape[1] for a in nums)
    if use_fft:
        wp = max(p.shape[1] for p in powers)
        wa = max(a.shape[1] for a in nums)
        nfft = sp_fft.next_fast_len(wp + wa - 1, real=True)
        bound = (ctx.p - 1) ** 2 * jlen * min(wp, wa)
        use_fft = bound < arrays._FFT_MAX_BOUND
    if use_fft:
        fa = [sp_fft.rfft(a.astype(np.float64), n=nfft, axis=-1) for a in nums]
    for i in range(1, n_out):
        pw = powers[i - 1]
        if use_fft:
            fp = sp_fft.rfft(pw.astype(np.float64), n=nfft, axis=-1)
        for s, a in enumerate(nums):
            if not a.shape[1] or not pw.shape[1]:
                continue
            if use_fft:
                dot = np.einsum("jf,jf->f", fp, fa[s])
                val = np.rint(sp_fft.irfft(dot, n=nfft)).astype(np.int64) % ctx.p
            else:
                val = np.zeros(0, dtype=np.int64)
                for j in np.nonzero(pw.any(axis=1))[0].tolist():
                    if a[j].any():
                        term = arrays.conv(ctx, pw[j], a[j])
                        w = max(val.size, term.size)
                        val = ctx.add(arrays.pad_last(val, w), arrays.pad_last(term, w))
            rows[s][i] = arrays.trim(arrays.conv(ctx, arrays.trim(val), hctx.g.c)) if val.any() else val
    out = []
    for s, f in enumerate(fs):
        width = max((r.size for r in rows[s]), default=0)
        mat = np.zeros((n_out, width), dtype=np.int64)
        for i, r in enumerate(rows[s]):
            mat[i, : r.size] = r
        out.append(USeriesK(KVector(ctx, mat, f.vec.den)))
    return out


def hecke_hat(hctx: HeckeCtx, f: USeriesK) -> USeriesK:
    """sum_(j >= 1) a_j G_(j, Lambda_g)(g u), to u^ceil(N / q^d); the j = 0 term is 0."""
    return hecke_hat_many(hctx, [f])[0]


def hecke_substitution_part(hctx: HeckeCtx, f: USeriesK) -> USeriesK:
    """g^k f(u_g) on the output window."""
    f = _check_input(hctx, f)
    n = hctx.out_trunc
    return f.truncate(min(n, f.trunc)).compose(hctx.u_g).truncate(n).scale(hctx.g**hctx.k)


def hecke_T_many(hctx: HeckeCtx, series) -> list[USeriesK]:
    hats = hecke_hat_many(hctx, series)
    return [hecke_substitution_part(hctx, f) + h for f, h in zip(series, hats)]


def hecke_T(hctx: HeckeCtx, f: USeriesK) -> USeriesK:
    """T_g f = g^k f(u_g) + That_g f, to u^ceil(N / q^d)."""
    return hecke_T_many(hctx, [f])[0]


# reports


def compare_report(lhs: USeriesK, rhs: USeriesK) -> dict:
    """Coefficientwise comparison on the common window."""
    n = min(lhs.trunc, rhs.trunc)
    diff = lhs.truncate(n) - rhs.truncate(n)
    bad = diff.vec.nonzero_indices().tolist()
    return {
        "pass": not bad,
        "first_mismatch": bad[0] if bad else None,
        "checked_window": n,
        "mismatches": bad[:20],
    }


def eigen_check(f: USeriesK, hctx: HeckeCtx, lam: PolyA, computed: USeriesK | None = None) -> dict:
    """Does T_g f = lam * f hold on the trusted window?"""
    tf = hecke_T(hctx, f) if computed is None else computed
    report = compare_report(tf, f.scale(lam))
    report["g"] = str(hctx.g)
    report["eigenvalue"] = str(lam)
    return report


def f1_identity_check(f1: USeriesK, f0: USeriesK, hctx: HeckeCtx, n: int) -> dict:
    """T_v f1 + v^k f0(u_v) - v^n f1 = 0 for g = v, with k the weight in ``hctx``."""
    lhs = hecke_T(hctx, f1) + hecke_substitution_part(hctx, f0)
    report = compare_report(lhs, f1.scale(hctx.g**n))
    report["g"] = str(hctx.g)
    return report


# decomposition


@dataclass
class Decomposition:
    """f_(k0, n) split by divisibility of a by the given primes."""

    k0: int
    n: int
    primes: tuple
    f: USeriesK
    parts: dict = field(default_factory=dict)  # pattern tuple -> series
    f1_closed: USeriesK | None = None

    @property
    def f0(self) -> USeriesK:
        return self.parts[(False,) * len(self.primes)]

    @property
    def f1(self) -> USeriesK:
        """Sum over a divisible by the first prime."""
        if len(self.primes) != 1:
            raise DomainError("f1 is defined for a single prime")
        return self.parts[(True,)]

    def sum_check(self) -> dict:
        total = None
        for s in self.parts.values():
            total = s if total is None else total + s
        return compare_report(total, self.f)

    def closed_check(self) -> dict:
        return compare_report(self.f1, self.f1_closed)


def decompose(ctx, k0: int, n: int, primes, trunc: int) -> Decomposition:
    """Partition f_(k0, n) over the 2^r divisibility patterns of the primes."""
    primes = tuple(primes)
    if not primes:
        raise DomainError("at least one prime is needed")
    if len(set(primes)) != len(primes):
        raise DomainError("primes must be distinct")
    for v in primes:
        require_prime(v)
    _petrov_check(ctx, k0, n)
    patterns = list(product((False, True), repeat=len(primes)))
    specs = [AExpansionSpec(ctx, n, Petrov(k0))]
    specs += [AExpansionSpec(ctx, n, DivisibilityPetrov(k0, primes, pat)) for pat in patterns]
    f, *parts = a_expansions(specs, trunc)
    dec = Decomposition(k0, n, primes, f, dict(zip(patterns, parts)))
    if len(primes) == 1:
        v = primes[0]
        dec.f1_closed = f.compose(u_sub_a(v, trunc)).scale(v ** (k0 - n))
    return dec
