"""Truncated power series in the uniformizer u with coefficients in K."""

from __future__ import annotations

from collections import OrderedDict

import numpy as np
from scipy import signal

from .algebra import INF, KVector, PolyA, RatK, as_ratk, ord_v, require_prime
from .algebra import arrays
from .carlitz import carlitz_poly
from .errors import DomainError, PrecisionError


class USeriesK:
    """A power series in u known modulo u^trunc."""

    __slots__ = ("vec",)

    def __init__(self, vec: KVector):
        self.vec = vec

    # construction
    @classmethod
    def from_coeffs(cls, ctx, coeffs, trunc: int | None = None):
        coeffs = list(coeffs)
        trunc = len(coeffs) if trunc is None else trunc
        coeffs = coeffs[:trunc] + [0] * (trunc - len(coeffs))
        return cls(KVector.from_elements(ctx, coeffs))

    @classmethod
    def zero(cls, ctx, trunc: int):
        return cls(KVector.zeros(ctx, trunc))

    @classmethod
    def constant(cls, ctx, c, trunc: int):
        c = as_ratk(c, ctx)
        if trunc == 0 or c.is_zero():
            return cls.zero(ctx, trunc)
        num = np.zeros((trunc, c.num.c.size), dtype=np.int64)
        num[0] = c.num.c
        return cls(KVector(ctx, num, c.den, normalize=False))

    @classmethod
    def u(cls, ctx, trunc: int):
        return cls.from_coeffs(ctx, [0, 1], trunc)

    @classmethod
    def from_array(cls, ctx, num, den: PolyA | None = None):
        return cls(KVector(ctx, num, den))

    # properties
    @property
    def ctx(self):
        return self.vec.ctx

    @property
    def trunc(self) -> int:
        return len(self.vec)

    @property
    def valuation(self) -> int:
        """Index of the first nonzero coefficient, or trunc for the zero series."""
        nz = self.vec.nonzero_indices()
        return int(nz[0]) if nz.size else self.trunc

    def coefficient(self, i: int) -> RatK:
        if i >= self.trunc:
            raise PrecisionError(f"coefficient of u^{i} is beyond truncation {self.trunc}")
        return self.vec.entry(i)

    def coefficients(self) -> list[RatK]:
        return self.vec.entries()

    def __getitem__(self, i):
        return self.coefficient(i)

    def is_zero(self) -> bool:
        return self.vec.is_zero()

    def truncate(self, n: int):
        if n > self.trunc:
            raise PrecisionError(f"cannot extend a series known to u^{self.trunc} to u^{n}")
        return USeriesK(self.vec.resize(n)) if n < self.trunc else self

    def __eq__(self, other):
        if not isinstance(other, USeriesK):
            return NotImplemented
        return self.trunc == other.trunc and self.vec == other.vec

    def agrees_with(self, other, n: int | None = None) -> bool:
        """Equality on the common window (or the first n coefficients)."""
        n = min(self.trunc, other.trunc) if n is None else n
        return self.truncate(n) == other.truncate(n)

    # ring operations
    def __add__(self, other):
        other = self._coerce(other)
        n = min(self.trunc, other.trunc)
        return USeriesK(self.vec.resize(n) + other.vec.resize(n))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        n = min(self.trunc, other.trunc)
        return USeriesK(self.vec.resize(n) - other.vec.resize(n))

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return USeriesK(-self.vec)

    def _coerce(self, other):
        if isinstance(other, USeriesK):
            if other.ctx != self.ctx:
                raise DomainError("operands belong to different contexts")
            return other
        return USeriesK.constant(self.ctx, as_ratk(other, self.ctx), self.trunc)

    def scale(self, x):
        return USeriesK(self.vec.scale(x))

    def __mul__(self, other):
        if isinstance(other, (RatK, PolyA, int, np.integer)):
            return self.scale(other)
        if other.ctx != self.ctx:
            raise DomainError("operands belong to different contexts")
        n = min(self.trunc + other.valuation, other.trunc + self.valuation)
        return USeriesK(self.vec.convolve(other.vec, n))

    __rmul__ = __mul__

    def frob(self):
        """The p-th power; known to u^(p*trunc)."""
        return USeriesK(self.vec.frob().resize(self.ctx.p * self.trunc))

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        if e == 0:
            return USeriesK.constant(self.ctx, 1, self.trunc)
        p = self.ctx.p
        if e % p == 0:
            return (self ** (e // p)).frob()
        result = None
        base = self
        while e:
            if e & 1:
                result = base if result is None else result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def inverse(self):
        """Multiplicative inverse by Newton iteration; needs a unit constant term."""
        if self.trunc == 0:
            return self
        c0 = self.coefficient(0)
        if c0.is_zero():
            raise DomainError("series with zero constant term is not invertible")
        n = self.trunc
        g = USeriesK.constant(self.ctx, c0.inverse(), 1)
        m = 1
        while m < n:
            m = min(2 * m, n)
            fg = self.truncate(m) * g.vec_resized(m)
            g = g.vec_resized(m) * (USeriesK.constant(self.ctx, 2, m) - fg)
        return g.truncate(n)

    def vec_resized(self, m: int):
        """Reinterpret with a longer window, treating missing terms as zero (internal)."""
        return USeriesK(self.vec.resize(m))

    def shift(self, k: int):
        """Multiply by u^k."""
        return USeriesK(self.vec.shift(k, self.trunc + k))

    # composition
    def compose(self, s: "USeriesK"):
        """sum_j self[j] * s^j for s with zero constant term."""
        if s.trunc and not s.coefficient(0).is_zero():
            raise DomainError("inner series must have zero constant term")
        o = s.valuation
        n = min(s.trunc, self.trunc * o) if o < s.trunc else s.trunc
        terms = _power_sum(self.vec.resize(min(self.trunc, -(-n // max(o, 1)))), s, n)
        return terms

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coefficients()):
            if c:
                terms.append(f"({c})*u^{i}")
        return " + ".join(terms + [f"O(u^{self.trunc})"])


def _power_sum(coeffs: KVector, s: USeriesK, n: int) -> USeriesK:
    """sum_i coeffs[i] * s^i truncated to u^n, for s with s(0) = 0."""
    ctx = s.ctx
    s = s.truncate(min(s.trunc, n)) if s.trunc > n else s
    o = s.valuation
    acc_num = np.zeros((n, 0), dtype=np.int64)
    acc_den = coeffs.den
    idx = coeffs.nonzero_indices()
    if idx.size == 0:
        return USeriesK.zero(ctx, n)
    power = USeriesK.constant(ctx, 1, n)
    k = 0
    sn = s.vec_resized(n) if s.trunc < n else s
    for i in idx.tolist():
        if i * o >= n:
            break
        while k < i:
            power = power * sn
            k += 1
            power = power.truncate(min(power.trunc, n))
        term = power.vec.resize(n)
        num = arrays.scale(ctx, term.num, coeffs.num[i])
        if not term.den.is_one():
            return _power_sum_general(coeffs, s, n)
        acc_num = arrays.add(ctx, arrays.pad_to(acc_num, (n, acc_num.shape[1])), num)
    return USeriesK(KVector(ctx, acc_num, acc_den))


def _power_sum_general(coeffs: KVector, s: USeriesK, n: int) -> USeriesK:
    ctx = s.ctx
    acc = USeriesK.zero(ctx, n)
    power = USeriesK.constant(ctx, 1, n)
    sn = s.vec_resized(n) if s.trunc < n else s
    o = s.valuation
    for i in range(len(coeffs)):
        if i * o >= n:
            break
        if i:
            power = (power * sn).truncate(n)
        c = coeffs.entry(i)
        if c:
            acc = acc + power.scale(c)
    return acc


def compose_poly(poly: KVector, s: USeriesK) -> USeriesK:
    """P(s) for a polynomial P over K (coefficients ascending) and s(0) = 0."""
    if s.trunc and not s.coefficient(0).is_zero():
        raise DomainError("compose_poly needs a series with zero constant term")
    return _power_sum(poly, s, s.trunc)


# u_a = u(a z)

_U_CACHE: OrderedDict = OrderedDict()
_U_CACHE_SIZE = 64


def rowwise_scale(ctx, x: np.ndarray, kern: np.ndarray) -> np.ndarray:
    """Multiply the polynomials x[b, ...] by the polynomial kern[b] for every batch index b."""
    bsz, width = x.shape[0], x.shape[-1]
    ksz = kern.shape[-1]
    out_shape = x.shape[:-1] + (max(width + ksz - 1, 0),)
    if width == 0 or ksz == 0:
        return np.zeros(out_shape, dtype=np.int64)
    if ctx.m0 > 1:
        out = np.zeros(out_shape, dtype=np.int64)
        for b in range(bsz):
            part = arrays.scale(ctx, x[b], kern[b])
            out[b, ..., : part.shape[-1]] = part
        return out
    expand = (slice(None),) + (None,) * (x.ndim - 1)
    cols = np.nonzero(kern.any(axis=0))[0]
    if cols.size <= arrays._SHIFT_ADD_MAX:
        out = np.zeros(out_shape, dtype=np.int64)
        for j in cols.tolist():
            out[..., j : j + width] += x * kern[:, j][expand]
        return out % ctx.p
    k = kern.reshape((bsz,) + (1,) * (x.ndim - 2) + (ksz,)).astype(np.float64)
    out = signal.fftconvolve(x.astype(np.float64), k, axes=-1)
    return np.rint(out).astype(np.int64) % ctx.p


def _stack(polys) -> np.ndarray:
    width = max((p.c.size for p in polys), default=0)
    out = np.zeros((len(polys), width), dtype=np.int64)
    for i, p in enumerate(polys):
        out[i, : p.c.size] = p.c
    return out


def rho_inverse_powers(ctx, monics, wanted, length: int) -> dict:
    """{m: rho_a^(-m)} for the exponents in ``wanted``, for monic a of one common degree d.

    rho_a(u) = sum_i c_i u^(q^d - q^i) with C_a = sum_i c_i x^(q^i).  Each
    result has shape (len(monics), length, W).  rho^(-m) solves
    rho * R_m = R_(m-1), a recursion read in blocks of length min_i(q^d - q^i)
    since each block only depends on earlier ones; when p | m the Frobenius
    gives R_m = (R_(m/p))^p directly.  The theta-degree of coefficient j is at
    most sigma*j with sigma = max deg(c_i)/(q^d - q^i), which fixes W up front.
    """
    if isinstance(wanted, int):
        wanted = range(1, wanted + 1)
    q, p = ctx.q, ctx.p
    d = int(monics[0].degree)
    if any(int(a.degree) != d or not a.is_monic() for a in monics):
        raise DomainError("batched u_a needs monic polynomials of one common degree")
    bsz = len(monics)
    one = np.zeros((bsz, length, 1), dtype=np.int64)
    if length:
        one[:, 0, 0] = 1
    if d == 0 or length == 0:
        return {m: one for m in wanted}
    cps = [carlitz_poly(a).coeffs for a in monics]
    gaps = []
    slope = 0.0
    for i in range(d):
        kern = _stack([c[i] for c in cps])
        if not kern.any():
            continue
        e = q**d - q**i
        deg = max(int(c[i].degree) for c in cps if not c[i].is_zero())
        slope = max(slope, deg / e)
        gaps.append((e, arrays.trim(kern)))
    bound = lambda j: int(np.floor(slope * j + 1e-9)) + 1  # width needed through index j
    width = bound(length - 1)
    step = min(e for e, _ in gaps)
    memo = {0: one}

    def solve(rhs):
        cur = np.zeros((bsz, length, width), dtype=np.int64)
        cur[:, 0, 0] = 1
        for start in range(1, length, step):
            end = min(start + step, length)
            w_out = min(width, bound(end - 1))
            block = np.zeros((bsz, end - start, w_out), dtype=np.int64)
            w_rhs = min(w_out, rhs.shape[-1])
            block[..., :w_rhs] = rhs[:, start:end, :w_rhs]
            for e, kern in gaps:
                lo = max(start, e)
                if lo >= end:
                    continue
                w_src = min(width, bound(end - 1 - e))
                contrib = rowwise_scale(ctx, cur[:, lo - e : end - e, :w_src], kern)[..., :w_out]
                w = contrib.shape[-1]
                block[:, lo - start :, :w] = ctx.sub(block[:, lo - start :, :w], contrib)
            cur[:, start:end, :w_out] = block
        return cur

    def get(m):
        if m not in memo:
            if m % p == 0:
                base = get(m // p)
                fr = arrays.frob(ctx, base[:, : -(-length // p)])
                out = np.zeros((bsz, length, max(width, fr.shape[-1])), dtype=np.int64)
                out[:, ::p, : fr.shape[-1]] = fr[:, : out[:, ::p].shape[1]]
                memo[m] = arrays.trim(out)
            else:
                memo[m] = solve(get(m - 1))
        return memo[m]

    return {m: get(m) for m in wanted}


def u_sub_a(a: PolyA, n: int) -> USeriesK:
    """u_a = u(a z) = u^(q^d) / rho_a(u) modulo u^n, rho_a(u) = u^(q^d) C_a(1/u).

    When q^deg(a) >= n the result is the zero series (u_a vanishes mod u^n).
    """
    if a.is_zero() or not a.is_monic():
        raise DomainError("u_a needs a monic polynomial a")
    ctx = a.ctx
    cached = _U_CACHE.get(a)
    if cached is not None and cached.trunc >= n:
        _U_CACHE.move_to_end(a)
        return cached.truncate(n)
    lead = ctx.q ** int(a.degree)
    num = np.zeros((n, 1), dtype=np.int64)
    if lead < n:
        inv = rho_inverse_powers(ctx, [a], [1], n - lead)[1][0]
        num = np.zeros((n, inv.shape[1]), dtype=np.int64)
        num[lead:] = inv
    out = USeriesK(KVector(ctx, num, normalize=False))
    _U_CACHE[a] = out
    if len(_U_CACHE) > _U_CACHE_SIZE:
        _U_CACHE.popitem(last=False)
    return out


def ord_v_series(f: USeriesK, v: PolyA):
    """(inf of coefficient valuations on the window, trunc)."""
    require_prime(v)
    if f.is_zero():
        return INF, f.trunc
    vec = f.vec
    rows = vec.nonzero_indices()
    best = INF
    for i in rows.tolist():
        val = ord_v(PolyA._raw(f.ctx, vec.num[i]), v)
        best = min(best, val)
        if best == 0:
            break
    return best - ord_v(vec.den, v), f.trunc
