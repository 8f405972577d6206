"""Vectors over K stored as integral numerators over one common denominator.

This is the workhorse representation behind series in u and polynomials
over K: every arithmetic step is a batched operation on a 2-d code array
(rows = vector index, columns = theta-degree) plus a handful of gcds on the
shared denominator.
"""

from __future__ import annotations

import numpy as np

from ..errors import DomainError
from . import arrays
from .poly import PolyA, RatK, as_ratk, poly_gcd


def _field_sum_rows(ctx, a: np.ndarray) -> np.ndarray:
    if ctx.m0 == 1:
        return a.sum(axis=0) % ctx.p
    return (ctx.coords(a).sum(axis=0) % ctx.p) @ ctx._pw


def _diagonal_pack(ctx, rows: np.ndarray) -> np.ndarray:
    """sum_i theta^i * rows[i] as a single polynomial."""
    n, d = rows.shape
    idx = (np.arange(n)[:, None] + np.arange(d)[None, :]).ravel()
    size = n + d - 1
    if ctx.m0 == 1:
        return np.bincount(idx, weights=rows.ravel(), minlength=size).astype(np.int64) % ctx.p
    coords = ctx.coords(rows).reshape(-1, ctx.m0)
    out = np.stack([np.bincount(idx, weights=coords[:, k], minlength=size) for k in range(ctx.m0)], axis=-1)
    return (out.astype(np.int64) % ctx.p) @ ctx._pw


class KVector:
    """Elements num[i]/den of K, i < n, with den monic and content-reduced."""

    __slots__ = ("ctx", "num", "den")

    def __init__(self, ctx, num, den: PolyA | None = None, *, normalize: bool = True):
        num = np.asarray(num, dtype=np.int64)
        if num.ndim != 2:
            raise DomainError("numerator array must be 2-d (index, theta-degree)")
        self.ctx = ctx
        self.num = arrays.trim(num)
        self.den = den if den is not None else PolyA.const(ctx, 1)
        if normalize:
            self._normalize()

    @classmethod
    def zeros(cls, ctx, n: int):
        return cls(ctx, np.zeros((n, 0), dtype=np.int64), normalize=False)

    @classmethod
    def from_elements(cls, ctx, elems):
        elems = [as_ratk(x, ctx) for x in elems]
        den = PolyA.const(ctx, 1)
        for x in elems:
            if not x.den.is_one():
                den = den * (x.den // poly_gcd(den, x.den))
        width = 0
        scaled = []
        for x in elems:
            n = x.num if x.den == den else x.num * (den // x.den)
            scaled.append(n.c)
            width = max(width, n.c.size)
        num = np.zeros((len(elems), width), dtype=np.int64)
        for i, c in enumerate(scaled):
            num[i, : c.size] = c
        return cls(ctx, num, den, normalize=False)

    @classmethod
    def from_polys(cls, ctx, rows: np.ndarray):
        """Integral vector from a code array of numerators."""
        return cls(ctx, rows, normalize=False)

    def _normalize(self):
        ctx = self.ctx
        if self.den.is_zero():
            raise DomainError("zero denominator")
        if not self.den.is_monic():
            inv = int(ctx.inv(self.den.lc))
            self.den = self.den.scale(inv)
            self.num = ctx.mul(self.num, inv)
        if self.den.is_one():
            return
        if not self.num.any():
            self.den = PolyA.const(ctx, 1)
            self.num = self.num[:, :0]
            return
        rem = arrays.mod_rows(ctx, self.num, self.den.c)
        g = poly_gcd(self.den, PolyA._raw(ctx, _diagonal_pack(ctx, rem)) % self.den)
        while not g.is_one():
            bad = arrays.mod_rows(ctx, rem, g.c)
            rows = np.nonzero(bad.any(axis=1))[0] if bad.shape[-1] else np.zeros(0, dtype=int)
            if rows.size == 0:
                break
            g = poly_gcd(g, PolyA._raw(ctx, bad[rows[0]]))
        if not g.is_one():
            self.num = arrays.trim(arrays.divmod_rows(ctx, self.num, g.c)[0])
            self.den = self.den // g

    # container protocol
    def __len__(self):
        return self.num.shape[0]

    def entry(self, i: int) -> RatK:
        row = self.num[i] if i < len(self) else np.zeros(0, dtype=np.int64)
        return RatK(PolyA._raw(self.ctx, row), self.den)

    def entries(self) -> list[RatK]:
        return [self.entry(i) for i in range(len(self))]

    def is_zero(self) -> bool:
        return not self.num.any()

    def is_integral(self) -> bool:
        return self.den.is_one()

    def nonzero_indices(self) -> np.ndarray:
        if self.num.shape[-1] == 0:
            return np.zeros(0, dtype=np.int64)
        return np.nonzero(self.num.any(axis=1))[0]

    def resize(self, n: int):
        """Truncate or zero-pad to length n."""
        if n <= len(self):
            return KVector(self.ctx, self.num[:n], self.den, normalize=n < len(self))
        num = np.zeros((n, self.num.shape[1]), dtype=np.int64)
        num[: len(self)] = self.num
        return KVector(self.ctx, num, self.den, normalize=False)

    def shift(self, k: int, n: int | None = None):
        """Move entry i to i + k, keeping length n (default: unchanged)."""
        n = len(self) if n is None else n
        num = np.zeros((n, self.num.shape[1]), dtype=np.int64)
        if k < n:
            src = self.num[: n - k]
            num[k : k + src.shape[0]] = src
        return KVector(self.ctx, num, self.den)

    def __eq__(self, other):
        if not isinstance(other, KVector):
            return NotImplemented
        if len(self) != len(other) or self.den != other.den:
            return False
        a, b = self.num, other.num
        w = max(a.shape[1], b.shape[1])
        return np.array_equal(arrays.pad_last(a, w), arrays.pad_last(b, w))

    def _common(self, other):
        if other.ctx != self.ctx:
            raise DomainError("operands belong to different contexts")
        n = max(len(self), len(other))
        a, b = self.resize(n).num, other.resize(n).num
        if self.den == other.den:
            return a, b, self.den
        g = poly_gcd(self.den, other.den)
        fa, fb = other.den // g, self.den // g
        return arrays.scale(self.ctx, a, fa.c), arrays.scale(self.ctx, b, fb.c), self.den * fa

    def __add__(self, other):
        a, b, den = self._common(other)
        return KVector(self.ctx, arrays.add(self.ctx, a, b), den)

    def __sub__(self, other):
        a, b, den = self._common(other)
        return KVector(self.ctx, arrays.sub(self.ctx, a, b), den)

    def __neg__(self):
        return KVector(self.ctx, self.ctx.neg(self.num), self.den, normalize=False)

    def scale(self, x):
        """Multiply every entry by a scalar in K."""
        x = as_ratk(x, self.ctx)
        if x.is_zero():
            return KVector.zeros(self.ctx, len(self))
        num = arrays.scale(self.ctx, self.num, x.num.c)
        if x.den.is_one() and self.den.is_one():
            return KVector(self.ctx, num, normalize=False)
        return KVector(self.ctx, num, self.den * x.den)

    def convolve(self, other, n: int | None = None):
        """Cauchy product of the two vectors, truncated to length n."""
        n = len(self) + len(other) - 1 if n is None else n
        a, b = self.num[:n], other.num[:n]
        ia = self.nonzero_indices()
        ib = other.nonzero_indices()
        if ia.size == 0 or ib.size == 0 or ia[0] + ib[0] >= n:
            return KVector.zeros(self.ctx, n)
        # skip leading zero rows to keep the convolution small
        a = a[ia[0] : n - ib[0]]
        b = b[ib[0] : n - ia[0]]
        prod = arrays.conv(self.ctx, a, b)
        off = int(ia[0] + ib[0])
        out = np.zeros((n, prod.shape[1]), dtype=np.int64)
        take = min(prod.shape[0], n - off)
        out[off : off + take] = prod[:take]
        den = self.den * other.den
        return KVector(self.ctx, out, den, normalize=not den.is_one())

    def frob(self):
        """Entrywise p-th power placed at index p*i (the p-th power of a series)."""
        p = self.ctx.p
        n = len(self)
        fr = arrays.frob(self.ctx, self.num)
        out = np.zeros((max(p * (n - 1) + 1, 0), fr.shape[1]), dtype=np.int64)
        out[::p] = fr
        return KVector(self.ctx, out, self.den.frob(), normalize=False)

    def __repr__(self):
        return f"KVector([{', '.join(str(e) for e in self.entries())}])"
